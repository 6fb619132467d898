"""Formula ASTs, parsers, printers, and the named formula families.

Two languages share one ASCII surface syntax:

* modal formulas: ``[]``, ``<>``, ``~``, ``&``, ``|``, ``->``,
  ``forall y. ...``, ``exists y. ...``, atoms ``P(x,y)`` or bare ``p``
  (0-ary letters), constants ``false`` and ``true``;
* first-order formulas: the same minus the modalities, plus equality
  ``x = y``; ``!`` and ``?`` are accepted as quantifier aliases.

Precedence, tightest first: unary prefixes, ``&``, ``|``, ``->``
(right associative); ``&`` and ``|`` associate to the left.  A
quantifier body extends as far right as possible.  ``[]^n f`` and
``<>^n f`` expand to n-fold prefixes while parsing.

Internally both ASTs keep only atoms, falsum, negation, conjunction,
the universal quantifier, and (for the modal language) box.  The
remaining connectives are desugared constructors, and the printers
re-sugar them, so ``parse(print(f))`` returns ``f`` unchanged.

First-order letter names may carry a trailing apostrophe (the arity
bump marker used by the modal-to-classical translation); modal letter
names may not, which keeps the two namespaces disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce


class ParseError(ValueError):
    """Raised on malformed input; the message carries the position."""


class ArityError(ValueError):
    """A predicate letter was used with two different arities."""


# ---------------------------------------------------------------------------
# ASTs

@dataclass(frozen=True)
class ModalFormula:
    def __str__(self) -> str:
        return modal_to_text(self)


@dataclass(frozen=True)
class MAtom(ModalFormula):
    name: str
    args: tuple[str, ...] = ()


@dataclass(frozen=True)
class MFalse(ModalFormula):
    pass


@dataclass(frozen=True)
class MNot(ModalFormula):
    sub: ModalFormula


@dataclass(frozen=True)
class MAnd(ModalFormula):
    left: ModalFormula
    right: ModalFormula


@dataclass(frozen=True)
class MBox(ModalFormula):
    sub: ModalFormula


@dataclass(frozen=True)
class MForall(ModalFormula):
    var: str
    sub: ModalFormula


@dataclass(frozen=True)
class FolFormula:
    def __str__(self) -> str:
        return fol_to_text(self)


@dataclass(frozen=True)
class FEq(FolFormula):
    left: str
    right: str


@dataclass(frozen=True)
class FAtom(FolFormula):
    name: str
    args: tuple[str, ...] = ()


@dataclass(frozen=True)
class FFalse(FolFormula):
    pass


@dataclass(frozen=True)
class FNot(FolFormula):
    sub: FolFormula


@dataclass(frozen=True)
class FAnd(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class FForall(FolFormula):
    var: str
    sub: FolFormula


# Letters R, W, D have fixed meanings in translated formulas.
RESERVED_FOL_ARITIES = {"R": 2, "W": 1, "D": 2}


# ---------------------------------------------------------------------------
# Desugared constructors

def m_true() -> ModalFormula:
    return MNot(MFalse())


def m_or(a: ModalFormula, b: ModalFormula) -> ModalFormula:
    return MNot(MAnd(MNot(a), MNot(b)))


def m_implies(a: ModalFormula, b: ModalFormula) -> ModalFormula:
    return MNot(MAnd(a, MNot(b)))


def m_diamond(a: ModalFormula) -> ModalFormula:
    return MNot(MBox(MNot(a)))


def m_exists(var: str, a: ModalFormula) -> ModalFormula:
    return MNot(MForall(var, MNot(a)))


def f_true() -> FolFormula:
    return FNot(FFalse())


def f_or(a: FolFormula, b: FolFormula) -> FolFormula:
    return FNot(FAnd(FNot(a), FNot(b)))


def f_implies(a: FolFormula, b: FolFormula) -> FolFormula:
    return FNot(FAnd(a, FNot(b)))


def f_iff(a: FolFormula, b: FolFormula) -> FolFormula:
    return FAnd(f_implies(a, b), f_implies(b, a))


def f_exists(var: str, a: FolFormula) -> FolFormula:
    return FNot(FForall(var, FNot(a)))


def f_neq(x: str, y: str) -> FolFormula:
    return FNot(FEq(x, y))


def fold_and(parts, empty=None):
    """Left fold of a sequence under conjunction; ``empty`` covers []."""
    parts = list(parts)
    if not parts:
        if empty is None:
            raise ValueError("empty conjunction")
        return empty
    return reduce(_and_of, parts)


def _and_of(a, b):
    if isinstance(a, ModalFormula):
        return MAnd(a, b)
    return FAnd(a, b)


def fold_or(parts):
    parts = list(parts)
    if not parts:
        raise ValueError("empty disjunction")
    out = parts[0]
    for p in parts[1:]:
        out = m_or(out, p) if isinstance(out, ModalFormula) else f_or(out, p)
    return out


def box_n(n: int, f: ModalFormula) -> ModalFormula:
    """n-fold box prefix; ``box_n(0, f)`` is ``f`` itself."""
    if n < 0:
        raise ValueError("n must be >= 0")
    for _ in range(n):
        f = MBox(f)
    return f


def diamond_n(n: int, f: ModalFormula) -> ModalFormula:
    """n-fold diamond prefix; ``diamond_n(0, f)`` is ``f`` itself."""
    if n < 0:
        raise ValueError("n must be >= 0")
    for _ in range(n):
        f = m_diamond(f)
    return f


# ---------------------------------------------------------------------------
# Structural measures

def modal_depth(f: ModalFormula) -> int:
    """Maximal nesting of box (diamond counts through its box)."""
    if isinstance(f, (MAtom, MFalse)):
        return 0
    if isinstance(f, MNot):
        return modal_depth(f.sub)
    if isinstance(f, MAnd):
        return max(modal_depth(f.left), modal_depth(f.right))
    if isinstance(f, MForall):
        return modal_depth(f.sub)
    if isinstance(f, MBox):
        return modal_depth(f.sub) + 1
    raise TypeError(f"not a modal formula: {f!r}")


def quantifier_rank(f: FolFormula) -> int:
    """Maximal nesting depth of quantifiers."""
    if isinstance(f, (FEq, FAtom, FFalse)):
        return 0
    if isinstance(f, FNot):
        return quantifier_rank(f.sub)
    if isinstance(f, FAnd):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    if isinstance(f, FForall):
        return quantifier_rank(f.sub) + 1
    raise TypeError(f"not a first-order formula: {f!r}")


def free_vars(f) -> frozenset[str]:
    if isinstance(f, MAtom) or isinstance(f, FAtom):
        return frozenset(f.args)
    if isinstance(f, FEq):
        return frozenset((f.left, f.right))
    if isinstance(f, (MFalse, FFalse)):
        return frozenset()
    if isinstance(f, (MNot, FNot)):
        return free_vars(f.sub)
    if isinstance(f, (MAnd, FAnd)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, MBox):
        return free_vars(f.sub)
    if isinstance(f, (MForall, FForall)):
        return free_vars(f.sub) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def is_closed(f) -> bool:
    return not free_vars(f)


def all_vars(f) -> frozenset[str]:
    """Every variable occurring in f, free or bound."""
    if isinstance(f, MAtom) or isinstance(f, FAtom):
        return frozenset(f.args)
    if isinstance(f, FEq):
        return frozenset((f.left, f.right))
    if isinstance(f, (MFalse, FFalse)):
        return frozenset()
    if isinstance(f, (MNot, FNot)):
        return all_vars(f.sub)
    if isinstance(f, (MAnd, FAnd)):
        return all_vars(f.left) | all_vars(f.right)
    if isinstance(f, MBox):
        return all_vars(f.sub)
    if isinstance(f, (MForall, FForall)):
        return all_vars(f.sub) | {f.var}
    raise TypeError(f"not a formula: {f!r}")


def letter_arities(f, seed: dict[str, int] | None = None) -> dict[str, int]:
    """Arity of every predicate letter in f.

    Raises ArityError if a letter occurs with two arities, or clashes
    with an entry of ``seed`` (used for the reserved first-order
    signature letters).
    """
    out: dict[str, int] = dict(seed or {})
    seen: set[str] = set()

    def walk(g):
        if isinstance(g, (MAtom, FAtom)):
            n = len(g.args)
            if g.name in out and out[g.name] != n:
                raise ArityError(
                    f"letter {g.name} used with arities {out[g.name]} and {n}")
            out[g.name] = n
            seen.add(g.name)
        elif isinstance(g, (MNot, FNot, MBox)):
            walk(g.sub)
        elif isinstance(g, (MAnd, FAnd)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (MForall, FForall)):
            walk(g.sub)
        elif isinstance(g, (MFalse, FFalse, FEq)):
            pass
        else:
            raise TypeError(f"not a formula: {g!r}")

    walk(f)
    return {name: out[name] for name in out if name in seen}


# ---------------------------------------------------------------------------
# Formula families

def mk_alpha(n: int) -> ModalFormula:
    """<>[]false & <>^n []false, for n >= 1."""
    if n < 1:
        raise ValueError("mk_alpha requires n >= 1")
    dead = MBox(MFalse())
    return MAnd(m_diamond(dead), diamond_n(n, dead))


def mk_beta(n: int) -> ModalFormula:
    """<>[]false & <>^n <>[]false & the chain of ~<>^k <>[]false.

    The big conjunction runs over k = 2 .. n-1 and is empty for n = 2.
    """
    if n < 2:
        raise ValueError("mk_beta requires n >= 2")
    sees_dead = m_diamond(MBox(MFalse()))
    parts = [sees_dead, diamond_n(n, sees_dead)]
    parts += [MNot(diamond_n(k, sees_dead)) for k in range(2, n)]
    return fold_and(parts)


def mk_gamma() -> ModalFormula:
    """<>[]false | (<>p -> []p)."""
    p = MAtom("p")
    return m_or(m_diamond(MBox(MFalse())), m_implies(m_diamond(p), MBox(p)))


def mk_delta(k: int, n: int) -> ModalFormula:
    """<>^k beta_n & p -> <>^n p, for k >= 0 and n >= 2."""
    if k < 0:
        raise ValueError("mk_delta requires k >= 0")
    p = MAtom("p")
    return m_implies(MAnd(diamond_n(k, mk_beta(n)), p), diamond_n(n, p))


def mk_epsilon(n: int) -> ModalFormula:
    """beta_n & p -> []^n (beta_n & p), for n >= 2."""
    p = MAtom("p")
    b = mk_beta(n)
    return m_implies(MAnd(b, p), box_n(n, MAnd(b, p)))


def mk_alt2() -> ModalFormula:
    """[]p1 | [](p1 -> p2) | [](p1 & p2 -> p3)."""
    p1, p2, p3 = MAtom("p1"), MAtom("p2"), MAtom("p3")
    return fold_or([
        MBox(p1),
        MBox(m_implies(p1, p2)),
        MBox(m_implies(MAnd(p1, p2), p3)),
    ])


def mk_zeta() -> ModalFormula:
    """<>p -> []p."""
    p = MAtom("p")
    return m_implies(m_diamond(p), MBox(p))


# ---------------------------------------------------------------------------
# Tokenizer

_SYMBOLS = ("[]", "<>", "->", "^", "~", "&", "|", "(", ")", ",", ".", "=", "!", "?")
_KEYWORDS = frozenset({"forall", "exists", "false", "true"})


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            while j < n and text[j] == "'":
                j += 1
            word = text[i:j]
            kind = "kw" if word in _KEYWORDS else "ident"
            toks.append((kind, word, i))
            i = j
            continue
        if c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("nat", text[i:j], i))
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                toks.append(("sym", sym, i))
                i += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {c!r} at position {i}")
    toks.append(("end", "", n))
    return toks


class _Parser:
    """Recursive descent over the shared token stream.

    ``modal`` selects the modal grammar (boxes and diamonds, no
    equality, no primed or underscore-leading identifiers).
    """

    def __init__(self, text: str, modal: bool):
        self.toks = _tokenize(text)
        self.pos = 0
        self.modal = modal

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    @staticmethod
    def _show(kind: str, val: str) -> str:
        return "end of input" if kind == "end" else repr(val)

    def expect(self, text: str):
        kind, val, at = self.take()
        if val != text:
            raise ParseError(
                f"expected {text!r} at position {at}, got {self._show(kind, val)}")

    def fail(self, msg: str):
        kind, val, at = self.peek()
        raise ParseError(f"{msg} at position {at} (near {self._show(kind, val)})")

    def ident(self, role: str) -> str:
        kind, val, at = self.take()
        if kind != "ident":
            raise ParseError(f"expected {role} at position {at}, got {val!r}")
        if self.modal and ("'" in val or val.startswith("_")):
            raise ParseError(
                f"{role} {val!r} at position {at} is reserved for translated formulas")
        return val

    # precedence: implies < or < and < unary

    def implies(self):
        left = self.disj()
        if self.peek()[1] == "->":
            self.take()
            right = self.implies()
            return m_implies(left, right) if self.modal else f_implies(left, right)
        return left

    def disj(self):
        out = self.conj()
        while self.peek()[1] == "|":
            self.take()
            rhs = self.conj()
            out = m_or(out, rhs) if self.modal else f_or(out, rhs)
        return out

    def conj(self):
        out = self.unary()
        while self.peek()[1] == "&":
            self.take()
            rhs = self.unary()
            out = MAnd(out, rhs) if self.modal else FAnd(out, rhs)
        return out

    def _nat(self) -> int:
        kind, val, at = self.take()
        if kind != "nat":
            raise ParseError(f"expected a number at position {at}, got {val!r}")
        return int(val)

    def unary(self):
        kind, val, at = self.peek()
        if val == "~":
            self.take()
            sub = self.unary()
            return MNot(sub) if self.modal else FNot(sub)
        if val in ("[]", "<>"):
            if not self.modal:
                self.fail("modal operator in a first-order formula")
            self.take()
            power = 1
            if self.peek()[1] == "^":
                self.take()
                power = self._nat()
            sub = self.unary()
            return box_n(power, sub) if val == "[]" else diamond_n(power, sub)
        if val in ("forall", "exists", "!", "?"):
            if self.modal and val in ("!", "?"):
                self.fail("quantifier alias not allowed in modal formulas")
            self.take()
            var = self.ident("variable")
            self.expect(".")
            body = self.implies()
            if val in ("forall", "!"):
                return MForall(var, body) if self.modal else FForall(var, body)
            return m_exists(var, body) if self.modal else f_exists(var, body)
        return self.primary()

    def primary(self):
        kind, val, at = self.take()
        if val == "(":
            out = self.implies()
            self.expect(")")
            return out
        if val == "false":
            return MFalse() if self.modal else FFalse()
        if val == "true":
            return m_true() if self.modal else f_true()
        if kind != "ident":
            raise ParseError(
                f"expected a formula at position {at}, got {self._show(kind, val)}")
        if self.modal and ("'" in val or val.startswith("_")):
            raise ParseError(
                f"identifier {val!r} at position {at} is reserved for translated formulas")
        if self.peek()[1] == "(":
            self.take()
            args = []
            if self.peek()[1] != ")":
                args.append(self.ident("variable"))
                while self.peek()[1] == ",":
                    self.take()
                    args.append(self.ident("variable"))
            self.expect(")")
            return (MAtom(val, tuple(args)) if self.modal
                    else FAtom(val, tuple(args)))
        if not self.modal and self.peek()[1] == "=":
            self.take()
            rhs = self.ident("variable")
            return FEq(val, rhs)
        return MAtom(val) if self.modal else FAtom(val)

    def run(self):
        out = self.implies()
        kind, val, at = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input at position {at} (near {val!r})")
        return out


def parse_modal(text: str) -> ModalFormula:
    """Parse a modal formula; checks letter arity consistency."""
    f = _Parser(text, modal=True).run()
    letter_arities(f)
    return f


def parse_fol(text: str) -> FolFormula:
    """Parse a first-order formula; R, W, D keep their fixed arities."""
    f = _Parser(text, modal=False).run()
    letter_arities(f, seed=RESERVED_FOL_ARITIES)
    return f


# ---------------------------------------------------------------------------
# Printers

_P_IMP, _P_OR, _P_AND, _P_UN, _P_ATOM = 0, 1, 2, 3, 4


def _atom_text(name: str, args: tuple[str, ...]) -> str:
    if not args:
        return name
    return f"{name}({','.join(args)})"


def _wrap(text: str, prec: int, ctx: int) -> str:
    return f"({text})" if prec < ctx else text


def _print_modal(f: ModalFormula, ctx: int) -> str:
    if isinstance(f, MAtom):
        return _atom_text(f.name, f.args)
    if isinstance(f, MFalse):
        return "false"
    if isinstance(f, MAnd):
        t = f"{_print_modal(f.left, _P_AND)} & {_print_modal(f.right, _P_AND + 1)}"
        return _wrap(t, _P_AND, ctx)
    if isinstance(f, MBox):
        return _wrap(f"[] {_print_modal(f.sub, _P_UN)}", _P_UN, ctx)
    if isinstance(f, MForall):
        t = f"forall {f.var}. {_print_modal(f.sub, _P_IMP)}"
        return _wrap(t, _P_IMP, ctx)
    if isinstance(f, MNot):
        s = f.sub
        if isinstance(s, MFalse):
            return "true"
        if isinstance(s, MAnd) and isinstance(s.left, MNot) and isinstance(s.right, MNot):
            t = f"{_print_modal(s.left.sub, _P_OR)} | {_print_modal(s.right.sub, _P_OR + 1)}"
            return _wrap(t, _P_OR, ctx)
        if isinstance(s, MAnd) and isinstance(s.right, MNot):
            t = f"{_print_modal(s.left, _P_IMP + 1)} -> {_print_modal(s.right.sub, _P_IMP)}"
            return _wrap(t, _P_IMP, ctx)
        if isinstance(s, MBox) and isinstance(s.sub, MNot):
            return _wrap(f"<> {_print_modal(s.sub.sub, _P_UN)}", _P_UN, ctx)
        if isinstance(s, MForall) and isinstance(s.sub, MNot):
            t = f"exists {s.var}. {_print_modal(s.sub.sub, _P_IMP)}"
            return _wrap(t, _P_IMP, ctx)
        return _wrap(f"~{_print_modal(s, _P_UN)}", _P_UN, ctx)
    raise TypeError(f"not a modal formula: {f!r}")


def _print_fol(f: FolFormula, ctx: int) -> str:
    if isinstance(f, FAtom):
        return _atom_text(f.name, f.args)
    if isinstance(f, FEq):
        return _wrap(f"{f.left} = {f.right}", _P_ATOM, ctx)
    if isinstance(f, FFalse):
        return "false"
    if isinstance(f, FAnd):
        t = f"{_print_fol(f.left, _P_AND)} & {_print_fol(f.right, _P_AND + 1)}"
        return _wrap(t, _P_AND, ctx)
    if isinstance(f, FForall):
        t = f"forall {f.var}. {_print_fol(f.sub, _P_IMP)}"
        return _wrap(t, _P_IMP, ctx)
    if isinstance(f, FNot):
        s = f.sub
        if isinstance(s, FFalse):
            return "true"
        if isinstance(s, FAnd) and isinstance(s.left, FNot) and isinstance(s.right, FNot):
            t = f"{_print_fol(s.left.sub, _P_OR)} | {_print_fol(s.right.sub, _P_OR + 1)}"
            return _wrap(t, _P_OR, ctx)
        if isinstance(s, FAnd) and isinstance(s.right, FNot):
            t = f"{_print_fol(s.left, _P_IMP + 1)} -> {_print_fol(s.right.sub, _P_IMP)}"
            return _wrap(t, _P_IMP, ctx)
        if isinstance(s, FForall) and isinstance(s.sub, FNot):
            t = f"exists {s.var}. {_print_fol(s.sub.sub, _P_IMP)}"
            return _wrap(t, _P_IMP, ctx)
        return _wrap(f"~{_print_fol(s, _P_UN)}", _P_UN, ctx)
    raise TypeError(f"not a first-order formula: {f!r}")


def modal_to_text(f: ModalFormula) -> str:
    return _print_modal(f, _P_IMP)


def fol_to_text(f: FolFormula) -> str:
    return _print_fol(f, _P_IMP)

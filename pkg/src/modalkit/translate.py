"""Compiling modal formulas into classical first-order logic.

``standard_translation`` maps a modal formula to a first-order one
over the signature R, W, D plus a primed copy of each predicate
letter with one extra world argument:

* an atom P(y1, .., ym) becomes P'(y1, .., ym, x);
* box becomes a universal over accessible worlds guarded by
  ``W(y) & R(x, y)``;
* the individual quantifier becomes a universal guarded by
  ``~W(y) & D(x, y)``.

``relativize`` restricts a pure frame sentence's quantifiers to the
world sort.  ``describe_frame`` produces a sentence whose models are
exactly the structures isomorphic to a given finite frame; it is
emitted with each constraint placed directly under the innermost
quantifier that binds its variables, so a short-circuiting evaluator
backtracks instead of sweeping whole assignment spaces.

``embed_L0`` and ``embed_L1`` assemble the two membership embeddings:
the conjunction of the frame theory and the relativized describer of
a finite disjoint union of frames (chains for the one, rings for the
other, every even index up to the formula's modal depth plus three)
implies the translation's universal closure over worlds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .frames import chain_frame, disjoint_union, ring_frame, union_world
from .kripke import (
    ClassicalStructure, Frame, KripkeModel, PredicateFrame,
    LETTER_MARK, model_to_structure, world_element,
)
from .syntax import (
    FolFormula, FAtom, FAnd, FEq, FFalse, FForall, FNot,
    ModalFormula, MAtom, MAnd, MBox, MFalse, MForall, MNot,
    all_vars, f_exists, f_implies, fold_and, fold_or, f_or, f_true,
    is_closed, modal_depth,
)

FRESH_PREFIX = "_v"


class TranslationError(ValueError):
    """Malformed translation context, e.g. a clashing world variable."""


@dataclass
class TranslationContext:
    """Fresh-variable supply for one translation run.

    Generated names live in the underscore namespace, which the modal
    parser rejects, so they can never collide with input variables.
    """
    used: set[str] = field(default_factory=set)
    counter: int = 0

    def fresh(self) -> str:
        while True:
            name = f"{FRESH_PREFIX}{self.counter}"
            self.counter += 1
            if name not in self.used:
                self.used.add(name)
                return name


def prime(letter: str) -> str:
    return letter + LETTER_MARK


def standard_translation(formula: ModalFormula, x: str,
                         ctx: TranslationContext | None = None) -> FolFormula:
    """Translate ``formula`` as seen from the world variable ``x``."""
    if x in all_vars(formula):
        raise TranslationError(
            f"world variable {x!r} already occurs in the formula")
    if ctx is None:
        ctx = TranslationContext(set(all_vars(formula)) | {x})
    return _st(formula, x, ctx)


def _st(f: ModalFormula, x: str, ctx: TranslationContext) -> FolFormula:
    if isinstance(f, MAtom):
        return FAtom(prime(f.name), f.args + (x,))
    if isinstance(f, MFalse):
        return FFalse()
    if isinstance(f, MNot):
        return FNot(_st(f.sub, x, ctx))
    if isinstance(f, MAnd):
        return FAnd(_st(f.left, x, ctx), _st(f.right, x, ctx))
    if isinstance(f, MBox):
        y = ctx.fresh()
        guard = FAnd(FAtom("W", (y,)), FAtom("R", (x, y)))
        return FForall(y, f_implies(guard, _st(f.sub, y, ctx)))
    if isinstance(f, MForall):
        guard = FAnd(FNot(FAtom("W", (f.var,))), FAtom("D", (x, f.var)))
        return FForall(f.var, f_implies(guard, _st(f.sub, x, ctx)))
    raise TypeError(f"not a modal formula: {f!r}")


def relativize(formula: FolFormula) -> FolFormula:
    """Guard every quantifier with the world sort W."""
    if isinstance(formula, (FAtom, FEq, FFalse)):
        return formula
    if isinstance(formula, FNot):
        return FNot(relativize(formula.sub))
    if isinstance(formula, FAnd):
        return FAnd(relativize(formula.left), relativize(formula.right))
    if isinstance(formula, FForall):
        return FForall(formula.var,
                       f_implies(FAtom("W", (formula.var,)), relativize(formula.sub)))
    raise TypeError(f"not a first-order formula: {formula!r}")


def mk_M_conjuncts() -> tuple[FolFormula, FolFormula, FolFormula]:
    """The three frame-theory axioms, separately (for error reports)."""
    W = lambda a: FAtom("W", (a,))
    some_world = f_exists("x", W("x"))
    domains_inhabited = FForall("x", f_implies(
        W("x"), f_exists("y", FAtom("D", ("x", "y")))))
    domains_grow = FForall("x", FForall("y", FForall("z", f_implies(
        fold_and([W("x"), W("y"), FNot(W("z")),
                  FAtom("R", ("x", "y")), FAtom("D", ("x", "z"))]),
        FAtom("D", ("y", "z"))))))
    return some_world, domains_inhabited, domains_grow


def mk_M() -> FolFormula:
    return fold_and(mk_M_conjuncts())


def describe_frame(frame: Frame) -> FolFormula:
    """Closed R-and-equality sentence pinning the frame up to
    isomorphism: one element per world, pairwise distinct, related
    exactly as the edges say, and no further elements."""
    var = {w: f"_w{i}" for i, w in enumerate(frame.worlds)}
    worlds = list(frame.worlds)
    totality = FForall("_u", fold_or(
        [FEq("_u", var[w]) for w in worlds]))
    body = totality
    for j in reversed(range(len(worlds))):
        wj, xj = worlds[j], var[worlds[j]]
        facts: list[FolFormula] = []
        for i in range(j):
            facts.append(FNot(FEq(xj, var[worlds[i]])))
        for i in range(j):
            wi, xi = worlds[i], var[worlds[i]]
            fwd = FAtom("R", (xi, xj))
            facts.append(fwd if (wi, wj) in frame.rel else FNot(fwd))
            back = FAtom("R", (xj, xi))
            facts.append(back if (wj, wi) in frame.rel else FNot(back))
        loop = FAtom("R", (xj, xj))
        facts.append(loop if (wj, wj) in frame.rel else FNot(loop))
        body = f_exists(xj, fold_and(facts + [body]))
    return body


def _embedding_indices(formula: ModalFormula) -> list[int]:
    bound = modal_depth(formula) + 3
    return list(range(2, bound + 1, 2))


def l0_union_frame(formula: ModalFormula) -> Frame:
    """Disjoint union of the even chains the L0 embedding describes."""
    return disjoint_union([chain_frame(m) for m in _embedding_indices(formula)])


def l1_union_frame(formula: ModalFormula) -> Frame:
    """Disjoint union of the even rings the L1 embedding describes."""
    return disjoint_union([ring_frame(m) for m in _embedding_indices(formula)])


def _embed(formula: ModalFormula, union: Frame) -> FolFormula:
    if not is_closed(formula):
        raise ValueError("the embedding is defined for closed formulas only")
    ctx = TranslationContext(set(all_vars(formula)))
    x = ctx.fresh()
    consequent = FForall(x, f_implies(
        FAtom("W", (x,)), standard_translation(formula, x, ctx)))
    antecedent = FAnd(mk_M(), relativize(describe_frame(union)))
    return f_implies(antecedent, consequent)


def embed_L0(formula: ModalFormula) -> FolFormula:
    """First-order sentence valid iff the closed formula belongs to
    the logic of even chains with a dead end."""
    return _embed(formula, l0_union_frame(formula))


def embed_L1(formula: ModalFormula) -> FolFormula:
    """First-order sentence valid iff the closed formula belongs to
    the logic of even rings with a dead end."""
    return _embed(formula, l1_union_frame(formula))


def refutation_to_structure(formula: ModalFormula, model: KripkeModel,
                            world: str, logic: str) -> tuple[ClassicalStructure, str]:
    """Transport a Kripke countermodel into a classical one.

    The countermodel, based on one of the frames the embedding for
    ``logic`` (``"L0"`` or ``"L1"``) describes, is planted on its
    component of the disjoint union; the remaining components get
    one-element domains and empty letters.  Returns the structure and
    the universe element naming the witness world; the structure
    falsifies the embedding of ``formula``.
    """
    if logic == "L0":
        gen = chain_frame
    elif logic == "L1":
        gen = ring_frame
    else:
        raise ValueError(f"unknown logic {logic!r}")
    components = [gen(m) for m in _embedding_indices(formula)]
    try:
        idx = components.index(model.frame)
    except ValueError:
        raise ValueError(
            "countermodel frame is not among the embedding's components") from None
    union = disjoint_union(components)
    domain: dict[str, frozenset[str]] = {}
    interp: dict[tuple[str, str], frozenset] = {}
    for i, comp in enumerate(components):
        for w in comp.worlds:
            if i == idx:
                domain[union_world(i, w)] = model.pframe.domain[w]
            else:
                domain[union_world(i, w)] = frozenset({"a0"})
    for (w, p), tuples in model.interp.items():
        interp[(union_world(idx, w), p)] = tuples
    big = KripkeModel(PredicateFrame(union, domain), interp, model.arities)
    return model_to_structure(big), world_element(union_world(idx, world))


# ---------------------------------------------------------------------------
# TPTP rendering (best effort, for feeding external provers)

def _tptp_name(letter: str) -> str:
    base = letter.rstrip(LETTER_MARK)
    marks = len(letter) - len(base)
    name = base.lower() + "_p" * marks
    return "p_" + name if not name[0].isalpha() else name


def _tptp_var(v: str) -> str:
    return "X" + v.lstrip("_").upper()


def _tptp(f: FolFormula) -> str:
    if isinstance(f, FAtom):
        if not f.args:
            return _tptp_name(f.name)
        return f"{_tptp_name(f.name)}({','.join(_tptp_var(a) for a in f.args)})"
    if isinstance(f, FEq):
        return f"({_tptp_var(f.left)} = {_tptp_var(f.right)})"
    if isinstance(f, FFalse):
        return "$false"
    if isinstance(f, FNot):
        s = f.sub
        if isinstance(s, FAnd) and isinstance(s.left, FNot) and isinstance(s.right, FNot):
            return f"({_tptp(s.left.sub)} | {_tptp(s.right.sub)})"
        if isinstance(s, FAnd) and isinstance(s.right, FNot):
            return f"({_tptp(s.left)} => {_tptp(s.right.sub)})"
        if isinstance(s, FForall) and isinstance(s.sub, FNot):
            return f"(? [{_tptp_var(s.var)}] : {_tptp(s.sub.sub)})"
        return f"~{_tptp(s)}"
    if isinstance(f, FAnd):
        return f"({_tptp(f.left)} & {_tptp(f.right)})"
    if isinstance(f, FForall):
        return f"(! [{_tptp_var(f.var)}] : {_tptp(f.sub)})"
    raise TypeError(f"not a first-order formula: {f!r}")


def to_tptp(formula: FolFormula, name: str = "translated") -> str:
    """Render a closed formula as a single TPTP fof conjecture."""
    return f"fof({name}, conjecture, {_tptp(formula)})."

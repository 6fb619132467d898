"""Finite Kripke structures and the two satisfaction relations.

A ``Frame`` is a finite set of worlds with a binary accessibility
relation.  A ``PredicateFrame`` adds a non-empty finite domain per
world, growing along accessibility (``w R w'`` implies
``D(w) <= D(w')``).  A ``KripkeModel`` interprets each predicate
letter at each world by a set of tuples over that world's domain.

``eval_modal`` implements the usual clauses: box quantifies over
accessible worlds, the individual quantifier ranges over the current
world's domain.  ``eval_fol`` is plain Tarskian satisfaction over a
finite ``ClassicalStructure``.

``model_to_structure`` and ``structure_to_model`` mediate between the
two views: worlds and domain elements are merged into one universe,
sorted by the unary letter ``W``, with ``R`` for accessibility, ``D``
for domain membership, and each n-ary letter ``P`` re-emerging as an
(n+1)-ary ``P'`` whose last coordinate is the world.

All values are immutable after construction; evaluation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .syntax import (
    FolFormula, FEq, FAtom, FFalse, FNot, FAnd, FForall,
    ModalFormula, MAtom, MFalse, MNot, MAnd, MBox, MForall,
    free_vars, fol_to_text,
)


class EvalError(ValueError):
    """Unbound variable, unknown letter, or arity mismatch."""


class PreconditionError(ValueError):
    """An operation's input fails a stated requirement."""


WORLD_TAG = "w:"
ELEM_TAG = "d:"
LETTER_MARK = "'"


def world_element(w: str) -> str:
    """Universe name a world gets inside a ClassicalStructure."""
    return WORLD_TAG + w


def domain_element(e: str) -> str:
    """Universe name a domain element gets inside a ClassicalStructure."""
    return ELEM_TAG + e


# ---------------------------------------------------------------------------
# Frames and models

@dataclass(frozen=True)
class Frame:
    worlds: tuple[str, ...]
    rel: frozenset[tuple[str, str]]

    def __init__(self, worlds, rel):
        worlds = tuple(worlds)
        rel = frozenset((u, v) for u, v in rel)
        if not worlds:
            raise ValueError("a frame needs at least one world")
        if len(set(worlds)) != len(worlds):
            raise ValueError("duplicate world identifiers")
        wset = set(worlds)
        for u, v in rel:
            if u not in wset or v not in wset:
                raise ValueError(f"edge ({u!r}, {v!r}) mentions an unknown world")
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "rel", rel)

    @cached_property
    def _succ(self) -> dict[str, tuple[str, ...]]:
        order = {w: i for i, w in enumerate(self.worlds)}
        out: dict[str, list[str]] = {w: [] for w in self.worlds}
        for u, v in sorted(self.rel, key=lambda e: (order[e[0]], order[e[1]])):
            out[u].append(v)
        return {w: tuple(vs) for w, vs in out.items()}

    def successors(self, w: str) -> tuple[str, ...]:
        return self._succ[w]

    def has_world(self, w: str) -> bool:
        return w in self._succ


@dataclass(frozen=True)
class PredicateFrame:
    frame: Frame
    domain: Mapping[str, frozenset[str]]

    def __init__(self, frame, domain):
        domain = {w: frozenset(es) for w, es in dict(domain).items()}
        if set(domain) != set(frame.worlds):
            raise ValueError("domain map must cover exactly the frame's worlds")
        for w, es in domain.items():
            if not es:
                raise ValueError(f"empty domain at world {w!r}")
        for u, v in frame.rel:
            if not domain[u] <= domain[v]:
                raise ValueError(
                    f"domains must grow along accessibility: {u!r} -> {v!r}")
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "domain", domain)

    def elements(self) -> tuple[str, ...]:
        pool: set[str] = set()
        for es in self.domain.values():
            pool |= es
        return tuple(sorted(pool))


@dataclass(frozen=True)
class KripkeModel:
    pframe: PredicateFrame
    interp: Mapping[tuple[str, str], frozenset[tuple[str, ...]]]
    arities: Mapping[str, int]

    def __init__(self, pframe, interp, arities=None):
        interp = {
            (w, p): frozenset(tuple(t) for t in tuples)
            for (w, p), tuples in dict(interp).items()
        }
        resolved: dict[str, int] = dict(arities or {})
        for (w, p), tuples in interp.items():
            if not pframe.frame.has_world(w):
                raise ValueError(f"interpretation mentions unknown world {w!r}")
            for t in tuples:
                if p in resolved and resolved[p] != len(t):
                    raise ValueError(
                        f"letter {p!r} used with arities {resolved[p]} and {len(t)}")
                resolved.setdefault(p, len(t))
                if any(e not in pframe.domain[w] for e in t):
                    raise ValueError(
                        f"tuple {t!r} at world {w!r} leaves the world's domain")
        object.__setattr__(self, "pframe", pframe)
        object.__setattr__(self, "interp", interp)
        object.__setattr__(self, "arities", resolved)

    @property
    def frame(self) -> Frame:
        return self.pframe.frame

    def holds(self, w: str, letter: str, args: tuple[str, ...]) -> bool:
        if letter in self.arities and self.arities[letter] != len(args):
            raise EvalError(
                f"letter {letter!r} has arity {self.arities[letter]}, got {len(args)} arguments")
        return args in self.interp.get((w, letter), frozenset())


@dataclass(frozen=True)
class ClassicalStructure:
    universe: tuple[str, ...]
    relations: Mapping[str, frozenset[tuple[str, ...]]]
    arities: Mapping[str, int]

    def __init__(self, universe, relations, arities):
        universe = tuple(universe)
        if len(set(universe)) != len(universe):
            raise ValueError("duplicate universe elements")
        relations = {
            name: frozenset(tuple(t) for t in tuples)
            for name, tuples in dict(relations).items()
        }
        arities = dict(arities)
        uset = set(universe)
        for name, tuples in relations.items():
            if name == "=":
                raise ValueError("equality is built in, never stored")
            if name not in arities:
                raise ValueError(f"relation {name!r} has no declared arity")
            for t in tuples:
                if len(t) != arities[name]:
                    raise ValueError(
                        f"tuple {t!r} does not match arity {arities[name]} of {name!r}")
                if any(e not in uset for e in t):
                    raise ValueError(f"tuple {t!r} leaves the universe")
        for name in arities:
            relations.setdefault(name, frozenset())
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "relations", relations)
        object.__setattr__(self, "arities", arities)

    @classmethod
    def from_frame(cls, frame: Frame) -> "ClassicalStructure":
        """A frame read directly as a structure for R and equality."""
        return cls(frame.worlds, {"R": frame.rel}, {"R": 2})


# ---------------------------------------------------------------------------
# Satisfaction

def eval_modal(model: KripkeModel, w: str, assignment: Mapping[str, str],
               formula: ModalFormula) -> bool:
    """Truth of ``formula`` at world ``w`` under ``assignment``.

    The assignment must send every free variable of the formula into
    the domain of ``w``; monotone domains keep the values in range as
    evaluation moves to accessible worlds.
    """
    if not model.frame.has_world(w):
        raise EvalError(f"unknown world {w!r}")
    g = dict(assignment)
    for y in free_vars(formula):
        if y not in g:
            raise EvalError(f"unbound free variable {y!r}")
        if g[y] not in model.pframe.domain[w]:
            raise EvalError(
                f"value {g[y]!r} for {y!r} is outside the domain of {w!r}")
    return _ev_modal(model, w, g, formula)


def _ev_modal(m: KripkeModel, w: str, g: dict[str, str], f: ModalFormula) -> bool:
    if isinstance(f, MAtom):
        try:
            args = tuple(g[a] for a in f.args)
        except KeyError as e:
            raise EvalError(f"unbound variable {e.args[0]!r}") from None
        return m.holds(w, f.name, args)
    if isinstance(f, MFalse):
        return False
    if isinstance(f, MNot):
        return not _ev_modal(m, w, g, f.sub)
    if isinstance(f, MAnd):
        return _ev_modal(m, w, g, f.left) and _ev_modal(m, w, g, f.right)
    if isinstance(f, MBox):
        return all(_ev_modal(m, v, g, f.sub) for v in m.frame.successors(w))
    if isinstance(f, MForall):
        saved = g.get(f.var, _MISSING)
        try:
            for e in sorted(m.pframe.domain[w]):
                g[f.var] = e
                if not _ev_modal(m, w, g, f.sub):
                    return False
            return True
        finally:
            if saved is _MISSING:
                g.pop(f.var, None)
            else:
                g[f.var] = saved
    raise TypeError(f"not a modal formula: {f!r}")


_MISSING = object()


def eval_fol(structure: ClassicalStructure, assignment: Mapping[str, str],
             formula: FolFormula) -> bool:
    """Tarskian truth over the structure's finite universe."""
    g = dict(assignment)
    uset = set(structure.universe)
    for y in free_vars(formula):
        if y not in g:
            raise EvalError(f"unbound free variable {y!r}")
        if g[y] not in uset:
            raise EvalError(f"value {g[y]!r} for {y!r} is outside the universe")
    return _ev_fol(structure, g, formula)


def _ev_fol(s: ClassicalStructure, g: dict[str, str], f: FolFormula) -> bool:
    if isinstance(f, FAtom):
        if f.name not in s.relations:
            raise EvalError(f"unknown relation letter {f.name!r}")
        if s.arities[f.name] != len(f.args):
            raise EvalError(
                f"letter {f.name!r} has arity {s.arities[f.name]}, got {len(f.args)} arguments")
        try:
            args = tuple(g[a] for a in f.args)
        except KeyError as e:
            raise EvalError(f"unbound variable {e.args[0]!r}") from None
        return args in s.relations[f.name]
    if isinstance(f, FEq):
        try:
            return g[f.left] == g[f.right]
        except KeyError as e:
            raise EvalError(f"unbound variable {e.args[0]!r}") from None
    if isinstance(f, FFalse):
        return False
    if isinstance(f, FNot):
        return not _ev_fol(s, g, f.sub)
    if isinstance(f, FAnd):
        return _ev_fol(s, g, f.left) and _ev_fol(s, g, f.right)
    if isinstance(f, FForall):
        saved = g.get(f.var, _MISSING)
        try:
            for e in s.universe:
                g[f.var] = e
                if not _ev_fol(s, g, f.sub):
                    return False
            return True
        finally:
            if saved is _MISSING:
                g.pop(f.var, None)
            else:
                g[f.var] = saved
    raise TypeError(f"not a first-order formula: {f!r}")


# ---------------------------------------------------------------------------
# Model <-> structure correspondence

def model_to_structure(model: KripkeModel) -> ClassicalStructure:
    """Merge a Kripke model into one classical structure.

    Worlds come first in the universe (frame order, tagged), then the
    domain elements (sorted, tagged); tagging keeps the two sorts
    disjoint regardless of the original identifiers.
    """
    f = model.frame
    elems = model.pframe.elements()
    universe = tuple(world_element(w) for w in f.worlds) + \
        tuple(domain_element(e) for e in elems)
    relations: dict[str, set[tuple[str, ...]]] = {
        "W": {(world_element(w),) for w in f.worlds},
        "R": {(world_element(u), world_element(v)) for u, v in f.rel},
        "D": {(world_element(w), domain_element(e))
              for w in f.worlds for e in model.pframe.domain[w]},
    }
    arities = {"W": 1, "R": 2, "D": 2}
    for p, n in model.arities.items():
        arities[p + LETTER_MARK] = n + 1
        relations.setdefault(p + LETTER_MARK, set())
    for (w, p), tuples in model.interp.items():
        relations[p + LETTER_MARK].update(
            tuple(domain_element(e) for e in t) + (world_element(w),)
            for t in tuples)
    return ClassicalStructure(universe, relations, arities)


def structure_to_model(structure: ClassicalStructure) -> KripkeModel:
    """Read a Kripke model off a structure sorted by W.

    The structure must satisfy the frame-theory axioms (non-empty set
    of worlds, non-empty domains, domains growing along R); the error
    otherwise names the first failed axiom.  Letters other than W, R,
    D are taken as world-indexed relations: the last coordinate is the
    world, the rest must lie in that world's domain, and a trailing
    apostrophe in the letter name is stripped.  Tuples that fit no
    world are dropped.
    """
    from .translate import mk_M_conjuncts

    for conjunct in mk_M_conjuncts():
        if not eval_fol(structure, {}, conjunct):
            raise PreconditionError(
                f"frame-theory axiom violated: {fol_to_text(conjunct)}")
    wset = {t[0] for t in structure.relations["W"]}
    worlds = tuple(e for e in structure.universe if e in wset)
    rel = {(u, v) for u, v in structure.relations["R"] if u in wset and v in wset}
    domain = {
        w: frozenset(e for ww, e in structure.relations["D"]
                     if ww == w and e not in wset)
        for w in worlds
    }
    pframe = PredicateFrame(Frame(worlds, rel), domain)
    interp: dict[tuple[str, str], set[tuple[str, ...]]] = {}
    arities: dict[str, int] = {}
    for name, tuples in structure.relations.items():
        if name in ("W", "R", "D") or structure.arities[name] == 0:
            continue
        letter = name[:-1] if name.endswith(LETTER_MARK) else name
        arities[letter] = structure.arities[name] - 1
        for t in tuples:
            w = t[-1]
            if w in wset and all(e in domain[w] for e in t[:-1]):
                interp.setdefault((w, letter), set()).add(t[:-1])
    return KripkeModel(pframe, interp, arities)


# ---------------------------------------------------------------------------
# Document format

def frame_to_doc(frame: Frame) -> dict:
    order = {w: i for i, w in enumerate(frame.worlds)}
    return {
        "worlds": list(frame.worlds),
        "edges": [[u, v] for u, v in
                  sorted(frame.rel, key=lambda e: (order[e[0]], order[e[1]]))],
    }


def frame_from_doc(doc: dict) -> Frame:
    if not isinstance(doc, dict) or "worlds" not in doc or "edges" not in doc:
        raise ValueError("frame document needs 'worlds' and 'edges'")
    try:
        return Frame(doc["worlds"], [tuple(e) for e in doc["edges"]])
    except (TypeError, ValueError) as e:
        raise ValueError(f"bad frame document: {e}") from None


def model_to_doc(model: KripkeModel) -> dict:
    doc = frame_to_doc(model.frame)
    doc["domains"] = {w: sorted(model.pframe.domain[w]) for w in model.frame.worlds}
    interp: dict[str, dict[str, list]] = {}
    for (w, p), tuples in model.interp.items():
        if tuples:
            interp.setdefault(p, {})[w] = sorted(list(t) for t in tuples)
    doc["interp"] = {p: dict(sorted(ws.items())) for p, ws in sorted(interp.items())}
    return doc


def model_from_doc(doc: dict) -> KripkeModel:
    frame = frame_from_doc(doc)
    domains = doc.get("domains")
    if domains is None:
        domains = {w: ["a0"] for w in frame.worlds}
    try:
        pframe = PredicateFrame(frame, {w: frozenset(es) for w, es in domains.items()})
        interp: dict[tuple[str, str], set[tuple[str, ...]]] = {}
        for p, per_world in (doc.get("interp") or {}).items():
            for w, tuples in per_world.items():
                interp[(w, p)] = {tuple(t) for t in tuples}
        return KripkeModel(pframe, interp)
    except (TypeError, ValueError) as e:
        raise ValueError(f"bad model document: {e}") from None

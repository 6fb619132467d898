"""Frame validity by exhaustive interpretation search, and bounded
membership checks for the two chain and ring logics.

Validity of a formula at a world quantifies over every model based on
the frame.  Two search paths:

* formulas whose letters are all 0-ary: truth only depends on the
  valuation over worlds within modal-depth steps of the start, so the
  search enumerates valuations over those worlds as bit patterns, all
  of them at once (one big-integer bit per valuation);
* anything else: explicit enumeration of monotone domain assignments
  over a shared pool of ``max_domain_size`` individuals and of letter
  interpretations, guarded by an evaluation budget.

Enumeration order is fixed (frames by increasing index, worlds in
frame order, valuations by ascending bit pattern, domains smallest
first) so the countermodel returned is deterministic.

``in_L0`` and ``in_L1`` search the even chains and even rings up to a
frame bound, by default modal depth plus three.  A refutation is
final; for formulas with only 0-ary letters, exhausting the default
bound settles membership outright, while letters of positive arity
leave the verdict bounded by the searched domain sizes, which is why
the no-countermodel verdict carries its bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .frames import chain_frame, reachable_within, ring_frame
from .kripke import Frame, KripkeModel, PredicateFrame, eval_modal
from .syntax import (
    ModalFormula, MAtom, MAnd, MBox, MFalse, MForall, MNot,
    is_closed, letter_arities, mk_alpha, mk_beta, modal_depth,
)

DEFAULT_DOMAIN_SIZE = 2
DEFAULT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """The search hit its evaluation cap before reaching an answer."""


@dataclass(frozen=True)
class SearchBounds:
    max_frame_index: int
    max_domain_size: int = DEFAULT_DOMAIN_SIZE
    budget: int = DEFAULT_BUDGET
    letters: tuple[tuple[str, int], ...] | None = None

    def __post_init__(self):
        if self.max_domain_size < 1:
            raise ValueError("domains are non-empty, so max_domain_size >= 1")


@dataclass(frozen=True)
class Refuted:
    """Sound and final: the model falsifies the formula at the world."""
    model: KripkeModel
    world: str
    formula: ModalFormula


@dataclass(frozen=True)
class NoCountermodelUpTo:
    bounds: SearchBounds


Verdict = Refuted | NoCountermodelUpTo


def default_bounds(formula: ModalFormula) -> SearchBounds:
    return SearchBounds(
        max_frame_index=modal_depth(formula) + 3,
        letters=tuple(sorted(letter_arities(formula).items())))


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.spent = 0

    def charge(self, n: int) -> None:
        self.spent += n
        if self.limit is not None and self.spent > self.limit:
            raise BudgetExceededError(
                f"evaluation budget of {self.limit} exceeded")


def _as_budget(budget) -> _Budget:
    if isinstance(budget, _Budget):
        return budget
    return _Budget(budget)


# ---------------------------------------------------------------------------
# 0-ary fast path: every valuation at once, one bit each

@lru_cache(maxsize=8)
def _columns(nbits: int) -> tuple[tuple[int, ...], int]:
    """Truth-table columns over 2**nbits valuations.

    Bit v of column q is set iff valuation number v makes atom q true.
    """
    n_vals = 1 << nbits
    full = (1 << n_vals) - 1
    cols = []
    for q in range(nbits):
        col = ((1 << (1 << q)) - 1) << (1 << q)
        span = 1 << (q + 1)
        while span < n_vals:
            col |= col << span
            span <<= 1
        cols.append(col)
    return tuple(cols), full


def _zeroary_countermodel(frame: Frame, w: str, formula: ModalFormula,
                          letters: list[str], budget: _Budget) -> KripkeModel | None:
    relevant_set = reachable_within(frame, w, modal_depth(formula))
    relevant = [u for u in frame.worlds if u in relevant_set]
    widx = {u: i for i, u in enumerate(relevant)}
    succ = {u: [v for v in frame.successors(u) if v in relevant_set]
            for u in relevant}
    nworlds = len(relevant)
    bits = len(letters) * nworlds
    budget.charge(1 << bits)
    cols, full = _columns(bits)
    lidx = {p: i for i, p in enumerate(letters)}
    memo: dict[tuple[ModalFormula, str], int] = {}

    def mask(node: ModalFormula, u: str) -> int:
        key = (node, u)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, MFalse):
            r = 0
        elif isinstance(node, MAtom):
            r = cols[lidx[node.name] * nworlds + widx[u]]
        elif isinstance(node, MNot):
            r = full ^ mask(node.sub, u)
        elif isinstance(node, MAnd):
            r = mask(node.left, u) & mask(node.right, u)
        elif isinstance(node, MBox):
            r = full
            for v in succ[u]:
                r &= mask(node.sub, v)
                if not r:
                    break
        elif isinstance(node, MForall):
            # no individual variables can occur, domains are non-empty
            r = mask(node.sub, u)
        else:
            raise TypeError(f"not a modal formula: {node!r}")
        memo[key] = r
        return r

    result = mask(formula, w)
    if result == full:
        return None
    gap = result ^ full
    v = (gap & -gap).bit_length() - 1  # lowest failing valuation
    pframe = PredicateFrame(frame, {u: frozenset({"a0"}) for u in frame.worlds})
    interp = {}
    for p in letters:
        for u in relevant:
            if v >> (lidx[p] * nworlds + widx[u]) & 1:
                interp[(u, p)] = {()}
    return KripkeModel(pframe, interp, {p: 0 for p in letters})


# ---------------------------------------------------------------------------
# General path: explicit models over a small individual pool

def _monotone_assignments(frame: Frame, pool: tuple[str, ...]):
    subsets: list[frozenset[str]] = []
    for size in range(1, len(pool) + 1):
        subsets.extend(frozenset(c) for c in itertools.combinations(pool, size))
    preds: dict[str, list[str]] = {w: [] for w in frame.worlds}
    for u, v in frame.rel:
        preds[v].append(u)
    worlds = frame.worlds
    acc: dict[str, frozenset[str]] = {}

    def rec(i: int):
        if i == len(worlds):
            yield dict(acc)
            return
        u = worlds[i]
        for s in subsets:
            if any(not (acc[p] <= s) for p in preds[u] if p in acc):
                continue
            if any(not (s <= acc[v]) for v in frame.successors(u) if v in acc):
                continue
            acc[u] = s
            yield from rec(i + 1)
            del acc[u]

    yield from rec(0)


def _general_countermodel(frame: Frame, w: str, formula: ModalFormula,
                          arities: dict[str, int], d: int,
                          budget: _Budget) -> KripkeModel | None:
    pool = tuple(f"a{i}" for i in range(d))
    letters = sorted(arities.items())
    for domain in _monotone_assignments(frame, pool):
        slots = []
        for p, n in letters:
            for u in frame.worlds:
                tuples = sorted(itertools.product(sorted(domain[u]), repeat=n))
                slots.append((u, p, tuples))
        pframe = PredicateFrame(frame, domain)
        for combo in itertools.product(
                *(range(1 << len(tuples)) for _, _, tuples in slots)):
            budget.charge(1)
            interp = {}
            for (u, p, tuples), chosen in zip(slots, combo):
                if chosen:
                    interp[(u, p)] = {tuples[t] for t in range(len(tuples))
                                      if chosen >> t & 1}
            model = KripkeModel(pframe, interp, dict(letters))
            if not eval_modal(model, w, {}, formula):
                return model
    return None


# ---------------------------------------------------------------------------
# Public surface

def find_countermodel_at(frame: Frame, w: str, formula: ModalFormula,
                         d: int = 1, budget=DEFAULT_BUDGET) -> KripkeModel | None:
    """First model (in the fixed enumeration order) falsifying the
    formula at ``w``, or None if every searched model satisfies it."""
    if d < 1:
        raise ValueError("domain bound must be at least 1")
    if not is_closed(formula):
        raise ValueError("validity search needs a closed formula")
    arities = letter_arities(formula)
    tracker = _as_budget(budget)
    if all(n == 0 for n in arities.values()):
        return _zeroary_countermodel(frame, w, formula, sorted(arities), tracker)
    return _general_countermodel(frame, w, formula, arities, d, tracker)


def frame_validity_at(frame: Frame, w: str, formula: ModalFormula,
                      d: int = 1, budget=DEFAULT_BUDGET) -> bool:
    """True iff the formula holds at ``w`` in every searched model.

    For formulas with only 0-ary letters the answer is exact and ``d``
    is ignored; otherwise models draw their individuals from a shared
    pool of ``d`` elements.
    """
    if not frame.has_world(w):
        raise ValueError(f"unknown world {w!r}")
    return find_countermodel_at(frame, w, formula, d, budget) is None


def frame_validity(frame: Frame, formula: ModalFormula,
                   d: int = 1, budget=DEFAULT_BUDGET) -> bool:
    """Validity at every world of the frame."""
    tracker = _as_budget(budget)
    return all(find_countermodel_at(frame, w, formula, d, tracker) is None
               for w in frame.worlds)


def _membership_search(formula: ModalFormula, bounds: SearchBounds | None,
                       generator) -> Verdict:
    if not is_closed(formula):
        raise ValueError("membership is defined for closed formulas only")
    if bounds is None:
        bounds = default_bounds(formula)
    tracker = _Budget(bounds.budget)
    for m in range(2, bounds.max_frame_index + 1, 2):
        frame = generator(m)
        for w in frame.worlds:
            model = find_countermodel_at(frame, w, formula,
                                         bounds.max_domain_size, tracker)
            if model is not None:
                assert eval_modal(model, w, {}, formula) is False
                return Refuted(model, w, formula)
    return NoCountermodelUpTo(bounds)


def in_L0(formula: ModalFormula, bounds: SearchBounds | None = None) -> Verdict:
    """Bounded membership in the logic of even chains with a dead end."""
    return _membership_search(formula, bounds, chain_frame)


def in_L1(formula: ModalFormula, bounds: SearchBounds | None = None) -> Verdict:
    """Bounded membership in the logic of even rings with a dead end."""
    return _membership_search(formula, bounds, ring_frame)


def parity_table(family: str, n_max: int) -> list[tuple[int, bool]]:
    """Membership of the negated family formulas, one row per index.

    True in a row (n, b) means the negation of the n-th family formula
    belongs to the respective logic; by the small-frame bound these
    letterless cases are decided exactly.
    """
    if family == "alpha":
        return [(n, isinstance(in_L0(MNot(mk_alpha(n))), NoCountermodelUpTo))
                for n in range(1, n_max + 1)]
    if family == "beta":
        return [(n, isinstance(in_L1(MNot(mk_beta(n))), NoCountermodelUpTo))
                for n in range(2, n_max + 1)]
    raise ValueError(f"unknown family {family!r}")

"""Independent reference implementations the tests check against.

Each oracle is deliberately written on a different plan from the
library code path it is used to check: plain recursion with copied
environments instead of mutation, explicit product enumeration instead
of bit patterns, type comparison instead of game search.
"""

import itertools
from functools import lru_cache

from modalkit.kripke import ClassicalStructure, Frame, KripkeModel, PredicateFrame
from modalkit.syntax import (
    FAnd, FAtom, FEq, FFalse, FForall, FNot,
    MAnd, MAtom, MBox, MFalse, MForall, MNot,
    letter_arities,
)


def eval_modal_reference(model, w, g, f):
    if isinstance(f, MAtom):
        return tuple(g[a] for a in f.args) in model.interp.get((w, f.name), frozenset())
    if isinstance(f, MFalse):
        return False
    if isinstance(f, MNot):
        return not eval_modal_reference(model, w, g, f.sub)
    if isinstance(f, MAnd):
        return (eval_modal_reference(model, w, g, f.left)
                and eval_modal_reference(model, w, g, f.right))
    if isinstance(f, MBox):
        return all(eval_modal_reference(model, v, g, f.sub)
                   for v in model.frame.successors(w))
    if isinstance(f, MForall):
        return all(eval_modal_reference(model, w, {**g, f.var: e}, f.sub)
                   for e in model.pframe.domain[w])
    raise TypeError(f)


def eval_fol_reference(structure, g, f):
    if isinstance(f, FAtom):
        return tuple(g[a] for a in f.args) in structure.relations[f.name]
    if isinstance(f, FEq):
        return g[f.left] == g[f.right]
    if isinstance(f, FFalse):
        return False
    if isinstance(f, FNot):
        return not eval_fol_reference(structure, g, f.sub)
    if isinstance(f, FAnd):
        return (eval_fol_reference(structure, g, f.left)
                and eval_fol_reference(structure, g, f.right))
    if isinstance(f, FForall):
        return all(eval_fol_reference(structure, {**g, f.var: e}, f.sub)
                   for e in structure.universe)
    raise TypeError(f)


def validity_at_reference(frame, w, formula):
    """Brute-force validity for formulas with 0-ary letters only:
    every valuation is tried explicitly, one nested product."""
    letters = sorted(letter_arities(formula))
    pframe = PredicateFrame(frame, {u: frozenset({"a0"}) for u in frame.worlds})
    cells = [(u, p) for p in letters for u in frame.worlds]
    for bits in itertools.product((False, True), repeat=len(cells)):
        interp = {cell: {()} for cell, bit in zip(cells, bits) if bit}
        model = KripkeModel(pframe, interp, {p: 0 for p in letters})
        if not eval_modal_reference(model, w, {}, formula):
            return False
    return True


def frames_isomorphic(a: Frame, b: Frame) -> bool:
    """Permutation search for a relation-preserving bijection."""
    if len(a.worlds) != len(b.worlds) or len(a.rel) != len(b.rel):
        return False
    for perm in itertools.permutations(b.worlds):
        rename = dict(zip(a.worlds, perm))
        if all(((rename[u], rename[v]) in b.rel) == ((u, v) in a.rel)
               for u in a.worlds for v in a.worlds):
            return True
    return False


def _atomic_type(structure, tup):
    r = structure.relations["R"]
    return tuple(
        (tup[i] == tup[j], (tup[i], tup[j]) in r)
        for i in range(len(tup)) for j in range(len(tup)))


def rank_type(structure, tup, rank, _memo=None):
    """Nested-type invariant characterising rank-``rank`` equivalence."""
    if _memo is None:
        _memo = {}
    key = (tup, rank)
    if key in _memo:
        return _memo[key]
    at = _atomic_type(structure, tup)
    if rank == 0:
        out = at
    else:
        out = (at, frozenset(rank_type(structure, tup + (c,), rank - 1, _memo)
                             for c in structure.universe))
    _memo[key] = out
    return out


def ef_equivalent_reference(a: ClassicalStructure, b: ClassicalStructure,
                            rank: int) -> bool:
    """Agreement on all sentences of quantifier rank <= rank, via types."""
    return rank_type(a, (), rank) == rank_type(b, (), rank)

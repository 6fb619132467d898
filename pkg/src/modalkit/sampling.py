"""Seeded random generators for frames, models, and formulas.

Everything takes an explicit ``random.Random`` so that callers (the
test-suite and the report command) are reproducible run to run.
"""

from __future__ import annotations

import random

from .kripke import Frame, KripkeModel, PredicateFrame
from .syntax import (
    ModalFormula, MAtom, MAnd, MBox, MFalse, MForall, MNot,
    m_diamond, m_implies, m_or,
)


def random_frame(rng: random.Random, max_worlds: int = 7) -> Frame:
    n = rng.randint(1, max_worlds)
    worlds = [f"w{i}" for i in range(1, n + 1)]
    p = rng.uniform(0.1, 0.5)
    edges = [(u, v) for u in worlds for v in worlds if rng.random() < p]
    return Frame(worlds, edges)


def random_monotone_model(rng: random.Random, frame: Frame,
                          letters: dict[str, int],
                          max_pool: int = 3) -> KripkeModel:
    """A model on ``frame`` with expanding domains over a small pool."""
    pool = [f"a{i}" for i in range(rng.randint(1, max_pool))]
    domain = {w: {rng.choice(pool)} | {e for e in pool if rng.random() < 0.4}
              for w in frame.worlds}
    # close off under accessibility so domains only grow
    changed = True
    while changed:
        changed = False
        for u, v in frame.rel:
            if not domain[u] <= domain[v]:
                domain[v] |= domain[u]
                changed = True
    pframe = PredicateFrame(frame, {w: frozenset(es) for w, es in domain.items()})
    interp: dict[tuple[str, str], set[tuple[str, ...]]] = {}
    for p, arity in letters.items():
        for w in frame.worlds:
            tuples = set()
            elems = sorted(domain[w])
            for t in _tuples(elems, arity):
                if rng.random() < 0.5:
                    tuples.add(t)
            if tuples:
                interp[(w, p)] = tuples
    return KripkeModel(pframe, interp, dict(letters))


def _tuples(elems: list[str], arity: int):
    if arity == 0:
        yield ()
        return
    for head in elems:
        for rest in _tuples(elems, arity - 1):
            yield (head,) + rest


def random_closed_modal(rng: random.Random, letters: dict[str, int],
                        max_md: int = 3, size: int = 8) -> ModalFormula:
    """A closed formula over the given letters, modal depth <= max_md.

    Atom arguments come from the quantifier scope; letters whose arity
    exceeds the current scope fall back to falsum, so the result never
    has free variables.
    """
    var_pool = ["y0", "y1", "y2"]

    def gen(md_left: int, scope: tuple[str, ...], fuel: int) -> ModalFormula:
        if fuel <= 1:
            return leaf(scope)
        moves = ["not", "and", "leaf", "forall"]
        if md_left > 0:
            moves += ["box", "dia", "box"]
        kind = rng.choice(moves)
        if kind == "not":
            return MNot(gen(md_left, scope, fuel - 1))
        if kind == "and":
            split = rng.randint(1, fuel - 1)
            return MAnd(gen(md_left, scope, split), gen(md_left, scope, fuel - split))
        if kind == "box":
            return MBox(gen(md_left - 1, scope, fuel - 1))
        if kind == "dia":
            return m_diamond(gen(md_left - 1, scope, fuel - 1))
        if kind == "forall":
            v = rng.choice(var_pool)
            return MForall(v, gen(md_left, scope + (v,), fuel - 1))
        return leaf(scope)

    def leaf(scope: tuple[str, ...]) -> ModalFormula:
        options = [p for p, n in letters.items() if n <= len(scope)]
        if not options or rng.random() < 0.2:
            return MFalse()
        p = rng.choice(sorted(options))
        args = tuple(rng.choice(scope) for _ in range(letters[p]))
        return MAtom(p, args)

    return gen(max_md, (), size)


def random_zeroary_modal(rng: random.Random, names: list[str],
                         max_md: int = 2, size: int = 7) -> ModalFormula:
    """A propositional modal formula (0-ary letters and falsum only)."""

    def gen(md_left: int, fuel: int) -> ModalFormula:
        if fuel <= 1:
            return MFalse() if rng.random() < 0.25 else MAtom(rng.choice(names))
        moves = ["not", "and", "or", "imp", "leaf"]
        if md_left > 0:
            moves += ["box", "dia", "box", "dia"]
        kind = rng.choice(moves)
        if kind == "not":
            return MNot(gen(md_left, fuel - 1))
        if kind in ("and", "or", "imp"):
            split = rng.randint(1, fuel - 1)
            a, b = gen(md_left, split), gen(md_left, fuel - split)
            return {"and": MAnd, "or": m_or, "imp": m_implies}[kind](a, b)
        if kind == "box":
            return MBox(gen(md_left - 1, fuel - 1))
        if kind == "dia":
            return m_diamond(gen(md_left - 1, fuel - 1))
        return gen(md_left, 1)

    return gen(max_md, size)

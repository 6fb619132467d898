"""Ehrenfeucht-Fraisse games over finite structures with one binary
relation.

In each round Spoiler picks an element of either structure and
Duplicator answers in the other; Duplicator survives as long as the
chosen pairs form a partial isomorphism with respect to R and
equality.  Duplicator having a winning strategy for r rounds is
equivalent to the two structures agreeing on every sentence of
quantifier rank at most r over R and equality.

The solver is an exhaustive alternating search.  Positions are the
set of matched pairs; for every position the table keeps the largest
round count known winnable and the smallest known lost, which both
memoises repeat visits and makes rank scans incremental (winning r+1
rounds implies winning r).  Duplicator's candidate replies are tried
in order of a cheap similarity score so that winning lines are found
early; exactness does not depend on the ordering.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .frames import chain_frame
from .kripke import ClassicalStructure

_FAR = 31  # distance cap for the reply-ordering heuristic


class GameBudgetError(RuntimeError):
    """Visited-position cap hit before the game value was settled."""


@dataclass(frozen=True)
class GamePosition:
    left: ClassicalStructure
    right: ClassicalStructure
    pairs: tuple[tuple[str, str], ...]
    rounds: int

    def is_partial_isomorphism(self) -> bool:
        la = {e: s for e, s in _adjacency(self.left).items()}
        ra = {e: s for e, s in _adjacency(self.right).items()}
        for x, y in self.pairs:
            for u, v in self.pairs:
                if (u == x) != (v == y):
                    return False
                if (x in la[u]) != (y in ra[v]):
                    return False
                if (u in la[x]) != (v in ra[y]):
                    return False
        return True


def _check_signature(s: ClassicalStructure) -> None:
    if set(s.relations) != {"R"} or s.arities.get("R") != 2:
        raise ValueError(
            "game structures must interpret exactly the binary letter R")


def _adjacency(s: ClassicalStructure) -> dict[str, frozenset[str]]:
    out: dict[str, set[str]] = {e: set() for e in s.universe}
    for u, v in s.relations["R"]:
        out[u].add(v)
    return {e: frozenset(vs) for e, vs in out.items()}


def _distances(universe, succ) -> dict[tuple[str, str], int]:
    dist: dict[tuple[str, str], int] = {}
    for src in universe:
        dist[(src, src)] = 0
        frontier = deque([src])
        while frontier:
            u = frontier.popleft()
            du = dist[(src, u)]
            for v in succ[u]:
                if (src, v) not in dist:
                    dist[(src, v)] = du + 1
                    frontier.append(v)
    return dist


class _Solver:
    def __init__(self, left: ClassicalStructure, right: ClassicalStructure,
                 budget: int | None = None):
        _check_signature(left)
        _check_signature(right)
        self.a_univ = left.universe
        self.b_univ = right.universe
        self.a_succ = _adjacency(left)
        self.b_succ = _adjacency(right)
        self.a_pred = _invert(self.a_succ, left.universe)
        self.b_pred = _invert(self.b_succ, right.universe)
        self.a_dist = _distances(left.universe, self.a_succ)
        self.b_dist = _distances(right.universe, self.b_succ)
        self.budget = budget
        self.visited = 0
        # pairs -> (max rounds known won, min rounds known lost or None)
        self.memo: dict[frozenset, tuple[int, int | None]] = {}

    def _degree(self, on_left: bool, e: str):
        succ = self.a_succ if on_left else self.b_succ
        pred = self.a_pred if on_left else self.b_pred
        return (len(succ[e]), len(pred[e]), e in succ[e])

    def _score(self, on_left_pick: bool, x: str, y: str, pairs) -> int:
        # x lives where Spoiler picked, y on the answering side
        s = 0 if self._degree(on_left_pick, x) == self._degree(not on_left_pick, y) else 64
        xd = self.a_dist if on_left_pick else self.b_dist
        yd = self.b_dist if on_left_pick else self.a_dist
        for u, v in pairs:
            p, q = (u, v) if on_left_pick else (v, u)
            s += abs(min(xd.get((p, x), _FAR), _FAR) - min(yd.get((q, y), _FAR), _FAR))
            s += abs(min(xd.get((x, p), _FAR), _FAR) - min(yd.get((y, q), _FAR), _FAR))
        return s

    def _consistent(self, pairs: frozenset, x: str, y: str) -> bool:
        if (x in self.a_succ[x]) != (y in self.b_succ[y]):
            return False
        for u, v in pairs:
            if (u == x) != (v == y):
                return False
            if (x in self.a_succ[u]) != (y in self.b_succ[v]):
                return False
            if (u in self.a_succ[x]) != (v in self.b_succ[y]):
                return False
        return True

    def wins(self, pairs: frozenset, rounds: int) -> bool:
        """Does Duplicator win the remaining game from this position?"""
        if rounds == 0:
            return True
        known_won, known_lost = self.memo.get(pairs, (0, None))
        if rounds <= known_won:
            return True
        if known_lost is not None and rounds >= known_lost:
            return False
        self.visited += 1
        if self.budget is not None and self.visited > self.budget:
            raise GameBudgetError(f"visited more than {self.budget} positions")
        result = True
        for on_left, x in self._spoiler_moves():
            answered = False
            replies = self.b_univ if on_left else self.a_univ
            ordered = sorted(replies,
                             key=lambda y: (self._score(on_left, x, y, pairs), replies.index(y)))
            for y in ordered:
                xx, yy = (x, y) if on_left else (y, x)
                if not self._consistent(pairs, xx, yy):
                    continue
                if self.wins(pairs | {(xx, yy)}, rounds - 1):
                    answered = True
                    break
            if not answered:
                result = False
                break
        known_won, known_lost = self.memo.get(pairs, (0, None))
        if result:
            known_won = max(known_won, rounds)
        else:
            known_lost = rounds if known_lost is None else min(known_lost, rounds)
        self.memo[pairs] = (known_won, known_lost)
        return result

    def _spoiler_moves(self):
        for x in self.a_univ:
            yield True, x
        for x in self.b_univ:
            yield False, x


def _invert(succ, universe) -> dict[str, frozenset[str]]:
    out: dict[str, set[str]] = {e: set() for e in universe}
    for u, vs in succ.items():
        for v in vs:
            out[v].add(u)
    return {e: frozenset(vs) for e, vs in out.items()}


def duplicator_wins(left: ClassicalStructure, right: ClassicalStructure,
                    rounds: int, budget: int | None = None) -> bool:
    """True iff Duplicator has a winning strategy for ``rounds`` rounds,
    i.e. the structures agree on all sentences of quantifier rank up to
    ``rounds``."""
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    return _Solver(left, right, budget).wins(frozenset(), rounds)


def smallest_distinguishing_rank(left: ClassicalStructure,
                                 right: ClassicalStructure,
                                 max_rank: int,
                                 budget: int | None = None) -> int | None:
    """Least r <= max_rank at which Spoiler wins, or None."""
    solver = _Solver(left, right, budget)
    for r in range(1, max_rank + 1):
        if not solver.wins(frozenset(), r):
            return r
    return None


@dataclass(frozen=True)
class ChainParityReport:
    rounds: int
    left_worlds: int
    right_worlds: int
    duplicator_wins: bool


def chain_parity_witness(n: int, rounds: int | None = None,
                         budget: int | None = None) -> ChainParityReport:
    """Play the game on the chains of lengths 2**n and 2**n + 1.

    With ``rounds`` left at its default n, Duplicator wins: rank-n
    sentences cannot separate the two chain-with-dead-end frames, the
    finite kernel of the even-versus-odd indistinguishability
    argument.  Larger round counts eventually flip the answer since
    the structures differ in size.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    left = ClassicalStructure.from_frame(chain_frame(2 ** n))
    right = ClassicalStructure.from_frame(chain_frame(2 ** n + 1))
    r = n if rounds is None else rounds
    return ChainParityReport(
        rounds=r,
        left_worlds=len(left.universe),
        right_worlds=len(right.universe),
        duplicator_wins=duplicator_wins(left, right, r, budget),
    )

"""Frame family generators and structural frame predicates.

The two families everything else is built from:

* ``chain_frame(n)``: worlds w1 .. wn in a line plus a dead end wstar
  hanging off w1;
* ``ring_frame(n)``: the same line closed into a cycle (wn sees w1),
  again with wstar hanging off w1.

``marked_chain_frame(k)`` decorates the even chain of length 2k with
one extra predecessor per evenly indexed world, which is what the
closed first-order sentence of ``mk_c0star_axiom`` recognises.

``structural_characterization`` evaluates, per world, the purely
graph-theoretic condition equivalent to validity of each formula
family; exhaustive validity search is the oracle for it in the tests,
never the implementation.
"""

from __future__ import annotations

import enum
from collections import deque

from .kripke import Frame, KripkeModel, PredicateFrame
from .syntax import (
    FolFormula, FAtom, FEq, FForall, FAnd, FNot,
    f_exists, f_implies, f_iff, f_neq, f_or, fold_and,
)


class FrameFamily(enum.Enum):
    CHAIN = "chain"
    RING = "ring"
    MARKED_CHAIN = "marked"
    DISJOINT_UNION = "union"


UNION_SEP = ":"


def chain_frame(n: int) -> Frame:
    """Line w1 -> w2 -> ... -> wn with the dead end wstar under w1."""
    if n < 1:
        raise ValueError("chain_frame requires n >= 1")
    worlds = [f"w{i}" for i in range(1, n + 1)] + ["wstar"]
    edges = [(f"w{i}", f"w{i + 1}") for i in range(1, n)]
    edges.append(("w1", "wstar"))
    return Frame(worlds, edges)


def ring_frame(n: int) -> Frame:
    """Cycle w1 -> ... -> wn -> w1 with the dead end wstar under w1."""
    if n < 2:
        raise ValueError("ring_frame requires n >= 2")
    worlds = [f"w{i}" for i in range(1, n + 1)] + ["wstar"]
    edges = [(f"w{i}", f"w{i + 1}") for i in range(1, n)]
    edges.append((f"w{n}", "w1"))
    edges.append(("w1", "wstar"))
    return Frame(worlds, edges)


def disjoint_union(frames: list[Frame]) -> Frame:
    """Tagged union; world u of component i becomes ``c{i}:u``."""
    if not frames:
        raise ValueError("disjoint_union requires at least one frame")
    worlds: list[str] = []
    edges: list[tuple[str, str]] = []
    for i, f in enumerate(frames):
        tag = f"c{i}{UNION_SEP}"
        worlds.extend(tag + w for w in f.worlds)
        edges.extend((tag + u, tag + v) for u, v in f.rel)
    return Frame(worlds, edges)


def union_world(component: int, w: str) -> str:
    return f"c{component}{UNION_SEP}{w}"


def marked_chain_frame(k: int) -> Frame:
    """chain_frame(2k) plus a marker wstar2j seeing each w2j."""
    if k < 1:
        raise ValueError("marked_chain_frame requires k >= 1")
    base = chain_frame(2 * k)
    worlds = list(base.worlds) + [f"wstar{2 * j}" for j in range(1, k + 1)]
    edges = list(base.rel) + [(f"wstar{2 * j}", f"w{2 * j}") for j in range(1, k + 1)]
    return Frame(worlds, edges)


# ---------------------------------------------------------------------------
# Reachability helpers

def dead_ends(frame: Frame) -> frozenset[str]:
    return frozenset(w for w in frame.worlds if not frame.successors(w))


def reachable_within(frame: Frame, w: str, depth: int | None = None) -> frozenset[str]:
    """Worlds reachable from w in at most ``depth`` steps (w included)."""
    if not frame.has_world(w):
        raise ValueError(f"unknown world {w!r}")
    seen = {w}
    frontier = deque([(w, 0)])
    while frontier:
        u, d = frontier.popleft()
        if depth is not None and d >= depth:
            continue
        for v in frame.successors(u):
            if v not in seen:
                seen.add(v)
                frontier.append((v, d + 1))
    return frozenset(seen)


def reach_exact(frame: Frame, w: str, steps: int) -> frozenset[str]:
    """Endpoints of walks of length exactly ``steps`` starting at w."""
    layer = {w}
    for _ in range(steps):
        layer = {v for u in layer for v in frame.successors(u)}
    return frozenset(layer)


def is_rooted(frame: Frame) -> str | None:
    """A world seeing every world under the reflexive-transitive
    closure, least by identifier order, or None."""
    n = len(frame.worlds)
    for w in sorted(frame.worlds):
        if len(reachable_within(frame, w)) == n:
            return w
    return None


def generated_subframe(frame: Frame, w: str) -> Frame:
    """Restriction to the worlds reachable from w."""
    keep = reachable_within(frame, w)
    worlds = tuple(u for u in frame.worlds if u in keep)
    rel = {(u, v) for u, v in frame.rel if u in keep and v in keep}
    return Frame(worlds, rel)


def truncate_depth(model: KripkeModel, w: str, depth: int) -> KripkeModel:
    """Restrict a model to the worlds within ``depth`` steps of w."""
    keep = reachable_within(model.frame, w, depth)
    worlds = tuple(u for u in model.frame.worlds if u in keep)
    rel = {(u, v) for u, v in model.frame.rel if u in keep and v in keep}
    pframe = PredicateFrame(
        Frame(worlds, rel),
        {u: model.pframe.domain[u] for u in worlds})
    interp = {(u, p): ts for (u, p), ts in model.interp.items() if u in keep}
    return KripkeModel(pframe, interp, model.arities)


def classify_frame(frame: Frame, max_index: int = 64) -> FrameFamily | None:
    """Recover the generator tag of a frame, if any produced it."""
    for n in range(1, max_index + 1):
        if frame == chain_frame(n):
            return FrameFamily.CHAIN
    for n in range(2, max_index + 1):
        if frame == ring_frame(n):
            return FrameFamily.RING
    for k in range(1, max_index // 2 + 1):
        if frame == marked_chain_frame(k):
            return FrameFamily.MARKED_CHAIN
    if all(UNION_SEP in w for w in frame.worlds):
        return FrameFamily.DISJOINT_UNION
    return None


# ---------------------------------------------------------------------------
# Structural characterizations of the formula families

def _sees_dead_end(frame: Frame, w: str) -> bool:
    ends = dead_ends(frame)
    return any(v in ends for v in frame.successors(w))


def _beta_structural(frame: Frame, w: str, n: int) -> bool:
    # sees a dead end now, again after exactly n steps, and at no
    # intermediate step count k in 2 .. n-1
    if not _sees_dead_end(frame, w):
        return False
    sees = {u for u in frame.worlds if _sees_dead_end(frame, u)}
    if not (reach_exact(frame, w, n) & sees):
        return False
    return all(not (reach_exact(frame, w, k) & sees) for k in range(2, n))


def structural_characterization(frame: Frame, w: str, family: str, *,
                                n: int | None = None, k: int | None = None) -> bool:
    """Graph-theoretic equivalent, at world w, of a family's validity.

    Families: ``alpha`` (n), ``beta`` (n), ``gamma``, ``delta`` (k, n),
    ``epsilon`` (n), ``alt2``, ``zeta``.
    """
    if not frame.has_world(w):
        raise ValueError(f"unknown world {w!r}")
    ends = dead_ends(frame)
    if family == "alpha":
        if n is None or n < 1:
            raise ValueError("alpha needs n >= 1")
        return bool(ends & set(frame.successors(w))) and bool(ends & reach_exact(frame, w, n))
    if family == "beta":
        if n is None or n < 2:
            raise ValueError("beta needs n >= 2")
        return _beta_structural(frame, w, n)
    if family == "gamma":
        return _sees_dead_end(frame, w) or len(frame.successors(w)) <= 1
    if family == "delta":
        if k is None or k < 0 or n is None or n < 2:
            raise ValueError("delta needs k >= 0 and n >= 2")
        trigger = any(_beta_structural(frame, u, n) for u in reach_exact(frame, w, k))
        return (not trigger) or (w in reach_exact(frame, w, n))
    if family == "epsilon":
        if n is None or n < 2:
            raise ValueError("epsilon needs n >= 2")
        if not _beta_structural(frame, w, n):
            return True
        return reach_exact(frame, w, n) <= {w}
    if family == "alt2":
        return len(frame.successors(w)) <= 2
    if family == "zeta":
        return len(frame.successors(w)) <= 1
    raise ValueError(f"unknown formula family {family!r}")


# ---------------------------------------------------------------------------
# The marked-chain axiom

def c0star_conjuncts() -> dict[str, FolFormula]:
    """The four building blocks of the marked-chain sentence.

    ``no_transitive_step`` is closed; the bottom-part and degree
    conjuncts leave ``w1`` free, to be bound by the outer existential
    of ``mk_c0star_axiom``.
    """
    R = lambda a, b: FAtom("R", (a, b))

    phi1 = FAnd(
        FForall("x", FNot(R("x", "x"))),
        FForall("x", FForall("y", FForall("z", f_implies(
            FAnd(R("x", "y"), R("y", "z")), FNot(R("x", "z")))))))

    phi2 = f_exists("ws", f_exists("w2", f_exists("ws2", fold_and([
        FForall("x", f_iff(R("w1", "x"), f_or(FEq("x", "ws"), FEq("x", "w2")))),
        R("ws2", "w2"),
        FNot(f_exists("x", R("x", "w1"))),
        FNot(f_exists("x", R("x", "ws2"))),
        FForall("x", f_implies(R("x", "ws"), FEq("x", "w1"))),
        FNot(f_exists("x", R("ws", "x"))),
        f_neq("w1", "ws2"),
    ]))))

    phi3 = FAnd(
        FForall("x", f_implies(
            f_neq("x", "w1"),
            FNot(f_exists("y", f_exists("z", fold_and(
                [f_neq("y", "z"), R("x", "y"), R("x", "z")])))))),
        FForall("w", FNot(f_exists("x", f_exists("y", f_exists("z", fold_and([
            f_neq("x", "y"), f_neq("y", "z"), f_neq("x", "z"),
            R("x", "w"), R("y", "w"), R("z", "w"),
        ])))))))

    phi4 = FForall("w", f_implies(
        f_exists("y", f_exists("z", fold_and(
            [f_neq("y", "z"), R("y", "w"), R("z", "w")]))),
        f_or(
            FNot(f_exists("x", R("w", "x"))),
            f_exists("x", f_exists("y", f_exists("z", fold_and([
                R("w", "y"), R("y", "x"), R("z", "x"),
                f_neq("y", "z"), f_neq("x", "w"),
                FForall("u", f_implies(R("u", "y"), FEq("u", "w"))),
                FNot(f_exists("u", R("u", "z"))),
            ])))))))

    return {
        "no_transitive_step": phi1,
        "bottom_part": phi2,
        "degree_limits": phi3,
        "regular_extension": phi4,
    }


def mk_c0star_axiom() -> FolFormula:
    """Closed sentence satisfied exactly by the marked even chains
    (and their infinite relatives, outside this toolkit's scope)."""
    parts = c0star_conjuncts()
    return f_exists("w1", fold_and([
        parts["no_transitive_step"],
        parts["bottom_part"],
        parts["degree_limits"],
        parts["regular_extension"],
    ]))

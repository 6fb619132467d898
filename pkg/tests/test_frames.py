import random

import pytest

from modalkit.frames import (
    FrameFamily, c0star_conjuncts, chain_frame, classify_frame, dead_ends,
    disjoint_union, generated_subframe, is_rooted, marked_chain_frame,
    mk_c0star_axiom, reach_exact, reachable_within, ring_frame,
    structural_characterization, truncate_depth,
)
from modalkit.kripke import (
    ClassicalStructure, Frame, KripkeModel, PredicateFrame, eval_fol, eval_modal,
)
from modalkit.sampling import random_monotone_model, random_zeroary_modal
from modalkit.syntax import modal_depth, parse_modal
from modalkit.validity import frame_validity


def scan_dead_ends(frame):
    # oracle: direct successor-set scan
    return {w for w in frame.worlds if not any(u == w for u, _ in frame.rel)}


class TestGenerators:
    def test_chain_degenerate(self):
        f = chain_frame(1)
        assert len(f.worlds) == 2 and len(f.rel) == 1
        assert ("w1", "wstar") in f.rel

    def test_chain_four(self):
        f = chain_frame(4)
        assert len(f.worlds) == 5 and len(f.rel) == 4

    @pytest.mark.parametrize("n", range(2, 7))
    def test_chain_dead_ends(self, n):
        f = chain_frame(n)
        assert dead_ends(f) == {f"w{n}", "wstar"} == scan_dead_ends(f)

    def test_chain_rejects_zero(self):
        with pytest.raises(ValueError):
            chain_frame(0)

    def test_ring_two(self):
        f = ring_frame(2)
        assert len(f.worlds) == 3 and len(f.rel) == 3

    def test_ring_four(self):
        f = ring_frame(4)
        assert len(f.worlds) == 5 and len(f.rel) == 5
        assert dead_ends(f) == {"wstar"}

    @pytest.mark.parametrize("n", range(2, 7))
    def test_every_ring_world_reaches_the_branch_point(self, n):
        f = ring_frame(n)
        for i in range(1, n + 1):
            assert "w1" in reachable_within(f, f"w{i}")

    def test_ring_rejects_small(self):
        with pytest.raises(ValueError):
            ring_frame(1)

    def test_union_of_one(self):
        from oracles import frames_isomorphic
        u = disjoint_union([chain_frame(2)])
        assert frames_isomorphic(u, chain_frame(2))

    def test_union_sizes(self):
        chains = disjoint_union([chain_frame(2), chain_frame(4)])
        assert len(chains.worlds) == 8
        rings = disjoint_union([ring_frame(2), ring_frame(4)])
        assert len(rings.worlds) == 8

    def test_union_rejects_empty(self):
        with pytest.raises(ValueError):
            disjoint_union([])

    def test_marked_chain_small(self):
        f = marked_chain_frame(1)
        assert len(f.worlds) == 4 and len(f.rel) == 3
        assert ("wstar2", "w2") in f.rel
        g = marked_chain_frame(2)
        assert len(g.worlds) == 7 and len(g.rel) == 6

    @pytest.mark.parametrize("k", [1, 2])
    def test_marker_invisible_from_chain(self, k):
        marked = marked_chain_frame(k)
        plain = chain_frame(2 * k)
        for w in plain.worlds:
            assert generated_subframe(marked, w) == generated_subframe(plain, w)

    def test_classify(self):
        assert classify_frame(chain_frame(3)) is FrameFamily.CHAIN
        assert classify_frame(ring_frame(4)) is FrameFamily.RING
        assert classify_frame(marked_chain_frame(2)) is FrameFamily.MARKED_CHAIN
        assert classify_frame(disjoint_union([chain_frame(2)])) is FrameFamily.DISJOINT_UNION
        assert classify_frame(Frame(("a", "b"), {("a", "b"), ("b", "a")})) is None


class TestStructure:
    def test_rooted_chain(self):
        assert is_rooted(chain_frame(5)) == "w1"

    def test_rooted_ring_least_identifier(self):
        assert is_rooted(ring_frame(4)) == "w1"

    def test_union_not_rooted(self):
        assert is_rooted(disjoint_union([chain_frame(2), chain_frame(4)])) is None

    def test_total_relation_has_no_dead_ends(self):
        ws = ("a", "b")
        f = Frame(ws, {(u, v) for u in ws for v in ws})
        assert dead_ends(f) == frozenset()

    def test_generated_subframe_mid_chain(self):
        sub = generated_subframe(chain_frame(4), "w2")
        assert sub.worlds == ("w2", "w3", "w4")

    def test_generated_subframe_dead_end(self):
        sub = generated_subframe(ring_frame(3), "wstar")
        assert sub.worlds == ("wstar",) and not sub.rel

    def test_generated_subframe_at_root_is_identity(self):
        f = chain_frame(3)
        assert generated_subframe(f, "w1") == f

    def test_reach_exact_walks(self):
        f = ring_frame(2)
        assert reach_exact(f, "w1", 2) == {"w1"}
        assert reach_exact(f, "w1", 3) == {"w2", "wstar"}


class TestTruncation:
    def test_depth_zero(self):
        m = _singleton(chain_frame(3))
        cut = truncate_depth(m, "w2", 0)
        assert cut.frame.worlds == ("w2",)

    def test_deep_cut_is_generated_submodel(self):
        m = _singleton(chain_frame(4))
        cut = truncate_depth(m, "w2", 10)
        assert set(cut.frame.worlds) == set(reachable_within(m.frame, "w2"))

    def test_unknown_world(self):
        with pytest.raises(ValueError):
            truncate_depth(_singleton(chain_frame(2)), "nope", 1)

    def test_truth_preserved_at_cut_depth(self):
        rng = random.Random(23)
        for _ in range(120):
            base = (chain_frame(rng.randint(1, 5)) if rng.random() < 0.5
                    else ring_frame(rng.randint(2, 5)))
            m = random_monotone_model(rng, base, {"p": 0, "q": 0}, max_pool=2)
            phi = random_zeroary_modal(rng, ["p", "q"], max_md=3)
            w = rng.choice(base.worlds)
            cut = truncate_depth(m, w, modal_depth(phi))
            assert eval_modal(m, w, {}, phi) == eval_modal(cut, w, {}, phi)


def _singleton(frame):
    return KripkeModel(
        PredicateFrame(frame, {w: frozenset({"a0"}) for w in frame.worlds}), {})


class TestStructuralCharacterization:
    def test_alpha_on_chain(self):
        assert structural_characterization(chain_frame(4), "w1", "alpha", n=3)

    def test_beta_on_ring(self):
        assert structural_characterization(ring_frame(4), "w1", "beta", n=4)

    def test_alt2_on_ring(self):
        assert structural_characterization(ring_frame(4), "w2", "alt2")

    def test_unknown_family(self):
        with pytest.raises(ValueError, match="family"):
            structural_characterization(chain_frame(1), "w1", "theta")

    @pytest.mark.parametrize("m", range(1, 7))
    def test_alpha_parity_over_even_chains(self, m):
        from modalkit.syntax import MNot, mk_alpha
        neg = MNot(mk_alpha(m))
        valid_everywhere = all(
            frame_validity(chain_frame(two_n), neg) for two_n in (2, 4, 6, 8))
        assert valid_everywhere == (m % 2 == 0)

    @pytest.mark.parametrize("even", [2, 4, 6, 8])
    def test_ring_memberships_small(self, even):
        from modalkit.syntax import mk_alt2, mk_delta, mk_epsilon, mk_gamma
        ring = ring_frame(even)
        for f in [mk_alt2(), mk_gamma(), mk_delta(1, 2), mk_epsilon(2)]:
            assert frame_validity(ring, f)


class TestMarkedChainAxiom:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_marked_chains_satisfy(self, k):
        s = ClassicalStructure.from_frame(marked_chain_frame(k))
        assert eval_fol(s, {}, mk_c0star_axiom()) is True

    def test_each_conjunct_holds_on_smallest(self):
        s = ClassicalStructure.from_frame(marked_chain_frame(1))
        parts = c0star_conjuncts()
        env = {"w1": "w1"}
        assert eval_fol(s, env, parts["no_transitive_step"])
        assert eval_fol(s, env, parts["bottom_part"])
        assert eval_fol(s, env, parts["degree_limits"])
        assert eval_fol(s, env, parts["regular_extension"])

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_plain_chains_fail(self, n):
        s = ClassicalStructure.from_frame(chain_frame(n))
        assert eval_fol(s, {}, mk_c0star_axiom()) is False

    def test_reflexive_world_fails_irreflexivity(self):
        f = Frame(("u", "v"), {("u", "u"), ("u", "v")})
        s = ClassicalStructure.from_frame(f)
        assert eval_fol(s, {}, c0star_conjuncts()["no_transitive_step"]) is False
        assert eval_fol(s, {}, mk_c0star_axiom()) is False

    def test_odd_marked_chain_fails(self):
        # markers on the even positions of an odd chain leave the top
        # world unmarked, which the extension step rules out
        base = chain_frame(5)
        worlds = list(base.worlds) + ["wstar2", "wstar4"]
        edges = list(base.rel) + [("wstar2", "w2"), ("wstar4", "w4")]
        s = ClassicalStructure.from_frame(Frame(worlds, edges))
        assert eval_fol(s, {}, mk_c0star_axiom()) is False

import random

import pytest

from modalkit.frames import chain_frame, ring_frame
from modalkit.kripke import eval_modal
from modalkit.sampling import random_frame, random_zeroary_modal
from modalkit.syntax import (
    MBox, MFalse, MNot, mk_alpha, mk_alt2, mk_beta, mk_delta, mk_epsilon,
    mk_gamma, parse_modal,
)
from modalkit.validity import (
    BudgetExceededError, NoCountermodelUpTo, Refuted, SearchBounds,
    default_bounds, find_countermodel_at, frame_validity, frame_validity_at,
    in_L0, in_L1, parity_table,
)

from oracles import eval_modal_reference, validity_at_reference


class TestFrameValidityAt:
    def test_alpha_three_fails_at_chain_root(self):
        assert frame_validity_at(chain_frame(4), "w1", MNot(mk_alpha(3))) is False

    def test_alt2_on_ring_everywhere(self):
        ring = ring_frame(4)
        for w in ring.worlds:
            assert frame_validity_at(ring, w, mk_alt2()) is True

    def test_box_falsum_at_dead_end(self):
        assert frame_validity_at(ring_frame(3), "wstar", MBox(MFalse())) is True

    def test_open_formula_rejected(self):
        with pytest.raises(ValueError):
            frame_validity_at(chain_frame(1), "w1", parse_modal("P(y)"))

    def test_agrees_with_product_enumeration(self):
        rng = random.Random(99)
        for _ in range(60):
            fr = random_frame(rng, max_worlds=4)
            phi = random_zeroary_modal(rng, ["p", "q"], max_md=2, size=6)
            w = rng.choice(fr.worlds)
            assert frame_validity_at(fr, w, phi) == validity_at_reference(fr, w, phi)

    def test_unary_letter_search(self):
        tautology = parse_modal("forall y. (P(y) | ~P(y))")
        assert frame_validity_at(chain_frame(1), "w1", tautology, d=2) is True
        shrinking = parse_modal("(forall y. P(y)) -> [] forall y. P(y)")
        assert frame_validity_at(chain_frame(1), "w1", shrinking, d=2) is False

    def test_budget_error(self):
        with pytest.raises(BudgetExceededError):
            frame_validity_at(chain_frame(2), "w1", mk_alt2(), budget=3)
        valid = parse_modal("forall y. (P(y) | ~P(y))")
        with pytest.raises(BudgetExceededError):
            frame_validity_at(chain_frame(2), "w1", valid, d=2, budget=5)


class TestFrameValidity:
    def test_gamma_on_ring_six(self):
        assert frame_validity(ring_frame(6), mk_gamma()) is True

    def test_negated_beta_fails_on_its_ring(self):
        assert frame_validity(ring_frame(4), MNot(mk_beta(4))) is False

    def test_negated_alpha_two_on_chain_two(self):
        assert frame_validity(chain_frame(2), MNot(mk_alpha(2))) is True


class TestMembership:
    def test_alpha_even_is_member(self):
        assert isinstance(in_L0(MNot(mk_alpha(2))), NoCountermodelUpTo)

    def test_alpha_odd_refuted_at_next_chain(self):
        v = in_L0(MNot(mk_alpha(3)))
        assert isinstance(v, Refuted)
        assert v.world == "w1"
        assert v.model.frame == chain_frame(4)

    def test_alt2_member(self):
        assert isinstance(in_L0(mk_alt2()), NoCountermodelUpTo)

    def test_beta_odd_is_member(self):
        assert isinstance(in_L1(MNot(mk_beta(3))), NoCountermodelUpTo)

    def test_beta_even_refuted_on_its_ring(self):
        v = in_L1(MNot(mk_beta(4)))
        assert isinstance(v, Refuted)
        assert (v.world, v.model.frame) == ("w1", ring_frame(4))

    def test_epsilon_member(self):
        assert isinstance(in_L1(mk_epsilon(3)), NoCountermodelUpTo)

    def test_delta_member(self):
        assert isinstance(in_L1(mk_delta(2, 2)), NoCountermodelUpTo)

    def test_refuted_model_reverifies_independently(self):
        v = in_L1(MNot(mk_beta(4)))
        assert eval_modal_reference(v.model, v.world, {}, v.formula) is False

    def test_monotone_under_larger_bounds(self):
        small = in_L0(MNot(mk_alpha(3)), SearchBounds(max_frame_index=6))
        large = in_L0(MNot(mk_alpha(3)), SearchBounds(max_frame_index=12))
        assert isinstance(small, Refuted) and isinstance(large, Refuted)
        assert small.model == large.model and small.world == large.world

    def test_deterministic(self):
        a = in_L1(MNot(mk_beta(2)))
        b = in_L1(MNot(mk_beta(2)))
        assert a == b

    def test_open_formula_rejected(self):
        with pytest.raises(ValueError):
            in_L0(parse_modal("P(y)"))

    def test_default_bounds(self):
        b = default_bounds(mk_alpha(2))
        assert b.max_frame_index == 3 + 3
        assert b.letters == ()


class TestParityTable:
    def test_alpha_table(self):
        assert parity_table("alpha", 4) == [(1, False), (2, True),
                                            (3, False), (4, True)]

    def test_beta_table(self):
        assert parity_table("beta", 5) == [(2, False), (3, True),
                                           (4, False), (5, True)]

    def test_beta_empty_below_two(self):
        assert parity_table("beta", 1) == []

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            parity_table("zeta", 3)


class TestCountermodelExtraction:
    def test_smallest_valuation_chosen(self):
        # p fails at the dead end under the all-false valuation already
        model = find_countermodel_at(chain_frame(1), "wstar", parse_modal("p"))
        assert model is not None
        assert all(not ts for ts in model.interp.values())

    def test_extracted_model_lives_on_full_frame(self):
        fr = ring_frame(4)
        model = find_countermodel_at(fr, "w2", mk_alt2())
        assert model is None  # alt2 is valid there
        model = find_countermodel_at(fr, "w1", parse_modal("[] p"))
        assert model is not None
        assert model.frame == fr
        assert eval_modal(model, "w1", {}, parse_modal("[] p")) is False

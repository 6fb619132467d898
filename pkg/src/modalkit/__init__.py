"""Finite-scale toolkit for predicate modal logic over Kripke frames:
chain and ring frame families, exhaustive validity search, the
standard translation into classical first-order logic, membership
embeddings, and Ehrenfeucht-Fraisse games."""

from .syntax import (
    ModalFormula, MAtom, MFalse, MNot, MAnd, MBox, MForall,
    FolFormula, FEq, FAtom, FFalse, FNot, FAnd, FForall,
    parse_modal, parse_fol, modal_to_text, fol_to_text,
    modal_depth, quantifier_rank, free_vars, is_closed,
    box_n, diamond_n, m_diamond, m_exists, m_implies, m_or, m_true,
    f_exists, f_implies, f_iff, f_or, f_true,
    mk_alpha, mk_beta, mk_gamma, mk_delta, mk_epsilon, mk_alt2, mk_zeta,
    ParseError, ArityError,
)
from .kripke import (
    Frame, PredicateFrame, KripkeModel, ClassicalStructure,
    eval_modal, eval_fol, model_to_structure, structure_to_model,
    frame_to_doc, frame_from_doc, model_to_doc, model_from_doc,
    world_element, domain_element, EvalError, PreconditionError,
)
from .frames import (
    chain_frame, ring_frame, disjoint_union, marked_chain_frame,
    dead_ends, is_rooted, generated_subframe, truncate_depth,
    reachable_within, reach_exact, structural_characterization,
    mk_c0star_axiom, c0star_conjuncts, FrameFamily, classify_frame,
)
from .translate import (
    standard_translation, relativize, mk_M, mk_M_conjuncts,
    describe_frame, embed_L0, embed_L1, l0_union_frame, l1_union_frame,
    refutation_to_structure, to_tptp, TranslationContext, TranslationError,
)
from .validity import (
    SearchBounds, Refuted, NoCountermodelUpTo, Verdict,
    frame_validity, frame_validity_at, find_countermodel_at,
    in_L0, in_L1, parity_table, default_bounds, BudgetExceededError,
)
from .efgames import (
    GamePosition, duplicator_wins, smallest_distinguishing_rank,
    chain_parity_witness, ChainParityReport, GameBudgetError,
)

__version__ = "0.1.0"

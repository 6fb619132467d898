"""Batch command-line front end.

Subcommands: ``parse``, ``translate``, ``check``, ``gen-frame``,
``ef-compare``, ``verify-lemmas``.  All configuration is taken from
flags; reports are machine-readable JSON lines with stable key names,
and anything timing-related goes to stderr so report bytes are
identical across runs with the same inputs.

Exit codes for ``check``: 0 no countermodel within bounds, 1 refuted
(countermodel printed), 2 evaluation budget exceeded.  File and parse
problems exit with 3.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from pathlib import Path

from . import efgames, frames, kripke, sampling, syntax, translate, validity
from .efgames import GameBudgetError
from .kripke import ClassicalStructure, eval_fol, eval_modal, model_to_doc
from .syntax import MNot, mk_alpha, mk_alt2, mk_beta, mk_delta, mk_epsilon, mk_gamma, mk_zeta
from .validity import BudgetExceededError, NoCountermodelUpTo, Refuted, SearchBounds


class InputError(Exception):
    pass


class SkipCheck(Exception):
    pass


def _read_formula_text(args) -> str:
    if getattr(args, "text", None) is not None:
        return args.text
    if args.formula is None:
        raise InputError("provide --formula FILE or --text TEXT")
    try:
        return Path(args.formula).read_text()
    except OSError as e:
        raise InputError(f"{args.formula}: {e.strerror or e}") from None


def _load_frame(path: str) -> kripke.Frame:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: not valid JSON ({e.msg})") from None
    try:
        return kripke.frame_from_doc(doc)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# Simple wrappers

def cmd_parse(args) -> int:
    text = _read_formula_text(args)
    if args.kind == "modal":
        f = syntax.parse_modal(text)
        print(syntax.modal_to_text(f))
        print(f"modal-depth: {syntax.modal_depth(f)}")
    else:
        f = syntax.parse_fol(text)
        print(syntax.fol_to_text(f))
        print(f"quantifier-rank: {syntax.quantifier_rank(f)}")
    fv = sorted(syntax.free_vars(f))
    print(f"free-vars: {' '.join(fv) if fv else '(none)'}")
    return 0


def cmd_translate(args) -> int:
    f = syntax.parse_modal(_read_formula_text(args))
    if args.logic == "L0":
        out = translate.embed_L0(f)
    elif args.logic == "L1":
        out = translate.embed_L1(f)
    else:
        ctx = translate.TranslationContext(set(syntax.all_vars(f)))
        out = translate.standard_translation(f, ctx.fresh(), ctx)
    print(translate.to_tptp(out) if args.tptp else syntax.fol_to_text(out))
    return 0


def cmd_check(args) -> int:
    f = syntax.parse_modal(_read_formula_text(args))
    frame_bound = args.frame_bound
    if frame_bound is None:
        frame_bound = syntax.modal_depth(f) + 3
    bounds = SearchBounds(
        max_frame_index=frame_bound,
        max_domain_size=args.domain_bound,
        budget=args.budget,
        letters=tuple(sorted(syntax.letter_arities(f).items())))
    search = validity.in_L0 if args.logic == "L0" else validity.in_L1
    try:
        verdict = search(f, bounds)
    except BudgetExceededError as e:
        print(_dump({"verdict": "budget_exceeded", "detail": str(e)}))
        return 2
    if isinstance(verdict, Refuted):
        doc = model_to_doc(verdict.model)
        # independent pass before emitting: the serialized countermodel
        # must still falsify the formula
        assert eval_modal(kripke.model_from_doc(doc), verdict.world, {}, f) is False
        print(_dump({
            "verdict": "refuted",
            "world": verdict.world,
            "model": doc,
        }))
        return 1
    print(_dump({
        "verdict": "no_countermodel",
        "bounds": {
            "max_frame_index": bounds.max_frame_index,
            "max_domain_size": bounds.max_domain_size,
            "budget": bounds.budget,
        },
    }))
    return 0


def cmd_gen_frame(args) -> int:
    n = args.n
    if args.family == "chain":
        frame = frames.chain_frame(n)
    elif args.family == "ring":
        frame = frames.ring_frame(n)
    elif args.family == "marked":
        frame = frames.marked_chain_frame(n)
    else:
        gen = frames.chain_frame if args.of == "chain" else frames.ring_frame
        members = [gen(m) for m in range(2, n + 1, 2)]
        if not members:
            raise InputError("union needs --n of at least 2")
        frame = frames.disjoint_union(members)
    print(_dump(kripke.frame_to_doc(frame)))
    return 0


def cmd_ef_compare(args) -> int:
    left = ClassicalStructure.from_frame(_load_frame(args.left))
    right = ClassicalStructure.from_frame(_load_frame(args.right))
    out: dict = {"rounds": args.rounds}
    try:
        out["duplicator_wins"] = efgames.duplicator_wins(
            left, right, args.rounds, args.budget)
        if args.find_rank is not None:
            out["smallest_distinguishing_rank"] = efgames.smallest_distinguishing_rank(
                left, right, args.find_rank, args.budget)
    except GameBudgetError as e:
        print(_dump({"verdict": "budget_exceeded", "detail": str(e)}))
        return 2
    print(_dump(out))
    return 0


# ---------------------------------------------------------------------------
# verify-lemmas

def _verdict_summary(verdict) -> dict:
    if isinstance(verdict, Refuted):
        return {"refuted_at": verdict.world,
                "frame_worlds": len(verdict.model.frame.worlds)}
    return {"no_countermodel": True}


def _check_alpha_parity(cfg):
    bad = []
    for n in range(1, cfg["alpha_max"] + 1):
        v = validity.in_L0(MNot(mk_alpha(n)),
                           SearchBounds(max_frame_index=max(8, n + 3)))
        if n % 2 == 0:
            ok = isinstance(v, NoCountermodelUpTo)
        else:
            ok = (isinstance(v, Refuted) and v.world == "w1"
                  and v.model.frame == frames.chain_frame(n + 1))
        if not ok:
            bad.append({"n": n, "verdict": _verdict_summary(v)})
    return not bad, bad or None


def _check_beta_parity(cfg):
    if cfg["beta_max"] < 2:
        raise SkipCheck("beta formulas need index at least 2")
    bad = []
    for n in range(2, cfg["beta_max"] + 1):
        v = validity.in_L1(MNot(mk_beta(n)))
        if n % 2 == 1:
            ok = isinstance(v, NoCountermodelUpTo)
        else:
            ok = (isinstance(v, Refuted) and v.world == "w1"
                  and v.model.frame == frames.ring_frame(n))
        if not ok:
            bad.append({"n": n, "verdict": _verdict_summary(v)})
    return not bad, bad or None


def _ring_family(cfg):
    for m in range(2, cfg["ring_max_worlds"], 2):
        if m + 1 <= cfg["ring_max_worlds"]:
            yield frames.ring_frame(m)


def _check_ring_membership(cfg):
    formulas = [("alt2", mk_alt2()), ("gamma", mk_gamma())]
    for n in (2, 3, 4):
        formulas.append((f"epsilon_{n}", mk_epsilon(n)))
        for k in (1, 2, 3):
            formulas.append((f"delta_{k}_{n}", mk_delta(k, n)))
    bad = []
    for ring in _ring_family(cfg):
        for name, f in formulas:
            if not validity.frame_validity(ring, f):
                bad.append({"formula": name, "worlds": len(ring.worlds)})
    return not bad, bad or None


_FAMILY_INSTANCES = [
    ("alpha", {"n": 1}), ("alpha", {"n": 2}), ("alpha", {"n": 3}),
    ("beta", {"n": 2}), ("beta", {"n": 3}), ("beta", {"n": 4}),
    ("gamma", {}),
    ("delta", {"k": 1, "n": 2}), ("delta", {"k": 2, "n": 2}),
    ("delta", {"k": 1, "n": 3}), ("delta", {"k": 2, "n": 3}),
    ("epsilon", {"n": 2}), ("epsilon", {"n": 3}),
    ("alt2", {}), ("zeta", {}),
]

_FAMILY_FORMULAS = {
    "alpha": lambda n=None, k=None: mk_alpha(n),
    "beta": lambda n=None, k=None: mk_beta(n),
    "gamma": lambda n=None, k=None: mk_gamma(),
    "delta": lambda n=None, k=None: mk_delta(k, n),
    "epsilon": lambda n=None, k=None: mk_epsilon(n),
    "alt2": lambda n=None, k=None: mk_alt2(),
    "zeta": lambda n=None, k=None: mk_zeta(),
}


def _check_structural_agreement(cfg):
    rng = random.Random(cfg["seed"])
    pool = [frames.chain_frame(n) for n in range(1, 7)]
    pool += [frames.ring_frame(n) for n in range(2, 7)]
    pool += [frames.marked_chain_frame(k) for k in (1, 2)]
    pool += [frames.disjoint_union([frames.chain_frame(2), frames.chain_frame(4)]),
             frames.disjoint_union([frames.ring_frame(2), frames.ring_frame(4)])]
    pool += [sampling.random_frame(rng, max_worlds=7)
             for _ in range(cfg["random_frames"])]
    bad = []
    for i, frame in enumerate(pool):
        for family, params in _FAMILY_INSTANCES:
            f = _FAMILY_FORMULAS[family](**params)
            for w in frame.worlds:
                structural = frames.structural_characterization(
                    frame, w, family, **params)
                brute = validity.frame_validity_at(frame, w, f)
                if structural != brute:
                    bad.append({"frame": i, "world": w, "family": family,
                                "params": params, "structural": structural,
                                "brute_force": brute})
    return not bad, bad or None


def _check_translation_correspondence(cfg):
    rng = random.Random(cfg["seed"] + 1)
    bad = []
    for i in range(cfg["correspondence_samples"]):
        letters = {"P": rng.randint(0, 2), "Q": rng.randint(0, 2)}
        frame = sampling.random_frame(rng, max_worlds=4)
        model = sampling.random_monotone_model(rng, frame, letters, max_pool=3)
        formula = sampling.random_closed_modal(rng, letters, max_md=3, size=8)
        structure = kripke.model_to_structure(model)
        st = translate.standard_translation(formula, "_v0")
        for w in frame.worlds:
            direct = eval_modal(model, w, {}, formula)
            via_fol = eval_fol(structure, {"_v0": kripke.world_element(w)}, st)
            if direct != via_fol:
                bad.append({"sample": i, "world": w,
                            "formula": syntax.modal_to_text(formula)})
    return not bad, bad or None


def _check_refutation_transport(cfg):
    cases = [("L0", MNot(mk_alpha(3))), ("L1", MNot(mk_beta(2)))]
    bad = []
    for logic, f in cases:
        search = validity.in_L0 if logic == "L0" else validity.in_L1
        v = search(f)
        if not isinstance(v, Refuted):
            bad.append({"logic": logic, "verdict": _verdict_summary(v)})
            continue
        structure, _ = translate.refutation_to_structure(f, v.model, v.world, logic)
        embedding = translate.embed_L0(f) if logic == "L0" else translate.embed_L1(f)
        if eval_fol(structure, {}, embedding):
            bad.append({"logic": logic, "embedding_not_falsified": True})
    return not bad, bad or None


def _check_truncation(cfg):
    rng = random.Random(cfg["seed"] + 2)
    bad = []
    for i in range(cfg["truncation_samples"]):
        base = (frames.chain_frame(rng.randint(1, 5)) if rng.random() < 0.5
                else frames.ring_frame(rng.randint(2, 5)))
        letters = {"p": 0, "q": 0}
        model = sampling.random_monotone_model(rng, base, letters, max_pool=2)
        formula = sampling.random_zeroary_modal(rng, ["p", "q"], max_md=2)
        w = rng.choice(base.worlds)
        cut = frames.truncate_depth(model, w, syntax.modal_depth(formula))
        if eval_modal(model, w, {}, formula) != eval_modal(cut, w, {}, formula):
            bad.append({"sample": i, "world": w,
                        "formula": syntax.modal_to_text(formula)})
    return not bad, bad or None


def _check_marked_chain_axiom(cfg):
    axiom = frames.mk_c0star_axiom()
    bad = []
    for k in range(1, cfg["marked_max"] + 1):
        s = ClassicalStructure.from_frame(frames.marked_chain_frame(k))
        if not eval_fol(s, {}, axiom):
            bad.append({"marked_chain": k, "expected": True})
    for n in range(2, 5):
        s = ClassicalStructure.from_frame(frames.chain_frame(n))
        if eval_fol(s, {}, axiom):
            bad.append({"plain_chain": n, "expected": False})
    reflexive = kripke.Frame(("u",), {("u", "u")})
    if eval_fol(ClassicalStructure.from_frame(reflexive), {}, axiom):
        bad.append({"reflexive_point": True, "expected": False})
    return not bad, bad or None


def _check_ef_indistinguishability(cfg):
    bad = []
    for n in range(1, cfg["ef_max"] + 1):
        left = ClassicalStructure.from_frame(frames.ring_frame(2 ** n))
        right = ClassicalStructure.from_frame(frames.ring_frame(2 ** n + 1))
        if not efgames.duplicator_wins(left, right, n):
            bad.append({"rings": [2 ** n, 2 ** n + 1], "rounds": n})
        report = efgames.chain_parity_witness(n)
        if not report.duplicator_wins:
            bad.append({"chains": [2 ** n, 2 ** n + 1], "rounds": n})
    return not bad, bad or None


_CHECKS = [
    ("alpha_parity", _check_alpha_parity),
    ("beta_parity", _check_beta_parity),
    ("ef_indistinguishability", _check_ef_indistinguishability),
    ("marked_chain_axiom", _check_marked_chain_axiom),
    ("refutation_transport", _check_refutation_transport),
    ("ring_membership", _check_ring_membership),
    ("structural_agreement", _check_structural_agreement),
    ("translation_correspondence", _check_translation_correspondence),
    ("truncation", _check_truncation),
]


def cmd_verify_lemmas(args) -> int:
    cfg = {
        "alpha_max": args.alpha_max,
        "beta_max": args.beta_max,
        "ring_max_worlds": args.ring_max_worlds,
        "random_frames": args.random_frames,
        "correspondence_samples": args.correspondence_samples,
        "truncation_samples": args.truncation_samples,
        "marked_max": args.marked_max,
        "ef_max": args.ef_max,
        "seed": args.seed,
    }
    digest = hashlib.sha256(
        json.dumps(cfg, sort_keys=True).encode()).hexdigest()
    lines = [json.dumps(
        {"check": "_meta", "command": "verify-lemmas",
         "config": cfg, "inputs_digest": digest},
        sort_keys=True, separators=(",", ":"))]
    failures = 0
    for name, fn in sorted(_CHECKS):
        started = time.perf_counter()
        skipped = None
        witness = None
        try:
            ok, witness = fn(cfg)
        except SkipCheck as e:
            ok, skipped = None, str(e)
        except (BudgetExceededError, GameBudgetError) as e:
            ok, skipped = None, f"budget exceeded: {e}"
        elapsed = time.perf_counter() - started
        if ok is False:
            failures += 1
        lines.append(json.dumps(
            {"check": name, "pass": ok, "skipped": skipped, "witness": witness},
            sort_keys=True, separators=(",", ":")))
        status = "PASS" if ok else ("SKIP" if ok is None else "FAIL")
        print(f"{name}: {status} ({elapsed:.2f}s)", file=sys.stderr)
    report = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(report)
    else:
        Path(args.out).write_text(report)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# Argument wiring

def _add_formula_flags(p):
    p.add_argument("--formula", help="file containing the formula")
    p.add_argument("--text", help="formula given inline")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modalkit",
        description="Finite Kripke semantics, translations, and games.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and reprint a formula")
    p.add_argument("--kind", choices=["modal", "fol"], default="modal")
    _add_formula_flags(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("translate", help="compile a modal formula to first-order logic")
    p.add_argument("--logic", choices=["L0", "L1", "st-only"], required=True)
    _add_formula_flags(p)
    p.add_argument("--tptp", action="store_true", help="emit a TPTP rendering")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("check", help="bounded membership search")
    p.add_argument("--logic", choices=["L0", "L1"], required=True)
    _add_formula_flags(p)
    p.add_argument("--domain-bound", type=int, default=validity.DEFAULT_DOMAIN_SIZE)
    p.add_argument("--frame-bound", type=int, default=None,
                   help="defaults to modal depth plus three")
    p.add_argument("--budget", type=int, default=validity.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen-frame", help="emit a frame document")
    p.add_argument("--family", choices=["chain", "ring", "marked", "union"],
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--of", choices=["chain", "ring"], default="chain",
                   help="component family for --family union")
    p.set_defaults(func=cmd_gen_frame)

    p = sub.add_parser("ef-compare", help="play the comparison game on two frames")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--find-rank", type=int, default=None,
                   help="also scan for the least distinguishing rank up to this")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_ef_compare)

    p = sub.add_parser("verify-lemmas", help="run the named checks and write a report")
    p.add_argument("--out", default="-", help="report file, - for stdout")
    p.add_argument("--alpha-max", type=int, default=4)
    p.add_argument("--beta-max", type=int, default=4)
    p.add_argument("--ring-max-worlds", type=int, default=7)
    p.add_argument("--random-frames", type=int, default=20)
    p.add_argument("--correspondence-samples", type=int, default=100)
    p.add_argument("--truncation-samples", type=int, default=100)
    p.add_argument("--marked-max", type=int, default=3)
    p.add_argument("--ef-max", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_lemmas)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (syntax.ParseError, syntax.ArityError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

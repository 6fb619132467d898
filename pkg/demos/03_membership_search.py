"""Bounded membership search in the chain and ring logics.

The small-frame bound (modal depth plus three) makes the letterless
cases decidable outright: a formula outside the logic always fails on
one of finitely many frames.  The searches below reproduce the parity
dichotomies of the alpha and beta families and print the countermodels
they find.
"""

import json

from modalkit import (
    MNot, NoCountermodelUpTo, Refuted, in_L0, in_L1, mk_alpha, mk_beta,
    model_to_doc, modal_to_text, parity_table,
)

print("negated alpha_n in the chain logic (True = member):")
for n, member in parity_table("alpha", 6):
    print(f"  n={n}: {member}")
print()

print("negated beta_n in the ring logic (True = member):")
for n, member in parity_table("beta", 6):
    print(f"  n={n}: {member}")
print()

verdict = in_L0(MNot(mk_alpha(3)))
assert isinstance(verdict, Refuted)
print(f"~alpha_3 := ~({modal_to_text(mk_alpha(3))}) is refuted at "
      f"world {verdict.world} of this model:")
print(json.dumps(model_to_doc(verdict.model), indent=2, sort_keys=True))
print()

verdict = in_L1(MNot(mk_beta(3)))
assert isinstance(verdict, NoCountermodelUpTo)
print("~beta_3 has no countermodel up to frame index",
      verdict.bounds.max_frame_index, "so it belongs to the ring logic.")

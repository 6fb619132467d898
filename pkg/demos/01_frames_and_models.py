"""Tour of the frame families and the modal satisfaction relation.

The two families everything here revolves around: chains w1 -> w2 -> ...
with a dead end hanging off w1, and rings that close the chain back on
itself.  A handful of formulas built from box and diamond read off
structural facts about them.
"""

from modalkit import (
    KripkeModel, PredicateFrame, chain_frame, dead_ends, eval_modal,
    is_rooted, mk_alpha, mk_beta, modal_to_text, parse_modal, ring_frame,
)


def singleton_model(frame):
    # one shared individual per world; plenty for letterless formulas
    return KripkeModel(
        PredicateFrame(frame, {w: frozenset({"a0"}) for w in frame.worlds}), {})


chain = chain_frame(4)
print("chain_frame(4) worlds:", ", ".join(chain.worlds))
print("dead ends:", ", ".join(sorted(dead_ends(chain))))
print("root:", is_rooted(chain))
print()

# alpha_n holds where a dead end is one step away and also exactly n steps away
alpha3 = mk_alpha(3)
print("alpha_3 =", modal_to_text(alpha3))
m = singleton_model(chain)
for w in chain.worlds:
    print(f"  alpha_3 at {w}: {eval_modal(m, w, {}, alpha3)}")
print()

ring = ring_frame(4)
print("ring_frame(4) worlds:", ", ".join(ring.worlds))
beta4 = mk_beta(4)
print("beta_4 =", modal_to_text(beta4))
m = singleton_model(ring)
for w in ring.worlds:
    print(f"  beta_4 at {w}: {eval_modal(m, w, {}, beta4)}")
print()

# quantifiers range over the current world's domain, which may grow
# along accessibility but never shrink
grow = PredicateFrame(chain_frame(1), {
    "w1": frozenset({"a0"}),
    "wstar": frozenset({"a0", "a1"}),
})
model = KripkeModel(grow, {("wstar", "P"): {("a0",)}})
phi = parse_modal("[] exists y. P(y)")
print("expanding domains:", modal_to_text(phi),
      "at w1:", eval_modal(model, "w1", {}, phi))

"""One first-order sentence that recognises marked even chains.

Rooted even chains cannot be captured by a single first-order sentence
(even and odd lengths blur together, as the game demo shows).  Dropping
rootedness changes the picture: give every evenly indexed chain world
an extra predecessor as a parity marker, and the resulting frames are
the models of one fixed sentence.  Each marked frame still generates,
world by world, exactly the plain chain's subframes, so both frame
classes validate the same modal formulas.
"""

from modalkit import (
    ClassicalStructure, chain_frame, c0star_conjuncts, eval_fol,
    generated_subframe, marked_chain_frame, mk_c0star_axiom,
)

axiom = mk_c0star_axiom()

print("marked even chains satisfy the sentence:")
for k in (1, 2, 3, 4):
    frame = marked_chain_frame(k)
    s = ClassicalStructure.from_frame(frame)
    print(f"  {len(frame.worlds):2d} worlds (k={k}): {eval_fol(s, {}, axiom)}")
print()

print("plain chains, lacking the markers, do not:")
for n in (2, 3, 4, 5):
    s = ClassicalStructure.from_frame(chain_frame(n))
    print(f"  chain of {n}: {eval_fol(s, {}, axiom)}")
print()

parts = c0star_conjuncts()
print("conjuncts:", ", ".join(sorted(parts)))
print()

marked = marked_chain_frame(2)
plain = chain_frame(4)
print("markers are invisible from inside the chain:")
for w in plain.worlds:
    same = generated_subframe(marked, w) == generated_subframe(plain, w)
    print(f"  subframe generated at {w} agrees with the plain chain: {same}")

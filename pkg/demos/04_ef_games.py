"""Comparison games on rings of nearly equal size.

A first-order sentence of quantifier rank r cannot tell apart two
structures whenever Duplicator survives the r-round game on them.
Rings of sizes 2^n and 2^n + 1 (each with a dead end off one ring
world) are indistinguishable at rank n but separable slightly above
it, which is the engine behind the ring logic not being pinned down by
any single first-order sentence.
"""

from modalkit import (
    ClassicalStructure, chain_parity_witness, duplicator_wins, ring_frame,
    smallest_distinguishing_rank,
)

for n in (1, 2, 3):
    left = ClassicalStructure.from_frame(ring_frame(2 ** n))
    right = ClassicalStructure.from_frame(ring_frame(2 ** n + 1))
    survives = duplicator_wins(left, right, n)
    rank = smallest_distinguishing_rank(left, right, n + 2)
    print(f"rings of {2 ** n} and {2 ** n + 1}: Duplicator survives {n} "
          f"round(s): {survives}; Spoiler first wins at rank {rank}")
print()

print("the same blurring on chains (even versus odd length):")
for n in (1, 2):
    report = chain_parity_witness(n)
    print(f"  chains with {report.left_worlds} vs {report.right_worlds} worlds, "
          f"{report.rounds} round(s): Duplicator wins = {report.duplicator_wins}")

late = chain_parity_witness(2, rounds=6)
print(f"  ...but with {late.rounds} rounds the size difference shows: "
      f"Duplicator wins = {late.duplicator_wins}")

"""The modal-to-classical compiler, clause by clause.

A modal formula evaluated at a world and the translated first-order
formula evaluated over the merged two-sorted structure always agree;
this script shows the translated shapes and then checks the agreement
on a concrete model.
"""

from modalkit import (
    KripkeModel, PredicateFrame, chain_frame, eval_fol, eval_modal,
    fol_to_text, model_to_structure, parse_modal, standard_translation,
    world_element,
)

for text in ["p", "[] P(y)", "forall y. P(y)", "<> [] false"]:
    phi = parse_modal(text)
    st = standard_translation(phi, "x")
    print(f"ST_x( {text} )  =  {fol_to_text(st)}")
print()

frame = chain_frame(2)
pframe = PredicateFrame(frame, {w: frozenset({"a0", "a1"}) for w in frame.worlds})
model = KripkeModel(pframe, {
    ("w1", "P"): {("a0",)},
    ("w2", "P"): {("a0",), ("a1",)},
})
structure = model_to_structure(model)
print("universe of the merged structure:", ", ".join(structure.universe))
print()

phi = parse_modal("[] forall y. P(y)")
st = standard_translation(phi, "x")
print("checking", f"'{fol_to_text(st)}'", "against the modal side:")
for w in frame.worlds:
    direct = eval_modal(model, w, {}, phi)
    translated = eval_fol(structure, {"x": world_element(w)}, st)
    marker = "ok" if direct == translated else "MISMATCH"
    print(f"  at {w}: modal={direct}  classical={translated}  [{marker}]")

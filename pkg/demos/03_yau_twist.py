"""Twisting sl2 by an automorphism and watching the spaces move.

The Yau twist replaces the bracket by alpha o [., .]. For the involution
e <-> f, h -> -h the result is a multiplicative Hom-Lie algebra, shipped
in the corpus as hom-sl2. Here it is rebuilt from sl2 and compared.
"""

import dataclasses

from colorhom import Endo, SpaceAtlas, corpus, validate_algebra
from colorhom.identity import builtin, check_identity

sl2 = corpus.builtin("sl2").algebra
alpha = Endo(((0, 1, 0), (1, 0, 0), (0, 0, -1)))
structure = {}
for args, out in sl2.structure.items():
    img = alpha(tuple(out.get(j, 0) for j in range(3)))
    structure[args] = {j: c for j, c in enumerate(img) if c}
twisted = dataclasses.replace(sl2, name="twisted", structure=structure, alpha=alpha)

print("valid:", validate_algebra(twisted).ok)
print("same as corpus hom-sl2:", twisted.same_structure(corpus.builtin("hom-sl2").algebra))
print("Hom-Jacobi:", check_identity(twisted, builtin("hom_jacobi(2)")[0]).passed)

for label, a in (("sl2", sl2), ("twisted", twisted)):
    atlas = SpaceAtlas(a)
    row = {kind: [atlas.get(kind, k, ()).dim for k in (0, 1)] for kind in ("der", "qder", "c", "qc")}
    print(f"{label:<8}", row)

"""Operator spaces of sl2, computed exactly.

sl2 is simple, so its derivations are inner (dimension 3) and its centroid
is the scalars. Quasiderivations are much larger: any D with some D' such
that D'[x, y] = [Dx, y] + [x, Dy].
"""

from colorhom import SpaceAtlas, corpus
from colorhom.solver import KIND_TITLES, KINDS

a = corpus.builtin("sl2").algebra
atlas = SpaceAtlas(a)

print(f"{a.name}: dim {a.dim}, arity {a.arity}")
for kind in KINDS:
    dims = [atlas.get(kind, k, ()).dim for k in range(3)]
    print(f"  {KIND_TITLES[kind]:<34} k=0,1,2: {dims}")

print("\nThe centroid is spanned by")
for f in atlas.elements("c", 0):
    print("  ", [[str(x) for x in row] for row in f.matrix])

# the identity is a quasiderivation, and its stored witness is 2 * id
w = next(w for w in atlas.witnessed("qder", 0) if w.D.matrix[0][0] == 1)
print("\nA quasiderivation basis element and its witness D':")
print("  D  =", [[str(x) for x in row] for row in w.D.matrix])
print("  D' =", [[str(x) for x in row] for row in w.witnesses[0].matrix])

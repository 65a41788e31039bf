"""Embedding quasiderivations into derivations of a larger algebra.

T t + T t^n has [x1 t, ..., xn t] = [x1, ..., xn] t^n and every other
product zero. A quasiderivation (D, D') becomes the derivation acting as
D on the t-half and as D' (after projecting onto [T, ..., T]) on the
t^n-half. When Ann(T) = 0, these images and the central derivations
exhaust the derivations of the extension.
"""

from colorhom import corpus, extend, verify_embedding

for name in ("sl2", "heis3"):
    a = corpus.builtin(name).algebra
    x = extend(a)
    rep = verify_embedding(a, kmax=1)
    print(f"{name}: extension has dim {x.alg.dim}; complement U has dim {rep.complement.dim}")
    for cid, c in rep.checks.items():
        print(f"    {cid:<28} {c.status}")
    for row in rep.dims:
        print("   ", row)

"""From a plain multilinear identity to its color Hom-version.

Signs are recorded formally as eps(x_a, x_b) pairs relative to the first
word's variable order; alpha powers fill every word up to the deepest
nesting. The result is then evaluated on a Z2-graded algebra.
"""

from colorhom import check_identity, colorize, corpus, homize, parse_identity
from colorhom.identity import builtin, plain

jacobi = parse_identity("[x1,[x2,x3]] + [x2,[x3,x1]] + [x3,[x1,x2]]")
print("plain:      ", jacobi.text())
colored = colorize(jacobi)
print("colorized:  ", colored.text())
print("Hom-ized:   ", homize(colored).text())

osc = corpus.builtin("super-osc").algebra
print(f"\n{osc.name}: e1 even, e2 odd, [e2, e2] = e1")
for name in ("skew(2)", "hom_jacobi(2)", "hom_associative(2)"):
    for cid in builtin(name):
        r = check_identity(osc, cid)
        print(f"  {cid.name:<22} {'holds' if r else 'fails at ' + str(r.failing_tuple)}")

# read without signs, antisymmetry fails on the odd element: [e2, e2] + [e2, e2] = 2 e1
unsigned = plain(parse_identity("[x1,x2] + [x2,x1]"))
r = check_identity(osc, unsigned)
print("\nunsigned [x1,x2] + [x2,x1]:", "holds" if r else f"fails at {r.failing_tuple}, residual "
      f"{[str(x) for x in r.residual]}")

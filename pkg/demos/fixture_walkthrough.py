"""Walk through the 3-dimensional example step by step.

Run with ``python demos/fixture_walkthrough.py``.
"""

from lcscheck import lcs
from lcscheck.curvature import apply_curvature, conharmonic
from lcscheck.fixtures import load_builtin

fx = load_builtin("lcs3-corrected-phi")
n = fx.n
names = [f"e{i + 1}" for i in range(n)]

print("Frame e_i = z d/dx_i on z != 0, frame metric diag(1, 1, -1), xi = e3.\n")

print("Brackets:")
for i in range(n):
    for j in range(i + 1, n):
        print(f"  [{names[i]},{names[j]}] = {list(map(str, fx.frame.structure[i][j]))}")

print("\nLevi-Civita connection:")
for i in range(n):
    for j in range(n):
        print(f"  nabla_{names[i]} {names[j]} = {list(map(str, fx.conn.nabla_basis(i, j)))}")

print("\nRicci tensor and scalar curvature:")
for i in range(n):
    print("  " + "  ".join(f"{str(fx.bundle.ricci[i, j]):>3}" for j in range(n)))
print(f"  r = {fx.bundle.scalar}")

e1, _, e3 = fx.frame.basis
H = conharmonic(fx.bundle)
print(f"\nConharmonic curvature: H(e1,e3)xi = {list(map(str, apply_curvature(H, e1, e3, fx.structure.xi)))}")

report = lcs.check_axioms(fx.structure, fx.metric, fx.conn)
report += lcs.check_derived_identities(fx.structure, fx.metric, fx.conn, fx.bundle)
print(f"\nStructure axioms and identities: {len(report.checks)} checks, all pass = {report.ok}")

paper = load_builtin("lcs3-paper-phi")
bad = lcs.check_axioms(paper.structure, paper.metric, paper.conn)
print("With phi swapping e1 and e2 instead, the failing checks are:")
for c in bad.failed:
    print(f"  {c.id}: worst residual {c.residual_text}")

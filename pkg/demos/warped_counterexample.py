"""A structure that satisfies every axiom but not the constant-curvature identities.

The metric is -dt^2 + t^4 (dx^2 + dy^2) with xi = d/dt, alpha = 2/t and
rho = 2/t^2. Every structural relation holds, yet the curvature is not
(alpha^2 - rho)[g(Y,Z)X - g(X,Z)Y]. So those identities need an extra
assumption and cannot be derived from the axioms alone.
"""

from lcscheck import lcs
from lcscheck.deffile import parse_definition
from lcscheck.fixtures import build

DEFINITION = """\
[chart]
dim = 3
coords = t x y

[frame]
e1 = 0, 1/t^2, 0
e2 = 0, 0, 1/t^2
e3 = 1, 0, 0

[metric]
g = 1, 0, 0, 1, 0, -1

[structure]
xi = 0, 0, 1
alpha = 2/t
rho = 2/t^2
phi = 1, 0, 0, 0, 1, 0, 0, 0, 0
"""

fx = build(parse_definition(DEFINITION), "warped")
axioms = lcs.check_axioms(fx.structure, fx.metric, fx.conn)
identities = lcs.check_derived_identities(fx.structure, fx.metric, fx.conn, fx.bundle)

print(f"axioms pass: {axioms.ok}")
for c in identities.checks:
    print(f"  {c.id:<22} {c.status.value:<4} residual {c.residual_text}")
print(f"\nscalar curvature r = {fx.bundle.scalar}, while n(n-1)(alpha^2 - rho) = "
      f"{6 * (fx.structure.alpha ** 2 - fx.structure.rho)}")

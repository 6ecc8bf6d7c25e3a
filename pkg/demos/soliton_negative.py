"""Show that xi is not a Yamabe soliton potential on the example, for any lambda.

The residual (1/2) L_xi g - (r - lambda) g is computed with lambda left
symbolic. The solver looks at the components that are linear in lambda
and finds that they disagree.
"""

from lcscheck import lcs
from lcscheck.fixtures import load_builtin
from lcscheck.symexpr import Expr

fx = load_builtin("lcs3-corrected-phi")
lam = Expr.symbol("lambda")
report = lcs.check_yamabe_soliton(lcs.SolitonCandidate(fx.structure.xi, lam), fx.metric, fx.conn, fx.bundle)
check = report["sol.1.yamabe"]

print("Nonzero residual components of (1/2) L_xi g - (r - lambda) g:")
for label, value in check.components:
    print(f"  {label}: {value}")
print("admissible lambda:", report.note("admissible-lambda"))

print("\nTrying a few constants anyway:")
for value in (0, 6, 7):
    rep = lcs.check_yamabe_soliton(lcs.SolitonCandidate(fx.structure.xi, Expr(value)), fx.metric, fx.conn, fx.bundle)
    c = rep["sol.1.yamabe"]
    print(f"  lambda = {value}: {c.status.value}, worst residual {c.residual_text}, "
          f"would be {rep.note('classification')}")

print("\nThe reason: L_xi g = 2 alpha (g + eta x eta) is nonzero on e1, e2 but zero on e3,")
print("while (r - lambda) g scales all three diagonal entries by the same constant.")

"""
What happens off the hypotheses
===============================

perturb_to_violate breaks exactly one condition of a condition set. The
route then refuses to run unless forced, and a forced run may or may not
still agree with the oracle. At the end the same computation is repeated
in floating point.
"""

from gdrazin import GenConfig, drazin, generate_instance
from gdrazin.errors import CannotIsolateError, HypothesisViolatedError
from gdrazin.formulas import anti_triangular, anti_triangular_d
from gdrazin.generator import perturb_to_violate
from gdrazin.hypotheses import check_hypothesis, labels
from gdrazin.scalar import FLOAT

inst = generate_instance(GenConfig("H27", 3, seed=2))
print("H27 conditions:", labels("H27"))
for which in (1, 2):
    try:
        bad = perturb_to_violate(inst, "H27", which, seed=1)
    except CannotIsolateError as exc:
        print(f"condition {which}: {exc}")
        continue
    a, b = bad.mats
    rep = check_hypothesis("H27", a, b)
    print(f"condition {which} broken -> violated {rep.violated}")
    try:
        anti_triangular_d(a, b, "C2.7")
    except HypothesisViolatedError:
        print("  route refuses to run without force")
    forced = anti_triangular_d(a, b, "C2.7", force=True)
    gap = (forced.inverse - drazin(anti_triangular(a, b)).inverse).max_abs()
    print(f"  forced run: discrepancy vs oracle {gap:.3g}")

# floating backend: complex128 with a tolerance policy
a, b = generate_instance(GenConfig("H22", 4, seed=4)).mats
exact = drazin(anti_triangular(a, b)).inverse
fl = anti_triangular_d(a.with_mode(FLOAT), b.with_mode(FLOAT), "T2.2")
print("float T2.2 residual vs exact:", (fl.inverse - exact.with_mode(FLOAT)).max_abs())

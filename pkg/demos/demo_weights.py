"""Tour of the weight-function machinery.

Walks through the builtin catalog: admissibility validation, the Young
function Phi, the conjugate companion psi, the amplitude-coupling lam, and
the criterion constant lambda0 that decides how much imaginary coupling an
operator may carry.

Run:  python3 demos/demo_weights.py
"""

import numpy as np

from fdchk import AuxBundle, PhiSpec, duality_check, lambda0, validate_phi

CATALOG = [
    ("power p=3", PhiSpec.builtin("power", p=3)),
    ("power p=4", PhiSpec.builtin("power", p=4)),
    ("zygmund p=3", PhiSpec.builtin("zygmund", p=3)),
    ("exp_power p=2", PhiSpec.builtin("exp_power", p=2)),
    ("arctan_def", PhiSpec.builtin("arctan_def")),
    ("ratio4", PhiSpec.builtin("ratio4")),
    ("ratio_log", PhiSpec.builtin("ratio_log")),
]

print("=== admissibility (sampled conditions 1-5) ===")
for label, spec in CATALOG:
    report = validate_phi(spec)
    flags = " ".join(f"{name.split('_')[0]}:{'+' if c.passed else '-'}"
                     for name, c in report.conditions.items())
    print(f"{label:15s} r={spec.r:5.2f}  {flags}")
print("(arctan_def honestly fails condition 3: s*phi(s) has range (0,1))")

print("\n=== Young function and conjugate identities ===")
aux = AuxBundle(PhiSpec.builtin("ratio4"))
for s in (0.5, 1.0, 2.0):
    print(f"Phi({s}) = {aux.Phi(s):.6f}   (closed form s^4/(s^2+1): "
          f"{s ** 4 / (s ** 2 + 1):.6f})")
t = np.array([0.3, 1.0, 3.0])
prod, sums = duality_check(aux, t)
print(f"conjugate duality at t={t}:  theta~*theta = {prod},  lam~+lam = {sums}")

print("\n=== the coupling function lam and lambda0 ===")
for label, spec in CATALOG:
    aux = AuxBundle(spec)
    lam_range = aux.lambda_fn(np.geomspace(1e-4, 1e4, 200))
    res = lambda0(aux)
    lam0 = "inf" if not res.is_finite else f"{res.value:.7f}"
    print(f"{label:15s} lam in [{lam_range.min():+.3f}, {lam_range.max():+.3f}]"
          f"   lambda0 = {lam0}")
print("\nfinite lambda0 collapses the criterion to "
      "lambda0*|<Im A xi,xi>| <= <Re A xi,xi>;")
print("lambda0 = inf forces Im A = 0 (only real nonnegative operators pass).")

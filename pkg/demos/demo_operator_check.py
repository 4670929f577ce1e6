"""Operator verdicts: thresholds, block form, strong ellipticity.

Checks a family of constant matrices A = [[1, ib], [ib, 1]] against the
ratio4 weight (threshold |b| = sqrt(3)), shows the block quadratic form on
the skew-coupling example where the sufficient condition fails although
the operator is the plain Laplacean, and classifies a variable-coefficient
operator with non-symmetric imaginary part.

Run:  python3 demos/demo_operator_check.py
"""

import numpy as np

from fdchk import (AuxBundle, MatrixField, PhiSpec, check_operator,
                   form_min_eig, strong_ellipticity_margin)

aux = AuxBundle(PhiSpec.builtin("ratio4"))

print("=== symmetric Im coupling: threshold sqrt(3) = 1.7320508 ===")
for b in (0.5, 1.0, 1.7, 1.8, 3.0):
    field = MatrixField.constant([[1.0, 1j * b], [1j * b, 1.0]])
    rep = check_operator(field, aux)
    extra = ""
    if rep.witness is not None and rep.witness.xi is not None:
        extra = f"  witness xi = {np.round(rep.witness.xi, 4)}"
    print(f"b = {b:3.1f}: {rep.verdict:16s} margin {rep.worst_margin:+.4f}"
          f"  kappa {rep.kappa:+.4f}{extra}")

print("\n=== skew Im coupling: the block form is not necessary ===")
for gam in (0.5, 1.0, 2.0):
    a = np.array([[1.0, 1j * gam], [-1j * gam, 1.0]])
    print(f"gamma = {gam}: form_min_eig(A, 0) = {form_min_eig(a, 0.0):+.4f}"
          f"  (1 - |gamma| = {1 - gam:+.1f})")
print("for gamma = 2 the form goes negative, yet the operator is the "
      "Laplacean\n(the skew part drops out), dissipative for every weight.")

print("\n=== strong ellipticity margin ===")
for scale in (1.0, 2.0):
    field = MatrixField.constant(scale * np.eye(2))
    kappa = strong_ellipticity_margin(field, aux)
    print(f"A = {scale}*I: kappa-hat = {kappa:.4f}")

print("\n=== variable non-symmetric Im part ===")
field = MatrixField.from_strings(
    [[("1", "0"), ("0", "5*x1")], [("0", "-5*x1"), ("1", "0")]])
rep = check_operator(field, aux)
print(f"A = [[1, 5i*x1], [-5i*x1, 1]]: verdict {rep.verdict}")
print(f"  necessary passed: {rep.details['necessary_passed']}, "
      f"sufficient passed: {rep.details['sufficient_passed']}")
print("  the algebraic tests cannot decide here; "
      "demo_probe_refutation.py settles it.")

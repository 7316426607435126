# Creation/annihilation exponentials and the transform intertwinings.
#
# The creation exponential shifts coherent vectors; its adjoint depends on
# which Gram is used, and the two adjoint flavours genuinely differ (a
# pinned 1/2-vs-1/6 witness).  The basis change onto the Hardy space over
# unitaries intertwines each flavour with the matching readout of the shift
# group, and the shift group over there with exp-multiplication here.

import numpy as np

from focklab import (
    EVector,
    FockVector,
    TruncationSpec,
    adjoint,
    creation,
    exp_creation,
    exponential_vector,
    f_transform,
    f_transform_inverse,
)
from focklab.hardy_chi import mult_group_chi, shift_group_chi
from focklab.hardy_w import multiply_exp, random_evector, random_polynomial, residual, shift
from focklab.operators import MONOMIAL, W_ADJOINT
from focklab.partitions import BasisKey

spec = TruncationSpec(6, 3)
rng = np.random.default_rng(7)

print("=== coherent shift ===")
a = random_evector(3, rng, 0.7)
x = random_evector(3, rng, 0.7)
lhs = exp_creation(a, spec).apply(exponential_vector(x, spec))
rhs = exponential_vector(x + a, spec)
print("  |exp_creation(a) eps(x) - eps(x+a)|_w =", (lhs - rhs).norm("w"))

print()
print("=== the two annihilation flavours ===")
e1 = EVector.basis(1, 3)
target = FockVector.basis(spec, BasisKey.make((1, 1), (1, 2)))
k2 = BasisKey.make((1,), (2,))
plain = adjoint("h", creation(e1, 1, spec)).apply(target).coeffs[k2]
weighted = adjoint("w", creation(e1, 1, spec)).apply(target).coeffs[k2]
print("  plain-Gram adjoint coefficient on e2:   ", complex(plain).real, " (= 1/2)")
print("  weighted-Gram adjoint coefficient on e2:", complex(weighted).real, " (= 1/6)")
print("  The closed-form action on monomials <x|a>^m x^(n-m) belongs to the")
print("  plain flavour; the weighted flavour is the true adjoint of the")
print("  creation exponential in the weighted space.")

print()
print("=== intertwining through the basis change ===")
f = f_transform_inverse(random_polynomial(spec, rng, 6))
for pairing, variant in (("w", W_ADJOINT), ("h", MONOMIAL)):
    lhs = shift(f_transform(f, pairing), a)
    rhs = f_transform(mult_group_chi(f, a, variant), pairing)
    print(f"  mult-group [{variant:>9}] <-> shift [{pairing}]: residual",
          f"{residual(lhs, rhs):.2e}")
bad = f_transform(mult_group_chi(f, a, MONOMIAL), "w")
print("  mismatched pairing/variant residual:",
      f"{residual(shift(f_transform(f, 'w'), a), bad):.2e}", "(loud, on purpose)")

f3 = f_transform_inverse(random_polynomial(spec, rng, 3))
lhs = multiply_exp(f_transform(f3, "taylor"), a)
rhs = f_transform(shift_group_chi(f3, a), "taylor")
print("  shift-group <-> exp-multiplication [taylor]: residual",
      f"{residual(lhs, rhs):.2e}")

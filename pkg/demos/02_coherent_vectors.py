# Coherent vectors, point evaluation, and polarization.
#
# The coherent vector of a point x stacks the tensor powers of x divided by
# factorials.  Pairing an arbitrary Fock vector against coherent vectors
# turns it into an entire function; the dictionary between coefficients and
# function values is exercised below, together with the polarization
# identity that rebuilds any basis tensor from pure powers.

import numpy as np

from focklab import (
    EVector,
    FockVector,
    TruncationSpec,
    exponential_vector,
    inner,
    polarization,
    tensor_power,
)
from focklab.hardy_w import HardyWFunction, evaluate, evaluate_kernel
from focklab.partitions import BasisKey, YoungDiagram

spec = TruncationSpec(6, 2)
x = EVector((0.6, -0.3))

print("=== coherent vector of x = (0.6, -0.3) ===")
ev = exponential_vector(x, spec)
for key, value in sorted(ev.coeffs.items(), key=lambda kv: kv[0].label())[:6]:
    print("  ", key.label(), "->", complex(value))
print("   ... (", len(ev.coeffs), "coefficients in total )")

print()
print("Its weighted norm stays below the coherent bound exp(|x|^2):")
print("  norm^2 =", complex(inner("w", ev, ev)).real, " bound =", np.exp(x.norm_sq()))

print()
print("=== the same vector as a function ===")
f = HardyWFunction(FockVector.basis(spec, BasisKey.make((1, 1), (1, 2))))
print("basis tensor e1*e2 read as a polynomial, value at (1,1):",
      evaluate(f, EVector((1.0, 1.0))))
g = f.with_pairing("w")
print("under the weighted kernel readout the same vector evaluates to:",
      evaluate(g, EVector((1.0, 1.0))), "== kernel pairing route:",
      evaluate_kernel(g, EVector((1.0, 1.0)), "w"))

print()
print("=== polarization: basis tensors from pure powers ===")
diagram = YoungDiagram((2, 1))
rebuilt = polarization(diagram, (1, 2), spec, exact=True)
print("signed power sum for the (2,1)-key:", {k.label(): v for k, v in rebuilt.coeffs.items()})

print()
print("tensor powers multiply consistently:")
lhs = tensor_power(x, 2, spec)
one = tensor_power(x, 1, spec)
from focklab import symmetric_product

assert (symmetric_product(one, one) - lhs).max_abs_coeff() < 1e-14
print("  x^(1) * x^(1) == x^(2)  (exact)")

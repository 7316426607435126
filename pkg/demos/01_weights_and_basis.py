# Weight tables and the canonical tensor basis.
#
# Every basis tensor of the truncated symmetric algebra is labelled by an
# integer partition (the exponents) plus a tuple of distinct coordinate
# indices.  Two Gram tables live side by side: the plain symmetric-tensor
# norms and the weighted ones, rescaled by the partition constant.

from fractions import Fraction

from focklab import TruncationSpec, constant_c, enumerate_keys, h_norm_sq, w_norm_sq
from focklab.partitions import all_diagrams

print("=== weight constants for all diagrams of weight <= 4 ===")
print(f"{'diagram':<12} {'constant':>10} {'plain norm^2':>14} {'weighted norm^2':>16}")
for diagram in all_diagrams(4):
    name = "(" + ",".join(map(str, diagram.parts)) + ")"
    print(
        f"{name:<12} {str(constant_c(diagram)):>10} "
        f"{str(h_norm_sq(diagram)):>14} {str(w_norm_sq(diagram)):>16}"
    )

print()
print("The constant is 1 exactly on single-row diagrams; everywhere else it is")
print("a strict contraction, which is what makes the weighted norm dominated")
print("by the plain norm:")
worst = max(
    Fraction(w_norm_sq(d), h_norm_sq(d)) for d in all_diagrams(6) if d.parts
)
print("  max weighted/plain ratio over weight <= 6:", worst, "(never above 1)")

print()
print("=== canonical keys of a small workspace ===")
spec = TruncationSpec(3, 2)
keys = enumerate_keys(spec.max_degree, spec.dim)
print(f"workspace: degrees 0..{spec.max_degree}, {spec.dim} coordinates,", len(keys), "keys")
for key in keys:
    print("  ", key.label(), " degree", key.degree())

print()
print("Counts per degree follow the stars-and-bars binomial:")
for n in range(4):
    count = sum(1 for k in keys if k.degree() == n)
    print(f"  degree {n}: {count} keys")

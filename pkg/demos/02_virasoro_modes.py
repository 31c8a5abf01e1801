"""
From the lam-bracket to j-th products, delta functions and locality (D = 1)
===========================================================================
"""

from lambdacone import (
    build_wd,
    commutator_from_lambda,
    delta_mul_pow,
    delta_pair,
    jth_from_lambda,
    lambda_from_jth,
    locality_check,
)

# The W(1) bracket is the Virasoro-type (T + 2 lam) L.
table = build_wd(1)
bracket = table.entry(0, 0)
print("[L_lam L] =", bracket.format(table.generators))

# Reading off j-th products: a_(j) b = j! * coefficient of lam^j.
products = jth_from_lambda(bracket)
for j, element in sorted(products.products.items()):
    print(f"  L_({j}) L =", element.format(table.generators))
print("roundtrip equals the bracket:", lambda_from_jth(products) == bracket)

# The same data as a delta-function expansion of the commutator.
dist = commutator_from_lambda(bracket)
print("\ncommutator parts (coefficient of d_w^j delta / j!):")
for j, element in sorted(dist.parts.items()):
    print(f"  j={j}:", element.format(table.generators))

# Locality: the least power of (z - w) that kills the commutator.
n = locality_check(dist)
print("locality order N =", n)
print("(z-w)^N annihilates it:", not delta_mul_pow(dist, n))
print("(z-w)^(N-1) does not:", bool(delta_mul_pow(dist, n - 1)))

# Residue pairing of modes against delta derivatives: binom(n, j) w^(n-j),
# two-sided in n.
print("\nres_z z^n d_w^j delta/j! for small n, j:")
for n in range(-2, 4):
    row = []
    for j in range(4):
        term = delta_pair(n, j)
        row.append(f"{term.coeff}*w^{term.power}" if term.coeff else "0")
    print(f"  n={n:>2}: ", "  ".join(row))

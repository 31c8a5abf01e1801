"""
Lie pseudoalgebras: building the standard families and checking the axioms
===========================================================================

All arithmetic is exact rational, so every "pass" below is a symbolic-zero
proof of the axiom on the presentation, not a numerical approximation.
"""

from lambdacone import (
    ChiVector,
    LieStructure,
    bracket_extend,
    build_cur,
    build_hd,
    build_wd,
    current_extend,
    jacobi_check,
    sd_basis,
    sd_closure_check,
    sd_divergence,
    skew_check,
)

# The current pseudoalgebra over sl2: constant brackets, any number of T variables.
sl2 = LieStructure.sl2()
cur = build_cur(sl2, 2)
print("Cur(sl2), D=2:")
print("  [e_lam f] =", cur.entry(0, 2).format(cur.generators))
print(" ", skew_check(cur))
print(" ", jacobi_check(cur).lines()[0])

# W(D): the rank-D family with bracket (T_a + lam_a) L^b + lam_b L^a.
w2 = build_wd(2)
print("\nW(2):")
print("  [L1_lam L2] =", w2.entry(0, 1).format(w2.generators))
print(" ", skew_check(w2).lines()[0])
print(" ", jacobi_check(w2).lines()[0])

# Brackets of arbitrary module elements come from sesquilinearity.
x = w2.element({"L1": w2.vs.var("T", 2)})   # T2 * L1
y = w2.generator_element("L2")
print("  [T2*L1 _lam L2] =", bracket_extend(w2, x, y).format(w2.generators))

# S(D, chi) sits inside W(D) as the kernel of the divergence symbol
# sum_a P_a * (T_a + chi_a); the bracket never leaves that kernel.
chi = ChiVector.unit(2, 1)
basis = sd_basis(2, chi, 2)
print("\nS(2, chi=(1,0)) basis up to degree 2:")
for element in basis:
    print("  ", element.format(w2.generators),
          "  divergence:", sd_divergence(w2, element, chi))
print(" ", sd_closure_check(2, chi, 2).lines()[0])

# H(D) for even D, and the current extension to one more variable.
h2 = build_hd(2)
print("\nH(2):")
print("  [L_lam L] =", h2.entry(0, 0).format(h2.generators))
print(" ", skew_check(h2).lines()[0])
extended = current_extend(h2, 3)
print("  after current extension to D=3:", jacobi_check(extended).lines()[0])

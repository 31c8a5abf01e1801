"""
Vertex Lie structures and the two-engine cross-check at D = 1
=============================================================

A D = 1 bracket table converts into singular field actions; the cone-mode
checkers then verify skewsymmetry against e^{zT}(b(-z)a) and the Jacobi /
Borcherds identities on a declared window, independently of the polynomial
substitution route used by the pseudoalgebra checkers.
"""

from lambdacone import (
    BracketTable,
    Kernel,
    LambdaPoly,
    LieStructure,
    borcherds_check,
    build_cur,
    build_wd,
    d1_bridge,
    jacobi_check,
    jacobi_check_vla,
    pseudo_space,
    skew_check,
    skew_check_vla,
)

# The W(1) bracket becomes two singular modes: T L at the simple pole and 2 L
# at the double pole.
table = build_wd(1)
S = d1_bridge(table)
print("W(1) action L(z)L:")
for mode, element in S.action(0, 0).items():
    print(f"  mode {mode} (Laurent degree {2 * mode[0] + mode[1]}):",
          element.format(table.generators))

for window in (0, 2, 4):
    print(f"window {window}:",
          skew_check_vla(S, window).lines()[0], "|",
          jacobi_check_vla(S, 2, window).lines()[0])

# Borcherds with F = 1 is the same comparison as the Jacobi identity;
# polynomial kernels also hold on singular-part data.
print(borcherds_check(S, 2, Kernel.one(1), 4).lines()[0], "(F = 1)")
print(borcherds_check(S, 2, Kernel(1, z_exps=(1,)), 4).lines()[0], "(F = z)")

# Cross-examination: both engines agree, also on broken input.  These
# constants are antisymmetric but fail the Lie Jacobi identity.
vs = pseudo_space(1)
entries = {
    (0, 1): LambdaPoly(vs, 3, {0: vs.one}), (1, 0): LambdaPoly(vs, 3, {0: -vs.one}),
    (0, 2): LambdaPoly(vs, 3, {1: vs.one}), (2, 0): LambdaPoly(vs, 3, {1: -vs.one}),
    (1, 2): LambdaPoly(vs, 3, {2: -vs.one}), (2, 1): LambdaPoly(vs, 3, {2: vs.one}),
}
broken = BracketTable(1, ("e", "h", "f"), entries)
print("\nbroken table, pseudoalgebra engine: skew",
      "pass" if skew_check(broken).passed else "FAIL",
      "/ jacobi", "pass" if jacobi_check(broken).passed else "FAIL")
Sb = d1_bridge(broken)
report = jacobi_check_vla(Sb, 2, 4)
print("broken table, cone-mode engine:    skew",
      "pass" if skew_check_vla(Sb, 4).passed else "FAIL",
      "/ jacobi", "pass" if report.passed else "FAIL")
print("first witness:", report.failures[0].label, "->", report.first_witness)

# The healthy current algebra passes everything on every window.
cur = d1_bridge(build_cur(LieStructure.sl2(), 1))
print("\nCur(sl2) bridge:",
      all(skew_check_vla(cur, w).passed and jacobi_check_vla(cur, 1, w).passed
          for w in range(5)) and "all windows pass")

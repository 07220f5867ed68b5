"""Spatial partial isometries and L^p-projections on small weighted spaces.

For p != 2 the only L^p-projections are multiplications by indicator
functions.  The averaging projection on l^p of two points is orthogonal for
p = 2 but fails the L^p condition at xi = (1, 0) for every other p.  Its
complementary pair {P, 1 - P} is jointly contractive with real coefficients
at p = 1, but not with complex ones.

Run: python3 demos/lp_projections.py
"""

import math
from fractions import Fraction

from groupoidlp.exactnum import I, WeightedSpace, eye, exact_matrix, opnorm_exact
from groupoidlp.reps import (jointly_contractive_check, lp_projection_check, lp_projection_defect, make_spi,
                             spi_compose, spi_matrix, spi_star)

space = WeightedSpace((0, 1), (1, 4), 2)
swap = make_spi(space, {0: 1, 1: 0})


def show(M):
    return "[" + ", ".join("[" + ", ".join(str(z) for z in row) + "]" for row in M) + "]"


print("swap on l^2 with weights (1, 4):", show(spi_matrix(swap)))
print("swap* swap:                     ", show(spi_matrix(spi_compose(spi_star(swap), swap))))

A = exact_matrix([[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)]])
print("\naveraging projection")
for p in (1, 2, 4, "inf"):
    sp = WeightedSpace.counting((0, 1), p)
    verdict, structural, definitional, witness = lp_projection_check(A, sp)
    print("  p=%-4s L^p-projection: %-5s defect at (1,0): %.4f" % (p, verdict, lp_projection_defect(A, sp, [1, 0])))

sp = WeightedSpace.counting((0, 1), 1)
pair = [A, eye(2) - A]
print("\nreal combinations at p=1:   ", jointly_contractive_check(pair, sp, "real").status)
verdict = jointly_contractive_check(pair, sp, "complex")
print("complex combinations at p=1:", verdict.status, "worst norm %.6f" % verdict.worst)
print("||P + i(1-P)||_1 = %.6f, sqrt(2) = %.6f" % (opnorm_exact(pair[0] + pair[1] * I, 1), math.sqrt(2)))

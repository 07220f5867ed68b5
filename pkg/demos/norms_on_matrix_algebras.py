"""Norms of one element of the 3x3 matrix algebra, seen as the convolution
algebra of the pair groupoid on three points.

Run: python3 demos/norms_on_matrix_algebras.py
"""

from fractions import Fraction

from groupoidlp.galg import AlgElement, norm_dstar, norm_I, norm_projective, norm_rstar, norm_sup
from groupoidlp.groupoid import bisection_semigroup, bisection_semigroup_all, pair_groupoid
from groupoidlp.reps import interpolation_bound, regular_norm

G = pair_groupoid(3)
# arrow (i, j) goes from j to i, so f is the matrix with entries f[i][j]
rows = [[1, 2, 0],
        [0, -1, 3],
        [Fraction(1, 2), 0, 1]]
f = AlgElement.from_dict(G, None, {(i, j): Fraction(v) for i, r in enumerate(rows) for j, v in enumerate(r)},
                         by_label=True)

print("sup norm            ", norm_sup(f))
print("d* (column sums)    ", norm_dstar(f))
print("r* (row sums)       ", norm_rstar(f))
print("I-norm              ", norm_I(f))

print("\nregular representation on l^p of the arrows:")
print("  p=1   ", regular_norm(f, 1), "(equals d*)")
print("  p=inf ", regular_norm(f, "inf"), "(equals r*)")
for p in (Fraction(3, 2), 2, 3):
    br = regular_norm(f, p)
    value = br if isinstance(br, float) else "[%.6f, %.6f]" % (br.lower, br.upper)
    print("  p=%-4s" % p, value, "<= interpolation bound %.6f" % interpolation_bound(f, p))

singles = bisection_semigroup(G, [{a} for a in range(len(G))]).elements
print("\nprojective norm over singleton bisections:", norm_projective(f, singles)[0], "(sum of |entries|)")
full = bisection_semigroup_all(G).elements
value, pieces = norm_projective(f, full)
print("projective norm over all %d bisections:   " % len(full), value)
for piece in pieces:
    if piece:
        print("   piece", {G.labels[a]: str(v) for a, v in sorted(piece.items())})

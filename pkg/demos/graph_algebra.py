"""The graph with two parallel edges e, f from w to u.

u receives two edges, so it is regular; w receives none.  The boundary
path space is {w, e, f}, the shift groupoid is the pair groupoid on those
three points, and the Leavitt path algebra relation p_u = t_e t_e* + t_f t_f*
holds both in normal form and for the spatial family on l^p(boundary).

Run: python3 demos/graph_algebra.py
"""

from fractions import Fraction

from groupoidlp.exactnum import mat_equal
from groupoidlp.graphalg import (Graph, LPAElement, boundary_paths, classify, evaluate_q_family, graph_groupoid,
                                 lpa_equal, lpa_normalize, q_family_validate, spatial_q_family,
                                 tight_character_pairing, verify_webster, webster_family)

Q = Graph(["u", "w"], {"e": ("u", "w"), "f": ("u", "w")})
print("vertices:", classify(Q))
print("boundary paths:", boundary_paths(Q))
G, X = graph_groupoid(Q)
print("groupoid arrows:", len(G))
E, pairs, ok = tight_character_pairing(Q)
print("tight characters of E(S_Q) <-> boundary paths:", ok)


def mono(mu, nu):
    return LPAElement.monomial(Q, mu, nu, Fraction(1))


pu = mono(("u",), ("u",))
ck = mono(("e",), ("e",)) + mono(("f",), ("f",))
print("\nnormal form of p_u:", lpa_normalize(pu))
print("p_u = t_e t_e* + t_f t_f*:", lpa_equal(pu, ck))

for p in (1, 3, "inf"):
    fam = spatial_q_family(Q, p)
    report = q_family_validate(fam)
    print("\np = %s spatial family:" % p, ", ".join("%s %s" % (k, "ok" if v[0] else "FAILS") for k, v in report.items()))
    print("  relation holds as matrices:", mat_equal(evaluate_q_family(pu, fam), evaluate_q_family(ck, fam)))
    F = [("u",), ("e",)]
    W = webster_family(fam, F)
    print("  Webster family for F = {u, e}:", verify_webster(fam, F, W)[0])

"""From a twisted groupoid to a twisted action of its bisections and back.

The group Z/2 carries the sign cocycle sigma(g, g) = -1, so the delta
function at g squares to minus the unit.  Extracting the action of the
bisection semigroup records the twist as u(g, g) = -1, and rebuilding the
groupoid of germs from that data gives back an isomorphic twisted groupoid.

Run: python3 demos/twisted_action_round_trip.py
"""

from fractions import Fraction

from groupoidlp.galg import AlgElement, Cocycle, convolve
from groupoidlp.groupoid import bisection_semigroup_all, group_groupoid
from groupoidlp.invsemi import group_by_name
from groupoidlp.twist import extract_twisted_action, rebuild_and_compare, validate_twisted_action

G = group_groupoid(group_by_name("Z2"))
sigma = Cocycle(G, {(1, 1): Fraction(-1)})
g = AlgElement.delta(G, sigma, 1)
print("delta_g * delta_g =", {G.labels[a]: str(v) for a, v in enumerate(convolve(g, g).coeffs) if v})

S = bisection_semigroup_all(G)
data = extract_twisted_action(G, sigma, S)
print("\nbisections:", [sorted(G.labels[a] for a in U) for U in S.elements])
for (s, t), vals in sorted(data.u.items()):
    if vals:
        pair = (sorted(S.elements[s]), sorted(S.elements[t]))
        print("u(%s, %s) =" % pair, {x: str(v) for x, v in vals.items()})

for name, (ok, witness) in validate_twisted_action(data).items():
    print("%-10s %s" % (name, "ok" if ok else "FAILS at %r" % (witness,)))

res = rebuild_and_compare(data)
print("\nrebuilt groupoid isomorphic:", res["iso"], "| twist cohomologous:", res["twist"])

"""Check suites run by the command line tool.

Each suite takes a parsed Model and a seed and returns a list of Check
records.  Suites are independent of each other, so they can run in any
order or in parallel; the caller sorts nothing and keeps the order it
submitted them in.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactnum import INF, QComplex, WeightedSpace, is_exact_matrix, mat_equal, opnorm_bracket, opnorm_exact, scalar_to_json
from .galg import (AlgElement, CocycleError, convolve, involute, norm_dstar, norm_I, norm_projective,
                   norm_rstar, norm_sup, validate_cocycle)
from .graphalg import (LPAElement, boundary_paths, classify, cylinder_bisection, evaluate_q_family,
                       graph_groupoid, lpa_is_zero, lpa_to_groupoid, q_family_semilattice_rep,
                       q_family_validate, spatial_q_family, tight_character_pairing)
from .groupoid import GroupoidError, bisection_semigroup, is_wide, validate_groupoid
from .invsemi import SemigroupError, spectral_action, validate_inverse_semigroup
from .partact import (crossed_convolve, crossed_involute, embed, exel_induced_action, partial_action_groupoid,
                      restrict_element, validate_partial_action)
from .reps import (RepError, disintegrate, integrate, interpolation_bound, is_tight_rep, is_tight_rep_literal,
                   multiplication_operator, random_spatial_basis, regular_basis, regular_representation,
                   reps_equal, unit_space_representation, validate_covariant_rep)
from .semilattice import validate_semilattice
from .twist import (TwistError, TwistedActionData, extract_twisted_action, rebuild, rebuild_and_compare,
                    validate_twisted_action)

SUITES = ("axioms", "twist", "rep", "tight", "ck", "norms", "crossprod")


@dataclass
class Check:
    model: str
    suite: str
    check: str
    status: str
    detail: str = ""
    witness: object = None


def jsonable(x):
    """Plain JSON data for witnesses and table cells."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (Fraction, QComplex, complex)):
        return scalar_to_json(x)
    if isinstance(x, (float, np.floating)):
        return "inf" if x == float("inf") else repr(float(x))
    if x is INF:
        return "inf"
    if isinstance(x, frozenset):
        return sorted((jsonable(y) for y in x), key=repr)
    if isinstance(x, (list, tuple)):
        return [jsonable(y) for y in x]
    if isinstance(x, np.ndarray):
        return [jsonable(y) for y in x.tolist()]
    if isinstance(x, dict):
        return {str(jsonable(k)): jsonable(v) for k, v in x.items()}
    return repr(x)


def fmt(x):
    """Deterministic text for a number in reports."""
    if x is None:
        return "n/a"
    if isinstance(x, (Fraction, int)):
        return str(x)
    if x == INF:
        return "inf"
    return repr(float(x))


class _Collector:
    def __init__(self, model, suite):
        self.model, self.suite = model, suite
        self.out = []

    def add(self, name, ok, detail="", witness=None):
        status = "PASS" if ok else "FAIL"
        self.out.append(Check(self.model, self.suite, name, status, detail, jsonable(witness)))

    def skip(self, name, detail):
        self.out.append(Check(self.model, self.suite, name, "SKIP", detail))

    def report(self, prefix, rep):
        for k, (ok, wit) in rep.items():
            self.add("%s %s" % (prefix, k) if prefix else k, ok, "", wit)

    def verify(self, name, fn, detail=""):
        """One record for a validator: PASS unless it raises or returns False."""
        before = len(self.out)
        res = self.guard(name, fn)
        if len(self.out) == before:
            self.add(name, res is not False, detail)

    def guard(self, name, fn):
        """Run fn; exceptions from the library's validators become FAILs."""
        try:
            return fn()
        except (GroupoidError, SemigroupError, CocycleError, TwistError, RepError, ValueError) as exc:
            self.add(name, False, str(exc), getattr(exc, "witness", None))
            return None


# ---------------------------------------------------------------- shared pieces

def random_element(G, sigma, rng, density=0.6, lo=-3, hi=3):
    c = [Fraction(int(rng.integers(lo, hi + 1))) if rng.random() < density else Fraction(0)
         for _ in range(len(G))]
    return AlgElement(G, sigma, c)


def groupoid_axioms(G):
    labels = list(G.labels)
    units = [G.labels[x] for x in G.units]
    r = {G.labels[a]: G.labels[G.rng[a]] for a in range(len(G))}
    d = {G.labels[a]: G.labels[G.dom[a]] for a in range(len(G))}
    inv = {G.labels[a]: G.labels[G.inv[a]] for a in range(len(G))}
    comp = {(G.labels[a], G.labels[b]): G.labels[c] for (a, b), c in G.comp.items()}
    validate_groupoid(labels, units, r, d, inv, comp)
    return True


def _twisted_round_trip(col, data, tag):
    """Action data -> rebuilt twisted groupoid -> extracted action -> rebuild
    again, comparing the two twisted groupoids."""
    rep = validate_twisted_action(data)
    col.report(tag, rep)
    if not all(ok for ok, _ in rep.values()):
        return None
    built = col.guard(tag + " rebuild", lambda: rebuild(data))
    if built is None:
        return None
    G2, s2, U = built
    col.verify(tag + " rebuilt groupoid axioms", lambda: groupoid_axioms(G2))
    col.verify(tag + " rebuilt cocycle", lambda: validate_cocycle(G2, s2))
    gens = sorted({Ui for Ui in U if Ui}, key=lambda s: sorted(s))
    S2 = bisection_semigroup(G2, gens)
    col.add(tag + " bisections wide", is_wide(G2, S2))
    data2 = col.guard(tag + " extract", lambda: extract_twisted_action(G2, s2, S2))
    if data2 is None:
        return None
    rep2 = validate_twisted_action(data2)
    col.add(tag + " extracted (A1)-(A4)", all(ok for ok, _ in rep2.values()),
            "", [k for k, (ok, _) in rep2.items() if not ok] or None)
    res = rebuild_and_compare(data2)
    col.add(tag + " round trip isomorphism", res["iso"])
    col.add(tag + " round trip twist class", res["twist"])
    return G2, s2


# ---------------------------------------------------------------- groupoid suites

def groupoid_axioms_suite(m, seed):
    col = _Collector(m.name, "axioms")
    col.verify("groupoid axioms", lambda: groupoid_axioms(m.groupoid))
    col.verify("cocycle", lambda: validate_cocycle(m.groupoid, m.sigma))
    S = m.semigroup
    col.verify("bisection semigroup", lambda: validate_inverse_semigroup(S.table, S.star_table))
    col.add("bisections wide", is_wide(m.groupoid, S), "%d bisections" % len(S))
    return col.out


def groupoid_twist_suite(m, seed):
    col = _Collector(m.name, "twist")
    data = col.guard("extract", lambda: extract_twisted_action(m.groupoid, m.sigma, m.semigroup))
    if data is None:
        return col.out
    rep = validate_twisted_action(data)
    col.report("", rep)
    if all(ok for ok, _ in rep.values()):
        res = rebuild_and_compare(data, mode=m.mode if m.mode == "complex" else None)
        col.add("rebuild isomorphism", res["iso"])
        col.add("rebuild twist class", res["twist"], "mode %s" % res["mode"])
    return col.out


def groupoid_rep_suite(m, seed, samples=3):
    col = _Collector(m.name, "rep")
    G, sigma = m.groupoid, m.sigma
    data = col.guard("extract", lambda: extract_twisted_action(G, sigma, m.semigroup))
    if data is None:
        return col.out
    basis = regular_basis(G, sigma)
    rep = col.guard("regular disintegrate", lambda: disintegrate(data, basis))
    if rep is not None:
        v = validate_covariant_rep(rep)
        col.add("regular covariance", all(ok for ok, _ in v.values()), "",
                [k for k, (ok, _) in v.items() if not ok] or None)
        back = col.guard("regular integrate", lambda: integrate(rep))
        col.add("regular integrate o disintegrate", back is not None and
                all(mat_equal(back.basis[a], basis[a]) for a in range(len(G))))
    rng = np.random.default_rng(seed)
    for p in m.p_list:
        for k in range(samples):
            space, sb = random_spatial_basis(G, sigma, rng, p, complex_phases=(m.mode == "complex"))
            tag = "spatial p=%s #%d" % (fmt(p), k)
            r1 = col.guard(tag, lambda: disintegrate(data, sb, space))
            if r1 is None:
                continue
            v = validate_covariant_rep(r1)
            col.add(tag + " covariance", all(ok for ok, _ in v.values()), "",
                    [k2 for k2, (ok, _) in v.items() if not ok] or None)
            back = col.guard(tag + " integrate", lambda: integrate(r1))
            if back is None:
                continue
            col.add(tag + " integrate o disintegrate",
                    all(mat_equal(back.basis[a], sb[a]) for a in range(len(G))))
            r2 = col.guard(tag + " re-disintegrate", lambda: disintegrate(data, back.basis, space))
            col.add(tag + " disintegrate o integrate", r2 is not None and reps_equal(r1, r2))
    return col.out


def groupoid_tight_suite(m, seed):
    col = _Collector(m.name, "tight")
    G, S = m.groupoid, m.semigroup
    E = S.idempotent_semilattice()
    col.verify("idempotent semilattice", lambda: validate_semilattice(E.table, zero=E.zero))
    space = WeightedSpace.counting(G.units, 2)
    v = {}
    for i, e in enumerate(E.elements):
        U = S.label(e)
        v[i] = multiplication_operator(space, {x: Fraction(1) for x in U if G.is_unit(x)})
    ok1, w1 = is_tight_rep(E, v)
    if len(E) <= 16:
        ok2, w2 = is_tight_rep_literal(E, v)
        col.add("unit-space rep tightness (atom test = definition)", ok1 == ok2, "tight=%s" % ok1, w1 or w2)
    else:
        col.skip("unit-space rep tightness (atom test = definition)", "semilattice too large for the literal test")
    n_tight = len(E.tight_characters())
    col.add("tight characters", True, "%d tight of %d characters, %d units"
            % (n_tight, len(E.characters()), len(G.units)))
    return col.out


def groupoid_norm_rows(m, elements, p_list, bisections, seed):
    """Rows (element, p, lower, upper, interpolation, I, projective) and
    checks of the norm hierarchy."""
    col = _Collector(m.name, "norms")
    rows = []
    for name, f in elements.items():
        M = regular_representation(f)
        inorm = norm_I(f)
        try:
            proj, _ = norm_projective(f, bisections) if f.is_real() and f.is_exact() else (None, None)
            proj_note = "" if proj is not None else "complex or inexact"
        except ValueError as exc:
            proj, proj_note = None, "infeasible: %s" % exc
        for p in p_list:
            if p in (1, INF):
                lo = up = opnorm_exact(M, p)
            elif p == 2:
                lo = up = float(opnorm_exact(M, 2))
            else:
                br = opnorm_bracket(M, p, seed=seed)
                lo, up = br.lower, br.upper
            ib = interpolation_bound(f, p)
            rows.append({"model": m.name, "element": name, "p": fmt(p), "lower": fmt(lo), "upper": fmt(up),
                         "interp": fmt(ib), "inorm": fmt(inorm), "projective": fmt(proj),
                         "note": proj_note})
            tag = "%s p=%s" % (name, fmt(p))
            col.add(tag + " sup <= upper", float(norm_sup(f)) <= float(up) + 1e-9)
            col.add(tag + " lower <= interpolation", float(lo) <= ib + 1e-9, "%s <= %s" % (fmt(lo), fmt(ib)))
            col.add(tag + " interpolation <= I", ib <= float(inorm) + 1e-9)
            if proj is not None:
                col.add(tag + " I <= projective", inorm <= proj)
            if p == 1:
                col.add(tag + " endpoint d*", lo == norm_dstar(f))
            if p == INF:
                col.add(tag + " endpoint r*", lo == norm_rstar(f))
        if 2 in p_list:
            n2 = float(opnorm_exact(M, 2))
            ff = convolve(involute(f), f)
            n3 = float(opnorm_exact(regular_representation(ff), 2))
            col.add("%s C*-identity" % name, abs(n3 - n2 * n2) <= 1e-8 * max(1.0, n2 * n2),
                    "%s vs %s" % (fmt(n3), fmt(n2 * n2)))
    return rows, col.out


def model_elements(m, seed, count=2):
    if m.elements:
        return dict(m.elements)
    rng = np.random.default_rng(seed)
    return {"random%d" % k: random_element(m.groupoid, m.sigma, rng) for k in range(count)}


def groupoid_norms_suite(m, seed):
    bis = [U for U in m.semigroup.elements if U]
    _, checks = groupoid_norm_rows(m, model_elements(m, seed), m.p_list, bis, seed)
    return checks


# ---------------------------------------------------------------- semigroup and action suites

def semigroup_axioms_suite(m, seed):
    col = _Collector(m.name, "axioms")
    S = m.semigroup
    col.verify("inverse semigroup", lambda: validate_inverse_semigroup(S.table, S.star_table),
        "%d elements" % len(S))
    E = S.idempotent_semilattice()
    col.verify("idempotent semilattice", lambda: validate_semilattice(E.table, zero=E.zero),
        "%d idempotents" % len(E))
    return col.out


def _spectral_data(S):
    E, chars, maps = spectral_action(S)
    return TwistedActionData(S, list(range(len(chars))), maps), E


def semigroup_tight_suite(m, seed):
    col = _Collector(m.name, "tight")
    E = m.semigroup.idempotent_semilattice()
    tight = E.tight_characters()
    col.add("tight characters", len(tight) <= len(E.characters()),
            "%d tight of %d characters" % (len(tight), len(E.characters())))
    ok = all(E.is_cover(e, F) == E.is_cover_literal(e, F)
             for e in E.nonzero() for F in E.covers(e)) if len(E) <= 12 else None
    if ok is None:
        col.skip("cover test = definition", "semilattice too large")
    else:
        col.add("cover test = definition", ok)
    return col.out


def semigroup_twist_suite(m, seed):
    col = _Collector(m.name, "twist")
    data, _ = _spectral_data(m.semigroup)
    _twisted_round_trip(col, data, "spectral action")
    return col.out


def action_axioms_suite(m, seed):
    col = _Collector(m.name, "axioms")
    S = m.semigroup
    col.verify("inverse semigroup", lambda: validate_inverse_semigroup(S.table, S.star_table))
    rep = validate_twisted_action(m.action_data)
    col.report("", rep)
    return col.out


def action_twist_suite(m, seed):
    col = _Collector(m.name, "twist")
    _twisted_round_trip(col, m.action_data, "action")
    return col.out


# ---------------------------------------------------------------- graph suites

def graph_axioms_suite(m, seed):
    col = _Collector(m.name, "axioms")
    Q = m.graph
    cls = classify(Q)
    col.add("classification", True, ", ".join("%s:%s" % (v, cls[v]) for v in Q.vertices))
    acyclic = Q.is_acyclic()
    col.add("acyclic", True, str(acyclic))
    if not acyclic:
        col.skip("graph groupoid", "cyclic graph: boundary path space is infinite")
        return col.out
    G, X = graph_groupoid(Q)
    col.verify("graph groupoid axioms", lambda: groupoid_axioms(G),
            "%d boundary paths, %d arrows" % (len(X), len(G)))
    return col.out


def graph_tight_suite(m, seed):
    col = _Collector(m.name, "tight")
    Q = m.graph
    if not Q.is_acyclic():
        col.skip("tight characters = boundary paths", "cyclic graph")
        return col.out
    E, pairs, ok = tight_character_pairing(Q)
    col.add("tight characters = boundary paths", ok,
            "%d tight characters, %d boundary paths" % (len(E.tight_characters()), len(pairs)))
    return col.out


def _monomials(Q, limit=40):
    P = Q.paths()
    out = [(mu, nu) for mu in P for nu in P if Q.path_s(mu) == Q.path_s(nu)]
    return out[:limit]


def graph_ck_suite(m, seed):
    col = _Collector(m.name, "ck")
    Q = m.graph
    for v in Q.regular_vertices():
        x = LPAElement.monomial(Q, (v,), (v,))
        for e in Q.receives(v):
            x = x - LPAElement.monomial(Q, (e,), (e,))
        col.add("CK2 defect at %s normalises to zero" % v, lpa_is_zero(x))
    if not Q.is_acyclic():
        col.skip("spatial Q-family", "cyclic graph")
        return col.out
    G, X = graph_groupoid(Q)
    mons = _monomials(Q)
    bad = None
    for a in mons:
        for b in mons:
            x, y = LPAElement.monomial(Q, *a), LPAElement.monomial(Q, *b)
            lhs = lpa_to_groupoid(x * y, G)
            rhs = convolve(lpa_to_groupoid(x, G), lpa_to_groupoid(y, G))
            if lhs.coeffs != rhs.coeffs:
                bad = (a, b)
                break
        if bad:
            break
    col.add("Leavitt to groupoid structure constants", bad is None, "%d monomials" % len(mons), bad)
    for p in m.p_list:
        fam = spatial_q_family(Q, p)
        rep = q_family_validate(fam, mode=m.mode)
        col.report("spatial p=%s" % fmt(p), rep)
        E, v = q_family_semilattice_rep(fam)
        ok, wit = is_tight_rep(E, v)
        col.add("spatial p=%s tight" % fmt(p), ok, "", wit)
        bad = None
        for a in mons:
            x = LPAElement.monomial(Q, *a)
            if not mat_equal(evaluate_q_family(x, fam), unit_space_representation(lpa_to_groupoid(x, G))):
                bad = a
        col.add("spatial p=%s matches unit-space rep" % fmt(p), bad is None, "", bad)
    return col.out


# ---------------------------------------------------------------- partial actions

def _random_crossed(pa, rng):
    f = {}
    for t in range(len(pa.group)):
        f[t] = {y: Fraction(int(rng.integers(-2, 3))) for y in sorted(pa.X(t), key=repr) if rng.random() < 0.7}
    return f


def partial_axioms_suite(m, seed):
    col = _Collector(m.name, "axioms")
    rep = validate_partial_action(m.partial_action)
    col.report("", rep)
    if all(ok for ok, _ in rep.values()):
        built = col.guard("groupoid", lambda: partial_action_groupoid(m.partial_action))
        if built is not None:
            Gr, s = built
            col.verify("groupoid axioms", lambda: groupoid_axioms(Gr),
                    "%d arrows" % len(Gr))
            col.verify("cocycle", lambda: validate_cocycle(Gr, s))
    return col.out


def partial_crossprod_suite(m, seed, samples=5):
    col = _Collector(m.name, "crossprod")
    pa = m.partial_action
    if not all(ok for ok, _ in validate_partial_action(pa).values()):
        col.skip("crossed product", "partial action is invalid")
        return col.out
    Gr = partial_action_groupoid(pa)
    rng = np.random.default_rng(seed)
    mult = star = back = True
    for _ in range(samples):
        f, g = _random_crossed(pa, rng), _random_crossed(pa, rng)
        ef, eg = embed(pa, f, Gr), embed(pa, g, Gr)
        mult &= embed(pa, crossed_convolve(pa, f, g), Gr) == convolve(ef, eg)
        star &= embed(pa, crossed_involute(pa, f), Gr) == involute(ef)
        back &= restrict_element(pa, ef) == {t: {y: v for y, v in mp.items() if v != 0} for t, mp in f.items()}
    col.add("embedding is multiplicative", mult)
    col.add("embedding respects involution", star)
    col.add("embedding is injective", back)
    return col.out


def partial_twist_suite(m, seed):
    col = _Collector(m.name, "twist")
    pa = m.partial_action
    if not all(ok for ok, _ in validate_partial_action(pa).values()):
        col.skip("Exel semigroup action", "partial action is invalid")
        return col.out
    data = exel_induced_action(pa)
    rep = validate_twisted_action(data)
    col.report("Exel action", rep)
    if all(ok for ok, _ in rep.values()):
        Gr, s = partial_action_groupoid(pa)
        res = rebuild_and_compare(data, Gr, s)
        col.add("Exel action rebuilds the partial-action groupoid", res["iso"])
        col.add("Exel action rebuilds the twist class", res["twist"], "mode %s" % res["mode"])
    return col.out


SUITE_TABLE = {
    "groupoid": {"axioms": groupoid_axioms_suite, "twist": groupoid_twist_suite, "rep": groupoid_rep_suite,
                 "tight": groupoid_tight_suite, "norms": groupoid_norms_suite},
    "semigroup": {"axioms": semigroup_axioms_suite, "tight": semigroup_tight_suite,
                  "twist": semigroup_twist_suite},
    "action": {"axioms": action_axioms_suite, "twist": action_twist_suite},
    "graph": {"axioms": graph_axioms_suite, "tight": graph_tight_suite, "ck": graph_ck_suite},
    "partial-action": {"axioms": partial_axioms_suite, "crossprod": partial_crossprod_suite,
                       "twist": partial_twist_suite},
}


def run_suite(m, suite, seed, timing=False):
    fn = SUITE_TABLE[m.kind].get(suite)
    if fn is None:
        return []
    t0 = time.perf_counter()
    try:
        out = fn(m, seed)
    except Exception as exc:  # report, never crash the batch
        out = [Check(m.name, suite, "suite raised", "FAIL", "%s: %s" % (type(exc).__name__, exc))]
    if timing:
        out.append(Check(m.name, suite, "elapsed", "PASS", "%.3fs" % (time.perf_counter() - t0)))
    return out

"""JSON model files: schema validation and construction of the objects.

Labels in JSON are converted to hashable Python values (lists become
tuples).  Scalars follow ``parse_scalar``: integers, "n/d" or decimal
strings, "i", or [re, im] pairs.
"""

import json
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from .exactnum import as_exponent, parse_scalar
from .galg import AlgElement, Cocycle, CocycleError, validate_cocycle
from .graphalg import Graph, GraphError
from .groupoid import (ActionOnFiniteSet, GroupoidError, bisection_semigroup, bisection_semigroup_all,
                       group_groupoid, pair_groupoid, validate_groupoid)
from .invsemi import (PartialBijection, SemigroupError, exel_semigroup, generate_from_partial_bijections,
                      group_by_name, validate_inverse_semigroup)
from .partact import PartialAction
from .twist import TwistedActionData


class ModelError(ValueError):
    """Schema or reference error in a model file (exit status 2)."""

    def __init__(self, msg, where=None):
        super().__init__(msg if where is None else "%s: %s" % (where, msg))
        self.where = where


def label(x):
    if isinstance(x, list):
        return tuple(label(y) for y in x)
    return x


def unlabel(x):
    """Inverse of ``label`` for JSON output; frozensets become sorted lists."""
    if isinstance(x, (tuple, list)):
        return [unlabel(y) for y in x]
    if isinstance(x, frozenset):
        return sorted((unlabel(y) for y in x), key=repr)
    return x


def load_schema():
    text = resources.files("groupoidlp").joinpath("schemas/model.schema.json").read_text()
    return json.loads(text)


@dataclass
class Model:
    path: str
    kind: str
    raw: dict
    name: str = ""
    groupoid: object = None
    sigma: object = None
    semigroup: object = None
    bisections: list = None
    elements: dict = field(default_factory=dict)
    graph: object = None
    partial_action: object = None
    action_data: object = None
    p_list: list = None
    mode: str = "real"


def _scalar(v, where):
    try:
        return parse_scalar(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelError("bad scalar %r (%s)" % (v, exc), where)


def parse_model(path, text=None):
    """Read, schema-check and build a model.  Raises ModelError."""
    if text is None:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ModelError("cannot read model (%s)" % exc.strerror, path)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError("invalid JSON at line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg), path)
    try:
        jsonschema.validate(raw, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(k) for k in exc.absolute_path) or "(root)"
        raise ModelError("schema error at %s: %s" % (where, exc.message), path)
    m = Model(path=path, kind=raw["kind"], raw=raw, name=raw.get("name", path))
    m.mode = raw.get("mode", "real")
    m.p_list = [as_exponent(p) if not isinstance(p, str) else as_exponent(p)
                for p in raw.get("p", [1, 2, "inf"])]
    try:
        builder = {"groupoid": _build_groupoid, "semigroup": _build_semigroup, "graph": _build_graph,
                   "partial-action": _build_partial_action, "action": _build_action}[m.kind]
        builder(m, raw)
    except (GroupoidError, SemigroupError, CocycleError, GraphError) as exc:
        raise ModelError(str(exc), path)
    return m


# ---------------------------------------------------------------- builders

def groupoid_from_json(g, where):
    if "pair" in g:
        return pair_groupoid(g["pair"])
    if "group" in g:
        return group_groupoid(group_by_name(g["group"]))
    arrows = g["arrows"]
    labels = [label(a["label"]) for a in arrows]
    known = set(labels)
    for a in arrows:
        for k in ("r", "d", "inv"):
            if label(a[k]) not in known:
                raise ModelError("%s of arrow %r is not an arrow" % (k, a["label"]), where)
    r = {label(a["label"]): label(a["r"]) for a in arrows}
    d = {label(a["label"]): label(a["d"]) for a in arrows}
    inv = {label(a["label"]): label(a["inv"]) for a in arrows}
    units = [x for x in labels if r[x] == x]
    comp = {}
    for a, b, c in g["compose"]:
        for x in (a, b, c):
            if label(x) not in known:
                raise ModelError("composition refers to unknown arrow %r" % (x,), where)
        comp[(label(a), label(b))] = label(c)
    return validate_groupoid(labels, units, r, d, inv, comp)


def _index(G, lab, where):
    try:
        return G.index(label(lab))
    except KeyError:
        raise ModelError("unknown arrow %r" % (lab,), where)


def _build_groupoid(m, raw):
    G = groupoid_from_json(raw["groupoid"], m.path)
    vals = {}
    for a, b, v in raw.get("cocycle", []):
        ia, ib = _index(G, a, m.path), _index(G, b, m.path)
        if (ia, ib) not in G.comp:
            raise ModelError("cocycle value on a non-composable pair %r" % ([a, b],), m.path)
        vals[(ia, ib)] = _scalar(v, m.path)
    sigma = Cocycle(G, vals)
    m.groupoid, m.sigma = G, sigma
    spec = raw.get("bisections", "all")
    m.bisections = spec
    m.semigroup = bisection_semigroup_from_spec(G, spec, m.path)
    m.elements = _elements(G, sigma, raw.get("elements", {}), m.path)


def bisection_semigroup_from_spec(G, spec, where="--semigroup"):
    if spec == "all":
        return bisection_semigroup_all(G)
    if spec == "singletons":
        return bisection_semigroup(G, [{a} for a in range(len(G))])
    if isinstance(spec, str):
        raise ModelError("bisection spec must be 'all', 'singletons' or a list", where)
    gens = [frozenset(_index(G, a, where) for a in U) for U in spec]
    return bisection_semigroup(G, gens)


def _elements(G, sigma, raw, where):
    out = {}
    for name, entries in raw.items():
        c = {}
        for lab, v in entries:
            c[_index(G, lab, where)] = _scalar(v, where)
        out[name] = AlgElement.from_dict(G, sigma, c)
    return out


def semigroup_from_json(s, where):
    if "exel" in s:
        S, _ = exel_semigroup(group_by_name(s["exel"]))
        return S
    if "partial_bijections" in s:
        gens = [PartialBijection({label(x): label(y) for x, y in g}) for g in s["partial_bijections"]]
        return generate_from_partial_bijections(gens)
    n = len(s["table"])
    els = [label(e) for e in s.get("elements", list(range(n)))]
    for row in s["table"]:
        for v in row:
            if not 0 <= v < n:
                raise ModelError("table entry %r out of range" % v, where)
    for v in s["star"]:
        if not 0 <= v < n:
            raise ModelError("star entry %r out of range" % v, where)
    return validate_inverse_semigroup(s["table"], s["star"], els)


def _build_semigroup(m, raw):
    m.semigroup = semigroup_from_json(raw["semigroup"], m.path)


def _build_graph(m, raw):
    verts = [label(v) for v in raw["vertices"]]
    edges = {}
    for e, r, s in raw["edges"]:
        for v in (r, s):
            if label(v) not in verts:
                raise ModelError("edge %r has endpoint %r outside the vertex list" % (e, v), m.path)
        edges[label(e)] = (label(r), label(s))
    m.graph = Graph(verts, edges, raw.get("convention", "standard"))


def _twist_table(raw_twist, conv, where):
    u = {}
    for s, t, x, v in raw_twist:
        u.setdefault((conv(s), conv(t)), {})[label(x)] = _scalar(v, where)
    return u


def _build_partial_action(m, raw):
    G = group_by_name(raw["group"])
    pts = [label(x) for x in raw["points"]]

    def gi(g):
        try:
            return G.index(label(g))
        except ValueError:
            raise ModelError("unknown group element %r" % (g,), m.path)

    theta = [dict() for _ in range(len(G))]
    theta[G.identity] = {x: x for x in pts}
    for g, pairs in raw["theta"]:
        t = gi(g)
        mp = {}
        for x, y in pairs:
            if label(x) not in pts or label(y) not in pts:
                raise ModelError("theta maps outside the point set", m.path)
            mp[label(x)] = label(y)
        theta[t] = mp
        if not theta[G.inverse[t]]:
            theta[G.inverse[t]] = {y: x for x, y in mp.items()}
    m.partial_action = PartialAction(G, pts, theta, _twist_table(raw.get("twist", []), gi, m.path))


def _build_action(m, raw):
    S = semigroup_from_json(raw["semigroup"], m.path)
    pts = [label(x) for x in raw["points"]]
    if len(raw["maps"]) != len(S):
        raise ModelError("need one map per semigroup element (%d)" % len(S), m.path)
    maps = []
    for pairs in raw["maps"]:
        mp = {}
        for x, y in pairs:
            if label(x) not in pts or label(y) not in pts:
                raise ModelError("map leaves the point set", m.path)
            mp[label(x)] = label(y)
        maps.append(mp)

    def si(t):
        if not isinstance(t, int) or not 0 <= t < len(S):
            raise ModelError("semigroup index %r out of range" % (t,), m.path)
        return t

    u = _twist_table(raw.get("twist", []), si, m.path)
    m.semigroup = S
    m.action_data = TwistedActionData(S, pts, maps, u)

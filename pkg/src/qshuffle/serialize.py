"""JSON encoding of configs, polynomials, words and elements.

Scalars travel as strings in the exactfield grammar, variables as
"z[<vertex>,<slot>]" and words as [[vertex, exponent], ...].  Every
top-level document carries a "schema" field.
"""

import json
import re
from typing import Dict, List

from .errors import ParseError
from .exactfield import format_scalar, parse_scalar
from .laurent import LaurentPoly, VarId
from .quantum import Budget, UElement
from .shuffle import ShuffleElement
from .words import Letter
from .zeta import FactoredZeta, SpecPoint, ZetaDatum, from_kac_moody, from_quiver

SCHEMA_CONFIG = "qshuffle.config/1"
SCHEMA_REPORT = "qshuffle.report/1"
SCHEMA_POLY = "qshuffle.poly/1"
SCHEMA_SHUFFLE = "qshuffle.shuffle/1"
SCHEMA_U = "qshuffle.u/1"
SCHEMA_POINT = "qshuffle.point/1"

_VAR = re.compile(r"^z\[([^,\]]+),(\d+)\]$")


class Config:
    """A parsed configuration: vertex names, zeta datum and budgets."""

    def __init__(self, vertices, zeta, budget=None, margin=0, raw=None):
        self.vertices: List[str] = list(vertices)
        self.zeta = zeta
        self.budget = budget or Budget()
        self.margin = margin
        self.raw = raw or {}

    def index(self, name) -> int:
        name = str(name)
        try:
            return self.vertices.index(name)
        except ValueError:
            raise ParseError("unknown vertex %r" % name) from None

    def name(self, i) -> str:
        return self.vertices[i]

    def canonical(self) -> str:
        return dumps(self.raw)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _scalar(x):
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        if isinstance(x, float) and not x.is_integer():
            raise ParseError("floating-point scalar %r is not exact" % (x,))
        return parse_scalar(str(int(x)))
    if not isinstance(x, str):
        raise ParseError("scalar must be a string, got %r" % (x,))
    return parse_scalar(x)


def _matrix(m, n, what):
    if not isinstance(m, list) or len(m) != n or any(not isinstance(r, list) or len(r) != n for r in m):
        raise ParseError("%s must be a %dx%d matrix" % (what, n, n))
    return m


# -- config -----------------------------------------------------------------

def parse_config(doc) -> Config:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError("config is not valid JSON: %s" % exc) from None
    if not isinstance(doc, dict):
        raise ParseError("config must be a JSON object")
    zdoc = doc.get("zeta")
    if not isinstance(zdoc, dict) or "kind" not in zdoc:
        raise ParseError("config needs a zeta object with a 'kind'")
    kind = zdoc["kind"]
    vertices = [str(v) for v in doc.get("vertices", [])]
    if kind == "kac_moody":
        d = zdoc.get("d")
        n = len(d or [])
        vertices = vertices or [str(i + 1) for i in range(n)]
        z = from_kac_moody(_matrix(d, len(vertices), "d"), vertices)
    elif kind == "quiver":
        a = zdoc.get("counts")
        vertices = vertices or [str(i + 1) for i in range(len(a or []))]
        n = len(vertices)
        alpha = zdoc.get("alpha")
        s = zdoc.get("s")
        z = from_quiver(_matrix(a, n, "counts"), vertices,
                        [[_scalar(x) for x in r] for r in _matrix(alpha, n, "alpha")] if alpha else None,
                        _matrix(s, n, "s") if s else None)
    elif kind == "factored":
        n = len(vertices)
        if not n:
            raise ParseError("factored zeta needs an explicit vertex list")
        alpha = _matrix(zdoc.get("alpha", [[1] * n] * n), n, "alpha")
        s = _matrix(zdoc.get("s", [[0] * n] * n), n, "s")
        roots = _matrix(zdoc.get("roots", [[[]] * n] * n), n, "roots")
        pole = zdoc.get("pole")
        z = FactoredZeta(tuple(vertices),
                         {(i, j): _scalar(alpha[i][j]) for i in range(n) for j in range(n)},
                         {(i, j): int(s[i][j]) for i in range(n) for j in range(n)},
                         {(i, j): tuple(_scalar(r) for r in roots[i][j]) for i in range(n) for j in range(n)},
                         tuple(tuple(int(x) for x in r) for r in _matrix(pole, n, "pole")) if pole else None)
    elif kind == "explicit":
        n = len(vertices)
        if not n:
            raise ParseError("explicit zeta needs an explicit vertex list")
        tilde = _matrix(zdoc.get("tilde"), n, "tilde")
        tl = [[{int(k): _scalar(v) for k, v in tilde[i][j].items()} for j in range(n)] for i in range(n)]
        pole = _matrix(zdoc.get("pole", [[int(i == j) for j in range(n)] for i in range(n)]), n, "pole")
        z = ZetaDatum(vertices, tl, pole)
    else:
        raise ParseError("unknown zeta kind %r" % (kind,))
    bdoc = doc.get("budget", {})
    budget = Budget(max_window=int(bdoc.get("window", Budget.max_window)),
                    max_steps=int(bdoc.get("iters", Budget.max_steps)))
    return Config(vertices, z, budget, int(bdoc.get("margin", 0)), doc)


# -- variables, polynomials -------------------------------------------------

def var_key(v: VarId, cfg: Config) -> str:
    return "z[%s,%d]" % (cfg.name(v.color), v.slot)


def parse_var(text, cfg: Config) -> VarId:
    m = _VAR.match(text.replace(" ", ""))
    if not m:
        raise ParseError("bad variable %r (expected z[vertex,slot])" % (text,))
    slot = int(m.group(2))
    if slot < 1:
        raise ParseError("slot must be positive in %r" % (text,))
    return VarId(cfg.index(m.group(1)), slot)


def poly_to_json(p: LaurentPoly, cfg: Config):
    out = []
    for exps, c in p.items():
        out.append([{var_key(v, cfg): e for v, e in sorted(exps.items())}, format_scalar(c)])
    return out


def poly_from_json(doc, cfg: Config) -> LaurentPoly:
    if isinstance(doc, dict) and "terms" in doc:
        doc = doc["terms"]
    if not isinstance(doc, list):
        raise ParseError("polynomial must be a list of [monomial, coefficient] pairs")
    items = []
    for t in doc:
        if not isinstance(t, list) or len(t) != 2 or not isinstance(t[0], dict):
            raise ParseError("bad polynomial term %r" % (t,))
        items.append(({parse_var(k, cfg): int(e) for k, e in t[0].items()}, _scalar(t[1])))
    return LaurentPoly.from_items(items)


# -- degrees, words, elements -----------------------------------------------

def degree_to_json(n: Dict[int, int], cfg: Config):
    return {cfg.name(c): k for c, k in sorted(n.items()) if k}


def degree_from_json(doc, cfg: Config) -> Dict[int, int]:
    if isinstance(doc, list):
        if len(doc) != len(cfg.vertices):
            raise ParseError("degree list must have one entry per vertex")
        doc = dict(zip(cfg.vertices, doc))
    if not isinstance(doc, dict):
        raise ParseError("degree must be an object {vertex: count}")
    out = {}
    for k, v in doc.items():
        if int(v) < 0:
            raise ParseError("negative count in degree")
        if int(v):
            out[cfg.index(k)] = int(v)
    return out


def word_to_json(w, cfg: Config):
    return [[cfg.name(c), d] for c, d in w]


def word_from_json(doc, cfg: Config):
    if not isinstance(doc, list):
        raise ParseError("word must be a list of [vertex, exponent]")
    out = []
    for l in doc:
        if not isinstance(l, list) or len(l) != 2:
            raise ParseError("bad letter %r" % (l,))
        out.append(Letter(cfg.index(l[0]), int(l[1])))
    return tuple(out)


def shuffle_to_json(a: ShuffleElement, cfg: Config):
    return {"schema": SCHEMA_SHUFFLE, "sign": a.sign,
            "degree": degree_to_json(a.degree, cfg), "body": poly_to_json(a.body, cfg)}


def shuffle_from_json(doc, cfg: Config) -> ShuffleElement:
    if not isinstance(doc, dict):
        raise ParseError("shuffle element must be an object")
    sign = doc.get("sign", "+")
    if sign not in ("+", "-"):
        raise ParseError("sign must be '+' or '-'")
    body = poly_from_json(doc.get("body", []), cfg)
    if "degree" in doc:
        n = degree_from_json(doc["degree"], cfg)
    else:
        n = {}
        for v in body.vars:
            n[v.color] = max(n.get(v.color, 0), v.slot)
    return ShuffleElement(sign, n, body, check=True)


def u_to_json(a: UElement, cfg: Config):
    return {"schema": SCHEMA_U, "sign": a.sign,
            "terms": [[word_to_json(w, cfg), format_scalar(c)] for w, c in a.items()]}


def u_from_json(doc, cfg: Config) -> UElement:
    if not isinstance(doc, dict):
        raise ParseError("U element must be an object")
    sign = doc.get("sign", "+")
    if sign not in ("+", "-"):
        raise ParseError("sign must be '+' or '-'")
    terms = {}
    for t in doc.get("terms", []):
        if not isinstance(t, list) or len(t) != 2:
            raise ParseError("bad U term %r" % (t,))
        w = word_from_json(t[0], cfg)
        terms[w] = terms.get(w, 0) + _scalar(t[1])
    return UElement(sign, terms)


def point_to_json(p: SpecPoint, cfg: Config):
    return {"z[%s,%d]" % (cfg.name(c), a): format_scalar(v) for (c, a), v in p.values}


def point_from_json(doc, cfg: Config) -> SpecPoint:
    if isinstance(doc, dict) and "values" in doc:
        doc = doc["values"]
    if not isinstance(doc, dict):
        raise ParseError("point must be an object {z[i,a]: scalar}")
    out = {}
    for k, v in doc.items():
        x = parse_var(k, cfg)
        out[(x.color, x.slot)] = _scalar(v)
    return SpecPoint.make(out)

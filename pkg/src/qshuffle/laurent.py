"""Sparse multivariate Laurent polynomials in colored variables z[i,a].

A :class:`LaurentPoly` stores a sorted tuple of variables and a dict from
exponent tuples (aligned with that variable tuple) to nonzero exact
scalars.  Variables that occur with exponent 0 in every term are dropped,
so equal polynomials have equal representations.

The module also exposes a few dict-level helpers (``dense_*``) that the
shuffle and pairing engines use on fixed variable layouts, where building
intermediate LaurentPoly objects would be wasteful.
"""

from collections import namedtuple
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Dict, Iterable, Tuple

from .errors import (NotDivisible, SlotOutOfRange, UnmappedVariable, ZeroInput,
                     ZeroScale)
from .exactfield import as_scalar, format_scalar, is_scalar, sdiv, sinv, spow

__all__ = [
    "VarId",
    "LaurentPoly",
    "var",
    "const",
    "SeriesInverse",
    "series_inverse",
    "symmetrize",
    "exact_divide",
    "substitute",
    "lp_mul",
    "degree_vector_of",
]


class VarId(namedtuple("VarId", "color slot")):
    """Variable z[color, slot]; colors are vertex indices, slots start at 1."""

    __slots__ = ()

    def __repr__(self):
        return "z[%d,%d]" % (self.color, self.slot)


Exps = Tuple[int, ...]


def _add_into(acc, key, c):
    v = acc.get(key)
    if v is None:
        acc[key] = c
    else:
        v = v + c
        if v:
            acc[key] = v
        else:
            del acc[key]


class LaurentPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars_=(), terms=None, _normalized=False):
        self.vars: Tuple[VarId, ...] = tuple(vars_)
        self.terms: Dict[Exps, object] = terms if terms is not None else {}
        self._hash = None
        if not _normalized:
            self._normalize()

    # -- construction -------------------------------------------------------

    def _normalize(self):
        vs = self.vars
        if list(vs) != sorted(set(vs)):
            # re-sort (and merge duplicate variables, if any)
            order = sorted(set(vs))
            pos = {v: i for i, v in enumerate(order)}
            acc = {}
            for e, c in self.terms.items():
                ne = [0] * len(order)
                for v, x in zip(vs, e):
                    ne[pos[v]] += x
                _add_into(acc, tuple(ne), c)
            vs, self.terms = tuple(order), acc
        self.terms = {e: c for e, c in self.terms.items() if c}
        used = [i for i in range(len(vs)) if any(e[i] for e in self.terms)]
        if len(used) != len(vs):
            acc = {}
            for e, c in self.terms.items():
                _add_into(acc, tuple(e[i] for i in used), c)
            self.terms = acc
            vs = tuple(vs[i] for i in used)
        self.vars = tuple(VarId(*v) for v in vs)

    @classmethod
    def from_items(cls, items: Iterable):
        """Build from (exponent map {VarId-like: int}, coefficient) pairs."""
        items = [({VarId(*k): e for k, e in m.items()}, as_scalar(c)) for m, c in items]
        vs = sorted({v for m, _ in items for v in m})
        pos = {v: i for i, v in enumerate(vs)}
        acc = {}
        for m, c in items:
            e = [0] * len(vs)
            for v, x in m.items():
                e[pos[v]] += x
            _add_into(acc, tuple(e), c)
        return cls(vs, acc)

    @classmethod
    def constant(cls, c):
        c = as_scalar(c)
        return cls((), {(): c} if c else {}, _normalized=True)

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls.from_items([(exps, coeff)])

    @classmethod
    def from_dense(cls, vars_, terms):
        return cls(vars_, dict(terms))

    # -- access -------------------------------------------------------------

    def dense(self, vars_):
        """Terms re-expressed over the variable tuple ``vars_`` (a superset)."""
        vars_ = tuple(vars_)
        if vars_ == self.vars:
            return dict(self.terms)
        pos = {v: i for i, v in enumerate(vars_)}
        try:
            idx = [pos[v] for v in self.vars]
        except KeyError as err:
            raise UnmappedVariable(err.args[0]) from None
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars_)
            for i, x in zip(idx, e):
                ne[i] = x
            out[tuple(ne)] = c
        return out

    def items(self):
        """(exponent map, coefficient) pairs in canonical (grlex) order."""
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            yield {v: x for v, x in zip(self.vars, e) if x}, self.terms[e]

    def coefficient(self, exps):
        e = tuple(exps.get(v, 0) for v in self.vars)
        if any(x for v, x in exps.items() if v not in self.vars):
            return 0
        return self.terms.get(e, 0)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.vars

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def homdegs(self):
        return {sum(e) for e in self.terms}

    def homdeg(self):
        """Homogeneous degree (None for the zero or an inhomogeneous poly)."""
        ds = self.homdegs()
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self):
        return len(self.homdegs()) <= 1

    def min_exponent(self, v):
        if v not in self.vars:
            return 0
        i = self.vars.index(v)
        return min(e[i] for e in self.terms)

    def max_exponent(self, v):
        if v not in self.vars:
            return 0
        i = self.vars.index(v)
        return max(e[i] for e in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if is_scalar(other):
            return LaurentPoly.constant(other)
        return None

    def _aligned(self, other):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vs = tuple(sorted(set(self.vars) | set(other.vars)))
        return vs, self.dense(vs), other.dense(vs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vs, a, b = self._aligned(other)
        acc = dict(a)
        for e, c in b.items():
            _add_into(acc, e, c)
        return LaurentPoly(vs, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()}, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            if not other:
                return LaurentPoly()
            return LaurentPoly(self.vars, {e: c * other for e, c in self.terms.items()},
                               _normalized=True)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        vs, a, b = self._aligned(other)
        return LaurentPoly(vs, dense_mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_scalar(other):
            if not other:
                raise ZeroDivisionError("division of a Laurent polynomial by 0")
            return self * sinv(other)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPoly(self.vars, {tuple(k * x for x in e): spow(c, k)},
                               _normalized=True)
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def map_coefficients(self, f):
        return LaurentPoly(self.vars, {e: f(c) for e, c in self.terms.items()})

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if is_scalar(other):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return "LaurentPoly(%s)" % self.to_string()

    def to_string(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = "*".join("z[%d,%d]%s" % (v.color, v.slot, "" if x == 1 else "^%d" % x)
                            for v, x in sorted(m.items()))
            s = format_scalar(c)
            parts.append(s if not mono else (mono if s == "1" else "%s*%s" % (s, mono)))
        return " + ".join(parts)

    __str__ = to_string

    # -- operations delegated to module functions ---------------------------

    def substitute(self, mapping):
        return substitute(self, mapping)

    def symmetrize(self, n, mode="full", k=None):
        return symmetrize(self, n, mode, k)

    def exact_divide(self, d):
        return exact_divide(self, d)


def var(color, slot, power=1):
    return LaurentPoly((VarId(color, slot),), {(power,): 1})


def const(c):
    return LaurentPoly.constant(c)


def lp_mul(a, b):
    return a * b


def degree_vector_of(p: LaurentPoly):
    """Largest slot per color among the variables of p."""
    out = {}
    for v in p.vars:
        out[v.color] = max(out.get(v.color, 0), v.slot)
    return out


# ---------------------------------------------------------------------------
# dense (fixed-layout) helpers

def dense_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    acc = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            _add_into(acc, tuple(x + y for x, y in zip(ea, eb)), ca * cb)
    return acc


def dense_add_into(acc, b, scale=1):
    for e, c in b.items():
        _add_into(acc, e, c * scale if scale != 1 else c)
    return acc


def dense_permute(terms, perm):
    """Apply the index permutation: new exponent at perm[i] is old exponent at i."""
    n = len(perm)
    out = {}
    for e, c in terms.items():
        ne = [0] * n
        for i, x in enumerate(e):
            ne[perm[i]] = x
        out[tuple(ne)] = c
    return out


def dense_divide_linear(terms, ia, ib):
    """Exact division of a dense Laurent poly by (x_ia - x_ib)."""
    if not terms:
        return {}
    by_x = {}
    for e, c in terms.items():
        r = list(e)
        i = r[ia]
        r[ia] = 0
        by_x.setdefault(i, {})[tuple(r)] = c
    imin, imax = min(by_x), max(by_x)
    out = {}
    b = {}
    for i in range(imax, imin, -1):
        # b_{i-1} = c_i + y * b_i
        nb = dict(by_x.get(i, {}))
        for r, c in b.items():
            r2 = list(r)
            r2[ib] += 1
            _add_into(nb, tuple(r2), c)
        b = nb
        for r, c in b.items():
            e = list(r)
            e[ia] = i - 1
            out[tuple(e)] = c
    rem = dict(by_x.get(imin, {}))
    for r, c in b.items():
        r2 = list(r)
        r2[ib] += 1
        _add_into(rem, tuple(r2), c)
    if rem:
        raise NotDivisible("not divisible by (x%d - x%d)" % (ia, ib), remainder=len(rem))
    return out


# ---------------------------------------------------------------------------
# symmetrization

def _slot_vars(n):
    return tuple(VarId(c, s) for c in sorted(n) for s in range(1, n[c] + 1))


def _check_slots(p, n):
    for v in p.vars:
        if v.slot < 1 or v.slot > n.get(v.color, 0):
            raise SlotOutOfRange("variable %r outside degree vector %r" % (v, dict(n)))


def _normalize_degree(n):
    if isinstance(n, dict):
        return {int(c): int(k) for c, k in n.items() if k}
    return {i: int(k) for i, k in enumerate(n) if k}


def color_shuffles(n, k):
    """Slot maps (color -> tuple image of slots 1..n_c) for colored shuffles.

    The first k_c slots go to an increasing subset, the remaining ones to its
    complement (also increasing).
    """
    per_color = []
    colors = sorted(n)
    for c in colors:
        nc, kc = n[c], k.get(c, 0)
        if kc < 0 or kc > nc:
            raise SlotOutOfRange("coset block %r does not fit %r" % (kc, nc))
        opts = []
        for sub in combinations(range(1, nc + 1), kc):
            rest = [s for s in range(1, nc + 1) if s not in sub]
            opts.append(tuple(sub) + tuple(rest))
        per_color.append(opts)
    for choice in product(*per_color):
        yield dict(zip(colors, choice))


def all_slot_perms(n):
    colors = sorted(n)
    for choice in product(*[list(permutations(range(1, n[c] + 1))) for c in colors]):
        yield dict(zip(colors, choice))


def _index_perms(vs, slot_maps):
    pos = {v: i for i, v in enumerate(vs)}
    for m in slot_maps:
        yield [pos[VarId(v.color, m[v.color][v.slot - 1])] for v in vs]


def symmetrize(p: LaurentPoly, n, mode="full", k=None):
    """Orbit sum over slot permutations (mode 'full') or colored shuffles ('coset')."""
    n = _normalize_degree(n)
    _check_slots(p, n)
    vs = _slot_vars(n)
    terms = p.dense(vs)
    if mode == "full":
        maps = all_slot_perms(n)
    elif mode == "coset":
        maps = color_shuffles(n, _normalize_degree(k or {}))
    else:
        raise ValueError("unknown symmetrization mode %r" % (mode,))
    acc = {}
    for perm in _index_perms(vs, maps):
        dense_add_into(acc, dense_permute(terms, perm))
    return LaurentPoly(vs, acc)


# ---------------------------------------------------------------------------
# division

def _linear_pair(d: LaurentPoly):
    """If d = c * (x_a - x_b), return (c, a, b) as variable indices of d."""
    if len(d.vars) != 2 or len(d.terms) != 2:
        return None
    items = d.terms
    e1, e2 = (1, 0), (0, 1)
    if set(items) != {e1, e2}:
        return None
    c1, c2 = items[e1], items[e2]
    if c1 + c2:
        return None
    return c1, 0, 1


def exact_divide(a: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """The quotient a/d, raising NotDivisible when it is not a Laurent poly."""
    if is_scalar(d):
        d = LaurentPoly.constant(d)
    if not d:
        raise ZeroDivisionError("exact_divide by zero polynomial")
    if not a:
        return LaurentPoly()
    lin = _linear_pair(d)
    if lin is not None:
        c, i, j = lin
        vs = tuple(sorted(set(a.vars) | set(d.vars)))
        ia, ib = vs.index(d.vars[i]), vs.index(d.vars[j])
        try:
            out = dense_divide_linear(a.dense(vs), ia, ib)
        except NotDivisible as err:
            raise NotDivisible("%s is not divisible by %s" % (a, d), err.remainder) from None
        return LaurentPoly(vs, out) * sinv(c)
    if len(d.terms) == 1:
        (e, c), = d.terms.items()
        inv = LaurentPoly(d.vars, {tuple(-x for x in e): 1}, _normalized=True)
        return (a * inv) / c
    return _generic_divide(a, d)


def _generic_divide(a, d):
    vs = tuple(sorted(set(a.vars) | set(d.vars)))
    A, D = a.dense(vs), d.dense(vs)
    key = lambda e: (sum(e), e)
    dl = max(D, key=key)
    dc = D[dl]
    nv = len(vs)
    lo = [min(e[i] for e in A) - min(e[i] for e in D) for i in range(nv)]
    hi = [max(e[i] for e in A) - max(e[i] for e in D) for i in range(nv)]
    if any(l > h for l, h in zip(lo, hi)):
        raise NotDivisible("%s is not divisible by %s" % (a, d))
    r = dict(A)
    q = {}
    while r:
        rl = max(r, key=key)
        t = tuple(x - y for x, y in zip(rl, dl))
        if any(x < l or x > h for x, l, h in zip(t, lo, hi)):
            raise NotDivisible("%s is not divisible by %s" % (a, d), remainder=len(r))
        c = sdiv(r[rl], dc)
        q[t] = c
        for e, cd in D.items():
            _add_into(r, tuple(x + y for x, y in zip(e, t)), -c * cd)
    return LaurentPoly(vs, q)


# ---------------------------------------------------------------------------
# substitution

def substitute(a: LaurentPoly, mapping) -> LaurentPoly:
    """Image of a under z -> scale * target for every variable z of a.

    ``mapping`` maps VarId to (scale, target VarId); a bare VarId target
    means scale 1.
    """
    norm = {}
    for v, img in mapping.items():
        if isinstance(img, tuple) and len(img) == 2 and not isinstance(img, VarId):
            s, t = img
        else:
            s, t = 1, img
        s = as_scalar(s)
        if not s:
            raise ZeroScale("zero scale for %r" % (v,))
        norm[VarId(*v)] = (s, VarId(*t) if t is not None else None)
    for v in a.vars:
        if v not in norm:
            raise UnmappedVariable(v)
    targets = sorted({t for s, t in (norm[v] for v in a.vars) if t is not None})
    pos = {t: i for i, t in enumerate(targets)}
    plan = [(norm[v][0], pos.get(norm[v][1])) for v in a.vars]
    acc = {}
    for e, c in a.terms.items():
        ne = [0] * len(targets)
        coef = c
        for (s, i), x in zip(plan, e):
            if x:
                if s != 1:
                    coef = coef * spow(s, x)
                if i is not None:
                    ne[i] += x
        _add_into(acc, tuple(ne), as_scalar(coef))
    return LaurentPoly(targets, acc)


def evaluate(a: LaurentPoly, values):
    """Substitute scalars for every variable (VarId -> nonzero scalar)."""
    return substitute(a, {v: (values[v], None) for v in a.vars}).constant_term()


# ---------------------------------------------------------------------------
# one-variable series inversion

SeriesInverse = namedtuple("SeriesInverse", "prefactor_coeff prefactor_exp coeffs")


def univariate(f) -> Dict[int, object]:
    """Coerce a one-variable LaurentPoly or {exp: coeff} dict to a dict."""
    if isinstance(f, LaurentPoly):
        if len(f.vars) > 1:
            raise ValueError("expected a one-variable polynomial")
        return {(e[0] if e else 0): c for e, c in f.terms.items()}
    return {int(k): as_scalar(c) for k, c in f.items() if c}


def series_inverse(f, order: int) -> SeriesInverse:
    """Write f = alpha x^s (1 + g) and expand 1/(1+g) up to x^order.

    Returns the prefactor x^{-s}/alpha (as coefficient and exponent) and the
    coefficients c_0..c_order.
    """
    f = univariate(f)
    if not f:
        raise ZeroInput("series_inverse of zero")
    s = min(f)
    alpha = f[s]
    inv_alpha = sinv(alpha)
    g = {e - s: as_scalar(c * inv_alpha) for e, c in f.items() if e != s}
    coeffs = [1]
    for k in range(1, order + 1):
        t = 0
        for j, gj in g.items():
            if j <= k:
                t = t - gj * coeffs[k - j]
        coeffs.append(as_scalar(t))
    return SeriesInverse(inv_alpha, -s, coeffs[: order + 1])

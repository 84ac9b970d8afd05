"""Big shuffle algebras V^+ and V^-: elements, product, word images, shifts.

All symmetrizations that would introduce (z_ia - z_ib) denominators are done
by antisymmetrizing a numerator over the relevant permutations and then
dividing once by the Vandermonde-type product Delta_n (exact division).
"""

from itertools import combinations, permutations, product
from typing import Dict

from .errors import SignMismatch, SlotOutOfRange
from .exactfield import as_scalar, format_scalar, is_scalar
from .laurent import (LaurentPoly, VarId, _add_into, dense_add_into,
                      dense_divide_linear, dense_mul, dense_permute)
from .words import Letter, relabel
from .zeta import as_datum

__all__ = [
    "ShuffleElement",
    "shuffle_mul",
    "word_to_shuffle",
    "word_to_shuffle_sym",
    "shift",
    "ideal_generators",
    "slot_vars",
    "antisymmetrize_divide",
    "clear_cache",
]


def _norm(n):
    if isinstance(n, dict):
        return {int(c): int(k) for c, k in n.items() if k}
    return {i: int(k) for i, k in enumerate(n) if k}


def slot_vars(n):
    n = _norm(n)
    return tuple(VarId(c, a) for c in sorted(n) for a in range(1, n[c] + 1))


def _check_sign(sign):
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    return sign


class ShuffleElement:
    """A symmetric Laurent polynomial of degree (+-n, d)."""

    __slots__ = ("sign", "degree", "body")

    def __init__(self, sign, degree, body, check=False):
        self.sign = _check_sign(sign)
        self.degree = _norm(degree)
        if is_scalar(body):
            body = LaurentPoly.constant(body)
        self.body: LaurentPoly = body
        for v in body.vars:
            if v.slot < 1 or v.slot > self.degree.get(v.color, 0):
                raise SlotOutOfRange("variable %r outside degree %r" % (v, self.degree))
        if check and not self.is_symmetric():
            raise ValueError("shuffle element body is not color-symmetric")

    @classmethod
    def one(cls, sign="+"):
        return cls(sign, {}, LaurentPoly.constant(1))

    @classmethod
    def zero(cls, sign, degree):
        return cls(sign, degree, LaurentPoly())

    @property
    def homdeg(self):
        return self.body.homdeg()

    @property
    def size(self):
        return sum(self.degree.values())

    def is_symmetric(self):
        vs = slot_vars(self.degree)
        t = self.body.dense(vs)
        pos = {v: i for i, v in enumerate(vs)}
        for c, k in self.degree.items():
            if k < 2:
                continue
            perm = list(range(len(vs)))
            i, j = pos[VarId(c, 1)], pos[VarId(c, 2)]
            perm[i], perm[j] = j, i
            if dense_permute(t, perm) != t:
                return False
            if k > 2:
                cyc = list(range(len(vs)))
                for a in range(1, k + 1):
                    cyc[pos[VarId(c, a)]] = pos[VarId(c, a % k + 1)]
                if dense_permute(t, cyc) != t:
                    return False
        return True

    def _same(self, other):
        if not isinstance(other, ShuffleElement):
            raise TypeError("expected a ShuffleElement")
        if other.sign != self.sign:
            raise SignMismatch("cannot combine V^+ and V^- elements")
        if other.degree != self.degree and other.body and self.body:
            raise ValueError("degree mismatch %r vs %r" % (self.degree, other.degree))

    def __add__(self, other):
        self._same(other)
        deg = self.degree if self.body else other.degree
        return ShuffleElement(self.sign, deg, self.body + other.body)

    def __sub__(self, other):
        self._same(other)
        deg = self.degree if self.body else other.degree
        return ShuffleElement(self.sign, deg, self.body - other.body)

    def __neg__(self):
        return ShuffleElement(self.sign, self.degree, -self.body)

    def __mul__(self, c):
        if not is_scalar(c):
            return NotImplemented
        return ShuffleElement(self.sign, self.degree, self.body * c)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.body)

    def __eq__(self, other):
        if not isinstance(other, ShuffleElement):
            return NotImplemented
        if self.sign != other.sign:
            return False
        if not self.body and not other.body:
            return True
        return self.degree == other.degree and self.body == other.body

    def __hash__(self):
        return hash((self.sign, tuple(sorted(self.degree.items())), self.body))

    def __repr__(self):
        return "ShuffleElement(%s, %r, %s)" % (self.sign, self.degree, self.body)


# ---------------------------------------------------------------------------
# numerator building blocks on a dense layout

def _ratio_poly(t, ix, iy, nv):
    """sum_k c_k x^k y^-k for the univariate dict t, on the layout of size nv."""
    out = {}
    for k, c in t.items():
        e = [0] * nv
        e[ix] += k
        e[iy] -= k
        out[tuple(e)] = c
    return out


def _var_power(nv, i, k, c=1):
    e = [0] * nv
    e[i] = k
    return {tuple(e): c}


def _linear(nv, i, j):
    # x_i - x_j
    a = [0] * nv
    b = [0] * nv
    a[i] = 1
    b[j] = 1
    return {tuple(a): 1, tuple(b): -1}


def cross_factor(z, sign, ci, cj, ix, iy, nv):
    """Numerator of zeta_{ci cj}(x/y) (sign '+') or zeta_{cj ci}(y/x) (sign '-')
    after multiplying by the Delta_n factor (x - y) for same-color pairs.

    x = variable ix is earlier in the product order than y = variable iy.
    """
    if sign == "+":
        f = _ratio_poly(z.tilde[ci][cj], ix, iy, nv)
    else:
        f = _ratio_poly(z.tilde[cj][ci], iy, ix, nv)
    if ci != cj:
        return f
    if z.pole[ci][ci]:
        # + : y/(y - x) * (x - y) = -y ;  - : x/(x - y) * (x - y) = x
        if sign == "+":
            return dense_mul(f, _var_power(nv, iy, 1, -1))
        return dense_mul(f, _var_power(nv, ix, 1))
    return dense_mul(f, _linear(nv, ix, iy))


def _perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def divide_delta(terms, vs, n):
    """Exact division by Delta_n = prod_c prod_{a<b} (z_ca - z_cb)."""
    pos = {v: i for i, v in enumerate(vs)}
    for c in sorted(n):
        for a, b in combinations(range(1, n[c] + 1), 2):
            terms = dense_divide_linear(terms, pos[VarId(c, a)], pos[VarId(c, b)])
    return terms


def antisymmetrize_divide(terms, vs, n, perms=None):
    """[sum_sigma sign(sigma) sigma(N)] / Delta_n over all color-preserving
    slot permutations (or the given iterable of (index perm, sign))."""
    n = _norm(n)
    if perms is None:
        perms = _all_perms(vs, n)
    acc = {}
    for perm, sgn in perms:
        dense_add_into(acc, dense_permute(terms, perm), sgn)
    return divide_delta(acc, vs, n)


def _all_perms(vs, n):
    pos = {v: i for i, v in enumerate(vs)}
    colors = sorted(n)
    for choice in product(*[list(permutations(range(1, n[c] + 1))) for c in colors]):
        m = dict(zip(colors, choice))
        perm = [pos[VarId(v.color, m[v.color][v.slot - 1])] for v in vs]
        yield perm, _perm_sign(perm)


def _shuffle_perms(vs, n, k):
    pos = {v: i for i, v in enumerate(vs)}
    colors = sorted(n)
    per = []
    for c in colors:
        opts = []
        for sub in combinations(range(1, n[c] + 1), k.get(c, 0)):
            rest = [a for a in range(1, n[c] + 1) if a not in sub]
            img = tuple(sub) + tuple(rest)
            inv = sum(x - t for t, x in enumerate(sub, 1))
            opts.append((img, inv))
        per.append(opts)
    for choice in product(*per):
        m = {c: img for c, (img, _) in zip(colors, choice)}
        sgn = -1 if sum(inv for _, inv in choice) % 2 else 1
        yield [pos[VarId(v.color, m[v.color][v.slot - 1])] for v in vs], sgn


# ---------------------------------------------------------------------------
# product

def shuffle_mul(a: ShuffleElement, b: ShuffleElement, z) -> ShuffleElement:
    if a.sign != b.sign:
        raise SignMismatch("shuffle product of V^+ and V^- elements")
    sign = a.sign
    z = as_datum(z)
    na, nb = a.degree, b.degree
    n = {c: na.get(c, 0) + nb.get(c, 0) for c in set(na) | set(nb)}
    n = _norm(n)
    if not a.body or not b.body:
        return ShuffleElement(sign, n, LaurentPoly())
    if not na:
        return ShuffleElement(sign, n, b.body)
    if not nb:
        return ShuffleElement(sign, n, a.body)
    vs = slot_vars(n)
    nv = len(vs)
    pos = {v: i for i, v in enumerate(vs)}
    g1 = [VarId(c, s) for c in sorted(na) for s in range(1, na[c] + 1)]
    g2 = [VarId(c, na.get(c, 0) + s) for c in sorted(nb) for s in range(1, nb[c] + 1)]
    A = a.body.dense(vs)
    B = _shift_slots(b.body, na, vs)
    num = dense_mul(A, B)
    for x in g1:
        for y in g2:
            num = dense_mul(num, cross_factor(z, sign, x.color, y.color, pos[x], pos[y], nv))
    # Delta of each group separately (same-color pairs inside a group)
    for g in (g1, g2):
        for u, v in combinations(g, 2):
            if u.color == v.color:
                num = dense_mul(num, _linear(nv, pos[u], pos[v]))
    out = antisymmetrize_divide(num, vs, n, _shuffle_perms(vs, n, na))
    return ShuffleElement(sign, n, LaurentPoly(vs, out))


def _shift_slots(p: LaurentPoly, offset, vs):
    pos = {v: i for i, v in enumerate(vs)}
    idx = [pos[VarId(v.color, v.slot + offset.get(v.color, 0))] for v in p.vars]
    out = {}
    for e, c in p.terms.items():
        ne = [0] * len(vs)
        for i, x in zip(idx, e):
            ne[i] = x
        out[tuple(ne)] = c
    return out


# ---------------------------------------------------------------------------
# words

_WORD_CACHE: Dict = {}


def clear_cache():
    _WORD_CACHE.clear()


def _letter_element(letter, sign):
    c, d = letter
    e = d if sign == "+" else -d
    return ShuffleElement(sign, {c: 1}, LaurentPoly((VarId(c, 1),), {(e,): 1}))


def word_to_shuffle(w, sign, z, cache=True) -> ShuffleElement:
    """E_w (sign '+') or F_w (sign '-') as an iterated shuffle product."""
    _check_sign(sign)
    z = as_datum(z)
    w = tuple(Letter(*l) for l in w)
    if not w:
        return ShuffleElement.one(sign)
    key = (z.key(), sign, w)
    if cache and key in _WORD_CACHE:
        return _WORD_CACHE[key]
    if len(w) == 1:
        out = _letter_element(w[0], sign)
    else:
        out = shuffle_mul(word_to_shuffle(w[:-1], sign, z, cache),
                          _letter_element(w[-1], sign), z)
    if cache:
        _WORD_CACHE[key] = out
    return out


def word_to_shuffle_sym(w, sign, z) -> ShuffleElement:
    """Direct symmetrization formula for E_w / F_w (verification path)."""
    _check_sign(sign)
    z = as_datum(z)
    w = tuple(Letter(*l) for l in w)
    lv = relabel([c for c, _ in w])
    n = {}
    for c, _ in w:
        n[c] = n.get(c, 0) + 1
    vs = slot_vars(n)
    nv = len(vs)
    pos = {v: i for i, v in enumerate(vs)}
    e = [0] * nv
    for (c, d), v in zip(w, lv):
        e[pos[v]] = d if sign == "+" else -d
    num = {tuple(e): 1}
    for a, b in combinations(range(len(w)), 2):
        num = dense_mul(num, cross_factor(z, sign, w[a][0], w[b][0], pos[lv[a]], pos[lv[b]], nv))
    return ShuffleElement(sign, n, LaurentPoly(vs, antisymmetrize_divide(num, vs, n)))


def shift(a: ShuffleElement, k) -> ShuffleElement:
    """Multiply by prod z_ia^{k_i} (V^+) or prod z_ia^{-k_i} (V^-)."""
    k = _norm(k)
    sgn = 1 if a.sign == "+" else -1
    items = {VarId(c, s): sgn * k.get(c, 0) for c in a.degree for s in range(1, a.degree[c] + 1)}
    m = LaurentPoly.monomial({v: x for v, x in items.items() if x})
    return ShuffleElement(a.sign, a.degree, a.body * m)


def ideal_generators(n, z):
    """Generators of J_n (one product per total order of the variables,
    deduplicated up to scalars) and Delta_n."""
    z = as_datum(z)
    n = _norm(n)
    vs = slot_vars(n)
    nv = len(vs)
    seen = {}
    for order in permutations(range(nv)):
        num = {(0,) * nv: 1}
        for u, v in combinations(order, 2):
            num = dense_mul(num, _ratio_poly(z.tilde[vs[u].color][vs[v].color], u, v, nv))
        p = LaurentPoly(vs, num)
        lead_e = max(p.terms, key=lambda e: (sum(e), e))
        key = p / p.terms[lead_e]
        seen.setdefault(key, p)
    delta = LaurentPoly.constant(1)
    for c in sorted(n):
        for a, b in combinations(range(1, n[c] + 1), 2):
            delta = delta * (LaurentPoly((VarId(c, a),), {(1,): 1}) - LaurentPoly((VarId(c, b),), {(1,): 1}))
    return list(seen.values()), delta

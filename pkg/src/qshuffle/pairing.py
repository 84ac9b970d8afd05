"""Constant-term pairings between words and shuffle elements.

The engine computes iterated constant terms of

    P(z_1..z_n) / prod zeta_{ij}(z_small / z_big)

expanded in the small ratios, one variable at a time (innermost first).
For the variable being eliminated every denominator factor is written as
alpha x^s (1 + g(x)) / (1 - x)^m; the Laurent part alpha^-1 x^-s (1 - x)^m
moves into the numerator and only 1/(1+g) is expanded, to the order forced
by the most negative exponent of that variable.
"""

from typing import Dict, List, Tuple

from .exactfield import as_scalar, sinv
from .laurent import LaurentPoly, VarId, _add_into, dense_mul
from .shuffle import ShuffleElement
from .words import Letter, relabel, word_degree
from .zeta import as_datum

__all__ = [
    "constant_term",
    "pair_plus",
    "pair_minus",
    "pair_words_oracle",
    "pair_word_plus",
    "pair_word_minus",
    "clear_cache",
]

_SERIES: Dict = {}
_PAIR: Dict = {}
TRUNCATION_MARGIN = 0


def clear_cache():
    _SERIES.clear()
    _PAIR.clear()


def _series(z, i, j, order, with_pole=True):
    """Coefficients of 1/(1 + g) for zeta~_ij = alpha x^s (1 + g)."""
    key = (z.key(), i, j, with_pole)
    got = _SERIES.get(key)
    if got is not None and len(got[1]) > order:
        return got
    t = z.tilde[i][j]
    s = min(t)
    alpha = t[s]
    inv_alpha = sinv(alpha)
    g = {e - s: as_scalar(c * inv_alpha) for e, c in t.items() if e != s}
    coeffs = list(got[1]) if got else [1]
    for k in range(len(coeffs), order + 1):
        acc = 0
        for e, ge in g.items():
            if e <= k:
                acc = acc - ge * coeffs[k - e]
        coeffs.append(as_scalar(acc))
    # Laurent prefactor alpha^-1 x^-s (1 - x)^m as {power of x: coeff}
    pre = {-s: inv_alpha}
    for _ in range(z.pole[i][j] if with_pole else 0):
        nxt = {}
        for e, c in pre.items():
            _add_into(nxt, e, c)
            _add_into(nxt, e + 1, -c)
        pre = nxt
    got = (pre, coeffs)
    _SERIES[key] = got
    return got


def constant_term(P, nv, factors, order, z, margin=None):
    """Iterated constant term of P / prod zeta_ij(z_small/z_big).

    P is a dense dict over nv variables; ``factors`` lists
    (small, big, i, j) or (small, big, i, j, with_pole), the last flag
    choosing between zeta_ij and its numerator zeta~_ij;
    ``order`` is the elimination order (each small variable must be
    eliminated before its big partner).
    """
    z = as_datum(z)
    margin = TRUNCATION_MARGIN if margin is None else margin
    P = dict(P)
    for t in order:
        if not P:
            return 0
        facs = [(f[1], f[2], f[3], f[4] if len(f) > 4 else True) for f in factors if f[0] == t]
        # move the Laurent prefactors into the numerator
        for big, i, j, wp in facs:
            pre, _ = _series(z, i, j, 0, wp)
            poly = {}
            for e, c in pre.items():
                ex = [0] * nv
                ex[t] += e
                ex[big] -= e
                poly[tuple(ex)] = c
            P = dense_mul(P, poly)
        K = max(0, -min(e[t] for e in P)) + margin
        # product of the truncated series, graded by the power of z_t
        S = {0: {(0,) * nv: 1}}
        for big, i, j, wp in facs:
            _, coeffs = _series(z, i, j, K, wp)
            nS = {}
            for k1, poly in S.items():
                for k2 in range(0, K - k1 + 1):
                    c = coeffs[k2]
                    if not c:
                        continue
                    tgt = nS.setdefault(k1 + k2, {})
                    for e, v in poly.items():
                        ex = list(e)
                        ex[big] -= k2
                        _add_into(tgt, tuple(ex), v * c)
            S = nS
        out = {}
        by_k = {}
        for e, c in P.items():
            k = -e[t]
            if k < 0 or k not in S:
                continue
            ex = list(e)
            ex[t] = 0
            by_k.setdefault(k, {})[tuple(ex)] = c
        for k, part in by_k.items():
            for e, c in dense_mul(part, S[k]).items():
                _add_into(out, e, c)
        P = out
    return as_scalar(P.get((0,) * nv, 0))


def _positions_layout(colors, body: LaurentPoly):
    """Dense terms of body with variables relabeled to word positions."""
    lv = relabel(colors)
    pos = {v: a for a, v in enumerate(lv)}
    nv = len(colors)
    try:
        idx = [pos[v] for v in body.vars]
    except KeyError:
        return None
    out = {}
    for e, c in body.terms.items():
        ex = [0] * nv
        for i, x in zip(idx, e):
            ex[i] = x
        out[tuple(ex)] = c
    return out


def _same_degree(w, R):
    n, _ = word_degree(w)
    return n == R.degree


def _homog_ok(w, R, sign_out):
    hd = R.body.homdeg()
    if hd is None:
        return True
    d = sum(x for _, x in w)
    return sign_out * d + hd == 0


def _word_terms(u):
    if hasattr(u, "terms"):
        return u.terms.items()
    if isinstance(u, dict):
        return u.items()
    return [(tuple(Letter(*l) for l in u), 1)]


def pair_word_plus(w, R: ShuffleElement, z, margin=None):
    """<e_w, R> for R in V^-."""
    z = as_datum(z)
    w = tuple(Letter(*l) for l in w)
    if not _same_degree(w, R) or not R.body or not _homog_ok(w, R, 1):
        return 0
    key = ("+", z.key(), w, R.body, margin)
    if key in _PAIR:
        return _PAIR[key]
    colors = [c for c, _ in w]
    n = len(w)
    P = _positions_layout(colors, R.body)
    P = dense_mul(P, {tuple(d for _, d in w): 1})
    factors = [(b, a, colors[b], colors[a]) for a in range(n) for b in range(a + 1, n)]
    val = constant_term(P, n, factors, list(range(n - 1, -1, -1)), z, margin)
    _PAIR[key] = val
    return val


def pair_word_minus(R: ShuffleElement, w, z, margin=None):
    """<R, f_w> for R in V^+ (f_w = f_{i1,-d1} ... f_{in,-dn})."""
    z = as_datum(z)
    w = tuple(Letter(*l) for l in w)
    if not _same_degree(w, R) or not R.body or not _homog_ok(w, R, -1):
        return 0
    key = ("-", z.key(), w, R.body, margin)
    if key in _PAIR:
        return _PAIR[key]
    colors = [c for c, _ in w]
    n = len(w)
    P = _positions_layout(colors, R.body)
    P = dense_mul(P, {tuple(-d for _, d in w): 1})
    factors = [(a, b, colors[a], colors[b]) for a in range(n) for b in range(a + 1, n)]
    val = constant_term(P, n, factors, list(range(n)), z, margin)
    _PAIR[key] = val
    return val


def pair_plus(u, R: ShuffleElement, z, margin=None):
    """<u, R> for u in U^+ (word combination) and R in V^-."""
    if R.sign != "-":
        raise ValueError("pair_plus expects an element of V^-")
    total = 0
    for w, c in _word_terms(u):
        v = pair_word_plus(w, R, z, margin)
        if v:
            total = total + c * v
    return as_scalar(total)


def pair_minus(R: ShuffleElement, u, z, margin=None):
    """<R, u> for R in V^+ and u in U^- (word combination of f's)."""
    if R.sign != "+":
        raise ValueError("pair_minus expects an element of V^+")
    total = 0
    for w, c in _word_terms(u):
        v = pair_word_minus(R, w, z, margin)
        if v:
            total = total + c * v
    return as_scalar(total)


def pair_words_oracle(v, w, z, margin=None):
    """<e_v, F_w> as a sum over color-matching permutations sigma.

    Each term is the constant term (|z_1| >> ... >> |z_n|) of
    z^{d - k_sigma} prod over inversions of zeta_{i_a i_b}(z_a/z_b) / zeta_{i_b i_a}(z_b/z_a);
    for equal colors that ratio is zeta~(z_a/z_b)(-z_b/z_a) / zeta~(z_b/z_a).
    """
    z = as_datum(z)
    v = tuple(Letter(*l) for l in v)
    w = tuple(Letter(*l) for l in w)
    n = len(v)
    if len(w) != n or sorted(c for c, _ in v) != sorted(c for c, _ in w):
        return 0
    if sum(d for _, d in v) != sum(d for _, d in w):
        return 0
    ci = [c for c, _ in v]
    cj = [c for c, _ in w]
    total = 0
    for sigma in _matching_perms(ci, cj):
        ex = tuple(v[a][1] - w[sigma[a]][1] for a in range(n))
        P = {ex: 1}
        factors = []
        for a in range(n):
            for b in range(a + 1, n):
                if sigma[a] > sigma[b]:
                    t = z.tilde[ci[a]][ci[b]]
                    poly = {}
                    for k, c in t.items():
                        e = [0] * n
                        e[a] += k
                        e[b] -= k
                        poly[tuple(e)] = c
                    P = dense_mul(P, poly)
                    if ci[a] == ci[b]:
                        e = [0] * n
                        e[b] += 1
                        e[a] -= 1
                        P = dense_mul(P, {tuple(e): -1})
                    factors.append((b, a, ci[b], ci[a], False))
        total = total + constant_term(P, n, factors, list(range(n - 1, -1, -1)), z, margin)
    return as_scalar(total)


def _matching_perms(ci, cj):
    """All sigma with ci[a] = cj[sigma[a]]."""
    n = len(ci)

    def rec(a, used, acc):
        if a == n:
            yield tuple(acc)
            return
        for b in range(n):
            if b not in used and cj[b] == ci[a]:
                used.add(b)
                acc.append(b)
                yield from rec(a + 1, used, acc)
                acc.pop()
                used.discard(b)

    yield from rec(0, set(), [])

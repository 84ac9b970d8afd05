"""Letters, words and their order; non-increasing words and leading words.

A letter i^(d) is ``Letter(color, exp)``.  Letters are ordered by
i^(d) < j^(e) iff d > e, or d = e and i < j; words are compared
lexicographically with a proper prefix being smaller.  Words are plain
tuples of letters, so ``word_key`` turns them into Python-comparable keys.
"""

from collections import namedtuple
from typing import Dict, List, Sequence, Tuple

from .errors import ZeroPolynomial
from .laurent import LaurentPoly, VarId
from .zeta import as_datum

__all__ = [
    "Letter",
    "word",
    "letter_key",
    "word_key",
    "word_cmp",
    "word_degree",
    "word_exponents",
    "relabel",
    "is_non_increasing",
    "leading_word",
    "lead",
    "mu_for_word",
    "enumerate_non_increasing",
    "format_word",
]


class Letter(namedtuple("Letter", "color exp")):
    __slots__ = ()

    def __repr__(self):
        return "%d^(%d)" % (self.color, self.exp)


Word = Tuple[Letter, ...]


def word(*pairs) -> Word:
    """word((i, d), (j, e), ...) -> tuple of Letters."""
    if len(pairs) == 1 and pairs[0] and isinstance(pairs[0][0], (tuple, list)):
        pairs = pairs[0]
    return tuple(Letter(int(c), int(d)) for c, d in pairs)


def letter_key(l):
    return (-l[1], l[0])


def word_key(w):
    return tuple((-d, c) for c, d in w)


def word_cmp(v, w) -> int:
    kv, kw = word_key(v), word_key(w)
    return (kv > kw) - (kv < kw)


def word_degree(w) -> Tuple[Dict[int, int], int]:
    n = {}
    for c, _ in w:
        n[c] = n.get(c, 0) + 1
    return n, sum(d for _, d in w)


def word_exponents(w):
    return [d for _, d in w]


def relabel(colors: Sequence[int]) -> List[VarId]:
    """Variables for a color sequence: slots per color by first occurrence."""
    seen = {}
    out = []
    for c in colors:
        seen[c] = seen.get(c, 0) + 1
        out.append(VarId(c, seen[c]))
    return out


def format_word(w) -> str:
    return "[" + " ".join("%d^(%d)" % (c, d) for c, d in w) + "]"


def _svals(z):
    z = as_datum(z)
    n = z.size
    return [[z.s(i, j) for j in range(n)] for i in range(n)]


def is_non_increasing(w, z) -> bool:
    s = _svals(z)
    n = len(w)
    for b in range(1, n):
        ib, db = w[b]
        acc = 0
        for a in range(b - 1, -1, -1):
            ia, da = w[a]
            acc += s[ia][ib] + s[ib][ia]
            bound = db - acc
            if da > bound or (da == bound and ia < ib):
                return False
    return True


def leading_word(exps: Dict[VarId, int], n, z) -> Word:
    """Lex-largest word over orderings of the variables of prod z^{-k}.

    ``exps`` maps variables to exponents (-k); variables of the degree
    vector ``n`` that are missing have exponent 0.  The exponent of the
    letter at a position only depends on the chosen variable and on the
    set of variables placed before it, so choosing the largest letter at
    each step is exact.
    """
    s = _svals(z)
    if isinstance(n, dict):
        n = {c: k for c, k in n.items() if k}
    else:
        n = {c: k for c, k in enumerate(n) if k}
    pool = []
    for c in sorted(n):
        for a in range(1, n[c] + 1):
            pool.append((c, -exps.get(VarId(c, a), 0)))
    for v in exps:
        if v.slot > n.get(v.color, 0):
            raise ValueError("variable %r outside the degree vector" % (v,))
    # colour totals of the remaining pool, and of the placed prefix
    rem = {}
    for c, _ in pool:
        rem[c] = rem.get(c, 0) + 1
    placed = {}
    out = []
    remaining = list(pool)
    while remaining:
        best = None
        for idx, (c, k) in enumerate(remaining):
            later = sum(s[x][c] * m for x, m in rem.items()) - s[c][c]
            earlier = sum(s[c][y] * m for y, m in placed.items())
            d = k - later + earlier
            key = (-d, c)
            if best is None or key > best[0]:
                best = (key, idx, Letter(c, d))
        _, idx, letter = best
        c, _ = remaining.pop(idx)
        rem[c] -= 1
        if not rem[c]:
            del rem[c]
        placed[c] = placed.get(c, 0) + 1
        out.append(letter)
    return tuple(out)


def lead(R: LaurentPoly, n, z):
    """(leading word, leading monomial, coefficient) of a nonzero R."""
    if not R:
        raise ZeroPolynomial("lead of the zero polynomial")
    best = None
    for m, c in R.items():
        w = leading_word(m, n, z)
        k = word_key(w)
        if best is None or k > best[0]:
            best = (k, w, m, c)
    return best[1], best[2], best[3]


def mu_for_word(w, z) -> Dict[VarId, int]:
    """A monomial prod z^{-k} whose leading word is w (w non-increasing).

    Inverts d_a = k_a - sum_{x>a} s_{i_x i_a} + sum_{y<a} s_{i_a i_y} with the
    identity ordering and first-occurrence slots.
    """
    s = _svals(z)
    vs = relabel([c for c, _ in w])
    out = {}
    for a, (c, d) in enumerate(w):
        k = d + sum(s[w[x][0]][c] for x in range(a + 1, len(w))) \
            - sum(s[c][w[y][0]] for y in range(a))
        if k:
            out[vs[a]] = -k
    return out


def enumerate_non_increasing(degree, window, z, at_least=None) -> List[Word]:
    """Non-increasing words of degree (n, d) with exponents in [lo, hi]."""
    n, d = degree
    if isinstance(n, dict):
        n = {c: k for c, k in n.items() if k}
    else:
        n = {c: k for c, k in enumerate(n) if k}
    lo, hi = window
    if lo > hi:
        return []
    s = _svals(z)
    total = sum(n.values())
    colors = sorted(n)
    out = []
    cur = []

    def ok_append(c, e):
        acc = 0
        for a in range(len(cur) - 1, -1, -1):
            ia, da = cur[a]
            acc += s[ia][c] + s[c][ia]
            bound = e - acc
            if da > bound or (da == bound and ia < c):
                return False
        return True

    def rec(left, remsum, counts):
        if left == 0:
            if remsum == 0:
                out.append(tuple(cur))
            return
        for c in colors:
            if not counts[c]:
                continue
            for e in range(lo, hi + 1):
                rest = remsum - e
                if rest < lo * (left - 1) or rest > hi * (left - 1):
                    continue
                if not ok_append(c, e):
                    continue
                cur.append(Letter(c, e))
                counts[c] -= 1
                rec(left - 1, rest, counts)
                counts[c] += 1
                cur.pop()

    rec(total, d, dict(n))
    if at_least is not None:
        ak = word_key(at_least)
        out = [w for w in out if word_key(w) >= ak]
    out.sort(key=word_key)
    return out

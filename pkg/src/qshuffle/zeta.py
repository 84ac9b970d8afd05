"""Zeta data: the matrix of functions zeta_ij(x) = tilde_ij(x) / (1 - x)^m_ij.

Vertices are referred to by their index in ``vertices``; the list order is
the total order on I.  Univariate Laurent polynomials are plain dicts
{exponent: coefficient}.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Tuple

from .errors import InvalidCartanData, InvalidZetaDatum, NegativeCount, NotDivisible
from .exactfield import RatFunc, as_scalar, format_scalar, qpow, scalar_key, sinv

__all__ = [
    "ZetaDatum",
    "FactoredZeta",
    "SpecPoint",
    "Specialization",
    "Wheel",
    "WheelList",
    "from_kac_moody",
    "from_quiver",
    "as_datum",
    "is_symmetric",
    "specialize",
    "find_wheels",
    "upoly_mul",
    "upoly_divide",
]


# -- univariate helpers -----------------------------------------------------

def upoly_mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            c = out.get(i + j, 0) + x * y
            if c:
                out[i + j] = as_scalar(c)
            else:
                out.pop(i + j, None)
    return out


def upoly_divide(a, b):
    """Exact quotient of univariate Laurent polys, else NotDivisible."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    a = {k: v for k, v in a.items() if v}
    if not a:
        return {}
    bt, bl = max(b), min(b)
    lead_inv = sinv(b[bt])
    q = {}
    lo = min(a) - bl
    while a:
        at = max(a)
        k = at - bt
        if k < lo:
            raise NotDivisible("univariate division leaves a remainder")
        c = as_scalar(a[at] * lead_inv)
        q[k] = c
        for e, v in b.items():
            t = a.get(e + k, 0) - c * v
            if t:
                a[e + k] = as_scalar(t)
            else:
                a.pop(e + k, None)
    return q


def _factor_poly(alpha, s, roots):
    p = {s: as_scalar(alpha)}
    for r in roots:
        p = upoly_mul(p, {0: 1, 1: -as_scalar(r)})
    return p


# -- data types ---------------------------------------------------------------

class ZetaDatum:
    """Explicit datum: ``tilde[i][j]`` univariate dicts and pole flags."""

    def __init__(self, vertices, tilde, pole=None):
        self.vertices = [str(v) for v in vertices]
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise InvalidZetaDatum("duplicate vertex names")
        self.tilde = [[{int(k): as_scalar(c) for k, c in tilde[i][j].items() if as_scalar(c)}
                       for j in range(n)] for i in range(n)]
        if pole is None:
            pole = [[int(i == j) for j in range(n)] for i in range(n)]
        self.pole = [[int(pole[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                if not self.tilde[i][j]:
                    raise InvalidZetaDatum("zeta~_%d%d is zero" % (i, j))
                m = self.pole[i][j]
                if m not in (0, 1) or (i != j and m):
                    raise InvalidZetaDatum("pole flag m_%d%d = %d not allowed" % (i, j, m))
        self._key = None

    @property
    def size(self):
        return len(self.vertices)

    def index(self, v):
        if isinstance(v, int) and not isinstance(v, bool):
            if 0 <= v < self.size:
                return v
        return self.vertices.index(str(v))

    def s(self, i, j):
        return min(self.tilde[i][j])

    def alpha(self, i, j):
        return self.tilde[i][j][self.s(i, j)]

    def beta(self, i, j):
        return self.tilde[i][j][max(self.tilde[i][j])]

    def count(self, i, j):
        t = self.tilde[i][j]
        return max(t) - min(t)

    @property
    def datum(self):
        return self

    def key(self):
        """Canonical text form, used for hashing and caching."""
        if self._key is None:
            rows = []
            for i in range(self.size):
                for j in range(self.size):
                    t = self.tilde[i][j]
                    rows.append("%d,%d,%d:" % (i, j, self.pole[i][j]) +
                                ";".join("%d=%s" % (k, format_scalar(t[k])) for k in sorted(t)))
            self._key = "|".join(self.vertices) + "#" + "/".join(rows)
        return self._key

    def __eq__(self, other):
        return isinstance(other, ZetaDatum) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "ZetaDatum(vertices=%r)" % (self.vertices,)


@dataclass(frozen=True, eq=False)
class FactoredZeta:
    """zeta~_ij(x) = alpha_ij x^s_ij prod_e (1 - x q_e^{ij})."""

    vertices: Tuple[str, ...]
    alpha: Dict[Tuple[int, int], object]
    s: Dict[Tuple[int, int], int]
    roots: Dict[Tuple[int, int], Tuple[object, ...]]
    pole: Tuple[Tuple[int, ...], ...] = None

    def __post_init__(self):
        n = len(self.vertices)
        if self.pole is None:
            object.__setattr__(self, "pole", tuple(tuple(int(i == j) for j in range(n))
                                                   for i in range(n)))
        for i in range(n):
            for j in range(n):
                a = as_scalar(self.alpha.get((i, j), 1))
                if not a:
                    raise InvalidZetaDatum("alpha_%d%d is zero" % (i, j))
                if any(not as_scalar(r) for r in self.roots.get((i, j), ())):
                    raise InvalidZetaDatum("zero root in zeta~_%d%d" % (i, j))

    @property
    def size(self):
        return len(self.vertices)

    def root_list(self, i, j):
        return tuple(as_scalar(r) for r in self.roots.get((i, j), ()))

    @property
    def datum(self) -> ZetaDatum:
        d = self.__dict__.get("_datum")
        if d is None:
            n = self.size
            tilde = [[_factor_poly(self.alpha.get((i, j), 1), self.s.get((i, j), 0),
                                   self.root_list(i, j)) for j in range(n)] for i in range(n)]
            d = ZetaDatum(self.vertices, tilde, [list(r) for r in self.pole])
            d.factored = self
            object.__setattr__(self, "_datum", d)
        return d

    def key(self):
        return self.datum.key()

    def __eq__(self, other):
        return isinstance(other, FactoredZeta) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def as_datum(z) -> ZetaDatum:
    return z.datum


# -- constructors ---------------------------------------------------------------

def from_kac_moody(d, vertices=None) -> FactoredZeta:
    """zeta_ij(x) = (q^{-d_ij} - x)(-x)^{-[i>j]} / (1-x)^{delta_ij}."""
    n = len(d)
    if any(len(row) != n for row in d):
        raise InvalidCartanData("symmetrizer must be square")
    for i in range(n):
        if d[i][i] <= 0 or d[i][i] % 2:
            raise InvalidCartanData("d_%d%d = %d is not a positive even integer" % (i, i, d[i][i]))
        for j in range(n):
            if d[i][j] != d[j][i]:
                raise InvalidCartanData("symmetrizer is not symmetric")
            if i != j and d[i][j] > 0:
                raise InvalidCartanData("d_%d%d = %d is positive" % (i, j, d[i][j]))
    alpha, s, roots = {}, {}, {}
    for i in range(n):
        for j in range(n):
            a = qpow(-d[i][j])
            # (q^-d - x)(-x)^-1 = -q^-d x^-1 (1 - x q^d)
            alpha[i, j] = -a if i > j else a
            s[i, j] = -1 if i > j else 0
            roots[i, j] = (qpow(d[i][j]),)
    vertices = vertices or [str(i + 1) for i in range(n)]
    return FactoredZeta(tuple(vertices), alpha, s, roots)


def from_quiver(counts, vertices=None, alpha=None, s=None) -> FactoredZeta:
    """K-theoretic Hall datum zeta~_ij = (1 - x)^{#_ij}, pole on the diagonal.

    ``alpha`` and ``s`` default to 1 and 0 (the untwisted product).
    """
    n = len(counts)
    if any(len(row) != n for row in counts):
        raise NegativeCount("arrow-count matrix must be square")
    roots = {}
    for i in range(n):
        for j in range(n):
            if counts[i][j] < 0:
                raise NegativeCount("#_%d%d = %d" % (i, j, counts[i][j]))
            roots[i, j] = (1,) * counts[i][j]
    al = {(i, j): (alpha[i][j] if alpha else 1) for i in range(n) for j in range(n)}
    ss = {(i, j): (s[i][j] if s else 0) for i in range(n) for j in range(n)}
    vertices = vertices or [str(i + 1) for i in range(n)]
    return FactoredZeta(tuple(vertices), al, ss, roots)


def is_symmetric(z) -> bool:
    """#_ij = -s_ij - s_ji + delta_ij for all i, j."""
    z = as_datum(z)
    n = z.size
    return all(z.count(i, j) == -z.s(i, j) - z.s(j, i) + (i == j)
               for i in range(n) for j in range(n))


# -- points, specialization -------------------------------------------------------

def _norm_degree(n, size=None):
    if isinstance(n, dict):
        return {int(c): int(k) for c, k in n.items() if k}
    return {i: int(k) for i, k in enumerate(n) if k}


@dataclass(frozen=True)
class SpecPoint:
    """Values p[(color, slot)], considered up to a common rescaling."""

    values: Tuple[Tuple[Tuple[int, int], object], ...]

    @classmethod
    def make(cls, values):
        if isinstance(values, dict):
            items = values.items()
        else:
            items = values
        items = sorted(((int(c), int(a)), as_scalar(v)) for (c, a), v in items)
        for k, v in items:
            if not v:
                raise ValueError("point coordinate %r is zero" % (k,))
        return cls(tuple(items))

    @classmethod
    def from_sequence(cls, n, seq):
        """Values listed color by color, slots in order (as printed points are)."""
        n = _norm_degree(n)
        keys = [(c, a) for c in sorted(n) for a in range(1, n[c] + 1)]
        if len(keys) != len(seq):
            raise ValueError("point has %d entries, degree needs %d" % (len(seq), len(keys)))
        return cls.make(zip(keys, seq))

    def as_dict(self):
        return dict(self.values)

    def degree(self):
        out = {}
        for (c, a), _ in self.values:
            out[c] = max(out.get(c, 0), a)
        return out

    def rescaled(self, factor):
        return SpecPoint.make({k: v * factor for k, v in self.values})

    def canonical(self):
        """Representative up to rescaling and within-color slot renaming.

        The first color's smallest-key value is normalised to 1; slots of each
        color carry their values sorted by scalar key.
        """
        d = self.as_dict()
        colors = sorted({c for c, _ in d})
        best = None
        for norm in {v for (c, _), v in d.items() if c == colors[0]}:
            inv = sinv(norm)
            per = {}
            for (c, a), v in d.items():
                per.setdefault(c, []).append(as_scalar(v * inv))
            seqs = []
            for c in colors:
                vals = sorted(per[c], key=scalar_key)
                if c == colors[0]:
                    vals.remove(1)
                    vals = [1] + vals
                seqs.append(vals)
            key = tuple(tuple(scalar_key(v) for v in s) for s in seqs)
            if best is None or key < best[0]:
                best = (key, seqs)
        items = {}
        for c, vals in zip(colors, best[1]):
            for a, v in enumerate(vals, 1):
                items[(c, a)] = v
        return SpecPoint.make(items)

    def same_as(self, other):
        return self.canonical() == other.canonical()

    def __str__(self):
        return "(" + ", ".join(format_scalar(v) for _, v in self.values) + ")"


@dataclass
class Specialization:
    classes: List[Tuple[int, object, Tuple[int, ...]]]   # (color, value, slots)
    counts: List[int]
    quiver: List[List[int]]
    partial: Dict[Tuple[int, int], Dict[int, object]]
    point: SpecPoint

    def class_of(self, color, slot):
        for k, (c, _, slots) in enumerate(self.classes):
            if c == color and slot in slots:
                return k
        raise KeyError((color, slot))

    def quiver_datum(self):
        names = ["%d:%s" % (c, format_scalar(v)) for c, v, _ in self.classes]
        return from_quiver(self.quiver, vertices=names)


def specialize(z: FactoredZeta, n, p: SpecPoint) -> Specialization:
    n = _norm_degree(n)
    vals = p.as_dict()
    need = {(c, a) for c in n for a in range(1, n[c] + 1)}
    if set(vals) != need:
        raise ValueError("point is not defined on exactly the variables of the degree")
    classes = []
    for (c, a) in sorted(vals):
        for k, (cc, v, slots) in enumerate(classes):
            if cc == c and v == vals[c, a]:
                classes[k] = (cc, v, slots + (a,))
                break
        else:
            classes.append((c, vals[c, a], (a,)))
    m = len(classes)
    quiver = [[0] * m for _ in range(m)]
    partial = {}
    for u, (i, pu, _) in enumerate(classes):
        for v, (j, pv, _) in enumerate(classes):
            ratio = as_scalar(pv * sinv(pu))
            hits = [r for r in z.root_list(i, j) if r == ratio]
            quiver[u][v] = len(hits)
            partial[u, v] = _factor_poly(1, 0, hits)
    return Specialization(classes, [len(s) for _, _, s in classes], quiver, partial, p)


# -- wheels -----------------------------------------------------------------------

@dataclass(frozen=True)
class Wheel:
    cycle: Tuple[Tuple[int, int], ...]
    ratios: Tuple[object, ...]

    def verify(self, p: SpecPoint, z: FactoredZeta) -> bool:
        vals = p.as_dict()
        k = len(self.cycle)
        for t in range(k):
            a, b = self.cycle[t], self.cycle[(t + 1) % k]
            r = self.ratios[t]
            if as_scalar(vals[b] * sinv(vals[a])) != r:
                return False
            if r not in z.root_list(a[0], b[0]):
                return False
        return True


class WheelList(list):
    truncated = False


def _rotation_min(seq):
    return min(tuple(seq[t:] + seq[:t]) for t in range(len(seq)))


def _generic_fillers(z, used_values, count, is_q):
    """Values avoiding every root ratio against the already-placed values."""
    roots = {as_scalar(r) for i in range(z.size) for j in range(z.size) for r in z.root_list(i, j)}
    out = []
    t = 0
    while len(out) < count:
        t += 1
        cand = qpow(1000 * t + 7) if is_q else 1009 ** t
        others = list(used_values) + out
        if all(as_scalar(cand * sinv(o)) not in roots and as_scalar(o * sinv(cand)) not in roots
               for o in others) and cand not in roots:
            out.append(cand)
    return out


def find_wheels(z: FactoredZeta, n, max_points: int = 1000) -> WheelList:
    """Points p (up to rescaling) supporting a closed cycle of root ratios.

    Cycles are simple (no repeated slot); slots outside the cycle take
    generic values.
    """
    n = _norm_degree(n)
    total = sum(n.values())
    if total < 2:
        raise ValueError("find_wheels needs |n| >= 2")
    colors = sorted(n)
    is_q = any(isinstance(as_scalar(r), RatFunc)
               for i in range(z.size) for j in range(z.size) for r in z.root_list(i, j))
    found = {}
    result = WheelList()

    def emit(seq, rs):
        # place the cycle, then fill the remaining slots generically
        vals, cyc, used = {}, [], {c: 0 for c in colors}
        cur = 1
        for t, c in enumerate(seq):
            used[c] += 1
            key = (c, used[c])
            vals[key] = cur
            cyc.append(key)
            cur = as_scalar(cur * rs[t])
        rest = [(c, a) for c in colors for a in range(used[c] + 1, n[c] + 1)]
        for key, v in zip(rest, _generic_fillers(z, vals.values(), len(rest), is_q)):
            vals[key] = v
        p = SpecPoint.make(vals)
        canon = p.canonical()
        if canon in found:
            return True
        # re-express the witness cycle in the canonical slots
        cvals = canon.as_dict()
        # find the rescaling and slot renaming realizing canon
        for c0 in [k for k in vals if k[0] == colors[0]]:
            f = sinv(vals[c0])
            pool = {}
            for k, v in cvals.items():
                pool.setdefault((k[0], v), []).append(k)
            ren = {}
            ok = True
            for k in sorted(vals):
                lst = pool.get((k[0], as_scalar(vals[k] * f)))
                if not lst:
                    ok = False
                    break
                ren[k] = lst.pop(0)
            if ok:
                break
        wheel = Wheel(tuple(ren[k] for k in cyc), tuple(rs))
        assert wheel.verify(canon, z), "internal: wheel failed verification"
        found[canon] = wheel
        result.append((canon, wheel))
        return len(result) < max_points

    for k in range(1, total + 1):
        for seq in product(colors, repeat=k):
            if any(seq.count(c) > n[c] for c in colors):
                continue
            if _rotation_min(list(seq)) != seq:
                continue
            options = [z.root_list(seq[t], seq[(t + 1) % k]) for t in range(k)]
            if any(not o for o in options):
                continue
            for rs in product(*options):
                prod_ = 1
                for r in rs:
                    prod_ = prod_ * r
                if as_scalar(prod_) != 1:
                    continue
                if not emit(seq, rs):
                    result.truncated = True
                    result.sort(key=lambda pw: _point_key(pw[0]))
                    return result
    result.sort(key=lambda pw: _point_key(pw[0]))
    return result


def _point_key(p):
    return tuple((k, scalar_key(v)) for k, v in p.values)

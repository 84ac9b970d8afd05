"""Quadratic quantum loop groups as word combinations.

An element of U^+ is a finite combination of words e_w; an element of U^-
a combination of f_w, where the letter i^(d) stands for f_{i,-d}.  Terms
live in the free algebra: the quadratic relations are only used through
``upsilon`` (the map to the shuffle algebra) and ``straighten``.
"""

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, List, Optional, Tuple

from .errors import BudgetExhausted, NotDivisible, SignMismatch
from .exactfield import as_scalar, format_scalar, is_scalar, sdiv, spow
from .laurent import LaurentPoly, VarId, _add_into, dense_add_into, dense_mul, dense_permute, symmetrize
from .linalg import nullspace, solve
from .pairing import pair_minus, pair_plus, pair_word_minus, pair_word_plus
from .shuffle import (ShuffleElement, antisymmetrize_divide, slot_vars,
                      word_to_shuffle)
from .words import (Letter, enumerate_non_increasing, format_word, is_non_increasing,
                    lead, mu_for_word, relabel, word_degree, word_key)
from .zeta import FactoredZeta, SpecPoint, as_datum, specialize, upoly_divide

__all__ = [
    "UElement",
    "u_mul",
    "relation_element",
    "upsilon",
    "anti",
    "is_basis_word",
    "straighten",
    "Budget",
    "kernel_window",
    "MembershipVerdict",
    "membership",
    "phi_map",
    "psi_map",
    "order_classes",
    "transfer_kernel",
]


def _deg_key(n):
    return tuple(sorted((c, k) for c, k in n.items() if k))


class UElement:
    """Finite combination of words with exact coefficients."""

    __slots__ = ("sign", "terms")

    def __init__(self, sign, terms=None):
        if sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")
        self.sign = sign
        acc = {}
        for w, c in (terms or {}).items():
            w = tuple(Letter(int(a), int(b)) for a, b in w)
            _add_into(acc, w, as_scalar(c))
        self.terms: Dict[Tuple[Letter, ...], object] = acc

    @classmethod
    def one(cls, sign="+"):
        return cls(sign, {(): 1})

    @classmethod
    def zero(cls, sign="+"):
        return cls(sign)

    @classmethod
    def of_word(cls, w, sign="+", coeff=1):
        return cls(sign, {tuple(w): coeff})

    @classmethod
    def e(cls, i, d):
        return cls("+", {((i, d),): 1})

    @classmethod
    def f(cls, i, d):
        """The generator f_{i,d}, stored as the letter i^(-d)."""
        return cls("-", {((i, -d),): 1})

    def items(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def words(self):
        return [w for w, _ in self.items()]

    def components(self) -> Dict:
        """Homogeneous pieces keyed by (degree vector key, d)."""
        out = {}
        for w, c in self.terms.items():
            n, d = word_degree(w)
            out.setdefault((_deg_key(n), d), {})[w] = c
        return {k: UElement(self.sign, v) for k, v in out.items()}

    def _check(self, other):
        if not isinstance(other, UElement):
            return NotImplemented
        if other.sign != self.sign:
            raise SignMismatch("cannot combine U^%s and U^%s" % (self.sign, other.sign))
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return UElement(self.sign, acc)

    def __neg__(self):
        return UElement(self.sign, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UElement):
            return u_mul(self, other)
        if is_scalar(other):
            return UElement(self.sign, {w: c * other for w, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if is_scalar(other):
            return self * other
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, UElement):
            return NotImplemented
        return self.sign == other.sign and self.terms == other.terms

    def __hash__(self):
        return hash((self.sign, frozenset(self.terms.items())))

    def __repr__(self):
        return "UElement(%s, %s)" % (self.sign, self.to_string())

    def to_string(self):
        if not self.terms:
            return "0"
        letter = "e" if self.sign == "+" else "f"
        return " + ".join("(%s) %s_%s" % (format_scalar(c), letter, format_word(w))
                          for w, c in self.items())


def u_mul(a: UElement, b: UElement) -> UElement:
    """Concatenation product in the free algebra."""
    if a.sign != b.sign:
        raise SignMismatch("cannot multiply U^%s by U^%s" % (a.sign, b.sign))
    acc = {}
    for v, c in a.terms.items():
        for w, e in b.terms.items():
            _add_into(acc, v + w, c * e)
    return UElement(a.sign, acc)


def anti(a: UElement) -> UElement:
    """The anti-isomorphism U^- -> U^+ (f_{i,d} -> e_{i,d}) and its inverse."""
    other = "+" if a.sign == "-" else "-"
    return UElement(other, {tuple(Letter(c, -d) for c, d in reversed(w)): x
                            for w, x in a.terms.items()})


def _anti_word(w):
    return tuple(Letter(c, -d) for c, d in reversed(w))


def is_basis_word(w, sign, z) -> bool:
    """Non-increasing (U^+), or image of a non-increasing word (U^-)."""
    return is_non_increasing(w if sign == "+" else _anti_word(w), z)


# ---------------------------------------------------------------------------
# relations

def _relation_sides(z, i, j, sign):
    """(L, M) as {(power of z, power of w): coeff} with L e_i(z)e_j(w) = M e_j(w)e_i(z)
    (sign '+'), or f_i(z)f_j(w) L = f_j(w)f_i(z) M (sign '-')."""
    t_ij, t_ji = z.tilde[i][j], z.tilde[j][i]
    if i != j or not z.pole[i][i]:
        a = {(-e, e): c for e, c in t_ji.items()}  # zeta_ji(w/z)
        b = {(e, -e): c for e, c in t_ij.items()}  # zeta_ij(z/w)
        return (a, b) if sign == "+" else (b, a)
    # clear the simple pole: multiply both sides by (z - w) or (w - z)
    a = {(1 - e, e): c for e, c in t_ij.items()}
    b = {(e, 1 - e): -c for e, c in t_ij.items()}
    if sign == "+":
        return a, b
    return ({(e, 1 - e): c for e, c in t_ij.items()},
            {(1 - e, e): -c for e, c in t_ij.items()})


def relation_element(i, j, d, k, z, sign="+") -> UElement:
    """Coefficient of z^{-d} w^{-k} in the quadratic relation between colors i, j."""
    z = as_datum(z)
    L, M = _relation_sides(z, i, j, sign)
    acc = {}
    s = 1 if sign == "+" else -1
    for (a, b), c in L.items():
        _add_into(acc, (Letter(i, s * (d + a)), Letter(j, s * (k + b))), c)
    for (a, b), c in M.items():
        _add_into(acc, (Letter(j, s * (k + b)), Letter(i, s * (d + a))), -c)
    return UElement(sign, acc)


# ---------------------------------------------------------------------------
# the map to the shuffle algebra

def upsilon(a: UElement, z, degree=None) -> ShuffleElement:
    """Sum of coeff * E_w (or F_w); all words must share one color content."""
    z = as_datum(z)
    out = None
    for w, c in a.items():
        t = word_to_shuffle(w, a.sign, z) * c
        if out is None:
            out = t
        elif out.degree != t.degree:
            raise ValueError("upsilon needs a single color content")
        else:
            out = out + t
    if out is None:
        return ShuffleElement.zero(a.sign, degree or {})
    return out


# ---------------------------------------------------------------------------
# straightening

@dataclass
class Budget:
    """Limits for the adaptive window searches."""

    max_window: int = 8      # largest enlargement of the exponent window
    step: int = 2
    extra: int = 2           # margin of the verification tests
    max_candidates: int = 4000
    max_steps: int = 200     # greedy reduction steps


_TESTS: Dict = {}


def _test_function(v, z) -> ShuffleElement:
    """Sym mu_v in V^-, whose leading word is v."""
    key = (z.key(), v)
    got = _TESTS.get(key)
    if got is None:
        n, _ = word_degree(v)
        mu = LaurentPoly.monomial(mu_for_word(v, z))
        got = ShuffleElement("-", n, symmetrize(mu, n, "full"))
        _TESTS[key] = got
    return got


def _triangular_solve(comp: UElement, cands, z):
    x = []
    for r, vp in enumerate(cands):
        T = _test_function(vp, z)
        acc = pair_plus(comp, T, z)
        for c in range(r):
            if x[c]:
                acc = acc - x[c] * pair_word_plus(cands[c], T, z)
        diag = pair_word_plus(vp, T, z)
        if not diag:
            return None
        x.append(as_scalar(sdiv(acc, diag)))
    return x


def _straighten_component(comp: UElement, z, budget: Budget) -> UElement:
    words = list(comp.terms)
    n, d = word_degree(words[0])
    exps = [e for w in words for _, e in w]
    lo0, hi0 = min(exps), max(exps)
    least = min(words, key=word_key)
    target = upsilon(comp, z)
    beta = 0
    tried = []
    while beta <= budget.max_window:
        win = (lo0 - beta, hi0 + beta)
        cands = enumerate_non_increasing((n, d), win, z, at_least=least)
        if len(cands) > budget.max_candidates:
            break
        tried.append({"window": list(win), "candidates": len(cands)})
        x = _triangular_solve(comp, cands, z)
        if x is not None:
            out = UElement("+", {v: c for v, c in zip(cands, x) if c})
            if upsilon(out, z, n) == target:
                wider = (win[0] - budget.extra, win[1] + budget.extra)
                seen = set(cands)
                extra = [v for v in enumerate_non_increasing((n, d), wider, z, at_least=least)
                         if v not in seen]
                if all(pair_plus(out, _test_function(v, z), z) == pair_plus(comp, _test_function(v, z), z)
                       for v in extra):
                    return out
        beta += budget.step
    raise BudgetExhausted("straightening did not stabilize", {"attempts": tried})


def straighten(a: UElement, z, budget: Optional[Budget] = None) -> UElement:
    """Rewrite a in the basis of non-increasing words (images of them for U^-)."""
    z = as_datum(z)
    budget = budget or Budget()
    if a.sign == "-":
        return anti(straighten(anti(a), z, budget))
    out = UElement("+")
    for _, comp in sorted(a.components().items()):
        if all(is_non_increasing(w, z) for w in comp.terms):
            out = out + comp
        else:
            out = out + _straighten_component(comp, z, budget)
    return out


# ---------------------------------------------------------------------------
# kernels

def _norm_deg(n):
    if isinstance(n, dict):
        return {int(c): int(k) for c, k in n.items() if k}
    return {i: int(k) for i, k in enumerate(n) if k}


def basis_words(degree, window, z, sign="+"):
    """Basis words of U^sign in degree (n, d) with exponents in the window."""
    n, d = degree
    n = _norm_deg(n)
    lo, hi = window
    if sign == "+":
        return enumerate_non_increasing((n, d), (lo, hi), z)
    return [_anti_word(v) for v in enumerate_non_increasing((n, -d), (-hi, -lo), z)]


def _columns(words, sign, z, vs):
    return [word_to_shuffle(w, sign, z).body.dense(vs) for w in words]


def kernel_window(degree, window, z, sign="+") -> List[UElement]:
    """Basis of the kernel of upsilon on the span of basis words in the window."""
    z = as_datum(z)
    n, d = degree
    n = _norm_deg(n)
    words = basis_words((n, d), window, z, sign)
    if not words:
        return []
    vs = slot_vars(n)
    cols = _columns(words, sign, z, vs)
    monos = sorted(set().union(*cols))
    rows = [[col.get(m, 0) for col in cols] for m in monos]
    out = []
    for v in nullspace(rows, len(words)):
        phi = UElement(sign, {w: c for w, c in zip(words, v) if c})
        if upsilon(phi, z, n).body:
            raise ArithmeticError("kernel vector does not vanish under upsilon")
        out.append(phi)
    return out


# ---------------------------------------------------------------------------
# membership

@dataclass
class MembershipVerdict:
    status: str                       # MEMBER, NOT_MEMBER or UNDECIDED
    expansion: Optional[Dict] = None  # word -> coefficient, for MEMBER
    witness: Optional[UElement] = None
    report: Dict = field(default_factory=dict)

    def __bool__(self):
        return self.status == "MEMBER"


def _exp_range(body: LaurentPoly):
    es = [x for e in body.terms for x in e] or [0]
    return min(es), max(es)


def _linear_member(body, n, h, sign, win, z):
    """Solve body = sum x_w (E_w or F_w) over basis words of the window."""
    # words of U^sign whose image has hom-degree h
    d = h if sign == "+" else -h
    words = basis_words((n, d), win, z, sign)
    if not words:
        return None
    vs = slot_vars(n)
    cols = _columns(words, sign, z, vs)
    target = body.dense(vs)
    monos = sorted(set().union(target, *cols))
    rows = [[col.get(m, 0) for col in cols] for m in monos]
    x = solve(rows, [target.get(m, 0) for m in monos], len(words))
    if x is None:
        return None
    return {w: c for w, c in zip(words, x) if c}


def _witness(R, n, h, win, z):
    if R.sign == "-":
        for phi in kernel_window((n, -h), win, z, "+"):
            if pair_plus(phi, R, z):
                return phi
    else:
        for phi in kernel_window((n, h), win, z, "-"):
            if pair_minus(R, phi, z):
                return phi
    return None


def membership(R: ShuffleElement, z, budget: Optional[Budget] = None) -> MembershipVerdict:
    """Decide whether R lies in the image of upsilon, with a certificate."""
    z = as_datum(z)
    budget = budget or Budget()
    n = R.degree
    sign = R.sign
    if not R.body:
        return MembershipVerdict("MEMBER", {})
    h = R.body.homdeg()
    if h is None:
        raise ValueError("membership needs a homogeneous element")
    expansion: Dict = {}
    cur = R.body
    steps = 0
    if sign == "-":
        # greedy: cancel the leading monomial with F_w, w = lead word
        prev = None
        while cur and steps < budget.max_steps:
            w, m, c = lead(cur, n, z)
            if prev is not None and word_key(w) >= word_key(prev):
                break
            F = word_to_shuffle(w, "-", z).body
            fc = F.coefficient(m)
            if not fc:
                break
            k = as_scalar(sdiv(c, fc))
            _add_into(expansion, w, k)
            cur = cur - F * k
            prev = w
            steps += 1
    report = {"greedy_steps": steps, "windows": []}
    if not cur:
        return MembershipVerdict("MEMBER", {w: c for w, c in expansion.items() if c}, report=report)
    lo, hi = _exp_range(cur)
    rlo, rhi = _exp_range(R.body)
    span = max(abs(lo), abs(hi), abs(rlo), abs(rhi))
    beta = 0
    while beta <= budget.max_window:
        win = (-span - beta, span + beta)
        report["windows"].append(list(win))
        x = _linear_member(cur, n, h, sign, win, z)
        if x is not None:
            for w, c in x.items():
                _add_into(expansion, w, c)
            report["linear_window"] = list(win)
            return MembershipVerdict("MEMBER", {w: c for w, c in expansion.items() if c},
                                     report=report)
        phi = _witness(R, n, h, win, z)
        if phi is not None:
            report["witness_window"] = list(win)
            return MembershipVerdict("NOT_MEMBER", witness=phi, report=report)
        beta += budget.step
    return MembershipVerdict("UNDECIDED", report=report)


def recombine(expansion, sign, z) -> ShuffleElement:
    return upsilon(UElement(sign, expansion), z)


# ---------------------------------------------------------------------------
# the maps Phi and Psi

def order_classes(colors) -> List[Tuple[int, ...]]:
    """Permutations sigma (one-line, 0-based) with sigma(a) < sigma(b) whenever
    a < b carry the same color."""
    n = len(colors)
    out = []
    for s in permutations(range(n)):
        if all(s[a] < s[b] for a, b in combinations(range(n), 2) if colors[a] == colors[b]):
            out.append(s)
    return out


def _layout(colors):
    lv = relabel(colors)
    n = {}
    for c in colors:
        n[c] = n.get(c, 0) + 1
    vs = slot_vars(n)
    pos = {v: i for i, v in enumerate(vs)}
    return lv, n, vs, [pos[v] for v in lv]


def _args_dense(poly: LaurentPoly, lv, target_index, nv):
    """Dense terms of poly with argument a (variable lv[a]) moved to target_index[a]."""
    arg = {v: a for a, v in enumerate(lv)}
    idx = [target_index[arg[v]] for v in poly.vars]
    out = {}
    for e, c in poly.terms.items():
        ex = [0] * nv
        for i, x in zip(idx, e):
            ex[i] += x
        _add_into(out, tuple(ex), c)
    return out


def _ratio(t, ix, iy, nv):
    out = {}
    for k, c in t.items():
        e = [0] * nv
        e[ix] += k
        e[iy] -= k
        out[tuple(e)] = c
    return out


def _mono(nv, pairs, c=1):
    e = [0] * nv
    for i, k in pairs:
        e[i] += k
    return {tuple(e): c}


def phi_map(p: Dict, colors, z) -> LaurentPoly:
    """sum_sigma Sym[p_sigma(z_sigma(1)..z_sigma(n)) prod_{a<b} zeta(z_sigma(a)/z_sigma(b))].

    ``p`` maps sigma (0-based one-line tuples) to Laurent polynomials in the
    variables relabel(colors), the a-th of which stands for the a-th argument.
    """
    z = as_datum(z)
    colors = list(colors)
    lv, n, vs, idx = _layout(colors)
    nv = len(vs)
    allowed = set(order_classes(colors))
    total = {}
    for sigma, poly in p.items():
        sigma = tuple(sigma)
        if sigma not in allowed:
            raise ValueError("%r does not respect the equal-color order" % (sigma,))
        if not poly:
            continue
        N = _args_dense(poly, lv, [idx[sigma[a]] for a in range(len(colors))], nv)
        for a, b in combinations(range(len(colors)), 2):
            u, v = sigma[a], sigma[b]
            ci, cj = colors[u], colors[v]
            iu, iv = idx[u], idx[v]
            N = dense_mul(N, _ratio(z.tilde[ci][cj], iu, iv, nv))
            if ci == cj:
                up = lv[u].slot < lv[v].slot
                if z.pole[ci][ci]:
                    # zeta~ z_v/(z_v - z_u) times the Delta factor of the pair
                    N = dense_mul(N, _mono(nv, [(iv, 1)], -1 if up else 1))
                else:
                    lin = dict(_mono(nv, [(iu, 1)], 1 if up else -1))
                    lin.update(_mono(nv, [(iv, 1)], -1 if up else 1))
                    N = dense_mul(N, lin)
        dense_add_into(total, N)
    if not total:
        return LaurentPoly()
    return LaurentPoly(vs, antisymmetrize_divide(total, vs, n))


def _inverse(s):
    inv = [0] * len(s)
    for a, x in enumerate(s):
        inv[x] = a
    return tuple(inv)


def psi_map(f: Dict, colors, z) -> Dict:
    """The family p_sigma built from f_{sigma sigma'} (sigma != sigma').

    Each f is a Laurent polynomial in the original arguments; p_sigma is
    returned in its own arguments y_a = z_sigma(a), whose colors are
    colors[sigma(a)].
    """
    z = as_datum(z)
    colors = list(colors)
    n = len(colors)
    lv = relabel(colors)
    sigmas = order_classes(colors)
    out = {}
    for s in sigmas:
        sinv = _inverse(s)
        c = [colors[s[a]] for a in range(n)]
        acc = {}
        for t in sigmas:
            if t == s:
                continue
            tinv = _inverse(t)
            pairs = [(a, b) for a, b in combinations(range(n), 2) if tinv[s[a]] > tinv[s[b]]]
            for key, sg in (((s, t), 1), ((t, s), -1)):
                poly = f.get(key)
                if not poly:
                    continue
                N = _args_dense(poly, lv, list(sinv), n)
                for a, b in pairs:
                    N = dense_mul(N, _ratio(z.tilde[c[b]][c[a]], b, a, n))
                    if sg < 0 and c[a] == c[b]:
                        N = dense_mul(N, _mono(n, [(a, 1), (b, -1)], -1))
                dense_add_into(acc, N, sg)
        out[s] = LaurentPoly(lv, acc)
    return out


# ---------------------------------------------------------------------------
# transfer from a specialized quiver algebra

def transfer_kernel(phi: UElement, p: SpecPoint, z: FactoredZeta, order=None) -> UElement:
    """Move a kernel element of the quiver algebra at the point p to the
    general algebra of z.

    Words of ``phi`` use class indices of ``specialize(z, n, p)`` as colors;
    ``order`` lists the class indices from smallest to largest (default:
    index order).  The result uses the colors of z.
    """
    if phi.sign != "+":
        raise ValueError("transfer_kernel acts on U^+")
    spec = specialize(z, p.degree(), p)
    rank = {C: r for r, C in enumerate(order if order is not None else range(len(spec.classes)))}
    tilde = as_datum(z).tilde
    acc = {}
    for w, coeff in phi.terms.items():
        cls = [C for C, _ in w]
        col = [spec.classes[C][0] for C in cls]
        val = [spec.classes[C][1] for C in cls]
        m = len(w)
        k = coeff
        for (C, d), pv in zip(w, val):
            k = k * spow(pv, -d)
        P = {tuple(d for _, d in w): as_scalar(k)}
        for u, v in combinations(range(m), 2):
            num = tilde[col[v]][col[u]]
            den = spec.partial[cls[v], cls[u]]
            q = upoly_divide(num, den)
            P = dense_mul(P, _ratio(q, v, u, m))
            if col[u] == col[v] and rank[cls[v]] < rank[cls[u]]:
                P = dense_mul(P, _mono(m, [(u, 1), (v, -1)], -1))
        for e, c in P.items():
            _add_into(acc, tuple(Letter(ci, x) for ci, x in zip(col, e)), c)
    return UElement("+", acc)

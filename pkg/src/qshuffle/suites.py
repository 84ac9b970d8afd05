"""Named self-check suites run by ``qshuffle verify``.

Each check draws small random inputs from a seeded generator and compares
two independent computations exactly.  Sizes are kept small so that the
suites finish quickly on any datum of modest rank.
"""

import random
from itertools import combinations
from typing import Callable, Dict, List

from .laurent import LaurentPoly, symmetrize
from .pairing import pair_minus, pair_plus, pair_words_oracle
from .quantum import (UElement, order_classes, phi_map, psi_map, relation_element,
                      straighten, upsilon)
from .shuffle import ShuffleElement, shuffle_mul, slot_vars, word_to_shuffle, word_to_shuffle_sym
from .words import Letter, enumerate_non_increasing, mu_for_word, relabel, word_key
from .zeta import as_datum


def _rand_word(rng, colors, length, lo=-1, hi=1):
    return tuple(Letter(rng.choice(colors), rng.randint(lo, hi)) for _ in range(length))


def _rand_body(rng, n, terms=2, lo=-1, hi=1):
    vs = slot_vars(n)
    items = [({v: rng.randint(lo, hi) for v in vs}, rng.randint(-2, 2) or 1) for _ in range(terms)]
    return symmetrize(LaurentPoly.from_items(items), n, "full")


def check_relations(z, rng, count=10):
    zd = as_datum(z)
    for _ in range(count):
        i, j = rng.randrange(zd.size), rng.randrange(zd.size)
        d, k = rng.randint(-2, 2), rng.randint(-2, 2)
        for sign in "+-":
            r = relation_element(i, j, d, k, zd, sign)
            if upsilon(r, zd).body:
                return False, "upsilon(relation) != 0 at %r" % ((i, j, d, k, sign),)
    return True, "%d relations vanish" % count


def check_multiplicative(z, rng, count=10):
    zd = as_datum(z)
    colors = list(range(zd.size))
    for _ in range(count):
        v = _rand_word(rng, colors, rng.randint(1, 2))
        w = _rand_word(rng, colors, rng.randint(1, 2))
        for sign in "+-":
            lhs = word_to_shuffle(v + w, sign, zd)
            rhs = shuffle_mul(word_to_shuffle(v, sign, zd), word_to_shuffle(w, sign, zd), zd)
            if lhs != rhs:
                return False, "upsilon(vw) != upsilon(v)*upsilon(w) for %r, %r" % (v, w)
            if word_to_shuffle_sym(v + w, sign, zd) != lhs:
                return False, "iterated and direct word images differ for %r" % (v + w,)
    return True, "%d word pairs" % count


def check_associative(z, rng, count=6):
    zd = as_datum(z)
    colors = list(range(zd.size))
    for _ in range(count):
        parts = []
        for _ in range(3):
            c = rng.choice(colors)
            parts.append(ShuffleElement("+", {c: 1}, _rand_body(rng, {c: 1})))
        a, b, c = parts
        if shuffle_mul(shuffle_mul(a, b, zd), c, zd) != shuffle_mul(a, shuffle_mul(b, c, zd), zd):
            return False, "associativity fails"
    return True, "%d triples" % count


def check_pairings(z, rng, count=10):
    zd = as_datum(z)
    colors = list(range(zd.size))
    for _ in range(count):
        length = rng.randint(1, 3)
        v = _rand_word(rng, colors, length)
        perm = list(v)
        rng.shuffle(perm)
        w = tuple(Letter(c, rng.randint(-1, 1)) for c, _ in perm)
        shift = sum(d for _, d in v) - sum(d for _, d in w)
        w = w[:-1] + (Letter(w[-1][0], w[-1][1] + shift),)
        a = pair_plus({v: 1}, word_to_shuffle(w, "-", zd), zd)
        b = pair_minus(word_to_shuffle(v, "+", zd), {w: 1}, zd)
        c = pair_words_oracle(v, w, zd)
        if not (a == b == c):
            return False, "pairings disagree on %r, %r" % (v, w)
    return True, "%d word pairs" % count


def check_triangular(z, rng, count=None):
    zd = as_datum(z)
    c = rng.randrange(zd.size)
    n = {c: 2}
    for d in (-1, 0, 1):
        ws = enumerate_non_increasing((n, d), (-2, 2), zd)
        for vp in ws:
            T = ShuffleElement("-", n, symmetrize(LaurentPoly.monomial(mu_for_word(vp, zd)), n, "full"))
            for v in ws:
                x = pair_plus({v: 1}, T, zd)
                if v == vp and not x:
                    return False, "zero diagonal at %r" % (v,)
                if word_key(v) > word_key(vp) and x:
                    return False, "nonzero above the diagonal at %r, %r" % (v, vp)
    return True, "degree 2 of vertex %d" % c


def check_phi_psi(z, rng, count=3):
    zd = as_datum(z)
    for _ in range(count):
        colors = [rng.randrange(zd.size) for _ in range(3)]
        lv = relabel(colors)
        S = order_classes(colors)
        f = {}
        for s in S:
            for t in S:
                if s != t and rng.random() < 0.5:
                    items = [({v: rng.randint(-1, 1) for v in lv}, rng.randint(1, 3))]
                    f[s, t] = LaurentPoly.from_items(items)
        if phi_map(psi_map(f, colors, zd), colors, zd):
            return False, "Phi(Psi(f)) != 0 for colors %r" % (colors,)
    return True, "%d random inputs" % count


def check_straighten(z, rng, count=4):
    zd = as_datum(z)
    c = rng.randrange(zd.size)
    for _ in range(count):
        d = rng.randint(-1, 1)
        a = UElement("+")
        for _ in range(2):
            e1 = rng.randint(-1, 1)
            a = a + UElement("+", {((c, e1), (c, d - e1)): rng.randint(1, 3)})
        s = straighten(a, zd)
        if upsilon(s, zd, {c: 2}) != upsilon(a, zd, {c: 2}):
            return False, "straighten changed upsilon"
        if straighten(s, zd) != s:
            return False, "straighten is not idempotent"
    return True, "%d elements" % count


SUITES: Dict[str, List[Callable]] = {
    "core": [check_relations, check_multiplicative, check_associative, check_pairings,
             check_triangular, check_phi_psi, check_straighten],
    "algebra": [check_relations, check_multiplicative, check_associative, check_phi_psi],
    "pairing": [check_pairings, check_triangular],
    "straighten": [check_straighten],
}


def run_suite(name, z, seed=0):
    if name not in SUITES:
        raise ValueError("unknown suite %r (known: %s)" % (name, ", ".join(sorted(SUITES))))
    out = []
    for check in SUITES[name]:
        rng = random.Random("%s:%s:%d" % (name, check.__name__, seed))
        ok, detail = check(z, rng)
        out.append({"check": check.__name__[len("check_"):], "passed": bool(ok), "detail": detail})
    return out

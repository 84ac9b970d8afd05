import random

import pytest
from hypothesis import given, strategies as st

from qshuffle.errors import SignMismatch
from qshuffle.exactfield import qpow, sdiv
from qshuffle.laurent import LaurentPoly, symmetrize, var
from qshuffle.pairing import pair_plus
from qshuffle.quantum import (UElement, anti, kernel_window, membership, order_classes,
                              phi_map, psi_map, recombine, relation_element, straighten,
                              transfer_kernel, u_mul, upsilon)
from qshuffle.shuffle import ShuffleElement, slot_vars, word_to_shuffle
from qshuffle.words import Letter, is_non_increasing, relabel, word
from qshuffle.zeta import FactoredZeta, SpecPoint, from_quiver, specialize

from conftest import ALL_DATA

PHI_BASIC = UElement("+", {word((0, 0), (1, 0), (2, 0)): 1,
                           word((1, 0), (2, -1), (0, 1)): 1,
                           word((2, -1), (0, 0), (1, 1)): 1})


def test_u_mul_examples():
    a = UElement.e(0, 0)
    assert u_mul(UElement.one(), a) == a
    assert u_mul(a, UElement.e(1, 1)) == UElement.of_word(word((0, 0), (1, 1)))
    with pytest.raises(SignMismatch):
        u_mul(a, UElement.f(0, 0))


def test_f_letters_store_negated_exponent():
    assert UElement.f(1, 3) == UElement("-", {word((1, -3)): 1})


@given(st.lists(st.integers(-2, 2), min_size=6, max_size=6))
def test_u_mul_distributive(xs):
    a = UElement.e(0, xs[0]) + UElement.e(1, xs[1]) * 2
    b = UElement.e(0, xs[2]) - UElement.e(1, xs[3])
    c = UElement.e(1, xs[4]) * 3 + UElement.e(0, xs[5])
    assert u_mul(a, b + c) == u_mul(a, b) + u_mul(a, c)
    assert u_mul(a + b, c) == u_mul(a, c) + u_mul(b, c)


def test_anti_is_involution():
    a = UElement("+", {word((0, 1), (1, -2)): 3, word((1, 0)): 1})
    assert anti(a).sign == "-"
    assert anti(anti(a)) == a


def test_commuting_relation():
    z = from_quiver([[0, 0], [0, 0]])
    r = relation_element(0, 1, 2, -1, z)
    assert r == UElement("+", {word((0, 2), (1, -1)): 1, word((1, -1), (0, 2)): -1})


def test_cyclic_relation_shape(cyclic3):
    # one arrow between i1 and i2: a 3-term relation that vanishes under upsilon
    r = relation_element(0, 1, 0, 0, cyclic3)
    assert len(r.terms) == 3
    assert not upsilon(r, cyclic3).body


def test_upsilon_generators(a2):
    assert upsilon(UElement.e(1, 3), a2).body == var(1, 1, 3)
    assert upsilon(UElement.f(1, 3), a2).body == var(1, 1, 3)
    assert not upsilon(UElement.zero(), a2)


@pytest.mark.parametrize("name", sorted(ALL_DATA))
@given(data=st.data())
def test_relations_vanish(name, data):
    z = ALL_DATA[name]()
    size = len(z.vertices)
    i = data.draw(st.integers(0, size - 1))
    j = data.draw(st.integers(0, size - 1))
    d, k = data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))
    for sign in "+-":
        assert not upsilon(relation_element(i, j, d, k, z, sign), z).body


def test_basic_phi_in_kernel(cyclic3):
    assert not upsilon(PHI_BASIC, cyclic3).body


def test_straighten_fixed_points(sl2):
    a = UElement("+", {word((0, 0), (0, 1)): 2, word((0, -1), (0, 2)): 1})
    assert straighten(a, sl2) == a


def test_straighten_commuting():
    z = from_quiver([[0, 0], [0, 0]])
    # equal exponents: the larger color must come first
    a = UElement.of_word(word((0, 0), (1, 0)))
    assert straighten(a, z) == UElement.of_word(word((1, 0), (0, 0)))
    b = UElement.of_word(word((0, -1), (1, 2)))
    assert straighten(b, z) == b
    c = UElement.of_word(word((0, 2), (1, -1)))
    assert straighten(c, z) == UElement.of_word(word((1, -1), (0, 2)))


def test_straighten_sl2(sl2):
    a = UElement.of_word(word((0, 1), (0, 0)))
    s = straighten(a, sl2)
    assert s == UElement.of_word(word((0, 0), (0, 1))) * qpow(2)


def _rand_minus(rng, n, lo=-2, hi=2):
    vs = slot_vars(n)
    items = [({x: rng.randint(lo, hi) for x in vs}, rng.randint(1, 4)) for _ in range(3)]
    return ShuffleElement("-", n, symmetrize(LaurentPoly.from_items(items), n, "full"))


@pytest.mark.parametrize("name", ["sl2", "a2", "cyclic3"])
def test_straighten_preserves_pairings(name):
    z = ALL_DATA[name]()
    size = len(z.vertices)
    rng = random.Random(name)
    for _ in range(4):
        cs = [rng.randrange(size) for _ in range(2)]
        d = rng.randint(-1, 1)
        a = UElement("+")
        for _ in range(2):
            e = rng.randint(-2, 2)
            a = a + UElement.of_word(word((cs[0], e), (cs[1], d - e)), coeff=rng.randint(1, 3))
        s = straighten(a, z)
        assert all(is_non_increasing(w, z) for w in s.words())
        assert straighten(s, z) == s
        n = {}
        for c in cs:
            n[c] = n.get(c, 0) + 1
        assert upsilon(s, z, n) == upsilon(a, z, n)
        for _ in range(5):
            R = _rand_minus(rng, n)
            assert pair_plus(s, R, z) == pair_plus(a, R, z)


def test_straighten_minus_side(sl2):
    a = UElement("-", {word((0, 1), (0, 0)): 1})
    s = straighten(a, sl2)
    assert upsilon(s, sl2, {0: 2}) == upsilon(a, sl2, {0: 2})
    assert straighten(s, sl2) == s


def test_kernel_acyclic_empty(acyclic2):
    for d in (-2, 0, 3):
        assert kernel_window(({0: 1, 1: 1}, d), (-3, 3), acyclic2) == []


def test_kernel_tiny_window(cyclic3):
    assert kernel_window(({0: 1, 1: 1, 2: 1}, 9), (-1, 1), cyclic3) == []


def test_kernel_contains_basic_phi(cyclic3):
    K = kernel_window(({0: 1, 1: 1, 2: 1}, 0), (-1, 1), cyclic3)
    assert len(K) == 1
    target = straighten(PHI_BASIC, cyclic3)
    (w, c), = list(target.items())[:1]
    assert K[0] * sdiv(c, K[0].terms[w]) == target


def test_kernel_elements_pair_to_zero(cyclic3):
    # kernel elements annihilate the image of upsilon on the other side
    rng = random.Random(7)
    n = {0: 1, 1: 1, 2: 1}
    for phi in kernel_window((n, 0), (-1, 1), cyclic3):
        assert not upsilon(phi, cyclic3).body
        for _ in range(8):
            cs = [0, 1, 2]
            rng.shuffle(cs)
            es = [rng.randint(-2, 2) for _ in range(2)]
            w = tuple(Letter(c, e) for c, e in zip(cs, es + [-sum(es)]))
            assert pair_plus(phi, word_to_shuffle(w, "-", cyclic3), cyclic3) == 0


def test_kernel_minus_side(cyclic3):
    K = kernel_window(({0: 1, 1: 1, 2: 1}, 0), (-1, 1), cyclic3, sign="-")
    assert len(K) == 1 and K[0].sign == "-"
    assert not upsilon(K[0], cyclic3).body


def test_kernel_shift_equivariance(cyclic3):
    n = {0: 1, 1: 1, 2: 1}
    base = kernel_window((n, 0), (-1, 1), cyclic3)
    moved = kernel_window((n, 3), (0, 2), cyclic3)
    assert len(base) == len(moved)
    for phi in base:
        shifted = UElement("+", {tuple(Letter(c, e + 1) for c, e in w): x for w, x in phi.items()})
        assert not upsilon(shifted, cyclic3).body


def test_membership_generator(a2):
    v = membership(ShuffleElement("-", {1: 1}, var(1, 1, -4)), a2)
    assert v.status == "MEMBER" and v.expansion == {word((1, 4)): 1}


def test_membership_basic(cyclic3):
    n = {0: 1, 1: 1, 2: 1}
    yes = membership(ShuffleElement("-", n, var(0, 1) - var(1, 1)), cyclic3)
    assert yes.status == "MEMBER"
    assert recombine(yes.expansion, "-", cyclic3).body == var(0, 1) - var(1, 1)
    no = membership(ShuffleElement("-", n, LaurentPoly.constant(1)), cyclic3)
    assert no.status == "NOT_MEMBER"
    assert not upsilon(no.witness, cyclic3).body
    assert pair_plus(no.witness, ShuffleElement("-", n, LaurentPoly.constant(1)), cyclic3) != 0


def test_membership_plus_side(cyclic3):
    n = {0: 1, 1: 1, 2: 1}
    v = membership(ShuffleElement("+", n, LaurentPoly.constant(1)), cyclic3)
    assert v.status == "NOT_MEMBER"


def test_membership_no_wheels(acyclic2):
    rng = random.Random(3)
    n = {0: 1, 1: 2}
    for _ in range(3):
        R = _rand_minus(rng, n, -1, 1)
        for h in sorted({sum(m.values()) for m, _ in R.body.items()}):
            part = LaurentPoly.from_items([(m, c) for m, c in R.body.items() if sum(m.values()) == h])
            v = membership(ShuffleElement("-", n, part), acyclic2)
            assert v.status == "MEMBER"
            assert recombine(v.expansion, "-", acyclic2).body == part


def test_phi_single_variable(a2):
    p = {(0,): var(1, 1, 2) + 3}
    assert phi_map(p, [1], a2) == var(1, 1, 2) + 3
    assert not phi_map({}, [0, 1, 1], a2)


def test_phi_one_class(cyclic3):
    colors = [0, 1, 2]
    lv = relabel(colors)
    got = phi_map({(0, 1, 2): LaurentPoly.constant(1)}, colors, cyclic3)
    # a single sigma gives the same Sym product as the word image of [0 1 2]
    assert got == word_to_shuffle(word((0, 0), (1, 0), (2, 0)), "+", cyclic3).body
    assert set(got.vars) <= set(lv)


def test_psi_zero_and_two_term(a2):
    colors = [0, 1]
    S = order_classes(colors)
    assert len(S) == 2
    assert all(not p for p in psi_map({}, colors, a2).values())
    p = psi_map({(S[0], S[1]): LaurentPoly.constant(1)}, colors, a2)
    assert all(p[s] for s in S)
    assert not phi_map(p, colors, a2)


@pytest.mark.parametrize("name", sorted(ALL_DATA))
@given(data=st.data())
def test_phi_psi_vanishes(name, data):
    z = ALL_DATA[name]()
    size = len(z.vertices)
    colors = [data.draw(st.integers(0, size - 1)) for _ in range(3)]
    lv = relabel(colors)
    S = order_classes(colors)
    f = {}
    for s in S:
        for t in S:
            if s != t and data.draw(st.booleans()):
                f[s, t] = LaurentPoly.from_items(
                    [({v: data.draw(st.integers(-1, 1)) for v in lv}, data.draw(st.integers(1, 3)))])
    assert not phi_map(psi_map(f, colors, z), colors, z)


def test_transfer_trivial_point(cyclic3):
    z = FactoredZeta(("a", "b", "c"), {}, {}, {(1, 0): (1,), (2, 1): (1,), (0, 2): (1,)})
    p = SpecPoint.make({(0, 1): 1, (1, 1): 1, (2, 1): 1})
    spec = specialize(z, p.degree(), p)
    K = kernel_window(({0: 1, 1: 1, 2: 1}, 0), (-1, 1), spec.quiver_datum())
    assert len(K) == 1
    out = transfer_kernel(K[0], p, z)
    assert len(out.terms) == len(K[0].terms)
    assert not upsilon(out, z).body


def test_transfer_rescaled_datum():
    q = qpow
    roots = {(1, 0): (q(1), q(4)), (2, 1): (q(2),), (0, 2): (q(-3), q(-3) * 7),
             (0, 1): (q(5),), (1, 1): (q(2),)}
    alpha = {(0, 1): q(3), (1, 0): -2, (2, 1): q(-1) * 3, (0, 2): 5}
    s = {(0, 1): -1, (1, 0): 1, (2, 0): -2, (0, 2): 0, (2, 1): 2}
    z = FactoredZeta(("a", "b", "c"), alpha, s, roots)
    p = SpecPoint.make({(0, 1): 1, (1, 1): q(-1), (2, 1): q(-3)})
    spec = specialize(z, p.degree(), p)
    assert spec.quiver == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    K = kernel_window(({0: 1, 1: 1, 2: 1}, 0), (-1, 1), spec.quiver_datum())
    out = transfer_kernel(K[0], p, z)
    assert out and not upsilon(out, z).body


@pytest.mark.parametrize("loops", [2, 3])
def test_transfer_same_color(loops):
    q = qpow
    z = FactoredZeta(("a",), {(0, 0): q(2)}, {(0, 0): 1}, {(0, 0): (1,) * loops + (q(3),)})
    p = SpecPoint.make({(0, 1): 1, (0, 2): 1})
    spec = specialize(z, p.degree(), p)
    found = 0
    for d in (-1, 0, 1):
        for phi in kernel_window(({0: 2}, d), (-3, 3), spec.quiver_datum()):
            found += 1
            assert not upsilon(transfer_kernel(phi, p, z), z).body
    assert found

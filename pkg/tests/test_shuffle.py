from itertools import product

import pytest
from hypothesis import given, strategies as st

from qshuffle.errors import SignMismatch
from qshuffle.exactfield import qpow
from qshuffle.laurent import LaurentPoly, evaluate, symmetrize, var
from qshuffle.linalg import rank
from qshuffle.shuffle import (ShuffleElement, ideal_generators, shift, shuffle_mul, slot_vars,
                              word_to_shuffle, word_to_shuffle_sym)
from qshuffle.words import Letter, word
from qshuffle.zeta import from_quiver

from conftest import ALL_DATA


def el(p, n, sign="+"):
    return ShuffleElement(sign, n, p)


def test_unit(a2):
    x = el(var(0, 1, 3), {0: 1})
    one = ShuffleElement.one()
    assert shuffle_mul(one, x, a2) == x
    assert shuffle_mul(x, one, a2) == x


def test_sign_mismatch(sl2):
    with pytest.raises(SignMismatch):
        shuffle_mul(el(var(0, 1), {0: 1}), el(var(0, 1), {0: 1}, "-"), sl2)


@pytest.mark.parametrize("a,b", [(0, 0), (1, 3), (-2, 5)])
def test_jordan_product_is_plain_shuffle(jordan, a, b):
    got = shuffle_mul(el(var(0, 1, a), {0: 1}), el(var(0, 1, b), {0: 1}), jordan)
    want = var(0, 1, a) * var(0, 2, b) + var(0, 1, b) * var(0, 2, a)
    assert got.body == want


def test_sl2_product_clears_pole(sl2):
    z1, z2 = var(0, 1), var(0, 2)
    x = shuffle_mul(el(z1, {0: 1}), el(LaurentPoly.constant(1), {0: 1}), sl2)
    assert x.body == z1 + z2
    y = shuffle_mul(el(LaurentPoly.constant(1), {0: 1}), el(z1, {0: 1}), sl2)
    assert y.body == (z1 + z2) * qpow(-2)
    assert x.is_symmetric() and y.is_symmetric()


def test_single_letter_images(cyclic3):
    assert word_to_shuffle(word((1, 4)), "+", cyclic3).body == var(1, 1, 4)
    assert word_to_shuffle(word((1, 4)), "-", cyclic3).body == var(1, 1, -4)
    assert word_to_shuffle((), "+", cyclic3) == ShuffleElement.one()


def test_basic_word_image(cyclic3):
    # zeta(x) = 1 - x on the arrows, 1 elsewhere; Sym over 6 orders of z_a * cross factors
    w = word((0, 0), (1, 0), (2, 0))
    assert word_to_shuffle(w, "+", cyclic3) == word_to_shuffle_sym(w, "+", cyclic3)
    assert word_to_shuffle(w, "+", cyclic3).homdeg == 0


letter = st.builds(Letter, st.integers(0, 1), st.integers(-2, 2))


@pytest.mark.parametrize("name", ["sl2", "a2", "jordan", "acyclic2"])
@given(v=st.lists(letter, min_size=1, max_size=2), w=st.lists(letter, min_size=1, max_size=2),
       sign=st.sampled_from("+-"))
def test_upsilon_multiplicative(name, v, w, sign):
    z = ALL_DATA[name]()
    k = 1 if name in ("sl2", "jordan") else 2
    v = tuple(Letter(c % k, d) for c, d in v)
    w = tuple(Letter(c % k, d) for c, d in w)
    lhs = word_to_shuffle(v + w, sign, z)
    assert lhs == shuffle_mul(word_to_shuffle(v, sign, z), word_to_shuffle(w, sign, z), z)
    assert lhs == word_to_shuffle_sym(v + w, sign, z)
    assert lhs.is_symmetric()


def _rand_el(data, colors, sign="+"):
    c = data.draw(st.sampled_from(colors))
    k = data.draw(st.integers(1, 2)) if c == 0 else 1
    n = {c: k}
    vs = slot_vars(n)
    items = [({v: data.draw(st.integers(-1, 1)) for v in vs}, data.draw(st.integers(1, 3)))
             for _ in range(2)]
    return ShuffleElement(sign, n, symmetrize(LaurentPoly.from_items(items), n, "full"))


@pytest.mark.parametrize("name", ["sl2", "a2", "cyclic3"])
@given(data=st.data())
def test_associative(name, data):
    z = ALL_DATA[name]()
    colors = [0] if name == "sl2" else [0, 1]
    sign = data.draw(st.sampled_from("+-"))
    a, b, c = (_rand_el(data, colors, sign) for _ in range(3))
    if sum(x.size for x in (a, b, c)) > 4:
        return
    assert shuffle_mul(shuffle_mul(a, b, z), c, z) == shuffle_mul(a, shuffle_mul(b, c, z), z)


def test_shift_examples(a2):
    x = el(var(0, 1, 2), {0: 1})
    assert shift(x, {}) == x
    assert shift(x, {0: 1}).body == var(0, 1, 3)
    assert shift(el(var(0, 1, 2), {0: 1}, "-"), {0: 1}).body == var(0, 1, 1)


@pytest.mark.parametrize("name", sorted(ALL_DATA))
@given(data=st.data())
def test_shift_is_automorphism(name, data):
    z = ALL_DATA[name]()
    colors = [0] if name in ("sl2", "jordan") else [0, 1]
    a, b = _rand_el(data, colors), _rand_el(data, colors)
    k = {c: data.draw(st.integers(-2, 2)) for c in (0, 1, 2)}
    assert shift(shuffle_mul(a, b, z), k) == shuffle_mul(shift(a, k), shift(b, k), z)


def test_ideal_generators_trivial(a2):
    gens, delta = ideal_generators({0: 1}, a2)
    assert gens == [LaurentPoly.constant(1)] and delta == LaurentPoly.constant(1)


def test_ideal_generators_no_arrows():
    z = from_quiver([[0, 0], [0, 0]])
    gens, delta = ideal_generators({0: 1, 1: 2}, z)
    assert gens == [LaurentPoly.constant(1)]
    assert delta == var(1, 1) - var(1, 2)


def test_ideal_generators_cyclic(cyclic3):
    gens, delta = ideal_generators({0: 1, 1: 1, 2: 1}, cyclic3)
    assert len(gens) == 6
    assert delta == LaurentPoly.constant(1)
    # every order meets at least one arrow, so each generator vanishes on the diagonal
    for g in gens:
        assert g.homdeg() == 0
        assert evaluate(g, {v: 1 for v in g.vars}) == 0


def _span_rank(elements):
    keys = sorted({tuple(sorted(m.items())) for x in elements for m, _ in x.body.items()})
    pos = {k: i for i, k in enumerate(keys)}
    rows = []
    for x in elements:
        r = [0] * len(keys)
        for m, c in x.body.items():
            r[pos[tuple(sorted(m.items()))]] = c
        rows.append(r)
    return rank(rows, len(keys)) if rows else 0


def _words(colors, d, lo, hi):
    for es in product(range(lo, hi + 1), repeat=len(colors)):
        if sum(es) == d:
            yield tuple(Letter(c, e) for c, e in zip(colors, es))


@pytest.mark.parametrize("d", [-1, 0, 1])
def test_block_factorization_rank(d):
    # vertex 0 carries a loop, vertex 1 is isolated, no arrows between them
    z = from_quiver([[1, 0], [0, 0]])
    lo, hi = -1, 1
    mixed = []
    for order in ((0, 0, 1), (0, 1, 0), (1, 0, 0)):
        mixed += [word_to_shuffle(w, "+", z) for w in _words(order, d, lo, hi)]
    total = 0
    for b in range(lo, hi + 1):
        left = [word_to_shuffle(w, "+", z) for w in _words((0, 0), d - b, lo, hi)]
        total += _span_rank(left)
    assert _span_rank(mixed) == total

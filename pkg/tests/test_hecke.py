"""The dihedral Hecke algebra: words, the T-basis product, theta, the
anti-automorphisms, characters, and the Kazhdan-Lusztig-type elements."""

import random

import pytest

from nshecke.hecke import (IDENTITY_WORD, HeckeElem, apply_op, apply_theta,
                           eps_minus, eps_mixed, eps_plus, get_hecke,
                           kl_elements, word_from_str, word_inverse,
                           word_str)
from nshecke.scalars import (LaurentInt, MixedContextError, TowerScalar,
                             u_integer)

MS = (3, 4, 5, 6)


def rand_elem(rng, h, size=3):
    terms = {}
    for _ in range(size):
        w = h.words[rng.randrange(len(h.words))]
        c = LaurentInt({rng.randint(-2, 2): rng.randint(-4, 4)})
        terms[w] = TowerScalar.from_laurent(h.field, c)
    return HeckeElem(h, terms)


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

def test_word_str_round_trip():
    for m in MS:
        h = get_hecke(m)
        for w in h.words:
            assert word_from_str(word_str(w), m) == w


def test_word_str_examples():
    assert word_str(IDENTITY_WORD) == "e"
    assert word_str((1, 3)) == "s1s2s1"
    assert word_str((2, 2)) == "s2s1"


def test_longest_word_spellings_coincide():
    # both spellings of the length-m word name the same element
    assert word_from_str("s1s2s1", 3) == word_from_str("s2s1s2", 3)
    assert word_from_str("s1s2s1s2", 4) == word_from_str("s2s1s2s1", 4)


def test_word_inverse():
    for m in MS:
        h = get_hecke(m)
        for w in h.words:
            v = word_inverse(w, m)
            assert word_inverse(v, m) == w
            # T_w T_{w^-1} has coefficient 1 on the identity
            prod = h.t_word(w) * h.t_word(v)
            assert prod.terms[IDENTITY_WORD] == TowerScalar.one(h.field)


def test_word_count():
    for m in MS:
        assert len(get_hecke(m).words) == 2 * m


# ---------------------------------------------------------------------------
# algebra axioms and the quadratic relation
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", MS)
def test_associativity_random(m):
    rng = random.Random(50 + m)
    h = get_hecke(m)
    for _ in range(60):
        a, b, c = (rand_elem(rng, h) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c


@pytest.mark.parametrize("m", MS)
def test_unit(m):
    rng = random.Random(60 + m)
    h = get_hecke(m)
    one = h.one()
    for _ in range(20):
        a = rand_elem(rng, h)
        assert a * one == a
        assert one * a == a


@pytest.mark.parametrize("m", MS)
def test_quadratic_relation(m):
    # (T_s - u)(T_s + u^-1) = 0
    h = get_hecke(m)
    u = h.scalar(LaurentInt.monomial(1))
    uinv = h.scalar(LaurentInt.monomial(-1))
    for s in (1, 2):
        ts = h.t_gen(s)
        assert ((ts - u) * (ts + uinv)).is_zero()


@pytest.mark.parametrize("m", MS)
def test_braid_relation_group_algebra(m):
    # the two spellings of the longest element agree as T-products
    h = get_hecke(m)
    a = h.one()
    b = h.one()
    s = 1
    for _ in range(m):
        a = a * h.t_gen(s)
        b = b * h.t_gen(3 - s)
        s = 3 - s
    assert a == b == h.t_word((1, m))


def test_mixed_contexts_rejected():
    a = get_hecke(3).one()
    b = get_hecke(4).one()
    with pytest.raises(MixedContextError):
        a + b


# ---------------------------------------------------------------------------
# theta and the anti-automorphisms
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", MS)
def test_theta_is_involutive_homomorphism(m):
    rng = random.Random(70 + m)
    h = get_hecke(m)
    for _ in range(30):
        a, b = rand_elem(rng, h), rand_elem(rng, h)
        assert apply_theta(a * b) == apply_theta(a) * apply_theta(b)
        assert apply_theta(a + b) == apply_theta(a) + apply_theta(b)
        assert apply_theta(apply_theta(a)) == a


@pytest.mark.parametrize("m", MS)
def test_theta_on_generators(m):
    # theta(T_s) = -T_s + (u - u^-1), i.e. -T_s^{-1}
    h = get_hecke(m)
    shift = h.scalar(LaurentInt({1: 1, -1: -1}))
    for s in (1, 2):
        ts = h.t_gen(s)
        img = apply_theta(ts)
        assert img == -ts + shift
        # -theta(T_s) is the actual inverse of T_s
        assert ts * img.scale(-1) == h.one()


@pytest.mark.parametrize("m", MS)
def test_op_antiautomorphisms(m):
    rng = random.Random(80 + m)
    h = get_hecke(m)
    for _ in range(30):
        a, b = rand_elem(rng, h), rand_elem(rng, h)
        for which in ("1op", "thetaop"):
            assert apply_op(a * b, which) == apply_op(b, which) * apply_op(a, which)
            assert apply_op(apply_op(a, which), which) == a


@pytest.mark.parametrize("m", MS)
def test_theta_swaps_idempotents(m):
    h = get_hecke(m)
    for s in (1, 2):
        _, _, p_plus, p_minus = kl_elements(m, s)
        assert apply_theta(p_plus) == p_minus
        assert apply_theta(p_minus) == p_plus


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", MS)
def test_characters_multiplicative(m):
    rng = random.Random(90 + m)
    h = get_hecke(m)
    chars = [eps_plus, eps_minus]
    if m % 2 == 0:
        chars += [lambda z: eps_mixed(z, 1), lambda z: eps_mixed(z, 2)]
    for _ in range(25):
        a, b = rand_elem(rng, h), rand_elem(rng, h)
        for chi in chars:
            assert chi(a * b) == chi(a) * chi(b)
            assert chi(a + b) == chi(a) + chi(b)


@pytest.mark.parametrize("m", MS)
def test_character_values_on_kl(m):
    h = get_hecke(m)
    two = TowerScalar.u_int(h.field, 2)
    zero = TowerScalar.zero(h.field)
    for s in (1, 2):
        cprime, c, p_plus, p_minus = kl_elements(m, s)
        assert eps_plus(cprime) == two
        assert eps_minus(cprime) == zero
        assert eps_plus(c) == zero
        assert eps_minus(c) == -two
        assert eps_plus(p_plus) == TowerScalar.one(h.field)
        assert eps_minus(p_plus) == zero


def test_mixed_characters_even_only():
    h = get_hecke(4)
    one = TowerScalar.one(h.field)
    u = TowerScalar.from_laurent(h.field, LaurentInt.monomial(1))
    minus_uinv = TowerScalar.from_laurent(h.field, LaurentInt.monomial(-1, -1))
    assert eps_mixed(h.t_gen(1), 1) == u
    assert eps_mixed(h.t_gen(2), 1) == minus_uinv
    assert eps_mixed(h.t_gen(1), 2) == minus_uinv
    assert eps_mixed(h.t_gen(2), 2) == u
    with pytest.raises(AssertionError):
        eps_mixed(get_hecke(3).one(), 1)


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig-type elements
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", MS)
def test_kl_relations(m):
    h = get_hecke(m)
    two = u_integer(2)
    for s in (1, 2):
        cprime, c, p_plus, p_minus = kl_elements(m, s)
        assert cprime - c == h.scalar(two)
        # C'^2 = [2] C', C^2 = -[2] C
        assert cprime * cprime == cprime.scale(two)
        assert c * c == c.scale(-two)
        # orthogonal idempotents summing to 1
        assert p_plus * p_plus == p_plus
        assert p_minus * p_minus == p_minus
        assert (p_plus * p_minus).is_zero()
        assert (p_minus * p_plus).is_zero()
        assert p_plus + p_minus == h.one()

"""Arithmetic foundations: Laurent polynomials, cyclotomics, rational
functions, and the quadratic tower."""

import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from nshecke.scalars import (CycloNum, LaurentInt, RatFun, TowerScalar,
                             cyclotomic_poly, make_base_field, u_integer)

MS = (3, 4, 5, 6)


def rand_laurent(rng, span=4, size=3, bound=6):
    return LaurentInt({rng.randint(-span, span): rng.randint(-bound, bound)
                       for _ in range(size)})


def rand_cyclo(rng, ctx, size=3, bound=6):
    vec = [mpq(0)] * ctx.degree
    for _ in range(size):
        vec[rng.randrange(ctx.degree)] = mpq(rng.randint(-bound, bound),
                                             rng.randint(1, 4))
    return CycloNum(ctx, tuple(vec))


def rand_ratfun(rng, ctx, heavy=False):
    """A random rational function; mostly monomial denominators (the
    fast path), with occasional true polynomial denominators that
    force gcd reduction."""
    num = {rng.randint(0, 3): rand_cyclo(rng, ctx, size=2, bound=4)
           for _ in range(2)}
    if all(c.is_zero() for c in num.values()):
        num = {0: ctx.cyclo_one}
    if heavy:
        dc = ctx.cyclo_from_rational(mpq(rng.randint(1, 3)))
        den = {0: ctx.cyclo_one, 1: dc}
    else:
        den = {rng.randint(0, 2): ctx.cyclo_one}
    return RatFun(ctx, num, den)


def rand_tower(rng, ctx, gens=True):
    x = TowerScalar.from_laurent(ctx, rand_laurent(rng, span=3, size=2,
                                                   bound=4))
    if gens:
        j = rng.randint(1, ctx.n)
        y = TowerScalar.from_laurent(ctx, rand_laurent(rng, 2, 2, 3))
        x = x + y * TowerScalar.generator(ctx, j)
    return x


# ---------------------------------------------------------------------------
# u-integers
# ---------------------------------------------------------------------------

def test_u_integer_values():
    assert u_integer(0) == 0
    assert u_integer(1) == 1
    assert u_integer(2) == LaurentInt({1: 1, -1: 1})
    assert u_integer(3) == LaurentInt({2: 1, 0: 1, -2: 1})


def test_u_integer_recurrence():
    # [2][k] = [k+1] + [k-1]
    two = u_integer(2)
    for k in range(1, 10):
        assert two * u_integer(k) == u_integer(k + 1) + u_integer(k - 1)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and field contexts
# ---------------------------------------------------------------------------

def test_cyclotomic_poly_known():
    assert cyclotomic_poly(12) == [1, 0, -1, 0, 1]
    assert cyclotomic_poly(8) == [1, 0, 0, 0, 1]
    assert cyclotomic_poly(20) == [1, 0, -1, 0, 1, 0, -1, 0, 1]


def test_field_context_m3():
    ctx = make_base_field(3)
    assert ctx.n == 1
    # w_1 = 2 + zeta_3 + zeta_3^-1 = 1
    assert ctx.w[1] == ctx.cyclo_from_rational(mpq(1))


def test_field_context_m4():
    ctx = make_base_field(4)
    assert ctx.n == 1
    assert ctx.w[1] == ctx.cyclo_from_rational(mpq(2))
    # sqrt(w_1) = zeta_8 + zeta_8^-1 squares to 2
    s = ctx.sqrt_w[1]
    assert s * s == ctx.w[1]


@pytest.mark.parametrize("m", MS)
def test_sqrt_w_squares(m):
    ctx = make_base_field(m)
    for j in range(1, ctx.n + 1):
        assert ctx.sqrt_w[j] * ctx.sqrt_w[j] == ctx.w[j]


@pytest.mark.parametrize("m", MS)
def test_i_unit(m):
    ctx = make_base_field(m)
    minus_one = ctx.cyclo_from_rational(mpq(-1))
    assert ctx.i_unit * ctx.i_unit == minus_one


# ---------------------------------------------------------------------------
# ring axioms (>= 1000 random triples per type)
# ---------------------------------------------------------------------------

def _ring_axioms(a, b, c, zero, one):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + zero == a
    assert a * one == a
    assert a + (-a) == zero


def test_ring_axioms_laurent():
    rng = random.Random(11)
    zero, one = LaurentInt({}), LaurentInt.from_int(1)
    for _ in range(1000):
        _ring_axioms(rand_laurent(rng), rand_laurent(rng),
                     rand_laurent(rng), zero, one)


def test_ring_axioms_cyclo():
    rng = random.Random(12)
    for m in MS:
        ctx = make_base_field(m)
        for _ in range(250):
            _ring_axioms(rand_cyclo(rng, ctx), rand_cyclo(rng, ctx),
                         rand_cyclo(rng, ctx), ctx.cyclo_zero,
                         ctx.cyclo_one)


def test_ring_axioms_ratfun():
    rng = random.Random(13)
    for m in MS:
        ctx = make_base_field(m)
        for i in range(250):
            heavy = i % 10 == 0
            _ring_axioms(rand_ratfun(rng, ctx, heavy),
                         rand_ratfun(rng, ctx),
                         rand_ratfun(rng, ctx, heavy),
                         RatFun.zero(ctx), RatFun.one(ctx))


def test_ring_axioms_tower():
    rng = random.Random(14)
    for m in MS:
        ctx = make_base_field(m)
        for _ in range(250):
            _ring_axioms(rand_tower(rng, ctx), rand_tower(rng, ctx),
                         rand_tower(rng, ctx), TowerScalar.zero(ctx),
                         TowerScalar.one(ctx))


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.integers(-8, 8), st.integers(-50, 50),
                       max_size=6),
       st.dictionaries(st.integers(-8, 8), st.integers(-50, 50),
                       max_size=6))
def test_laurent_mul_at_one(a, b):
    # evaluation at u = 1 is a ring homomorphism
    x, y = LaurentInt(a), LaurentInt(b)
    assert (x * y).at_one() == x.at_one() * y.at_one()
    assert (x + y).at_one() == x.at_one() + y.at_one()


# ---------------------------------------------------------------------------
# inversion
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", MS)
def test_tower_invert_random(m):
    rng = random.Random(100 + m)
    ctx = make_base_field(m)
    one = TowerScalar.one(ctx)
    done = 0
    while done < 200:
        x = rand_tower(rng, ctx, gens=(done % 2 == 0))
        if x.is_zero():
            continue
        assert x * x.invert() == one
        done += 1


def test_tower_invert_examples():
    ctx = make_base_field(3)
    one = TowerScalar.one(ctx)
    assert one.invert() == one
    t1 = TowerScalar.generator(ctx, 1)
    # t_1^2 = f - w_1, so 1/t_1 = t_1/(f - w_1)
    f = TowerScalar.u_int(ctx, 2) ** 2
    w1 = TowerScalar.from_cyclo(ctx.w[1])
    assert t1.invert() * (f - w1) == t1
    # m=3: [2]^2 - (f - 1) = 1, so ([2] + t_1)^-1 = [2] - t_1
    two = TowerScalar.u_int(ctx, 2)
    assert (two + t1).invert() == two - t1


def test_tower_invert_zero_raises():
    ctx = make_base_field(3)
    with pytest.raises(ArithmeticError):
        TowerScalar.zero(ctx).invert()


# ---------------------------------------------------------------------------
# specialization at u = 1
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", MS)
def test_specialize_u1_homomorphism(m):
    rng = random.Random(200 + m)
    ctx = make_base_field(m)
    for _ in range(100):
        x = rand_tower(rng, ctx)
        y = rand_tower(rng, ctx)
        assert (x * y).specialize_u1() == x.specialize_u1() * y.specialize_u1()
        assert (x + y).specialize_u1() == x.specialize_u1() + y.specialize_u1()


def test_specialize_u1_examples():
    ctx = make_base_field(3)
    two = TowerScalar.u_int(ctx, 2)
    assert two.specialize_u1() == ctx.cyclo_from_rational(mpq(2))
    f = two * two
    assert f.specialize_u1() == ctx.cyclo_from_rational(mpq(4))
    # t_1 -> 2 sin(pi/3) = sqrt(3)
    t1 = TowerScalar.generator(ctx, 1)
    s = t1.specialize_u1()
    assert s == ctx.sin2[1]
    assert s * s == ctx.cyclo_from_rational(mpq(3))


@pytest.mark.parametrize("m", MS)
def test_tower_generator_square(m):
    ctx = make_base_field(m)
    f = TowerScalar.u_int(ctx, 2) ** 2
    for j in range(1, ctx.n + 1):
        t = TowerScalar.generator(ctx, j)
        w = TowerScalar.from_cyclo(ctx.w[j])
        assert t * t == f - w


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def test_ratfun_canonical_idempotent():
    rng = random.Random(31)
    for m in (3, 5):
        ctx = make_base_field(m)
        for _ in range(100):
            r = rand_ratfun(rng, ctx)
            again = RatFun(ctx, dict(r.num), dict(r.den))
            assert again == r
            assert again.num == r.num and again.den == r.den


def test_ratfun_laurent_round_trip():
    ctx = make_base_field(3)
    rng = random.Random(32)
    for _ in range(100):
        lp = rand_laurent(rng)
        r = RatFun.from_laurent(ctx, lp)
        assert r.as_laurent_int() == lp


def test_tower_try_laurent():
    ctx = make_base_field(4)
    two = TowerScalar.u_int(ctx, 2)
    assert two.try_laurent() == u_integer(2)
    t1 = TowerScalar.generator(ctx, 1)
    assert t1.try_laurent() is None
    assert (t1 * t1).try_laurent() is not None

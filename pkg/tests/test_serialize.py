"""JSON round-trips for the exact value types.

Round-trips must be bit-exact: decode(encode(x)) == x structurally, not
just as values.  Random samples are kept small (inverting a random
tower scalar is expensive); coverage of tricky shapes comes from
handcrafted cases."""

import json
import random

from gmpy2 import mpq
import pytest

from nshecke.chebyshev import cheb_T1, cheb_multi
from nshecke.hecke import get_hecke, kl_elements
from nshecke.scalars import (CycloNum, LaurentInt, RatFun, TowerScalar,
                             make_base_field, u_integer)
from nshecke.serialize import (cheb_from_json, cheb_to_json,
                               cyclo_from_json, cyclo_to_json,
                               hecke_from_json, hecke_to_json,
                               laurent_from_json, laurent_to_json,
                               tower_from_json, tower_to_json)


def via_json(obj):
    """Force an actual serialization pass, not just dict identity."""
    return json.loads(json.dumps(obj))


# ---------------------------------------------------------------------------
# Laurent
# ---------------------------------------------------------------------------

def test_laurent_round_trip():
    rng = random.Random(1)
    for _ in range(50):
        x = LaurentInt({rng.randint(-6, 6): rng.randint(-9, 9)
                        for _ in range(4)})
        assert laurent_from_json(via_json(laurent_to_json(x))) == x
    assert laurent_from_json(via_json(laurent_to_json(LaurentInt({})))) \
        == LaurentInt({})


def test_laurent_json_shape():
    x = u_integer(3)
    assert via_json(laurent_to_json(x)) == {"-2": 1, "0": 1, "2": 1}


# ---------------------------------------------------------------------------
# cyclotomics
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", (3, 4, 5, 6))
def test_cyclo_round_trip(m):
    rng = random.Random(m)
    ctx = make_base_field(m)
    for _ in range(30):
        vec = [mpq(rng.randint(-8, 8), rng.randint(1, 5))
               for _ in range(ctx.degree)]
        c = CycloNum(ctx, tuple(vec))
        back = cyclo_from_json(ctx, via_json(cyclo_to_json(c)))
        assert back == c and back.coeffs == c.coeffs


def test_cyclo_big_rational():
    ctx = make_base_field(3)
    big = mpq(10 ** 40 + 1, 10 ** 39 + 7)
    c = ctx.cyclo_from_rational(big)
    assert cyclo_from_json(ctx, via_json(cyclo_to_json(c))) == c


# ---------------------------------------------------------------------------
# tower scalars
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", (3, 4, 5))
def test_tower_round_trip_random(m):
    rng = random.Random(10 + m)
    ctx = make_base_field(m)
    for i in range(20):
        x = TowerScalar.from_laurent(
            ctx, LaurentInt({rng.randint(-3, 3): rng.randint(-5, 5)
                             for _ in range(3)}))
        j = rng.randint(1, ctx.n)
        x = x + TowerScalar.generator(ctx, j) * TowerScalar.from_int(
            ctx, rng.randint(-3, 3))
        back = tower_from_json(ctx, via_json(tower_to_json(x)))
        assert back == x
        assert back.comps == x.comps


def test_tower_round_trip_with_denominator():
    # a genuine rational function: 1/[2] has a non-monomial denominator
    # after clearing to polynomial form
    ctx = make_base_field(3)
    x = TowerScalar.u_int(ctx, 2).invert()
    back = tower_from_json(ctx, via_json(tower_to_json(x)))
    assert back == x
    y = (TowerScalar.u_int(ctx, 2) + TowerScalar.generator(ctx, 1)).invert()
    back = tower_from_json(ctx, via_json(tower_to_json(y)))
    assert back == y
    assert back.comps == y.comps


def test_tower_zero_and_one():
    ctx = make_base_field(4)
    for x in (TowerScalar.zero(ctx), TowerScalar.one(ctx),
              TowerScalar.generator(ctx, 1)):
        assert tower_from_json(ctx, via_json(tower_to_json(x))) == x


# ---------------------------------------------------------------------------
# Hecke elements
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", (3, 4, 5))
def test_hecke_round_trip(m):
    h = get_hecke(m)
    cprime, c, p_plus, _ = kl_elements(m, 1)
    samples = [h.zero(), h.one(), cprime * c, p_plus,
               h.t_word((1, m)) * h.t_gen(2)]
    for x in samples:
        back = hecke_from_json(m, via_json(hecke_to_json(x)))
        assert back == x


def test_hecke_json_shape():
    h = get_hecke(3)
    data = via_json(hecke_to_json(h.t_gen(1)))
    one = ["1", "0", "0", "0"]  # deg Phi_12 = 4 coordinates
    assert data == [{"word": "s1", "coeff": {"": {"num": [one],
                                                  "den": [one]}}}]


# ---------------------------------------------------------------------------
# Chebyshev polynomials
# ---------------------------------------------------------------------------

def test_cheb_round_trip():
    samples = [cheb_T1(5), cheb_multi((2, -1), "T"),
               cheb_multi((1, 1), "T1"), cheb_multi((0, 0), "T")]
    for p in samples:
        back = cheb_from_json(via_json(cheb_to_json(p)))
        assert back == p
        assert back.coeffs == p.coeffs


def test_cheb_json_shape():
    data = via_json(cheb_to_json(cheb_T1(2)))  # 2 x y
    assert data == {"n": 1, "coeffs": {"1,1": 2}}

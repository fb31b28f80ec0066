"""Acceptance gate: one test per acceptance criterion, in order.

Each test is a single pass/fail line under `pytest -v`.  All
comparisons are exact (structural equality of canonical forms); the
stated runtime budgets are asserted where given, measured on the wall
clock for the work of the criterion alone."""

import itertools
import time

import pytest

from nshecke.chebyshev import sigma_constant, verify_addition_identity
from nshecke.compositions import (SignedCompClass, count_closed_form,
                                  enumerate_classes)
from nshecke.scalars import LaurentInt, TowerScalar, make_base_field
from nshecke.tensor import (braid_poly_coefficients, check_antipode,
                            check_braid, check_h2_hopf, check_quadratic,
                            span_dimension)


def test_criterion_01_braid_relation_m3():
    # residual of the nonstandard braid relation vanishes in the k-fold
    # tensor power for m = 3, k = 1..3 (budget 10 s) and k = 4 (60 s)
    t0 = time.process_time()
    for k in (1, 2, 3):
        ok, witness = check_braid(3, k)
        assert ok, (k, witness)
    elapsed_small = time.process_time() - t0
    assert elapsed_small < 10, f"k <= 3 took {elapsed_small:.1f}s"
    t0 = time.process_time()
    ok, witness = check_braid(3, 4)
    assert ok, witness
    elapsed_stretch = time.process_time() - t0
    assert elapsed_stretch < 60, f"k = 4 took {elapsed_stretch:.1f}s"


def test_criterion_02_braid_relation_dihedral():
    # braid relation for general dihedral parameters, plus integrality:
    # every coefficient of the expanded relation polynomial G(y) lies
    # in A = Z[u, u^-1]; budget 120 s total
    t0 = time.process_time()
    for m, k in ((4, 1), (4, 2), (5, 1), (5, 2), (6, 1)):
        ok, witness = check_braid(m, k)
        assert ok, (m, k, witness)
        for i, c in enumerate(braid_poly_coefficients(m, k)):
            assert isinstance(c.as_laurent_int(), LaurentInt), (m, k, i)
    elapsed = time.process_time() - t0
    assert elapsed < 120, f"took {elapsed:.1f}s"


def test_criterion_03_quadratic_relations():
    # (P_s)^2 = [2]^k P_s for every (m, k) of criteria 1-2
    for m, k in ((3, 1), (3, 2), (3, 3), (3, 4),
                 (4, 1), (4, 2), (5, 1), (5, 2), (6, 1)):
        ok, witness = check_quadratic(m, k)
        assert ok, (m, k, witness)


def test_criterion_04_chebyshev_coefficient_table():
    # [2]^k a^(k) = sigma_(k) at m = 3 equals 1, -u^2 - u^-2,
    # -3f + 4, f^2 - 8f + 8 for k = 1..4
    ctx = make_base_field(3)
    f = TowerScalar.u_int(ctx, 2) ** 2
    one = TowerScalar.one(ctx)
    four = TowerScalar.from_int(ctx, 4)
    eight = TowerScalar.from_int(ctx, 8)
    expected = {
        1: one,
        2: TowerScalar.from_laurent(ctx, LaurentInt({2: -1, -2: -1})),
        3: four - f * 3,
        4: f * f - eight * f + eight,
    }
    for k in range(1, 5):
        assert sigma_constant((k,), 3, k) == expected[k], k


def test_criterion_05_spanning_dimension():
    # rank of the span of alternating generator words: 4k + 2 for
    # m = 3, k <= 3; 26 at (5,2); 16 at (4,2); budget 60 s each
    for m, k, expect in ((3, 1, 6), (3, 2, 10), (3, 3, 14),
                        (5, 2, 26), (4, 2, 16)):
        t0 = time.process_time()
        rank, _ = span_dimension(m, k)
        elapsed = time.process_time() - t0
        assert rank == expect, (m, k, rank)
        assert elapsed < 60, f"({m},{k}) took {elapsed:.1f}s"


def test_criterion_06_tensor_decompositions():
    from nshecke.reps import decompose_catalog, tensor_decompose

    def cls(vec, sup1=False):
        return SignedCompClass(vec, superscript1=sup1)

    # the k = 2 display: N(1) (x) N(1) = eps+ (+) eps- (+) N(2), with
    # the change of basis verified inside tensor_decompose
    result, _ = decompose_catalog(3, 1, cls((1,)), 1, cls((1,)))
    assert result.case == "plus-degenerate"
    assert [r.label for r in result.summands] == ["eps+", "eps-", "N(2)"]
    # the k = 3 display: N(1) (x) N(2) (level 1 (x) level 2)
    result, expected = decompose_catalog(3, 1, cls((1,)), 2, cls((2,)))
    assert result.case == "generic"
    assert {r.label for r in result.summands} == {"N(1)", "N(3)"}
    diff, tot = expected
    assert {f"N{diff!r}", f"N{tot!r}"} == {"N(1)", "N(3)"}
    # the general product rule for all class pairs at m = 5 with unit
    # weights: summands are the difference and sum classes
    classes = enumerate_classes(2, 1, "upto")
    for a in classes:
        for b in classes:
            result, expected = decompose_catalog(5, 1, a, 1, b)
            diff, tot = expected
            want = ({"eps+", "eps-"} if diff.is_zero()
                    else {f"N{diff!r}"}) | {f"N{tot!r}"}
            assert {r.label for r in result.summands} == want, (a, b)
    # all four branches exercised by at least one instance each
    cases = set()
    cases.add(decompose_catalog(5, 1, cls((1, 0)), 1, cls((0, 1)))[0].case)
    cases.add(decompose_catalog(3, 1, cls((1,)), 1, cls((1,)))[0].case)
    cases.add(decompose_catalog(4, 1, cls((1,)), 2,
                                cls((1,), sup1=True))[0].case)
    from gmpy2 import mpq
    ctx4 = make_base_field(4)
    half = TowerScalar.from_cyclo(ctx4.cyclo_from_rational(mpq(1, 2)))
    f4 = TowerScalar.u_int(ctx4, 2) ** 2
    c = f4 * half
    a = TowerScalar.u_int(ctx4, 2) \
        * TowerScalar.from_cyclo(ctx4.sqrt_w[1]) * half
    cases.add(tensor_decompose(c, 1, c, 1, a, a, c).case)
    assert cases == {"generic", "plus-degenerate", "minus-degenerate",
                     "both-degenerate"}


def test_criterion_07_counting():
    # |C(2,3)| = 6, and the closed form matches brute enumeration for
    # n <= 4, k <= 7
    assert len(enumerate_classes(2, 3)) == 6
    assert count_closed_form(2, 3) == 6
    for n in range(1, 5):
        for k in range(1, 8):
            seen = {SignedCompClass(vec).canonical
                    for vec in itertools.product(range(-k, k + 1), repeat=n)
                    if sum(abs(v) for v in vec) == k}
            assert count_closed_form(n, k) == len(seen), (n, k)


def test_criterion_08_chebyshev_addition_identities():
    # exhaustive for n <= 2 and both weights up to 4
    for n in (1, 2):
        vecs = [v for v in itertools.product(range(-4, 5), repeat=n)
                if sum(abs(x) for x in v) <= 4]
        for kl in vecs:
            for kr in vecs:
                ok, witness = verify_addition_identity(kl, kr)
                assert ok, witness


def test_criterion_09_cellularity_and_gram_forms():
    # basis property, triangular action with the displayed
    # coefficients, star = word reversal; Gram forms match the closed
    # product formula on every stratum (asserted inside gram_form)
    from nshecke.cellular import (build_cellular_basis, gram_form,
                                  verify_cellularity)
    for m, k in ((3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (5, 1), (5, 2)):
        basis = build_cellular_basis(m, k)
        ok, failures = verify_cellularity(basis)
        assert ok, (m, k, failures)
        for label in basis.poset.labels():
            gram_form(basis, label)


def test_criterion_10_u1_specialization():
    # odd m: rank pattern and decomposition matrix; even m: module
    # structure of the modified basis at (4,2); semisimple quotient
    # dimension 2m whenever the residues are covered
    from nshecke.cellular import u1_analysis
    for m, k in ((3, 1), (3, 2), (5, 1), (5, 2)):
        rep = u1_analysis(m, k)
        assert rep["ok"], (m, k, rep)
        assert rep["rank_ok"] and rep["decomposition_ok"], (m, k)
        if rep["residues_covered"]:
            assert rep["quotient_dim"] == 2 * m, (m, k)
    rep = u1_analysis(4, 2)
    assert rep["ok"], rep
    assert rep["basis_ok"]
    assert rep["residues_covered"] and rep["quotient_dim"] == 8
    assert rep["modules"]["(2)/left"] == "eps2 inside, eps1 quotient"
    assert rep["modules"]["(2)/right"] == "eps1 inside, eps2 quotient"


def test_criterion_11_hopf_and_antipode():
    # coassociativity and both antipode identities on spanning sets
    for m in (3, 4):
        ok, witness = check_h2_hopf(m)
        assert ok, (m, witness)
        ok, witness = check_antipode(m)
        assert ok, (m, witness)

"""Cellular structure: poset, basis construction, axioms, Gram forms,
and the u = 1 specialization reports."""

import pytest

from nshecke.cellular import (EPS_1, EPS_2, EPS_MINUS, EPS_PLUS, CellPoset,
                              build_cellular_basis, gram_form, poset_dot,
                              u1_analysis, verify_cellularity)
from nshecke.reps import dimension_census
from nshecke.scalars import TowerScalar, make_base_field


# ---------------------------------------------------------------------------
# poset
# ---------------------------------------------------------------------------

def test_poset_labels_m3_k2():
    poset = CellPoset(3, 2)
    labels = poset.labels()
    assert labels[0] == EPS_MINUS
    assert labels[-1] == EPS_PLUS
    assert [str(c) for c in poset.lambda2] == ["(1)", "(2)"]


def test_poset_labels_even():
    poset = CellPoset(4, 2)
    labels = poset.labels()
    assert labels[0] == EPS_MINUS
    assert set(labels[-3:]) == {EPS_1, EPS_2, EPS_PLUS}
    assert [str(c) for c in poset.lambda2] == ["(1)", "(1)^1", "(2)"]


def test_poset_order():
    poset = CellPoset(3, 2)
    c1, c2 = poset.lambda2
    # eps+ below everything, eps- above everything, strata by weight
    assert poset.leq(EPS_PLUS, c1) and poset.leq(EPS_PLUS, EPS_MINUS)
    assert poset.leq(c1, c2) and poset.leq(c2, EPS_MINUS)
    assert not poset.leq(c2, c1)
    assert not poset.leq(EPS_MINUS, c1)


def test_poset_mixed_labels_incomparable():
    poset = CellPoset(4, 2)
    assert not poset.leq(EPS_1, EPS_2)
    assert not poset.leq(EPS_2, EPS_1)
    assert poset.leq(EPS_PLUS, EPS_1)
    assert poset.leq(EPS_1, poset.lambda2[0])


def test_poset_sigma_nonzero():
    for m, k in ((3, 2), (4, 2), (5, 2)):
        poset = CellPoset(m, k)
        for cls in poset.lambda2:
            assert not poset.sigma(cls).is_zero()


def test_poset_dot_output():
    dot = poset_dot(CellPoset(3, 2))
    assert dot.startswith("digraph")
    assert "->" in dot


# ---------------------------------------------------------------------------
# basis and axioms
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m,k", [(3, 1), (3, 2), (4, 1), (4, 2), (5, 1)])
def test_basis_size_matches_census(m, k):
    basis = build_cellular_basis(m, k)
    assert len(basis.keys) == dimension_census(m, k)
    assert len(basis.check_words()) == dimension_census(m, k)


@pytest.mark.parametrize("m,k", [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2),
                                 (5, 1)])
def test_cellularity(m, k):
    basis = build_cellular_basis(m, k)
    ok, failures = verify_cellularity(basis)
    assert ok, failures


def test_star_fixes_diagonal():
    basis = build_cellular_basis(3, 2)
    for (label, s, t), elem in basis.elements.items():
        assert elem.apply_op_all() == basis.elements[(label, t, s)]


def test_coordinates_roundtrip():
    # ambient coordinates of each basis element are the unit vectors
    basis = build_cellular_basis(3, 1)
    field = make_base_field(3)
    one = TowerScalar.one(field)
    for key in basis.keys:
        coords = basis.sym_coordinates(basis.sym[key])
        nonzero = {k2: v for k2, v in coords.items() if not v.is_zero()}
        assert nonzero == {key: one}


# ---------------------------------------------------------------------------
# Gram forms
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m,k", [(3, 1), (3, 2), (3, 3), (4, 2), (5, 1)])
def test_gram_forms(m, k):
    # gram_form internally asserts the closed product formula on strata
    basis = build_cellular_basis(m, k)
    for label in basis.poset.labels():
        g = gram_form(basis, label)
        assert g.u1_rank() in (0, 1, 2)


def test_gram_maximal_stratum_m3_k1():
    # top stratum: empty product, phi = sigma * [[2], sigma; sigma, [2]]
    basis = build_cellular_basis(3, 1)
    field = make_base_field(3)
    top = basis.poset.lambda2[-1]
    sig = basis.poset.sigma(top)
    two = TowerScalar.u_int(field, 2)
    g = gram_form(basis, top)
    assert g.matrix == ((two * sig, sig * sig), (sig * sig, two * sig))


def test_gram_characters_rank_one():
    basis = build_cellular_basis(3, 2)
    for label in (EPS_MINUS, EPS_PLUS):
        g = gram_form(basis, label)
        assert len(g.matrix) == 1
        assert g.u1_rank() == 1


# ---------------------------------------------------------------------------
# u = 1 specialization
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m,k", [(3, 1), (3, 2), (5, 1)])
def test_u1_odd(m, k):
    rep = u1_analysis(m, k)
    assert rep["ok"], rep
    assert rep["rank_ok"] and rep["decomposition_ok"]
    assert rep["quotient_dim"] == 2 * m
    # decomposition matrix: every row has exactly one 1 except the
    # eps+/eps- pair collapse
    mat = rep["decomposition"]
    for row in mat:
        assert sum(row) >= 1 and all(v in (0, 1) for v in row)


def test_u1_even_42():
    rep = u1_analysis(4, 2)
    assert rep["ok"], rep
    assert rep["quotient_dim"] == 2 * 4
    # the stratum modules: (1) and (1)^1 stay simple two-dimensional,
    # (2) has a one-dimensional character submodule on each side
    modules = rep["modules"]
    assert modules["(1)/left"] == "M_1"
    assert modules["(1)/right"] == "M_1"
    assert modules["(1)^1/left"] == "M_1"
    assert modules["(2)/left"] == "eps2 inside, eps1 quotient"
    assert modules["(2)/right"] == "eps1 inside, eps2 quotient"


def test_modified_basis_even():
    basis = build_cellular_basis(4, 2, modified=True)
    assert len(basis.keys) == dimension_census(4, 2)
    assert len(basis.check_words()) == dimension_census(4, 2)

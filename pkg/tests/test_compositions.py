"""Signed composition classes: enumeration, counting, residues."""

import itertools

import pytest

from nshecke.compositions import (SignedCompClass, class_sum,
                                  count_closed_form, enumerate_classes,
                                  residue)


def brute_count(n, k):
    """Count classes of weight exactly k by brute enumeration."""
    seen = set()
    for vec in itertools.product(range(-k, k + 1), repeat=n):
        if sum(abs(v) for v in vec) != k:
            continue
        seen.add(SignedCompClass(vec).canonical)
    return len(seen)


def test_canonical_representative():
    assert SignedCompClass((-1, 2)).canonical == (1, -2)
    assert SignedCompClass((0, -3)).canonical == (0, 3)
    assert SignedCompClass((2, -1)).canonical == (2, -1)
    assert SignedCompClass((0, 0)).canonical == (0, 0)
    assert SignedCompClass((1, 2)) == SignedCompClass((-1, -2))


def test_c23_has_six_classes():
    classes = enumerate_classes(2, 3)
    assert len(classes) == 6
    assert count_closed_form(2, 3) == 6
    assert {c.canonical for c in classes} == {
        (0, 3), (1, 2), (1, -2), (2, 1), (2, -1), (3, 0)}


@pytest.mark.parametrize("n", range(1, 5))
def test_closed_form_matches_brute(n):
    for k in range(1, 8):
        assert count_closed_form(n, k) == brute_count(n, k), (n, k)


def test_enumerate_modes():
    upto = enumerate_classes(2, 3, "upto")
    below = enumerate_classes(2, 3, "below")
    exact = enumerate_classes(2, 3, "exact")
    assert len(upto) == len(below) + len(exact)
    assert all(1 <= c.weight <= 3 for c in upto)
    assert all(1 <= c.weight < 3 for c in below)
    assert all(c.weight == 3 for c in exact)
    # sorted by the fixed total order, and the zero class is excluded
    assert [c.sort_key() for c in upto] == sorted(c.sort_key()
                                                  for c in upto)
    assert not any(c.is_zero() for c in upto)
    with pytest.raises(ValueError):
        enumerate_classes(2, 3, "bogus")


def test_class_sum():
    a = SignedCompClass((2, 1))
    b = SignedCompClass((1, -1))
    diff, tot = class_sum(a, b)
    assert diff == SignedCompClass((1, 2))
    assert tot == SignedCompClass((3, 0))
    # same class: the difference degenerates to the zero marker
    diff, tot = class_sum(a, a)
    assert diff.is_zero()
    assert tot == SignedCompClass((4, 2))


def test_class_sum_representative_independent():
    # as an unordered pair, the result is stable under negating inputs
    a, b = SignedCompClass((1, 2)), SignedCompClass((2, -1))
    va = tuple(-x for x in a.canonical)
    d1, t1 = class_sum(a, b)
    d2, t2 = class_sum(SignedCompClass(va), b)
    assert {d1, t1} == {d2, t2}


def test_residue_values():
    # m = 4: residues live in {0, 1, 2}
    assert residue(SignedCompClass((1,)), 4) == 1
    assert residue(SignedCompClass((2,)), 4) == 2
    assert residue(SignedCompClass((1,), superscript1=True), 4) == 1
    assert residue(SignedCompClass((2,), superscript1=True), 4) == 0
    # m = 5: residues live in {0, 1, 2}
    assert residue(SignedCompClass((1, 0)), 5) == 1
    assert residue(SignedCompClass((0, 1)), 5) == 2
    assert residue(SignedCompClass((1, 1)), 5) == 2   # 3 = -2 mod 5
    assert residue(SignedCompClass((1, -1)), 5) == 1
    assert residue(SignedCompClass((0, 2)), 5) == 1   # 4 = -1 mod 5
    assert residue(SignedCompClass((2, 0)), 5) == 2


def test_residue_negation_invariant():
    for n, m in ((2, 5), (1, 4), (2, 7)):
        for cls in enumerate_classes(n, 4, "upto"):
            neg = SignedCompClass(tuple(-v for v in cls.canonical))
            assert residue(cls, m) == residue(neg, m)


def test_residue_sup1_needs_even_m():
    with pytest.raises(AssertionError):
        residue(SignedCompClass((1,), superscript1=True), 5)

"""Signed compositions and their equivalence classes.

A signed n-composition of k is an integer vector (k_1, ..., k_n) with
sum |k_i| = k.  Two vectors are equivalent when equal up to a global
sign; the classes C(n, k) index the two-dimensional irreducibles and
the cellular strata.  The canonical representative of a class is the
vector whose first nonzero entry is positive.
"""

from math import comb

__all__ = [
    "SignedCompClass", "enumerate_classes",
    "count_closed_form", "class_sum", "residue",
]


class SignedCompClass:
    """An equivalence class {k, -k} of signed n-compositions.

    `canonical` is the representative whose first nonzero entry is
    positive; `superscript1` tags the extra strata that occur for even
    m (levels below k, paired with the sign-twisted representations).
    """

    __slots__ = ("canonical", "superscript1")

    def __init__(self, vec, superscript1=False):
        vec = tuple(vec)
        for v in vec:
            if v > 0:
                break
            if v < 0:
                vec = tuple(-x for x in vec)
                break
        self.canonical = vec
        self.superscript1 = superscript1

    @property
    def n(self):
        return len(self.canonical)

    @property
    def weight(self):
        return sum(abs(v) for v in self.canonical)

    def is_zero(self):
        return all(v == 0 for v in self.canonical)

    def sort_key(self):
        """The fixed total order on strata: lexicographic on
        (weight, canonical vector, superscript flag)."""
        return (self.weight, self.canonical, self.superscript1)

    def __eq__(self, other):
        if not isinstance(other, SignedCompClass):
            return NotImplemented
        return (self.canonical == other.canonical
                and self.superscript1 == other.superscript1)

    def __hash__(self):
        return hash((self.canonical, self.superscript1))

    def __repr__(self):
        base = "(" + ",".join(str(v) for v in self.canonical) + ")"
        return base + ("^1" if self.superscript1 else "")


def enumerate_classes(n, k, mode="exact"):
    """All classes with weight == k ("exact"), 1 <= weight <= k
    ("upto"), or 1 <= weight < k ("below"), sorted by the fixed total
    order."""
    assert n >= 1 and k >= 1
    if mode == "exact":
        weights = [k]
    elif mode == "upto":
        weights = range(1, k + 1)
    elif mode == "below":
        weights = range(1, k)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = []
    for w in weights:
        seen = set()
        for vec in _signed_vectors(n, w):
            cls = SignedCompClass(vec)
            if cls.canonical not in seen:
                seen.add(cls.canonical)
                out.append(cls)
    out.sort(key=SignedCompClass.sort_key)
    return out


def _signed_vectors(n, w):
    """All integer n-vectors with sum of absolute values w."""
    if n == 1:
        if w == 0:
            yield (0,)
        else:
            yield (w,)
            yield (-w,)
        return
    for a in range(-w, w + 1):
        for rest in _signed_vectors(n - 1, w - abs(a)):
            yield (a,) + rest


def count_closed_form(n, k):
    """|C(n, k)| = sum_{i=1}^{n} 2^(i-1) C(n, i) C(k-1, i-1)."""
    return sum((1 << (i - 1)) * comb(n, i) * comb(k - 1, i - 1)
               for i in range(1, n + 1))


def class_sum(a, b):
    """The pair (difference class, sum class) entering the tensor rule
    N_kl (x) N_kr = N_{kl - kr} (+) N_{kl + kr}.

    Computed on canonical representatives; as an unordered pair of
    classes the result is independent of the representative choice.
    When a and b are the same class the difference is the zero vector;
    it is returned as a zero-weight marker (is_zero() is true), which
    signals the eps_+ (+) eps_- branch instead of a two-dimensional
    summand.
    """
    assert a.n == b.n
    va, vb = a.canonical, b.canonical
    diff = SignedCompClass(tuple(x - y for x, y in zip(va, vb)))
    tot = SignedCompClass(tuple(x + y for x, y in zip(va, vb)))
    return diff, tot


def residue(cls, m, superscript1=None):
    """The residue r(k): the unique element of
    {t*m + shift +- sum_j j*k_j : t in Z} intersected with
    {0, ..., ceil((m-1)/2)}, where shift = m/2 for superscript-1
    strata.

    Negation-invariant, so well defined on classes.
    """
    if superscript1 is None:
        superscript1 = cls.superscript1
    if superscript1:
        assert m % 2 == 0, "superscript-1 strata occur only for even m"
    shift = m // 2 if superscript1 else 0
    s = sum(j * kj for j, kj in enumerate(cls.canonical, start=1))
    window = (m - 1) // 2 + (1 if m % 2 == 0 else 0)  # ceil((m-1)/2)
    hits = set()
    for signed in (s, -s):
        r = (signed + shift) % m
        if r <= window:
            hits.add(r)
    assert len(hits) == 1, (cls, m, superscript1, hits)
    return hits.pop()

"""The explicit irreducible representations of the nonstandard algebra.

A two-dimensional representation X(c) at level k sends

    P_1 -> [ [2]^k  c ]      P_2 -> [ 0      0   ]
           [ 0      0 ],            [ 1  [2]^k ].

It is absolutely irreducible iff c is outside {0, f^k} (f = [2]^2), and
c -- recoverable as the trace of P_1 P_2 -- determines the isomorphism
class.  The one-dimensional representations assign each generator a
value in {0, [2]^k}; all four combinations occur, the last two only for
even m.

The irreducible catalog pairs each signed-composition class with the
squared sigma-constant sigma_k^2 (cosine flavour; for even m the lower
strata enter with the sine flavour).  Tensor products of two
two-dimensional representations decompose by an explicit 4x4 change of
basis built from the z-vectors; the four branches are classified by
whether a_+^2 = f^k and whether a_- = 0, where

    a_+- = a_l a_r +- sqrt((f^kl - c_l)(f^kr - c_r)).
"""

from .scalars import LaurentInt, TowerScalar, make_base_field
from .compositions import SignedCompClass, enumerate_classes, class_sum
from .chebyshev import sigma_constant
from .tensor import braid_poly_roots

__all__ = [
    "TwoDimRep", "OneDimRep", "DecompositionResult",
    "irreducible_catalog", "tensor_decompose", "decompose_catalog",
    "trivial_twist", "eps1_twist", "dual_rep", "dimension_census",
    "ReducibleFactor", "BadRoot", "OddM", "NoMatch",
]


class ReducibleFactor(ValueError):
    """A tensor factor (or twist input) has c in {0, f^k}."""


class BadRoot(ValueError):
    """A supplied square root does not square to the required value, or
    its sign breaks the convention tying the degeneracy criteria to
    a_+ and a_-."""


class OddM(ValueError):
    """The operation needs the extra characters of even m."""


class NoMatch(RuntimeError):
    """A dual failed to match any catalog representation."""


# ---------------------------------------------------------------------------
# small exact matrices over the scalar tower
# ---------------------------------------------------------------------------

def _mzero(ctx, n):
    z = TowerScalar.zero(ctx)
    return tuple((z,) * n for _ in range(n))


def mat_identity(ctx, n):
    z = TowerScalar.zero(ctx)
    o = TowerScalar.one(ctx)
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def mat_mul(a, b):
    n = len(a)
    p = len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = a[i][0] * b[0][j]
            for t in range(1, len(b)):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def mat_trace(a):
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def mat_from_columns(ctx, cols):
    n = len(cols[0])
    return tuple(tuple(col[i] for col in cols) for i in range(n))


def mat_inverse(a, ctx):
    """Gaussian elimination with exact division; raises
    ZeroDivisionError when the matrix is singular."""
    n = len(a)
    work = [list(row) for row in a]
    inv = [list(row) for row in mat_identity(ctx, n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not work[r][col].is_zero()),
                     None)
        if pivot is None:
            raise ZeroDivisionError("singular change-of-basis matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = work[col][col].invert()
        work[col] = [x * scale for x in work[col]]
        inv[col] = [x * scale for x in inv[col]]
        for r in range(n):
            if r == col or work[r][col].is_zero():
                continue
            factor = work[r][col]
            work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
            inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def _poly_at_matrix(mat, roots, ctx):
    """prod over the roots c of (mat - c), as a matrix product."""
    result = mat_identity(ctx, len(mat))
    for c in roots:
        result = mat_sub(mat_mul(result, mat), mat_scale(result, c))
    return result


# ---------------------------------------------------------------------------
# representation objects
# ---------------------------------------------------------------------------

def _two_pow(ctx, k):
    return TowerScalar.u_int(ctx, 2) ** k


def _f_pow(ctx, k):
    return TowerScalar.u_int(ctx, 2) ** (2 * k)


class TwoDimRep:
    """X(c) at level k, with the fixed matrix form above."""

    def __init__(self, m, k, c, label=None, cls=None, sqrt_c=None):
        self.m = m
        self.k = k
        self.ctx = c.ctx
        self.c = c
        self.label = label or f"X({c!r})"
        self.cls = cls
        self.sqrt_c = sqrt_c

    @property
    def dim(self):
        return 2

    def matrix(self, s):
        ctx = self.ctx
        z = TowerScalar.zero(ctx)
        o = TowerScalar.one(ctx)
        two_k = _two_pow(ctx, self.k)
        if s == 1:
            return ((two_k, self.c), (z, z))
        return ((z, z), (o, two_k))

    def is_irreducible(self):
        return not (self.c.is_zero() or self.c == _f_pow(self.ctx, self.k))

    def trace_vector(self):
        return _trace_vector(self.matrix(1), self.matrix(2), self.ctx)

    def __repr__(self):
        return f"TwoDimRep({self.label}, k={self.k})"


class OneDimRep:
    """A character: a pair of generator values, each 0 or [2]^k."""

    def __init__(self, m, k, signs, label):
        self.m = m
        self.k = k
        self.ctx = make_base_field(m)
        two_k = _two_pow(self.ctx, k)
        zero = TowerScalar.zero(self.ctx)
        self.values = tuple(two_k if s else zero for s in signs)
        self.signs = tuple(signs)
        self.label = label

    @property
    def dim(self):
        return 1

    def value(self, s):
        return self.values[s - 1]

    def trace_vector(self):
        v1, v2 = self.values
        one = TowerScalar.one(self.ctx)
        return (one, v1, v2, v1 * v2, v2 * v1)

    def __repr__(self):
        return f"OneDimRep({self.label}, k={self.k})"


# traces on the probe monomials 1, P1, P2, P12, P21 identify a
# representation among the catalog members
_PROBE_WORDS = ((), (1,), (2,), (1, 2), (2, 1))


def _trace_vector(m1, m2, ctx):
    mats = {1: m1, 2: m2}
    out = []
    for word in _PROBE_WORDS:
        prod = mat_identity(ctx, len(m1))
        for s in word:
            prod = mat_mul(prod, mats[s])
        out.append(mat_trace(prod))
    return tuple(out)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

_CATALOG_CACHE = {}


def irreducible_catalog(m, k):
    """All irreducible representations at level k: the two (four for
    even m) characters plus a two-dimensional representation per signed
    composition class, with the sine-flavoured lower strata joining in
    for even m.  Asserts pairwise-distinct c-values, irreducibility,
    and the quadratic and braid relations at matrix level."""
    if (m, k) in _CATALOG_CACHE:
        return _CATALOG_CACHE[(m, k)]
    assert m >= 3 and k >= 1
    ctx = make_base_field(m)
    reps = [
        OneDimRep(m, k, (True, True), "eps+"),
        OneDimRep(m, k, (False, False), "eps-"),
    ]
    if m % 2 == 0:
        reps.append(OneDimRep(m, k, (True, False), "eps1"))
        reps.append(OneDimRep(m, k, (False, True), "eps2"))
    for cls in enumerate_classes(ctx.n, k, "upto"):
        sig = sigma_constant(cls.canonical, m, k)
        reps.append(TwoDimRep(m, k, sig * sig, label=f"N{cls!r}",
                              cls=cls, sqrt_c=sig))
    if m % 2 == 0 and k >= 2:
        for cls in enumerate_classes(ctx.n, k, "below"):
            cls1 = SignedCompClass(cls.canonical, superscript1=True)
            sig = sigma_constant(cls.canonical, m, k, "sup1")
            reps.append(TwoDimRep(m, k, sig * sig, label=f"N{cls1!r}",
                                  cls=cls1, sqrt_c=sig))
    _check_catalog(m, k, reps)
    _CATALOG_CACHE[(m, k)] = reps
    return reps


def _check_catalog(m, k, reps):
    ctx = make_base_field(m)
    two_k = _two_pow(ctx, k)
    twodims = [r for r in reps if isinstance(r, TwoDimRep)]
    cs = [r.c for r in twodims]
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            assert cs[i] != cs[j], (
                f"catalog collision {twodims[i].label} / {twodims[j].label}")
    roots = braid_poly_roots(m, k)
    for r in twodims:
        assert r.is_irreducible(), f"{r.label} is not irreducible"
        m1, m2 = r.matrix(1), r.matrix(2)
        for mat in (m1, m2):
            assert mat_is_zero(mat_sub(mat_mul(mat, mat),
                                       mat_scale(mat, two_k)))
        g21 = _poly_at_matrix(mat_mul(m2, m1), roots, ctx)
        g12 = _poly_at_matrix(mat_mul(m1, m2), roots, ctx)
        if m % 2 == 1:
            lhs = mat_mul(m1, g21)
            rhs = mat_mul(m2, g12)
        else:
            lhs, rhs = g21, g12
        assert mat_is_zero(mat_sub(lhs, rhs)), f"{r.label} fails the braid relation"


def dimension_census(m, k):
    """Sum of squared dimensions over the catalog; equals the span
    dimension of the algebra by split semisimplicity."""
    return sum(r.dim ** 2 for r in irreducible_catalog(m, k))


# ---------------------------------------------------------------------------
# tensor product decomposition
# ---------------------------------------------------------------------------

class DecompositionResult:
    """Outcome of decomposing X(c_l) (x) X(c_r): the branch tag, the
    list of summands, the 4x4 change of basis (columns are the z- and
    z'-vectors) and the conjugated, block-diagonal action matrices."""

    def __init__(self, case, summands, change_of_basis, conjugated):
        self.case = case
        self.summands = summands
        self.change_of_basis = change_of_basis
        self.conjugated = conjugated

    def __repr__(self):
        names = " (+) ".join(r.label for r in self.summands)
        return f"DecompositionResult[{self.case}] {names}"


def tensor_decompose(c_l, k_l, c_r, k_r, sqrt_cl, sqrt_cr, sqrt_defect):
    """Decompose X(c_l) (x) X(c_r) into irreducibles at level
    k = k_l + k_r.

    The caller supplies square roots a_l, a_r of c_l, c_r and a root of
    the defect (f^kl - c_l)(f^kr - c_r); the branch is classified by
    whether a_+^2 = f^k and whether a_- = 0, and the basis of z-vectors
    (with the primed replacements in the degenerate branches) is
    checked to conjugate the tensor action to the expected block form.
    """
    ctx = c_l.ctx
    if c_l.ctx is not c_r.ctx:
        raise ValueError("tensor factors live over different base fields")
    m = ctx.m
    k = k_l + k_r
    f_l, f_r, f_k = _f_pow(ctx, k_l), _f_pow(ctx, k_r), _f_pow(ctx, k)
    if c_l.is_zero() or c_l == f_l:
        raise ReducibleFactor(f"left factor has degenerate c = {c_l!r}")
    if c_r.is_zero() or c_r == f_r:
        raise ReducibleFactor(f"right factor has degenerate c = {c_r!r}")
    if sqrt_cl * sqrt_cl != c_l:
        raise BadRoot("sqrt_cl^2 != c_l")
    if sqrt_cr * sqrt_cr != c_r:
        raise BadRoot("sqrt_cr^2 != c_r")
    defect = (f_l - c_l) * (f_r - c_r)
    if sqrt_defect * sqrt_defect != defect:
        raise BadRoot("sqrt_defect^2 != (f^kl - c_l)(f^kr - c_r)")

    a_l, a_r = sqrt_cl, sqrt_cr
    alar = a_l * a_r
    a_plus = alar + sqrt_defect
    a_minus = alar - sqrt_defect

    # both constants solve y^2 - 2 a_l a_r y - f^k + f^kr c_l + f^kl c_r = 0
    tail = f_r * c_l + f_l * c_r - f_k
    for a in (a_plus, a_minus):
        assert (a * a - (alar + alar) * a + tail).is_zero()

    plus_crit = f_r * c_l == f_l * c_r
    minus_crit = (f_k - f_l * c_r - f_r * c_l).is_zero()
    plus_deg = a_plus * a_plus == f_k
    minus_deg = a_minus.is_zero()
    # the degeneracy criteria are statements about c_l, c_r only; they
    # single out a_+ and a_- provided the defect root has the right sign
    if plus_crit != plus_deg or minus_crit != minus_deg:
        raise BadRoot("defect root sign breaks the a_+/a_- convention")

    two_k = _two_pow(ctx, k)
    two_l = _two_pow(ctx, k_l)
    two_r = _two_pow(ctx, k_r)
    z = TowerScalar.zero(ctx)
    o = TowerScalar.one(ctx)

    # ambient 4x4 action on (xl1 (x) xr1, xl1 (x) xr2, xl2 (x) xr1, xl2 (x) xr2)
    amb1 = ((two_k, two_l * c_r, two_r * c_l, (c_l * c_r) * 2),
            (z, z, z, -(two_r * c_l)),
            (z, z, z, -(two_l * c_r)),
            (z, z, z, two_k))
    amb2 = ((two_k, z, z, z),
            (-two_l, z, z, z),
            (-two_r, z, z, z),
            (TowerScalar.from_int(ctx, 2), two_r, two_l, two_k))

    def z1(a):
        return (alar * a, -(two_r * c_l), -(two_l * c_r), two_k)

    def z2(a):
        return (two_k * alar * a, -(two_l * alar * a),
                -(two_r * alar * a), a * a)

    z2p_prime = (z, o, -o, z)
    z2m_prime = (two_k * alar, -(two_l * alar), -(two_r * alar), a_minus)

    cols = [z1(a_plus),
            z2p_prime if plus_deg else z2(a_plus),
            z1(a_minus),
            z2m_prime if minus_deg else z2(a_minus)]
    g = mat_from_columns(ctx, cols)
    g_inv = mat_inverse(g, ctx)
    conj1 = mat_mul(g_inv, mat_mul(amb1, g))
    conj2 = mat_mul(g_inv, mat_mul(amb2, g))

    if not plus_deg and not minus_deg:
        case = "generic"
        summands = [TwoDimRep(m, k, a_plus * a_plus, sqrt_c=a_plus),
                    TwoDimRep(m, k, a_minus * a_minus, sqrt_c=a_minus)]
        exp1 = ((two_k, a_plus * a_plus, z, z), (z, z, z, z),
                (z, z, two_k, a_minus * a_minus), (z, z, z, z))
        exp2 = ((z, z, z, z), (o, two_k, z, z),
                (z, z, z, z), (z, z, o, two_k))
    elif plus_deg and not minus_deg:
        case = "plus-degenerate"
        summands = [OneDimRep(m, k, (True, True), "eps+"),
                    OneDimRep(m, k, (False, False), "eps-"),
                    TwoDimRep(m, k, a_minus * a_minus, sqrt_c=a_minus)]
        exp1 = ((two_k, z, z, z), (z, z, z, z),
                (z, z, two_k, a_minus * a_minus), (z, z, z, z))
        exp2 = ((two_k, z, z, z), (z, z, z, z),
                (z, z, z, z), (z, z, o, two_k))
    elif minus_deg and not plus_deg:
        case = "minus-degenerate"
        summands = [OneDimRep(m, k, (True, False), "eps1"),
                    OneDimRep(m, k, (False, True), "eps2"),
                    TwoDimRep(m, k, a_plus * a_plus, sqrt_c=a_plus)]
        exp1 = ((two_k, a_plus * a_plus, z, z), (z, z, z, z),
                (z, z, two_k, z), (z, z, z, z))
        exp2 = ((z, z, z, z), (o, two_k, z, z),
                (z, z, z, z), (z, z, z, two_k))
    else:
        case = "both-degenerate"
        summands = [OneDimRep(m, k, (True, True), "eps+"),
                    OneDimRep(m, k, (False, False), "eps-"),
                    OneDimRep(m, k, (True, False), "eps1"),
                    OneDimRep(m, k, (False, True), "eps2")]
        exp1 = ((two_k, z, z, z), (z, z, z, z),
                (z, z, two_k, z), (z, z, z, z))
        exp2 = ((two_k, z, z, z), (z, z, z, z),
                (z, z, z, z), (z, z, z, two_k))

    assert mat_is_zero(mat_sub(conj1, exp1)), "block form mismatch for P_1"
    assert mat_is_zero(mat_sub(conj2, exp2)), "block form mismatch for P_2"
    return DecompositionResult(case, summands, g, (conj1, conj2))


def decompose_catalog(m, k_l, cls_l, k_r, cls_r):
    """Decompose N_(cls_l) (x) N_(cls_r) (catalog members, possibly
    sine-flavoured for even m), with the square roots supplied from the
    sigma-constants.  The defect root comes from the complementary
    flavour: f^k - sigma^2 = (sigma^1)^2 and vice versa.

    Returns (result, expected): the decomposition and, for plain
    (cosine) factors, the pair of difference/sum classes the general
    rule predicts (None when a factor is sine-flavoured).
    """
    kind_l = "sup1" if cls_l.superscript1 else "plain"
    kind_r = "sup1" if cls_r.superscript1 else "plain"
    sig_l = sigma_constant(cls_l.canonical, m, k_l, kind_l)
    sig_r = sigma_constant(cls_r.canonical, m, k_r, kind_r)
    co_l = sigma_constant(cls_l.canonical, m, k_l,
                          "plain" if kind_l == "sup1" else "sup1")
    co_r = sigma_constant(cls_r.canonical, m, k_r,
                          "plain" if kind_r == "sup1" else "sup1")
    result = tensor_decompose(sig_l * sig_l, k_l, sig_r * sig_r, k_r,
                              sig_l, sig_r, co_l * co_r)
    expected = None
    if kind_l == "plain" and kind_r == "plain":
        expected = class_sum(cls_l, cls_r)
    # adopt catalog names for the two-dimensional summands
    catalog = irreducible_catalog(m, k_l + k_r)
    for summand in result.summands:
        if isinstance(summand, TwoDimRep):
            for cand in catalog:
                if isinstance(cand, TwoDimRep) and cand.c == summand.c:
                    summand.label = cand.label
                    summand.cls = cand.cls
                    break
    return result, expected


# ---------------------------------------------------------------------------
# twists and duals
# ---------------------------------------------------------------------------

def trivial_twist(rep, k):
    """Tensoring with trivial slots: X(c) at level k' becomes
    X(c * f^(k - k')) at level k (sigma rescales by [2]^(k-k'))."""
    assert k >= rep.k
    scale = _f_pow(rep.ctx, k - rep.k)
    sqrt_c = None
    if rep.sqrt_c is not None:
        sqrt_c = rep.sqrt_c * _two_pow(rep.ctx, k - rep.k)
    return TwoDimRep(rep.m, k, rep.c * scale, cls=rep.cls, sqrt_c=sqrt_c)


def eps1_twist(rep):
    """Twist by the first mixed character (even m only): X(c) at level
    k-1 becomes X(f^k - c f) at level k.  The twisted action

        P_1 -> [ [2]^k  [2]c ]     P_2 -> [ [2]^k  0 ]
               [ 0      0    ],           [ -[2]   0 ]

    is conjugated to the standard form by the basis (v, P_2 v) with
    v = (1, 0)^T, and the conjugated matrices are asserted equal to it.
    """
    if rep.m % 2 == 1:
        raise OddM("the mixed characters exist only for even m")
    ctx = rep.ctx
    k = rep.k + 1
    if rep.c.is_zero() or rep.c == _f_pow(ctx, rep.k):
        raise ReducibleFactor("twist input must be irreducible")
    two = _two_pow(ctx, 1)
    two_k = _two_pow(ctx, k)
    z = TowerScalar.zero(ctx)
    o = TowerScalar.one(ctx)
    e1 = ((two_k, two * rep.c), (z, z))
    e2 = ((two_k, z), (-two, z))
    v1 = (o, z)
    v2 = tuple(e2[i][0] * v1[0] + e2[i][1] * v1[1] for i in range(2))
    g = mat_from_columns(ctx, [v1, v2])
    g_inv = mat_inverse(g, ctx)
    c_new = _f_pow(ctx, k) - rep.c * _f_pow(ctx, 1)
    target = TwoDimRep(rep.m, k, c_new)
    assert mat_mul(g_inv, mat_mul(e1, g)) == target.matrix(1)
    assert mat_mul(g_inv, mat_mul(e2, g)) == target.matrix(2)
    return target


def dual_rep(rep, which="diamond"):
    """The dual along an anti-automorphism: "diamond" (word reversal,
    which fixes both generators, so the dual action is the transpose)
    or "sharp" (reversal composed with the involution swapping P_s and
    Q_s, so P_s acts by the transpose of [2]^k - P_s).  Returns the
    catalog representation the dual is isomorphic to, identified by
    its trace vector on the probe monomials."""
    assert which in ("diamond", "sharp")
    ctx = rep.ctx
    two_k = _two_pow(ctx, rep.k)
    if isinstance(rep, OneDimRep):
        vals = rep.values
        if which == "sharp":
            vals = tuple(two_k - v for v in vals)
        one = TowerScalar.one(ctx)
        v1, v2 = vals
        trace = (one, v1, v2, v1 * v2, v2 * v1)
    else:
        mats = []
        for s in (1, 2):
            mat = rep.matrix(s)
            if which == "sharp":
                mat = mat_sub(mat_scale(mat_identity(ctx, 2), two_k), mat)
            mats.append(tuple(zip(*mat)))  # transpose
        trace = _trace_vector(mats[0], mats[1], ctx)
    for cand in irreducible_catalog(rep.m, rep.k):
        if cand.trace_vector() == trace:
            return cand
    raise NoMatch(f"dual of {rep.label} matches no catalog member")

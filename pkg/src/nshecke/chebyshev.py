"""Chebyshev polynomials, univariate and multivariate, and the scalar
constants built from them.

T_k expresses cos(k theta) in x = cos theta; T1_k expresses sin(k theta)
and equals sqrt(1 - x^2) U_{k-1}, written here with an explicit variable
y standing for sin theta.  The multivariate T_k / T1_k over a signed
composition k express cos / sin of k_1 theta_1 + ... + k_n theta_n.
Polynomials are kept reduced mod (x_j^2 + y_j^2 - 1), i.e. every stored
y-exponent is 0 or 1, which makes identity checks structural equality.

Evaluating at x_j = sqrt(w_j)/[2], y_j = t_j/[2] produces the constants
a_k (and their sin-flavoured companions a^1_k) whose squares are the
roots of the nonstandard braid relation; sigma_k = [2]^k a_k is the
denominator-free form.
"""

from .scalars import TowerScalar, u_integer, make_base_field

__all__ = [
    "ChebPoly", "cheb_T", "cheb_T1", "cheb_multi",
    "constant_a", "sigma_constant", "verify_addition_identity",
    "CompositionTooLongError",
]


class CompositionTooLongError(ValueError):
    """The composition weight exceeds the level k."""


class ChebPoly:
    """An integer polynomial in x_1..x_n, y_1..y_n, reduced so that
    every y-exponent is 0 or 1 (y_j^2 is rewritten as 1 - x_j^2).

    Monomial keys are tuples of per-variable exponent pairs
    ((ex_1, ey_1), ..., (ex_n, ey_n)).
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None, reduce=False):
        self.n = n
        if coeffs is None:
            coeffs = {}
        if reduce:
            coeffs = _reduce_map(n, coeffs)
        self.coeffs = {k: c for k, c in coeffs.items() if c != 0}

    @staticmethod
    def constant(n, c):
        if c == 0:
            return ChebPoly(n, {})
        return ChebPoly(n, {((0, 0),) * n: c})

    @staticmethod
    def variable(n, j, which):
        """x_j (which='x') or y_j (which='y'), 1-indexed."""
        key = [(0, 0)] * n
        key[j - 1] = (1, 0) if which == "x" else (0, 1)
        return ChebPoly(n, {tuple(key): 1})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = ChebPoly.constant(self.n, other)
        if not isinstance(other, ChebPoly):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = ChebPoly.constant(self.n, other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return ChebPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return ChebPoly(self.n, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = ChebPoly.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ChebPoly(self.n, {k: c * other for k, c in self.coeffs.items()})
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                key = tuple((a[0] + b[0], a[1] + b[1]) for a, b in zip(k1, k2))
                out[key] = out.get(key, 0) + c1 * c2
        return ChebPoly(self.n, out, reduce=True)

    __rmul__ = __mul__

    def embed(self, n, j):
        """View a univariate polynomial as living in variable j of n."""
        assert self.n == 1
        out = {}
        for (pair,), c in self.coeffs.items():
            key = [(0, 0)] * n
            key[j - 1] = pair
            out[tuple(key)] = c
        return ChebPoly(n, out)

    def total_degree(self):
        return max((sum(ex + ey for ex, ey in k) for k in self.coeffs),
                   default=0)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for key in sorted(self.coeffs):
            c = self.coeffs[key]
            mono = "".join(
                (f"x{j}^{ex}" if ex > 1 else f"x{j}" if ex else "")
                + (f"y{j}" if ey else "")
                for j, (ex, ey) in enumerate(key, start=1))
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts).replace("+ -", "- ")


def _reduce_map(n, coeffs):
    """Rewrite y_j^2 -> 1 - x_j^2 until all y-exponents are 0 or 1."""
    work = list(coeffs.items())
    out = {}
    while work:
        key, c = work.pop()
        if c == 0:
            continue
        for j, (ex, ey) in enumerate(key):
            if ey >= 2:
                low = list(key)
                low[j] = (ex, ey - 2)
                high = list(key)
                high[j] = (ex + 2, ey - 2)
                work.append((tuple(low), c))
                work.append((tuple(high), -c))
                break
        else:
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


_T_CACHE = {}
_T1_CACHE = {}


def cheb_T(k):
    """T_k(x), the polynomial expressing cos(k theta); T_{-k} = T_k."""
    k = abs(k)
    if k not in _T_CACHE:
        _fill_univariate(k)
    return _T_CACHE[k]


def cheb_T1(k):
    """T1_k(x, y), the polynomial expressing sin(k theta);
    T1_{-k} = -T1_k."""
    neg = k < 0
    k = abs(k)
    if k not in _T1_CACHE:
        _fill_univariate(k)
    p = _T1_CACHE[k]
    return -p if neg else p


def _fill_univariate(k):
    x = ChebPoly.variable(1, 1, "x")
    y = ChebPoly.variable(1, 1, "y")
    if not _T_CACHE:
        _T_CACHE[0] = ChebPoly.constant(1, 1)
        _T_CACHE[1] = x
        _T1_CACHE[0] = ChebPoly(1)
        _T1_CACHE[1] = y
    top = max(_T_CACHE)
    two_x = x * 2
    for i in range(top + 1, k + 1):
        _T_CACHE[i] = two_x * _T_CACHE[i - 1] - _T_CACHE[i - 2]
        _T1_CACHE[i] = two_x * _T1_CACHE[i - 1] - _T1_CACHE[i - 2]


def cheb_multi(kvec, kind="T"):
    """The multivariate Chebyshev polynomial for a signed composition.

    T_k = sum over k-supported sign patterns alpha with |alpha| even of
    prod_j T^(alpha_j)_{k_j}(x_j, y_j), where T^0 = T and T^1 = T1;
    the T1 flavour takes |alpha| odd.  k-supported means alpha_j = 0
    wherever k_j = 0.  Sign convention: every T1 factor beyond the
    first flips sign so that the expansion matches the cosine/sine
    addition formulas; concretely the alpha term carries the
    coefficient (-1)^floor(|alpha|/2) for kind T and
    (-1)^floor((|alpha|-1)/2) for kind T1.
    """
    n = len(kvec)
    support = [j for j in range(n) if kvec[j] != 0]
    want_odd = (kind == "T1")
    total = ChebPoly(n)
    for mask in range(1 << len(support)):
        bits = bin(mask).count("1")
        if (bits % 2 == 1) != want_odd:
            continue
        term = ChebPoly.constant(n, 1)
        for pos, j in enumerate(support):
            flavor = (mask >> pos) & 1
            uni = cheb_T1(kvec[j]) if flavor else cheb_T(kvec[j])
            term = term * uni.embed(n, j + 1)
        # cos(A+B) = cA cB - sA sB ; sin(A+B) = sA cB + cA sB, and the
        # general expansion alternates signs in pairs of sine factors
        sign = (-1) ** (bits // 2) if not want_odd else (-1) ** ((bits - 1) // 2)
        total = total + term * sign
    return total


def verify_addition_identity(kl, kr):
    """Check both sign cases of the addition lemma
    T_{kl -+ kr} = T_kl T_kr +- T1_kl T1_kr as reduced polynomial
    identities.  Returns (ok, witness)."""
    assert len(kl) == len(kr)
    t_l, t_r = cheb_multi(kl, "T"), cheb_multi(kr, "T")
    s_l, s_r = cheb_multi(kl, "T1"), cheb_multi(kr, "T1")
    diff_vec = tuple(a - b for a, b in zip(kl, kr))
    sum_vec = tuple(a + b for a, b in zip(kl, kr))
    lhs_minus = cheb_multi(diff_vec, "T")
    lhs_plus = cheb_multi(sum_vec, "T")
    ok_minus = lhs_minus == t_l * t_r + s_l * s_r
    ok_plus = lhs_plus == t_l * t_r - s_l * s_r
    if ok_minus and ok_plus:
        return True, None
    return False, {
        "kl": kl, "kr": kr,
        "minus_ok": ok_minus, "plus_ok": ok_plus,
    }


_CONST_CACHE = {}


def constant_a(kvec, m, k, kind="plain"):
    """The constant a_k (kind='plain') or a^1_k (kind='sup1') for the
    dihedral parameter m at level k, as a TowerScalar.

    Evaluates the multivariate Chebyshev polynomial at
    x_j = sqrt(w_j)/[2], y_j = t_j/[2].  Raises CompositionTooLongError
    when the weight exceeds k.
    """
    return sigma_constant(kvec, m, k, kind) * _two_pow_inv(m, k)


def sigma_constant(kvec, m, k, kind="plain"):
    """sigma_k = [2]^k a_k (resp. [2]^k a^1_k), which is
    denominator-free: it lies in A* = A[sqrt(w_j), t_j]."""
    kvec = tuple(kvec)
    weight = sum(abs(v) for v in kvec)
    if weight > k:
        raise CompositionTooLongError(f"|{kvec}| = {weight} > level {k}")
    key = (kvec, m, k, kind)
    if key in _CONST_CACHE:
        return _CONST_CACHE[key]
    ctx = make_base_field(m)
    assert len(kvec) == ctx.n, f"composition length {len(kvec)} != n = {ctx.n}"
    poly = cheb_multi(kvec, "T" if kind == "plain" else "T1")
    two = u_integer(2)
    total = TowerScalar.zero(ctx)
    for mono, c in poly.coeffs.items():
        deg = sum(ex + ey for ex, ey in mono)
        assert deg <= k
        term = TowerScalar.from_laurent(ctx, two ** (k - deg) * c)
        for j, (ex, ey) in enumerate(mono, start=1):
            # sqrt(w_j)^ex = w_j^(ex//2) * sqrt(w_j)^(ex%2)
            cy = ctx.w[j] if ex >= 2 else None
            for _ in range(ex // 2):
                term = term * TowerScalar.from_cyclo(cy)
            if ex % 2:
                term = term * TowerScalar.from_cyclo(ctx.sqrt_w[j])
            assert ey <= 1
            if ey:
                term = term * TowerScalar.generator(ctx, j)
        total = total + term
    _CONST_CACHE[key] = total
    return total


def _two_pow_inv(m, k):
    ctx = make_base_field(m)
    key = ("inv2", k)
    if key not in ctx._ratfun_cache:
        ctx._ratfun_cache[key] = (TowerScalar.u_int(ctx, 2) ** k).invert()
    return ctx._ratfun_cache[key]

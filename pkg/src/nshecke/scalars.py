"""Exact scalar arithmetic for the dihedral tower field.

Everything downstream (Hecke elements, tensor expansions, Gram matrices)
carries coefficients in the field

    K = Q(zeta_{4m})(u)[t_1, ..., t_n] / (t_j^2 - (f - w_j))

where [2] = u + u^-1, f = [2]^2, w_j = 2 + zeta^j + zeta^-j for zeta a
primitive m-th root of unity, and n is the number of two-dimensional
reflection representations of the dihedral group of order 2m:
n = (m-1)/2 for odd m and (m-2)/2 for even m.

The layers, from the bottom up:

  LaurentInt   -- Z[u, u^-1], sparse exponent -> integer map.
  CycloNum     -- Q(zeta_{4m}), a residue mod the cyclotomic polynomial
                  Phi_{4m}; coefficients are exact rationals (gmpy2.mpq).
  RatFun       -- rational functions in u over Q(zeta_{4m}); stored
                  reduced with a monic denominator and no negative
                  u-exponents.
  TowerScalar  -- the multi-quadratic layer; a map from subsets of
                  {1..n} (squarefree monomials in the t_j) to RatFun.

The base field is Q(zeta_{4m}) rather than Q(zeta_m) because it contains
cos(j pi/m), sin(j pi/m) and i all at once, so both sqrt(w_j) and the
u=1 image of t_j are honest field elements.  The generator t_j is formal
(f - w_j is not a square in Q(zeta_{4m})(u)); its sign is pinned by the
convention that specializing u -> 1 sends t_j to 2 sin(j pi/m) > 0.

All values are immutable after construction.
"""

from gmpy2 import mpq

__all__ = [
    "LaurentInt", "CycloNum", "RatFun", "TowerScalar", "FieldContext",
    "u_integer", "make_base_field",
    "NonInvertibleError", "PoleAtOneError", "MixedContextError",
]


class NonInvertibleError(ArithmeticError):
    """A norm in the quadratic tower vanished; the tower is degenerate."""


class PoleAtOneError(ArithmeticError):
    """A denominator vanishes at u = 1; the specialization is undefined."""


class MixedContextError(ValueError):
    """Operands built over different m cannot be combined."""


# ---------------------------------------------------------------------------
# Laurent polynomials over Z
# ---------------------------------------------------------------------------

class LaurentInt:
    """A Laurent polynomial in u with integer coefficients.

    Stored as a sparse map from exponent to coefficient; zero
    coefficients are never stored, so equality is map equality.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        self.coeffs = {e: c for e, c in coeffs.items() if c != 0}

    @staticmethod
    def from_int(c):
        return LaurentInt({0: c} if c else {})

    @staticmethod
    def monomial(e, c=1):
        return LaurentInt({e: c})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentInt.from_int(other)
        if not isinstance(other, LaurentInt):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentInt.from_int(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentInt(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentInt.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentInt({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentInt(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        assert n >= 0
        result = LaurentInt.from_int(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def at_one(self):
        """Evaluate at u = 1 (an integer)."""
        return sum(self.coeffs.values())

    def min_exp(self):
        return min(self.coeffs) if self.coeffs else 0

    def max_exp(self):
        return max(self.coeffs) if self.coeffs else 0

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*u" if c != 1 else "u")
            else:
                parts.append(f"{c}*u^{e}" if c != 1 else f"u^{e}")
        return " + ".join(parts).replace("+ -", "- ")


def u_integer(k):
    """The u-integer [k] = (u^k - u^-k)/(u - u^-1) as a LaurentInt.

    [2] = u + u^-1; [1] = 1; [0] = 0.  Requires k >= 0.
    """
    assert k >= 0
    return LaurentInt({e: 1 for e in range(-(k - 1), k, 2)})


# ---------------------------------------------------------------------------
# cyclotomic polynomials (integer coefficient lists, low degree first)
# ---------------------------------------------------------------------------

_CYCLO_CACHE = {}


def _poly_divide_exact(num, den):
    """Exact division of integer coefficient lists; remainder must be 0."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        q, r = divmod(num[i], den[dd])
        assert r == 0
        out[i - dd] = q
        for j in range(dd + 1):
            num[i - dd + j] -= q * den[j]
    assert all(c == 0 for c in num)
    return out


def cyclotomic_poly(n):
    """Coefficient list of Phi_n, computed by dividing x^n - 1 by the
    product of all lower cyclotomic polynomials Phi_d, d | n, d < n."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            phi_d = cyclotomic_poly(d)
            new = [0] * (len(den) + len(phi_d) - 1)
            for i, a in enumerate(den):
                if a:
                    for j, b in enumerate(phi_d):
                        new[i + j] += a * b
            den = new
    result = _poly_divide_exact(num, den)
    _CYCLO_CACHE[n] = result
    return result


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------

_FIELD_CACHE = {}

_ZERO = mpq(0)
_ONE = mpq(1)


class FieldContext:
    """Shared immutable data for all arithmetic at a fixed m.

    Carries Phi_{4m}, reduction rows for powers x^d .. x^{2d-2}, the
    precomputed powers of zeta_{4m}, and the distinguished elements
    w_j, sqrt(w_j), cos(j pi/m), sin(j pi/m), i.
    """

    def __init__(self, m):
        self.m = m
        self.order = 4 * m
        phi = cyclotomic_poly(self.order)
        self.degree = len(phi) - 1
        d = self.degree
        self.phi = phi
        # reduction rows: x^(d+i) mod Phi for i = 0 .. d-2
        rows = []
        # x^d = -(phi[0] + phi[1] x + ... + phi[d-1] x^{d-1})
        cur = [mpq(-c) for c in phi[:d]]
        rows.append(tuple(cur))
        for _ in range(d - 2):
            top = cur[d - 1]
            cur = [_ZERO] + cur[: d - 1]
            if top != 0:
                cur = [cur[i] + top * rows[0][i] for i in range(d)]
            rows.append(tuple(cur))
        self.reduction_rows = rows
        # powers of zeta (exponent 0 .. 4m-1) as coefficient tuples
        powers = []
        vec = [_ZERO] * d
        vec[0] = _ONE
        for _ in range(self.order):
            powers.append(tuple(vec))
            # multiply by x
            top = vec[d - 1]
            vec = [_ZERO] + vec[: d - 1]
            if top != 0:
                vec = [vec[i] + top * rows[0][i] for i in range(d)]
        self.zeta_powers = powers
        self.n = (m - 1) // 2 if m % 2 else (m - 2) // 2
        self._populate_constants()
        self._ratfun_cache = {}

    def _populate_constants(self):
        m = self.m
        self.cyclo_zero = CycloNum(self, tuple([_ZERO] * self.degree))
        one = [_ZERO] * self.degree
        one[0] = _ONE
        self.cyclo_one = CycloNum(self, tuple(one))
        self.i_unit = self.zeta(m)              # zeta_{4m}^m = i
        self.w = {}
        self.sqrt_w = {}
        self.cos = {}
        self.sin = {}
        self.sin2 = {}                           # 2 sin(j pi / m)
        half = mpq(1, 2)
        for j in range(1, self.n + 1):
            # w_j = 2 + zeta_m^j + zeta_m^-j, using zeta_m = zeta_{4m}^4
            self.w[j] = (self.cyclo_one * 2) + self.zeta(4 * j) + self.zeta(-4 * j)
            # sqrt(w_j) = zeta_{4m}^{2j} + zeta_{4m}^{-2j} = 2 cos(j pi/m)
            self.sqrt_w[j] = self.zeta(2 * j) + self.zeta(-2 * j)
            assert self.sqrt_w[j] * self.sqrt_w[j] == self.w[j]
            # 2 sin(j pi/m) = (zeta^{2j} - zeta^{-2j}) * (-i)
            self.sin2[j] = (self.zeta(2 * j) - self.zeta(-2 * j)) * self.zeta(3 * m)
            self.cos[j] = self.sqrt_w[j].scale(half)
            self.sin[j] = self.sin2[j].scale(half)

    def zeta(self, e):
        """zeta_{4m}^e as a CycloNum."""
        return CycloNum(self, self.zeta_powers[e % self.order])

    def cyclo_from_rational(self, q):
        vec = [_ZERO] * self.degree
        vec[0] = mpq(q)
        return CycloNum(self, tuple(vec))

    # exact trigonometric values of multiples of pi/m
    def cos_multiple(self, a):
        """cos(a pi / m) as a CycloNum (any integer a)."""
        return (self.zeta(2 * a) + self.zeta(-2 * a)).scale(mpq(1, 2))

    def sin_multiple(self, a):
        """sin(a pi / m) as a CycloNum (any integer a)."""
        return ((self.zeta(2 * a) - self.zeta(-2 * a)) * self.zeta(3 * self.m)).scale(mpq(1, 2))

    def __repr__(self):
        return f"FieldContext(m={self.m}, n={self.n}, deg Phi_{self.order} = {self.degree})"


def make_base_field(m):
    """Field context for the dihedral group of order 2m (cached)."""
    assert m >= 3
    if m not in _FIELD_CACHE:
        _FIELD_CACHE[m] = FieldContext(m)
    return _FIELD_CACHE[m]


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------

class CycloNum:
    """An element of Q(zeta_{4m}): a residue mod Phi_{4m}.

    Coefficients are a dense tuple of exact rationals of length
    deg Phi_{4m}.  Rational elements (only the constant coefficient
    nonzero) get fast-path arithmetic since they dominate in practice.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self):
        assert self.is_rational()
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            vec = list(self.coeffs)
            vec[0] += other
            return CycloNum(self.ctx, tuple(vec))
        return CycloNum(self.ctx,
                        tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.ctx, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            vec = list(self.coeffs)
            vec[0] -= other
            return CycloNum(self.ctx, tuple(vec))
        return CycloNum(self.ctx,
                        tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, q):
        if q == 0:
            return self.ctx.cyclo_zero
        return CycloNum(self.ctx, tuple(a * q for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(mpq(other))
        if other.is_rational():
            return self.scale(other.coeffs[0])
        if self.is_rational():
            return other.scale(self.coeffs[0])
        d = self.ctx.degree
        acc = [_ZERO] * (2 * d - 1)
        oc = other.coeffs
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(oc):
                if b != 0:
                    acc[i + j] += a * b
        rows = self.ctx.reduction_rows
        out = list(acc[:d])
        for i in range(d, 2 * d - 1):
            c = acc[i]
            if c != 0:
                row = rows[i - d]
                for t in range(d):
                    if row[t] != 0:
                        out[t] += c * row[t]
        return CycloNum(self.ctx, tuple(out))

    __rmul__ = __mul__

    def invert(self):
        """Multiplicative inverse via the extended Euclidean algorithm
        on the coefficient polynomial and Phi_{4m}."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            return self.ctx.cyclo_from_rational(1 / self.coeffs[0])
        # polynomials as coefficient lists of mpq
        a = [mpq(c) for c in self.ctx.phi]
        b = list(self.coeffs)
        while b and b[-1] == 0:
            b.pop()
        # invariants: s*self + t*phi = a  (we only track the self-cofactor)
        s_a, s_b = [], [_ONE]          # cofactors of `a` and `b` w.r.t. self
        while True:
            # a = q*b + r
            r = list(a)
            q_times_sb = [_ZERO] * max(0, len(a) - len(b) + 1)
            while len(r) >= len(b):
                k = len(r) - len(b)
                q = r[-1] / b[-1]
                q_times_sb[k] = q
                for i in range(len(b)):
                    r[k + i] -= q * b[i]
                while r and r[-1] == 0:
                    r.pop()
            # s_r = s_a - q * s_b
            s_r = list(s_a) + [_ZERO] * max(0, len(q_times_sb) + len(s_b) - 1 - len(s_a))
            for i, qc in enumerate(q_times_sb):
                if qc != 0:
                    for j, sc in enumerate(s_b):
                        if sc != 0:
                            s_r[i + j] -= qc * sc
            while s_r and s_r[-1] == 0:
                s_r.pop()
            if not r:
                # b is the gcd; must be a nonzero constant
                assert len(b) == 1
                inv = 1 / b[0]
                vec = [c * inv for c in s_b] + [_ZERO] * (self.ctx.degree - len(s_b))
                return CycloNum(self.ctx, tuple(vec[: self.ctx.degree]))
            a, b = b, r
            s_a, s_b = s_b, s_r

    def __repr__(self):
        return f"CycloNum({list(self.coeffs)})"


# ---------------------------------------------------------------------------
# polynomial helpers over CycloNum (dicts: exponent -> CycloNum, exps >= 0)
# ---------------------------------------------------------------------------

def _pzero():
    return {}


def _pis_zero(p):
    return not p


def _padd(p, q):
    out = dict(p)
    for e, c in q.items():
        v = out.get(e)
        v = c if v is None else v + c
        if v.is_zero():
            out.pop(e, None)
        else:
            out[e] = v
    return out


def _pneg(p):
    return {e: -c for e, c in p.items()}


def _pmul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            v = c1 * c2
            if e in out:
                v = out[e] + v
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
    return out


def _pscale(p, c):
    if c.is_zero():
        return {}
    return {e: cc * c for e, cc in p.items()}


def _pdeg(p):
    return max(p) if p else -1


def _plead(p):
    return p[max(p)]


def _pdivmod(p, q):
    """Polynomial division over the cyclotomic field."""
    assert q
    dq = _pdeg(q)
    inv_lead = _plead(q).invert()
    rem = dict(p)
    quo = {}
    while rem and _pdeg(rem) >= dq:
        dr = _pdeg(rem)
        c = rem[dr] * inv_lead
        quo[dr - dq] = c
        for e, qc in q.items():
            v = rem.get(dr - dq + e)
            t = qc * c
            v = -t if v is None else v - t
            if v.is_zero():
                rem.pop(dr - dq + e, None)
            else:
                rem[dr - dq + e] = v
    return quo, rem


def _pgcd(p, q):
    """Monic gcd over the cyclotomic field."""
    a, b = dict(p), dict(q)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if a:
        inv = _plead(a).invert()
        a = _pscale(a, inv)
    return a


def _peval1(p, ctx):
    """Evaluate at u = 1."""
    total = ctx.cyclo_zero
    for c in p.values():
        total = total + c
    return total


# ---------------------------------------------------------------------------
# rational functions in u over the cyclotomic field
# ---------------------------------------------------------------------------

class RatFun:
    """A rational function in u with CycloNum coefficients.

    Canonical form: numerator and denominator are true polynomials (no
    negative exponents), the denominator is monic and coprime to the
    numerator, and u itself divides at most one of the two.  Negative
    u-exponents entering through Laurent data are cleared into the
    denominator, so e.g. [2] = u + u^-1 is stored as (u^2 + 1)/u.
    """

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den, reduce=True):
        self.ctx = ctx
        if reduce:
            num, den = self._reduce(ctx, num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _reduce(ctx, num, den):
        num = {e: c for e, c in num.items() if not c.is_zero()}
        den = {e: c for e, c in den.items() if not c.is_zero()}
        assert den, "zero denominator"
        if not num:
            return {}, {0: ctx.cyclo_one}
        # cancel common powers of u
        vn = min(num)
        vd = min(den)
        v = min(vn, vd)
        if v:
            num = {e - v: c for e, c in num.items()}
            den = {e - v: c for e, c in den.items()}
            vn -= v
            vd -= v
        if len(den) == 1:
            # monomial denominator: just normalize the leading unit
            (e, c), = den.items()
            if not (c == 1):
                inv = c.invert()
                num = _pscale(num, inv)
                den = {e: ctx.cyclo_one}
            # strip matched u powers (vn or e is 0 already)
            if e and vn:
                s = min(e, vn)
                num = {ee - s: cc for ee, cc in num.items()}
                e -= s
                den = {e: ctx.cyclo_one}
            return num, den
        g = _pgcd(num, den)
        if _pdeg(g) > 0:
            num, _ = _pdivmod(num, g)
            den, _ = _pdivmod(den, g)
        lead = _plead(den)
        if not (lead == 1):
            inv = lead.invert()
            num = _pscale(num, inv)
            den = _pscale(den, inv)
        return num, den

    # --- constructors -----------------------------------------------------

    @staticmethod
    def zero(ctx):
        return RatFun(ctx, {}, {0: ctx.cyclo_one}, reduce=False)

    @staticmethod
    def one(ctx):
        return RatFun(ctx, {0: ctx.cyclo_one}, {0: ctx.cyclo_one}, reduce=False)

    @staticmethod
    def from_cyclo(c):
        ctx = c.ctx
        if c.is_zero():
            return RatFun.zero(ctx)
        return RatFun(ctx, {0: c}, {0: ctx.cyclo_one}, reduce=False)

    @staticmethod
    def from_laurent(ctx, lp):
        """Embed a LaurentInt, clearing negative exponents into u^s."""
        if lp.is_zero():
            return RatFun.zero(ctx)
        shift = max(0, -lp.min_exp())
        num = {e + shift: ctx.cyclo_from_rational(c) for e, c in lp.coeffs.items()}
        den = {shift: ctx.cyclo_one}
        return RatFun(ctx, num, den, reduce=(shift > 0))

    # --- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == {0: self.ctx.cyclo_one} and self.den == {0: self.ctx.cyclo_one}

    def den_is_monomial(self):
        return len(self.den) == 1

    def is_laurent(self):
        """True when the value lies in Q(zeta)[u, u^-1]."""
        return self.den_is_monomial()

    def as_laurent_int(self):
        """Recover a LaurentInt; requires a u-power denominator and
        rational integer coefficients, else raises ValueError."""
        if not self.den_is_monomial():
            raise ValueError("denominator is not a power of u")
        shift = next(iter(self.den))
        out = {}
        for e, c in self.num.items():
            if not c.is_rational():
                raise ValueError("coefficient not rational")
            q = c.as_rational()
            if q.denominator != 1:
                raise ValueError("coefficient not an integer")
            out[e - shift] = int(q)
        return LaurentInt(out)

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.is_zero()
            return self.num == {0: self.ctx.cyclo_from_rational(other)} \
                and self.den == {0: self.ctx.cyclo_one}
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFun(self.ctx, _padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        den = _pmul(self.den, other.den)
        return RatFun(self.ctx, num, den)

    def __neg__(self):
        return RatFun(self.ctx, _pneg(self.num), self.den, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return RatFun.zero(self.ctx)
        return RatFun(self.ctx, _pmul(self.num, other.num),
                      _pmul(self.den, other.den))

    def invert(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun(self.ctx, dict(self.den), dict(self.num))

    def scale_cyclo(self, c):
        if c.is_zero():
            return RatFun.zero(self.ctx)
        return RatFun(self.ctx, _pscale(self.num, c), self.den,
                      reduce=not c.is_rational())

    def at_one(self):
        """Evaluate at u = 1; raises PoleAtOneError on a vanishing
        denominator."""
        dv = _peval1(self.den, self.ctx)
        if dv.is_zero():
            raise PoleAtOneError("denominator vanishes at u = 1")
        return _peval1(self.num, self.ctx) * dv.invert()

    def __repr__(self):
        return f"RatFun(num={self.num}, den={self.den})"


# ---------------------------------------------------------------------------
# the quadratic tower
# ---------------------------------------------------------------------------

class TowerScalar:
    """An element of K = Q(zeta_{4m})(u)[t_1..t_n]/(t_j^2 - (f - w_j)).

    Stored as a map from frozen subsets S of {1..n} to RatFun; the
    subset encodes the squarefree monomial prod_{j in S} t_j.  Products
    of repeated generators reduce through t_j^2 = f - w_j, so no subset
    ever carries a squared generator.
    """

    __slots__ = ("ctx", "comps")

    _EMPTY = frozenset()

    def __init__(self, ctx, comps, prune=True):
        self.ctx = ctx
        if prune:
            comps = {s: r for s, r in comps.items() if not r.is_zero()}
        self.comps = comps

    # --- constructors -------------------------------------------------------

    @staticmethod
    def zero(ctx):
        return TowerScalar(ctx, {}, prune=False)

    @staticmethod
    def one(ctx):
        return TowerScalar(ctx, {TowerScalar._EMPTY: RatFun.one(ctx)}, prune=False)

    @staticmethod
    def from_ratfun(r):
        if r.is_zero():
            return TowerScalar.zero(r.ctx)
        return TowerScalar(r.ctx, {TowerScalar._EMPTY: r}, prune=False)

    @staticmethod
    def from_laurent(ctx, lp):
        return TowerScalar.from_ratfun(RatFun.from_laurent(ctx, lp))

    @staticmethod
    def from_int(ctx, c):
        return TowerScalar.from_laurent(ctx, LaurentInt.from_int(c))

    @staticmethod
    def from_cyclo(c):
        return TowerScalar.from_ratfun(RatFun.from_cyclo(c))

    @staticmethod
    def generator(ctx, j):
        """The tower generator t_j = sqrt(f - w_j)."""
        assert 1 <= j <= ctx.n
        return TowerScalar(ctx, {frozenset((j,)): RatFun.one(ctx)}, prune=False)

    @staticmethod
    def u_int(ctx, k):
        """The u-integer [k] as a TowerScalar."""
        return TowerScalar.from_laurent(ctx, u_integer(k))

    # --- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        if isinstance(other, int):
            other = TowerScalar.from_int(self.ctx, other)
        if not isinstance(other, TowerScalar):
            return NotImplemented
        return self.comps == other.comps

    def __hash__(self):
        return hash(frozenset(self.comps.items()))

    # --- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.ctx is not other.ctx:
            raise MixedContextError(
                f"cannot combine scalars over m={self.ctx.m} and m={other.ctx.m}")

    def __add__(self, other):
        if isinstance(other, int):
            other = TowerScalar.from_int(self.ctx, other)
        self._check(other)
        out = dict(self.comps)
        for s, r in other.comps.items():
            v = out.get(s)
            v = r if v is None else v + r
            if v.is_zero():
                out.pop(s, None)
            else:
                out[s] = v
        return TowerScalar(self.ctx, out, prune=False)

    __radd__ = __add__

    def __neg__(self):
        return TowerScalar(self.ctx, {s: -r for s, r in self.comps.items()},
                           prune=False)

    def __sub__(self, other):
        if isinstance(other, int):
            other = TowerScalar.from_int(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _f_minus_w(self, j):
        """f - w_j as a RatFun (cached on the context)."""
        key = ("f-w", j)
        cache = self.ctx._ratfun_cache
        if key not in cache:
            f = RatFun.from_laurent(self.ctx, u_integer(2) * u_integer(2))
            wj = RatFun.from_cyclo(self.ctx.w[j])
            cache[key] = f - wj
        return cache[key]

    def __mul__(self, other):
        if isinstance(other, int):
            other = TowerScalar.from_int(self.ctx, other)
        if isinstance(other, LaurentInt):
            return self.scale_laurent(other)
        self._check(other)
        out = {}
        for s1, r1 in self.comps.items():
            for s2, r2 in other.comps.items():
                r = r1 * r2
                for j in s1 & s2:
                    r = r * self._f_minus_w(j)
                s = s1 ^ s2
                v = out.get(s)
                v = r if v is None else v + r
                if v.is_zero():
                    out.pop(s, None)
                else:
                    out[s] = v
        return TowerScalar(self.ctx, out, prune=False)

    __rmul__ = __mul__

    def scale_laurent(self, lp):
        """Fast multiplication by a LaurentInt."""
        if lp.is_zero() or self.is_zero():
            return TowerScalar.zero(self.ctx)
        r = RatFun.from_laurent(self.ctx, lp)
        return TowerScalar(self.ctx,
                           {s: v * r for s, v in self.comps.items()})

    def __pow__(self, n):
        assert n >= 0
        result = TowerScalar.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def invert(self):
        """Inverse in K, peeling one quadratic generator at a time:
        (a + b t_j)^-1 = (a - b t_j) / (a^2 - b^2 (f - w_j))."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero tower scalar")
        gens = sorted({j for s in self.comps for j in s})
        if not gens:
            r = self.comps[self._EMPTY]
            return TowerScalar.from_ratfun(r.invert())
        j = gens[-1]
        a_comps, b_comps = {}, {}
        for s, r in self.comps.items():
            if j in s:
                b_comps[s - {j}] = r
            else:
                a_comps[s] = r
        a = TowerScalar(self.ctx, a_comps, prune=False)
        b = TowerScalar(self.ctx, b_comps, prune=False)
        fw = TowerScalar.from_ratfun(self._f_minus_w(j))
        norm = a * a - b * b * fw
        if norm.is_zero():
            raise NonInvertibleError(
                f"norm at t_{j} vanished: f - w_{j} is a square in the lower field")
        tj = TowerScalar.generator(self.ctx, j)
        return (a - b * tj) * norm.invert()

    def __truediv__(self, other):
        if isinstance(other, int):
            other = TowerScalar.from_int(self.ctx, other)
        return self * other.invert()

    # --- views / maps --------------------------------------------------------

    def try_laurent(self):
        """Return the value as a LaurentInt if it lies in Z[u, u^-1],
        else None.  Cheap; used as a fast-lane test by tensor
        expansions."""
        if not self.comps:
            return LaurentInt({})
        if len(self.comps) != 1:
            return None
        r = self.comps.get(self._EMPTY)
        if r is None or len(r.den) != 1:
            return None
        shift = next(iter(r.den))
        out = {}
        for e, c in r.num.items():
            if not c.is_rational():
                return None
            q = c.as_rational()
            if q.denominator != 1:
                return None
            out[e - shift] = int(q)
        return LaurentInt(out)

    def is_base(self):
        """True when the value has no tower components (lies in
        Q(zeta)(u))."""
        return all(s == self._EMPTY for s in self.comps)

    def as_ratfun(self):
        assert self.is_base()
        return self.comps.get(self._EMPTY, RatFun.zero(self.ctx))

    def as_laurent_int(self):
        """Recover a LaurentInt in Z[u,u^-1]; raises ValueError if the
        value has tower components, cyclotomic irrationalities, or a
        non-monomial denominator."""
        if not self.is_base():
            raise ValueError("value has tower components")
        return self.as_ratfun().as_laurent_int()

    def specialize_u1(self):
        """The specialization u -> 1, t_j -> 2 sin(j pi/m) as an exact
        CycloNum; raises PoleAtOneError on denominators vanishing at 1."""
        total = self.ctx.cyclo_zero
        for s, r in self.comps.items():
            v = r.at_one()
            for j in s:
                v = v * self.ctx.sin2[j]
            total = total + v
        return total

    def __repr__(self):
        if self.is_zero():
            return "TowerScalar(0)"
        parts = []
        for s in sorted(self.comps, key=sorted):
            mono = "*".join(f"t{j}" for j in sorted(s)) or "1"
            parts.append(f"({self.comps[s]!r})*{mono}")
        return " + ".join(parts)

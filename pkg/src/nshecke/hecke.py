"""The dihedral group of order 2m and its Hecke algebra in the T-basis.

Group elements are alternating words in the two generators, stored in
normal form as a pair (first, length): the word starts with generator
`first` and alternates for `length` letters.  The identity is (0, 0).
The two spellings of the longest element (length m) coincide; the
canonical spelling starts with s1.

The Hecke algebra H_W is the free module on these 2m words over the
coefficient field, with

    T_s T_w = T_{sw}                     if the length goes up,
    T_s T_w = (u - u^-1) T_w + T_{sw}    if it goes down,

which encodes the quadratic relation (T_s - u)(T_s + u^-1) = 0.  A full
2m x 2m multiplication table with Laurent-integer coefficients is
precomputed per m and shared; products of general elements are table
lookups plus coefficient arithmetic.

Distinguished elements (with the sign convention that makes
eps_+(C'_s) = [2] and theta(p_+) = p_-):

    C'_s = T_s + u^-1,  C_s = T_s - u,
    p_+  = C'_s/[2],    p_-  = -C_s/[2]    (orthogonal idempotents).

theta is the algebra automorphism T_s -> -T_s^{-1} = -T_s + (u - u^-1);
1op is the anti-automorphism T_w -> T_{w^-1}; thetaop = theta o 1op.
"""

from .scalars import (LaurentInt, TowerScalar, u_integer, make_base_field,
                      MixedContextError)

__all__ = [
    "HeckeContext", "get_hecke", "HeckeElem",
    "word_str", "IDENTITY_WORD",
]

IDENTITY_WORD = (0, 0)


def word_str(w):
    first, length = w
    if length == 0:
        return "e"
    gens = []
    g = first
    for _ in range(length):
        gens.append(f"s{g}")
        g = 3 - g
    return "".join(gens)


def word_from_str(s, m):
    if s == "e":
        return IDENTITY_WORD
    gens = [int(c) for c in s.replace("s", " ").split()]
    for a, b in zip(gens, gens[1:]):
        assert a != b, "not an alternating word"
    return _canon(gens[0], len(gens), m)


def _canon(first, length, m):
    if length == 0:
        return IDENTITY_WORD
    if length == m:
        return (1, m)
    return (first, length)


def word_inverse(w, m):
    first, length = w
    if length == 0:
        return w
    # the reversed word starts with the last letter
    last = first if length % 2 else 3 - first
    return _canon(last, length, m)


def word_gens(w):
    """The letters of (the canonical spelling of) w, left to right."""
    first, length = w
    g = first
    for _ in range(length):
        yield g
        g = 3 - g


class HeckeContext:
    """Per-m shared data: the word list, the T-basis multiplication
    table, and the theta images of basis words."""

    def __init__(self, m):
        self.m = m
        self.field = make_base_field(m)
        words = [IDENTITY_WORD]
        for length in range(1, m):
            words.append((1, length))
            words.append((2, length))
        words.append((1, m))
        self.words = words
        assert len(words) == 2 * m
        self._build_table()
        self._build_theta()

    # -- multiplication -----------------------------------------------------

    def _gen_times_word(self, s, w):
        """T_s * T_w as a list of (word, LaurentInt)."""
        m = self.m
        first, length = w
        if length == 0:
            return [((s, 1), _L_ONE)]
        goes_up = (length < m) and (s != first)
        if goes_up:
            return [(_canon(s, length + 1, m), _L_ONE)]
        # length drops: strip s from the front (for the longest element
        # pick the spelling starting with s)
        shorter = _canon(3 - s, length - 1, m)
        return [(w, _L_U_MINUS_UINV), (shorter, _L_ONE)]

    def _build_table(self):
        table = {}
        for v in self.words:
            gens = list(word_gens(v))
            for w in self.words:
                acc = {w: _L_ONE}
                for s in reversed(gens):
                    nxt = {}
                    for ww, c in acc.items():
                        for w2, c2 in self._gen_times_word(s, ww):
                            prev = nxt.get(w2)
                            val = c * c2 if prev is None else prev + c * c2
                            if val.is_zero():
                                nxt.pop(w2, None)
                            else:
                                nxt[w2] = val
                    acc = nxt
                table[(v, w)] = tuple(acc.items())
        self.table = table

    # -- theta ----------------------------------------------------------------

    def _build_theta(self):
        """theta(T_w) for every basis word, as word -> LaurentInt maps."""
        # theta(T_s) = -T_s + (u - u^-1)
        gen_img = {
            s: {(s, 1): -_L_ONE, IDENTITY_WORD: _L_U_MINUS_UINV}
            for s in (1, 2)
        }
        images = {IDENTITY_WORD: {IDENTITY_WORD: _L_ONE}}
        for w in self.words:
            if w == IDENTITY_WORD:
                continue
            acc = {IDENTITY_WORD: _L_ONE}
            for s in word_gens(w):
                nxt = {}
                for ww, c in acc.items():
                    for w2, c2 in gen_img[s].items():
                        for w3, c3 in self.table[(ww, w2)]:
                            prev = nxt.get(w3)
                            val = c * c2 * c3
                            val = val if prev is None else prev + val
                            if val.is_zero():
                                nxt.pop(w3, None)
                            else:
                                nxt[w3] = val
                acc = nxt
            images[w] = acc
        self.theta_images = images

    # -- element factories ------------------------------------------------------

    def elem(self, terms):
        return HeckeElem(self, terms)

    def zero(self):
        return HeckeElem(self, {})

    def one(self):
        return HeckeElem(self, {IDENTITY_WORD: TowerScalar.one(self.field)})

    def t_word(self, w):
        return HeckeElem(self, {w: TowerScalar.one(self.field)})

    def t_gen(self, s):
        return self.t_word((s, 1))

    def scalar(self, x):
        """Lift an int / LaurentInt / TowerScalar to a multiple of T_e."""
        if isinstance(x, int):
            x = TowerScalar.from_int(self.field, x)
        elif isinstance(x, LaurentInt):
            x = TowerScalar.from_laurent(self.field, x)
        return HeckeElem(self, {IDENTITY_WORD: x})


_L_ONE = LaurentInt({0: 1})
_L_U_MINUS_UINV = LaurentInt({1: 1, -1: -1})

_HECKE_CACHE = {}


def get_hecke(m):
    if m not in _HECKE_CACHE:
        _HECKE_CACHE[m] = HeckeContext(m)
    return _HECKE_CACHE[m]


class HeckeElem:
    """A sparse linear combination of T-basis words with TowerScalar
    coefficients."""

    __slots__ = ("hctx", "terms")

    def __init__(self, hctx, terms, prune=True):
        self.hctx = hctx
        if prune:
            terms = {w: c for w, c in terms.items() if not c.is_zero()}
        self.terms = terms

    def _check(self, other):
        if self.hctx is not other.hctx:
            raise MixedContextError(
                f"cannot combine elements over m={self.hctx.m} and m={other.hctx.m}")

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.hctx.scalar(other)
        if not isinstance(other, HeckeElem):
            return NotImplemented
        return self.hctx is other.hctx and self.terms == other.terms

    def __add__(self, other):
        if isinstance(other, int):
            other = self.hctx.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(w, None)
            else:
                out[w] = v
        return HeckeElem(self.hctx, out, prune=False)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElem(self.hctx, {w: -c for w, c in self.terms.items()},
                         prune=False)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.hctx.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, x):
        """Multiply by a scalar (int, LaurentInt or TowerScalar)."""
        if isinstance(x, int):
            x = TowerScalar.from_int(self.hctx.field, x)
        if isinstance(x, LaurentInt):
            return HeckeElem(self.hctx,
                             {w: c.scale_laurent(x) for w, c in self.terms.items()})
        return HeckeElem(self.hctx, {w: c * x for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, TowerScalar, LaurentInt)):
            return self.scale(other)
        self._check(other)
        table = self.hctx.table
        out = {}
        for v, cv in self.terms.items():
            for w, cw in other.terms.items():
                c = cv * cw
                if c.is_zero():
                    continue
                for w2, lc in table[(v, w)]:
                    add = c.scale_laurent(lc)
                    prev = out.get(w2)
                    val = add if prev is None else prev + add
                    if val.is_zero():
                        out.pop(w2, None)
                    else:
                        out[w2] = val
        return HeckeElem(self.hctx, out, prune=False)

    def __rmul__(self, other):
        if isinstance(other, (int, TowerScalar, LaurentInt)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        assert n >= 0
        result = self.hctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"({c!r})*T[{word_str(w)}]" for w, c in sorted(
            self.terms.items(), key=lambda t: (t[0][1], t[0][0]))]
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# distinguished elements and (anti-)automorphisms
# ---------------------------------------------------------------------------

def kl_elements(m, s):
    """(C'_s, C_s, p_+, p_-) for generator s in {1, 2}."""
    h = get_hecke(m)
    ts = h.t_gen(s)
    cprime = ts + h.scalar(LaurentInt.monomial(-1))
    c = ts - h.scalar(LaurentInt.monomial(1))
    inv2 = TowerScalar.u_int(h.field, 2).invert()
    p_plus = cprime.scale(inv2)
    p_minus = (-c).scale(inv2)
    return cprime, c, p_plus, p_minus


def apply_theta(x):
    """The automorphism theta: T_s -> -T_s^{-1} = -T_s + (u - u^-1)."""
    images = x.hctx.theta_images
    out = {}
    for w, c in x.terms.items():
        for w2, lc in images[w].items():
            add = c.scale_laurent(lc)
            prev = out.get(w2)
            val = add if prev is None else prev + add
            if val.is_zero():
                out.pop(w2, None)
            else:
                out[w2] = val
    return HeckeElem(x.hctx, out, prune=False)


def apply_op(x, which="1op"):
    """The anti-automorphisms: 1op reverses words (T_w -> T_{w^-1});
    thetaop = theta o 1op."""
    m = x.hctx.m
    rev = HeckeElem(x.hctx,
                    {word_inverse(w, m): c for w, c in x.terms.items()},
                    prune=False)
    if which == "1op":
        return rev
    if which == "thetaop":
        return apply_theta(rev)
    raise ValueError(f"unknown anti-automorphism {which!r}")


def eps_plus(x):
    """The trivial character: T_w -> u^len(w)."""
    total = TowerScalar.zero(x.hctx.field)
    for (first, length), c in x.terms.items():
        total = total + c.scale_laurent(LaurentInt.monomial(length))
    return total


def eps_minus(x):
    """The sign character: T_w -> (-u^-1)^len(w)."""
    total = TowerScalar.zero(x.hctx.field)
    for (first, length), c in x.terms.items():
        total = total + c.scale_laurent(
            LaurentInt.monomial(-length, (-1) ** length))
    return total


def eps_mixed(x, s_triv):
    """For even m: the character sending T_{s_triv} -> u and the other
    generator to -u^-1 (eps_1 for s_triv = 1, eps_2 for s_triv = 2)."""
    assert x.hctx.m % 2 == 0, "mixed characters exist only for even m"
    total = TowerScalar.zero(x.hctx.field)
    for w, c in x.terms.items():
        n_triv = sum(1 for g in word_gens(w) if g == s_triv)
        n_sign = w[1] - n_triv
        val = LaurentInt.monomial(n_triv - n_sign, (-1) ** n_sign)
        total = total + c.scale_laurent(val)
    return total

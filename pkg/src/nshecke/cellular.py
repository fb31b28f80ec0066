"""The cellular structure of the nonstandard algebra.

The poset has a unique maximum (the sign label), a unique minimum (the
trivial label), the strata indexed by signed composition classes in a
fixed total order in between, and, for even m, two mixed labels wedged
between the minimum and the strata.  The basis elements are built from
the generators by multiplying out products of (P_21 - sigma^2) factors,
one per stratum strictly above, exactly as in the banal one-variable
model: the trivial-label element coincides with the left-hand side of
the nonstandard braid relation.

Verification expands products back in the basis (exact linear algebra
over the coefficient field) and checks the Graham-Lehrer axioms, the
displayed triangular action coefficients, the bilinear-form product
formula, and the u = 1 specializations: the rank pattern, the
decomposition matrix by character expansion, and, for even m, the
module structure of the modified basis.
"""

from gmpy2 import mpq

from .scalars import (LaurentInt, PoleAtOneError, TowerScalar, u_integer,
                      make_base_field)
from .hecke import get_hecke
from .compositions import SignedCompClass, enumerate_classes, residue
from .chebyshev import sigma_constant
from .tensor import (TensorElem, build_generator, _LaurentElimination,
                     _cadd, _cmul, _cscale_lau, _demote)

__all__ = [
    "CellPoset", "CellBasis", "GramMatrix",
    "build_cellular_basis", "verify_cellularity", "gram_form",
    "u1_analysis", "poset_dot",
    "NonInvertibleSigma", "ResidueCoverageInsufficient",
]

EPS_MINUS = "eps-"
EPS_PLUS = "eps+"
EPS_1 = "eps1"
EPS_2 = "eps2"


class NonInvertibleSigma(ArithmeticError):
    """Some sigma constant vanishes in the working field."""


class ResidueCoverageInsufficient(RuntimeError):
    """Some residue class is unpopulated at the given level."""


# ---------------------------------------------------------------------------
# poset
# ---------------------------------------------------------------------------

class CellPoset:
    """The index poset: sign label on top, strata (totally ordered) in
    the middle, trivial label at the bottom; for even m the two mixed
    labels sit between the bottom and the strata, incomparable to each
    other."""

    def __init__(self, m, k, order_key=None):
        self.m = m
        self.k = k
        ctx = make_base_field(m)
        self.ctx = ctx
        strata = list(enumerate_classes(ctx.n, k, "upto"))
        if m % 2 == 0:
            strata += [SignedCompClass(c.canonical, superscript1=True)
                       for c in enumerate_classes(ctx.n, k, "below")]
        if order_key is None:
            order_key = SignedCompClass.sort_key
        strata.sort(key=order_key)
        self.lambda2 = strata
        self._index = {cls: i for i, cls in enumerate(strata)}
        self.lambda1 = ([EPS_MINUS, EPS_PLUS] if m % 2 == 1
                        else [EPS_MINUS, EPS_PLUS, EPS_1, EPS_2])
        self._sigma = {}
        for cls in strata:
            kind = "sup1" if cls.superscript1 else "plain"
            sig = sigma_constant(cls.canonical, m, k, kind)
            if sig.is_zero():
                raise NonInvertibleSigma(f"sigma vanishes on stratum {cls!r}")
            self._sigma[cls] = sig

    def labels(self):
        """All labels, strata from the top down, then the extra
        one-dimensional labels, ending at the minimum."""
        out = [EPS_MINUS]
        out.extend(reversed(self.lambda2))
        if self.m % 2 == 0:
            out.extend([EPS_1, EPS_2])
        out.append(EPS_PLUS)
        return out

    def sigma(self, cls):
        return self._sigma[cls]

    def index(self, cls):
        return self._index[cls]

    def leq(self, a, b):
        if a == b:
            return True
        if a == EPS_PLUS:
            return True
        if b == EPS_PLUS:
            return False
        if b == EPS_MINUS:
            return True
        if a == EPS_MINUS:
            return False
        a_mixed = a in (EPS_1, EPS_2)
        b_mixed = b in (EPS_1, EPS_2)
        if a_mixed:
            return not b_mixed  # eps1, eps2 are incomparable to each other
        if b_mixed:
            return False
        return self._index[a] <= self._index[b]

    def residue_of(self, label):
        if label in (EPS_MINUS, EPS_PLUS):
            return 0
        if label in (EPS_1, EPS_2):
            return self.m // 2
        return residue(label, self.m)

    def label_str(self, label):
        return label if isinstance(label, str) else repr(label)


def poset_dot(poset):
    """The poset diagram (Hasse edges) in DOT format."""
    strata = poset.lambda2
    edges = []
    if poset.m % 2 == 0:
        for mid in (EPS_1, EPS_2):
            edges.append((EPS_PLUS, mid))
            edges.append((mid, strata[0]))
    else:
        edges.append((EPS_PLUS, strata[0]))
    for a, b in zip(strata, strata[1:]):
        edges.append((a, b))
    edges.append((strata[-1], EPS_MINUS))

    def name(lab):
        return f'"{poset.label_str(lab)}"'

    lines = ["digraph poset {", "  rankdir=BT;"]
    for lab in poset.labels():
        lines.append(f"  {name(lab)};")
    for a, b in edges:
        lines.append(f"  {name(a)} -> {name(b)};")
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# symbolic arithmetic in the subalgebra generated by P_1 and P_2
# ---------------------------------------------------------------------------

class _PAlgebra:
    """Products of the generators reduce symbolically: an alternating
    word in P_1, P_2 times another is a single alternating word scaled
    by [2]^k per merged junction (P_s P_s = [2]^k P_s).  Elements are
    sparse dicts word -> coefficient with words encoded (first, length)
    and the empty word (0, 0); unlike group words these never wrap.
    Conversion to the ambient tensor algebra expands each word once and
    caches it, which is where all the heavy multiplication lives."""

    def __init__(self, m, k):
        self.hctx = get_hecke(m)
        self.k = k
        self.field = self.hctx.field
        self._two_k = u_integer(2) ** k
        self._amb = {(0, 0): TensorElem.unit(self.hctx, k),
                     (1, 1): build_generator(m, k, 1)[0],
                     (2, 1): build_generator(m, k, 2)[0]}

    def one(self):
        return {(0, 0): LaurentInt.from_int(1)}

    def gen(self, s):
        return {(s, 1): LaurentInt.from_int(1)}

    def word(self, first, length):
        if length == 0:
            first = 0
        return {(first, length): LaurentInt.from_int(1)}

    def mul(self, x, y):
        field = self.field
        out = {}
        for (fa, la), ca in x.items():
            for (fb, lb), cb in y.items():
                c = _cmul(ca, cb, field)
                if la == 0:
                    w = (fb, lb)
                elif lb == 0:
                    w = (fa, la)
                else:
                    last = fa if la % 2 else 3 - fa
                    if last == fb:
                        w = (fa, la + lb - 1)
                        c = _cscale_lau(c, self._two_k)
                    else:
                        w = (fa, la + lb)
                prev = out.get(w)
                val = c if prev is None else _cadd(prev, c, field)
                if val.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = val
        return out

    def scale(self, x, c):
        c = _demote(c)
        if isinstance(c, LaurentInt):
            return {w: _cscale_lau(v, c) for w, v in x.items()}
        return {w: _cmul(v, c, self.field) for w, v in x.items()}

    def sub(self, x, y):
        out = dict(x)
        for w, c in y.items():
            prev = out.get(w)
            val = -c if prev is None else _cadd(prev, -c, self.field)
            if val.is_zero():
                out.pop(w, None)
            else:
                out[w] = val
        return out

    def ambient_word(self, w):
        """The tensor-algebra element of an alternating P-word."""
        if w not in self._amb:
            first, length = w
            tail = self.ambient_word((3 - first, length - 1))
            self._amb[w] = self._amb[(first, 1)] * tail
        return self._amb[w]

    def to_tensor(self, x):
        total = TensorElem.zero(self.hctx, self.k)
        for w, c in x.items():
            total = total + self.ambient_word(w).scale(c)
        return total


# ---------------------------------------------------------------------------
# exact linear algebra over a field (tower scalars or cyclotomics)
# ---------------------------------------------------------------------------

class _Solver:
    """Incremental reduced row echelon form with combination tracking,
    over any exact field elements supporting +, -, *, is_zero() and
    invert().  Vectors are sparse dicts."""

    def __init__(self):
        self.rows = []      # (pivot_key, row_dict, combo_dict)
        self.n_added = 0
        self.rank = 0

    @staticmethod
    def _axpy(target, coeff, source):
        """target -= coeff * source, in place."""
        for key, val in source.items():
            add = coeff * val
            cur = target.get(key)
            cur = -add if cur is None else cur - add
            if cur.is_zero():
                target.pop(key, None)
            else:
                target[key] = cur

    def _reduce(self, vec, combo):
        for pivot, row, cmb in self.rows:
            c = vec.get(pivot)
            if c is None:
                continue
            self._axpy(vec, c, row)
            vec.pop(pivot, None)
            for idx, val in cmb.items():
                cur = combo.get(idx)
                add = c * val
                cur = add if cur is None else cur + add
                if cur.is_zero():
                    combo.pop(idx, None)
                else:
                    combo[idx] = cur
        return vec, combo

    def add(self, vec):
        """Record a vector; returns True if it enlarged the span."""
        idx = self.n_added
        self.n_added += 1
        vec = dict(vec)
        vec, combo = self._reduce(vec, {})
        if not vec:
            return False
        pivot = min(vec, key=_key_order)
        scale = vec[pivot].invert()
        vec = {k: scale * v for k, v in vec.items()}
        combo = {i: -(scale * v) for i, v in combo.items()}
        combo[idx] = scale
        # keep earlier rows reduced against the new pivot
        for _, row, cmb in self.rows:
            c = row.get(pivot)
            if c is None:
                continue
            self._axpy(row, c, vec)
            row.pop(pivot, None)
            for i, v in combo.items():
                add = c * v
                cur = cmb.get(i)
                cur = -add if cur is None else cur - add
                if cur.is_zero():
                    cmb.pop(i, None)
                else:
                    cmb[i] = cur
        self.rows.append((pivot, vec, combo))
        self.rank += 1
        return True

    def coordinates(self, vec):
        """Express vec in terms of the added vectors; returns a dict
        index -> coefficient, or None if vec is outside the span."""
        vec = dict(vec)
        combo = {}
        vec, combo = self._reduce(vec, combo)
        if vec:
            return None
        return combo


def _key_order(key):
    return repr(key)


# ---------------------------------------------------------------------------
# basis construction
# ---------------------------------------------------------------------------

class GramMatrix:
    """The bilinear form on a cell module, as an explicit symmetric
    matrix over the scalar tower (2x2 on strata, 1x1 elsewhere)."""

    def __init__(self, label, matrix):
        self.label = label
        self.matrix = matrix

    def u1_rank(self):
        spec = tuple(tuple(x.specialize_u1() for x in row)
                     for row in self.matrix)
        if len(spec) == 1:
            return 0 if spec[0][0].is_zero() else 1
        a, b = spec[0]
        c, d = spec[1]
        det = a * d - b * c
        if not det.is_zero():
            return 2
        if all(x.is_zero() for x in (a, b, c, d)):
            return 0
        return 1

    def __repr__(self):
        return f"GramMatrix({self.label})"


class CellBasis:
    """The cellular basis: a map (label, S, T) -> TensorElem, with the
    extra one-dimensional labels keyed as (label, 0, 0)."""

    def __init__(self, m, k, poset, elements, keys, modified, sym, alg):
        self.m = m
        self.k = k
        self.poset = poset
        self.elements = elements
        self.keys = keys
        self.modified = modified
        self.sym = sym          # symbolic P-word form of each element
        self.alg = alg          # the _PAlgebra used to build them
        self._solver = None
        self._words_checked = None
        self._words_frozen = None
        self._rules = None
        self._lead = None

    def solver(self):
        """RREF of the basis elements over the coefficient field; built
        on first use.  Raises if the elements are linearly dependent."""
        if self._solver is None:
            hctx = get_hecke(self.m)
            solver = _Solver()
            for key in self.keys:
                grew = solver.add(_tower_terms(self.elements[key],
                                               hctx.field))
                assert grew, f"cellular element {key} is dependent"
            self._solver = solver
        return self._solver

    def coordinates(self, elem):
        """Coefficients of elem in the cellular basis, as a dict
        key -> TowerScalar; None if elem is outside the span."""
        hctx = get_hecke(self.m)
        combo = self.solver().coordinates(_tower_terms(elem, hctx.field))
        if combo is None:
            return None
        return {self.keys[i]: c for i, c in combo.items()}

    def check_words(self):
        """The alternating P-words occurring in the symbolic forms of
        the basis elements.  Their ambient expansions are verified
        linearly independent once (the coefficients lie in A, so the
        division-free elimination applies); after that, any linear
        question about elements of the subalgebra can be settled in
        this small formal word space instead of the ambient tensor
        algebra."""
        if self._words_checked is None:
            words = sorted({w for s in self.sym.values() for w in s})
            elim = _LaurentElimination()
            for w in words:
                grew = elim.add(self.alg.ambient_word(w))
                assert grew, f"P-word {w} is ambient-dependent"
            self._words_checked = words
        return self._words_checked

    def _leading_table(self):
        """Map from leading word to (key, inverse of leading
        coefficient).  Each basis element has a unique longest word and
        the leading words exhaust the word set, so the change of basis
        is triangular and coordinates come from back-substitution."""
        if self._lead is None:
            field = get_hecke(self.m).field
            lead = {}
            for key in self.keys:
                w = max(self.sym[key], key=lambda t: t[1])
                assert w not in lead, "leading words must be distinct"
                c = _demote(self.sym[key][w])
                if isinstance(c, LaurentInt) and c == LaurentInt.from_int(1):
                    inv = None                      # unit: skip division
                else:
                    if isinstance(c, LaurentInt):
                        c = TowerScalar.from_laurent(field, c)
                    inv = c.invert()
                lead[w] = (key, inv)
            assert set(lead) == self._word_set, \
                "leading words must exhaust the word set"
            self._lead = lead
        return self._lead

    def sym_coordinates(self, x):
        """Coefficients of a symbolic P-word combination in the
        cellular basis, as a dict key -> coefficient (back-substitution
        through the triangular change of basis)."""
        self.check_words()
        lead = self._leading_table()
        field = self.alg.field
        work = dict(self.reduce_sym(x))
        coords = {}
        while work:
            w = max(work, key=lambda t: t[1])
            key, inv = lead[w]
            c = work.pop(w)
            if inv is not None:
                c = _cmul(c, inv, field)
            coords[key] = c
            for w2, c2 in self.sym[key].items():
                if w2 == w:
                    continue
                sub = _cmul(c, c2, field)
                prev = work.get(w2)
                val = -sub if prev is None else _cadd(prev, -sub, field)
                if val.is_zero():
                    work.pop(w2, None)
                else:
                    work[w2] = val
        return _tower_sym(coords, field)

    def _ensure_rules(self):
        """Rewrite rules for the alternating words just past the basis
        word set, derived from the two spellings of the top product
        (an identity asserted on the ambient algebra at build time).
        For odd m the spellings are P_1 G(P_21) = P_2 G(P_12) with tops
        (1, 2n+1) and (2, 2n+1); left-multiplying by P_2 gives the rule
        for (2, 2n+2).  For even m they are P_12 G(P_12) = P_21 G(P_21)
        with tops (1, 2n+2) and (2, 2n+2); left-multiplying by P_2
        gives (2, 2n+3).  Every longer word reduces recursively."""
        if self._rules is not None:
            return
        alg, poset = self.alg, self.poset
        p1, p2 = alg.gen(1), alg.gen(2)
        p21, p12 = alg.word(2, 2), alg.word(1, 2)
        g21, g12 = alg.one(), alg.one()
        for cls in reversed(poset.lambda2):
            s2 = poset.sigma(cls) * poset.sigma(cls)
            g21 = alg.sub(alg.mul(g21, p21), alg.scale(g21, s2))
            g12 = alg.sub(alg.mul(g12, p12), alg.scale(g12, s2))
        n2 = len(poset.lambda2)
        two_k = u_integer(2) ** self.k
        if self.m % 2 == 1:
            lhs = alg.mul(p1, g21)
            rhs = alg.mul(p2, g12)
            top = (2, 2 * n2 + 1)
        else:
            lhs = alg.mul(p12, g12)
            rhs = alg.mul(p21, g21)
            top = (2, 2 * n2 + 2)
        assert _demote(rhs[top]) == LaurentInt.from_int(1)
        self._rules = {top: alg.sub(lhs, {w: c for w, c in rhs.items()
                                          if w != top})}
        t = alg.mul(p2, lhs)
        top2 = (2, top[1] + 1)
        assert _demote(t[top2]) == LaurentInt.from_int(1)
        self._rules[top2] = self.reduce_sym(
            alg.sub(alg.scale(rhs, two_k),
                    {w: c for w, c in t.items() if w != top2}))

    def _word_rule(self, w):
        """Expansion of an out-of-set word over the basis word set."""
        self._ensure_rules()
        if w not in self._rules:
            first, length = w
            tail = self.reduce_sym({(3 - first, length - 1):
                                    LaurentInt.from_int(1)})
            self._rules[w] = self.reduce_sym(
                self.alg.mul(self.alg.gen(first), tail))
        return self._rules[w]

    def reduce_sym(self, x):
        """Rewrite a symbolic combination so that only words occurring
        in the basis elements remain."""
        words = self._word_set
        out = {}
        field = self.alg.field
        for w, c in x.items():
            if w in words:
                items = ((w, c),)
            else:
                items = ((w2, _cmul(c, c2, field))
                         for w2, c2 in self._word_rule(w).items())
            for w2, c2 in items:
                prev = out.get(w2)
                val = c2 if prev is None else _cadd(prev, c2, field)
                if val.is_zero():
                    out.pop(w2, None)
                else:
                    out[w2] = val
        return out

    @property
    def _word_set(self):
        if self._words_frozen is None:
            self._words_frozen = frozenset(self.check_words())
        return self._words_frozen


def _tower_terms(elem, field):
    return _tower_sym(elem.terms, field)


def _tower_sym(x, field):
    out = {}
    for w, c in x.items():
        if isinstance(c, LaurentInt):
            c = TowerScalar.from_laurent(field, c)
        out[w] = c
    return out


def build_cellular_basis(m, k, modified=False, order_key=None):
    """Construct every basis element.  With modified=True the stratum
    diagonal elements drop their sigma prefactor (the variant whose
    u = 1 specialization stays a basis for even m)."""
    poset = CellPoset(m, k, order_key=order_key)
    alg = _PAlgebra(m, k)
    p1 = alg.gen(1)
    p2 = alg.gen(2)
    p21 = alg.word(2, 2)
    p12 = alg.word(1, 2)
    sig2 = [poset.sigma(cls) * poset.sigma(cls) for cls in poset.lambda2]
    n2 = len(sig2)
    # suffix[i] = prod over strata j >= i of (P_21 - sigma_j^2)
    suffix21 = [alg.one()] * (n2 + 1)
    suffix12 = [alg.one()] * (n2 + 1)
    for i in range(n2 - 1, -1, -1):
        suffix21[i] = alg.sub(alg.mul(suffix21[i + 1], p21),
                              alg.scale(suffix21[i + 1], sig2[i]))
        suffix12[i] = alg.sub(alg.mul(suffix12[i + 1], p12),
                              alg.scale(suffix12[i + 1], sig2[i]))

    sym = {}
    keys = []

    def put(label, s, t, elem):
        sym[(label, s, t)] = elem
        keys.append((label, s, t))

    put(EPS_MINUS, 0, 0, alg.one())
    for i, cls in enumerate(poset.lambda2):
        sig = poset.sigma(cls)
        c11 = alg.mul(p1, suffix21[i + 1])
        c22 = alg.mul(p2, suffix12[i + 1])
        if not modified:
            c11 = alg.scale(c11, sig)
            c22 = alg.scale(c22, sig)
        put(cls, 1, 1, c11)
        put(cls, 2, 1, alg.mul(p21, suffix21[i + 1]))
        put(cls, 2, 2, c22)
        put(cls, 1, 2, alg.mul(p12, suffix12[i + 1]))
    if m % 2 == 1:
        put(EPS_PLUS, 0, 0, alg.mul(p1, suffix21[0]))
        other = alg.to_tensor(alg.mul(p2, suffix12[0]))
    else:
        put(EPS_1, 0, 0, alg.mul(p1, suffix21[0]))
        put(EPS_2, 0, 0, alg.mul(p2, suffix12[0]))
        put(EPS_PLUS, 0, 0, alg.mul(p12, suffix12[0]))
        other = alg.to_tensor(alg.mul(p21, suffix21[0]))
    elements = {key: alg.to_tensor(sym[key]) for key in keys}
    assert elements[(EPS_PLUS, 0, 0)] == other, "braid relation violated"
    return CellBasis(m, k, poset, elements, keys, modified, sym, alg)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

def verify_cellularity(basis):
    """Check the two cellular axioms plus the displayed triangular
    action coefficients.  Returns (ok, failures)."""
    m, k = basis.m, basis.k
    assert not basis.modified
    poset = basis.poset
    hctx = get_hecke(m)
    field = hctx.field
    two_k = TowerScalar.u_int(field, 2) ** k
    zero = TowerScalar.zero(field)
    failures = []

    # rank check: the elements are a basis of the algebra span.  The
    # P-words occurring in them are independent (check_words) and there
    # are exactly census many, so the triangular change of basis in the
    # word space settles the rank without ambient
    # elimination over the full scalar tower.
    from .reps import dimension_census
    census = dimension_census(m, k)
    words = basis.check_words()
    basis._leading_table()   # asserts the triangular change of basis
    if len(basis.keys) != census or len(words) != census:
        failures.append({"axiom": "basis", "size": len(basis.keys),
                         "words": len(words), "census": census})

    # the star map is word reversal
    for (label, s, t), elem in basis.elements.items():
        if elem.apply_op_all() != basis.elements[(label, t, s)]:
            failures.append({"axiom": "star", "key": (str(label), s, t)})

    alg = basis.alg
    gens = {1: alg.gen(1), 2: alg.gen(2)}
    sig_of = {cls: poset.sigma(cls) for cls in poset.lambda2}
    char1 = {EPS_MINUS: zero, EPS_PLUS: two_k, EPS_1: two_k, EPS_2: zero}
    char2 = {EPS_MINUS: zero, EPS_PLUS: two_k, EPS_1: zero, EPS_2: two_k}

    for h_idx, h in gens.items():
        for label in poset.labels():
            if isinstance(label, str):
                coords = basis.sym_coordinates(
                    alg.mul(h, basis.sym[(label, 0, 0)]))
                r = _stratum_block(coords, poset, label, failures,
                                   h_idx, columns=(0,))
                if r is None:
                    continue
                expect = (char1 if h_idx == 1 else char2)[label]
                if r.get((0, 0), zero) != expect:
                    failures.append({"axiom": "action", "h": h_idx,
                                     "label": label})
                continue
            per_t = []
            for t in (1, 2):
                rmat = {}
                for s in (1, 2):
                    coords = basis.sym_coordinates(
                        alg.mul(h, basis.sym[(label, s, t)]))
                    r = _stratum_block(coords, poset, label, failures,
                                       h_idx, columns=(t,))
                    if r is None:
                        break
                    for (s2, t2), val in r.items():
                        rmat[(s2, s)] = val
                else:
                    per_t.append(rmat)
            if len(per_t) != 2 or per_t[0] != per_t[1]:
                failures.append({"axiom": "independence-of-T", "h": h_idx,
                                 "label": str(label)})
                continue
            sig = sig_of[label]
            if h_idx == 1:
                expect = {(1, 1): two_k, (1, 2): sig}
            else:
                expect = {(2, 1): sig, (2, 2): two_k}
            got = {pos: val for pos, val in per_t[0].items()
                   if not val.is_zero()}
            if got != expect:
                failures.append({"axiom": "action-matrix", "h": h_idx,
                                 "label": str(label)})
    return (not failures), failures


def _stratum_block(coords, poset, label, failures, h_idx, columns):
    """Split expansion coordinates into the within-stratum block; record
    a failure and return None when a coefficient violates
    triangularity (sits on a stratum not <= label, or in a different
    column of the same stratum)."""
    if coords is None:
        failures.append({"axiom": "span", "h": h_idx, "label": str(label)})
        return None
    block = {}
    for (lab2, s2, t2), val in coords.items():
        if val.is_zero():
            continue
        if lab2 == label:
            if t2 not in columns:
                failures.append({"axiom": "column", "h": h_idx,
                                 "label": str(label)})
                return None
            block[(s2, t2)] = val
            continue
        if not poset.leq(lab2, label):
            failures.append({"axiom": "triangularity", "h": h_idx,
                             "label": str(label), "violator": str(lab2)})
            return None
    return block


# ---------------------------------------------------------------------------
# bilinear forms
# ---------------------------------------------------------------------------

def gram_form(basis, label):
    """The bilinear form of a cell module, computed from products of
    basis elements; on strata it is asserted equal to the closed form

        sigma_k * prod_{k' not <= k} (sigma_k^2 - sigma_k'^2)
                * [[2]^k, sigma_k; sigma_k, [2]^k].

    (The leading sigma_k is forced by the sigma prefactor on the
    diagonal basis elements: on the maximal stratum the products are
    empty and C_22 C_21 = sigma [2]^k C_21 directly.  sigma_k is a unit
    generically and stays nonzero at u = 1 for odd m, so rank
    statements are insensitive to it.)"""
    poset = basis.poset
    field = get_hecke(basis.m).field
    two_k = TowerScalar.u_int(field, 2) ** basis.k
    alg = basis.alg
    if isinstance(label, str):
        c = basis.sym[(label, 0, 0)]
        phi = _phi_coefficient(basis, alg.mul(c, c), label, (label, 0, 0))
        return GramMatrix(label, ((phi,),))
    rows = []
    for s in (1, 2):
        row = []
        for t in (1, 2):
            for u, v in ((1, 1), (2, 2)):
                prod = alg.mul(basis.sym[(label, u, s)],
                               basis.sym[(label, t, v)])
                phi = _phi_coefficient(basis, prod, label, (label, u, v))
                if (u, v) == (1, 1):
                    row.append(phi)
                else:
                    assert phi == row[-1], "form depends on the frame"
        rows.append(tuple(row))
    matrix = tuple(rows)
    assert matrix[0][1] == matrix[1][0], "form is not symmetric"
    sig = poset.sigma(label)
    i = poset.index(label)
    factor = TowerScalar.one(field)
    for j in range(i + 1, len(poset.lambda2)):
        other = poset.sigma(poset.lambda2[j])
        factor = factor * (sig * sig - other * other)
    factor = sig * factor
    expected = ((two_k * factor, sig * factor),
                (sig * factor, two_k * factor))
    assert matrix == expected, f"product formula fails on {label!r}"
    return GramMatrix(label, matrix)


def _phi_coefficient(basis, prod_sym, label, key):
    coords = basis.sym_coordinates(prod_sym)
    phi = TowerScalar.zero(get_hecke(basis.m).field)
    for key2, val in coords.items():
        if key2 == key:
            phi = val
        else:
            assert basis.poset.leq(key2[0], label) and key2[0] != label, (
                f"product leaks outside the ideal at {label!r}")
    return phi


# ---------------------------------------------------------------------------
# u = 1 specialization
# ---------------------------------------------------------------------------

def _probe_words(m):
    """Generator words on which characters are compared.  The powers of
    the rotation separate the two-dimensional simples (their traces are
    a Vandermonde family in the squared sigma constants), so the list
    must grow with m."""
    words = [(), (1,), (2,)]
    for j in range(1, (m - 1) // 2 + 2):
        words.append((1, 2) * j)
    return tuple(words)


def u1_analysis(m, k):
    """Specialize at u = 1.  For odd m: the rank pattern of the Gram
    matrices, the decomposition matrix by character expansion, and the
    semisimple-quotient dimension.  For even m: the module structure of
    the modified basis.  Returns a report dict."""
    if m % 2 == 1:
        return _u1_odd(m, k)
    return _u1_even(m, k)


def _u1_odd(m, k):
    ctx = make_base_field(m)
    basis = build_cellular_basis(m, k)
    poset = basis.poset
    labels = poset.labels()
    grams = {label: gram_form(basis, label) for label in labels}
    ranks = {label: grams[label].u1_rank() for label in labels}
    expected = _expected_ranks(poset)
    rank_ok = ranks == expected

    # decomposition matrix via characters on the probe monomials
    lamp = [label for label in labels if ranks[label] > 0]
    l_chars = {}
    for mu in lamp:
        if ranks[mu] == 2:
            l_chars[mu] = _module_char_u1(poset, mu)
        elif mu == EPS_MINUS:
            l_chars[mu] = _one_dim_char_u1(ctx, k, (False, False))
        else:
            # a rank-one stratum (or the minimum) has trivial simple head
            l_chars[mu] = _one_dim_char_u1(ctx, k, (True, True))
    solver = _Solver()
    for mu in lamp:
        grew = solver.add({i: v for i, v in enumerate(l_chars[mu])
                           if not v.is_zero()})
        assert grew, "simple characters are dependent on the probe set"
    d = {}
    for label in labels:
        char = _module_char_u1(poset, label)
        combo = solver.coordinates({i: v for i, v in enumerate(char)
                                    if not v.is_zero()})
        assert combo is not None, "cell character outside simple span"
        for j, mu in enumerate(lamp):
            val = combo.get(j)
            if val is None:
                d[(label, mu)] = 0
            else:
                q = val.as_rational()
                assert q.denominator == 1
                d[(label, mu)] = int(q)

    d_expected = {}
    for label in labels:
        for mu in lamp:
            match = (poset.residue_of(label) == poset.residue_of(mu)
                     and {_s(label), _s(mu)} != {EPS_PLUS, EPS_MINUS})
            d_expected[(label, mu)] = 1 if match else 0
    d_ok = d == d_expected

    quotient_dim = sum(r * r for r in ranks.values())
    window = set(range((m - 1) // 2 + 1))
    present = {poset.residue_of(label) for label in labels}
    coverage = window <= present
    if coverage:
        assert quotient_dim == 2 * m, (quotient_dim, 2 * m)

    # the rank multiset does not depend on the chosen total order
    alt = build_cellular_basis(
        m, k, order_key=lambda c: (c.weight,
                                   tuple(-x for x in c.canonical),
                                   c.superscript1))
    alt_ranks = sorted(gram_form(alt, label).u1_rank()
                       for label in alt.poset.labels())
    multiset_ok = alt_ranks == sorted(ranks.values())

    return {
        "m": m, "k": k, "mode": "odd",
        "ranks": {poset.label_str(l): r for l, r in ranks.items()},
        "ranks_expected": {poset.label_str(l): r
                           for l, r in expected.items()},
        "rank_ok": rank_ok,
        "decomposition_rows": [poset.label_str(l) for l in labels],
        "decomposition_cols": [poset.label_str(l) for l in lamp],
        "decomposition": [[d[(l, mu)] for mu in lamp] for l in labels],
        "decomposition_ok": d_ok,
        "quotient_dim": quotient_dim,
        "residues_covered": coverage,
        "alt_order_rank_multiset_ok": multiset_ok,
        "ok": rank_ok and d_ok and multiset_ok,
    }


def _s(label):
    return label if isinstance(label, str) else repr(label)


def _expected_ranks(poset):
    """The u = 1 rank pattern for odd m: rank two on the stratum that
    is maximal with its (nonzero) residue, rank one on the maximal
    residue-zero stratum and on the sign label, zero elsewhere -- and
    rank one on the trivial label exactly when no stratum has residue
    zero (its one-by-one form is a product over f^k minus the squared
    sigma constants, which vanishes at u = 1 precisely at a residue-zero
    stratum; this keeps the simple count at 2m)."""
    expected = {EPS_MINUS: 1}
    max_with_residue = {}
    for cls in poset.lambda2:  # ascending order
        max_with_residue[poset.residue_of(cls)] = cls
    for cls in poset.lambda2:
        r = poset.residue_of(cls)
        if max_with_residue[r] is not cls:
            expected[cls] = 0
        elif r != 0:
            expected[cls] = 2
        else:
            expected[cls] = 1
    expected[EPS_PLUS] = 0 if 0 in max_with_residue else 1
    return expected


def _cyclo_int(ctx, n):
    return ctx.cyclo_from_rational(mpq(n))


def _one_dim_char_u1(ctx, k, signs):
    two_k = _cyclo_int(ctx, 2 ** k)
    zero = _cyclo_int(ctx, 0)
    v = {1: two_k if signs[0] else zero, 2: two_k if signs[1] else zero}
    out = []
    for word in _probe_words(ctx.m):
        val = _cyclo_int(ctx, 1)
        for s in word:
            val = val * v[s]
        out.append(val)
    return tuple(out)


def _module_char_u1(poset, label):
    """The character of a cell module at u = 1 on the probe words."""
    ctx = poset.ctx
    if label == EPS_MINUS:
        return _one_dim_char_u1(ctx, poset.k, (False, False))
    if label == EPS_PLUS:
        return _one_dim_char_u1(ctx, poset.k, (True, True))
    if label == EPS_1:
        return _one_dim_char_u1(ctx, poset.k, (True, False))
    if label == EPS_2:
        return _one_dim_char_u1(ctx, poset.k, (False, True))
    sig = poset.sigma(label).specialize_u1()
    two_k = _cyclo_int(ctx, 2 ** poset.k)
    zero = _cyclo_int(ctx, 0)
    one = _cyclo_int(ctx, 1)
    mats = {
        1: ((two_k, sig), (zero, zero)),
        2: ((zero, zero), (sig, two_k)),
    }
    out = []
    for word in _probe_words(poset.m):
        prod = ((one, zero), (zero, one))
        for s in word:
            b = mats[s]
            prod = tuple(
                tuple(prod[i][0] * b[0][j] + prod[i][1] * b[1][j]
                      for j in range(2))
                for i in range(2))
        out.append(prod[0][0] + prod[1][1])
    return tuple(out)


def _u1_even(m, k):
    """Even m: the u = 1 module structure of the modified basis.

    The specialized algebra is the base change of the free module on
    the basis, so the analysis works with the generic structure
    constants specialized at u = 1.  (The image of the algebra inside
    the specialized tensor power is smaller; the abstract base change
    is what carries the module structure.)  The basis is sound for
    specialization exactly when every structure constant is pole-free
    at u = 1, which is checked on the fly."""
    ctx = make_base_field(m)
    basis = build_cellular_basis(m, k, modified=True)
    poset = basis.poset
    key_index = {key: i for i, key in enumerate(basis.keys)}

    alg = basis.alg
    gens = {1: alg.gen(1), 2: alg.gen(2)}
    poles = []

    def sym_coords_u1(x):
        coords = basis.sym_coordinates(x)
        acc = {}
        for key, c in coords.items():
            try:
                cval = c.specialize_u1()
            except PoleAtOneError:
                poles.append(key)
                continue
            if not cval.is_zero():
                acc[key_index[key]] = cval
        return acc

    basis_ok = True

    results = {}
    ok = True
    for cls in poset.lambda2:
        r = poset.residue_of(cls)
        for pair, sub_quot in ((((cls, 1, 1), (cls, 2, 1)), "left"),
                               (((cls, 2, 2), (cls, 1, 2)), "right")):
            keys_pair, side = pair, sub_quot
            action = {}
            good = True
            for h_idx in (1, 2):
                mat = [[None, None], [None, None]]
                for col, key in enumerate(keys_pair):
                    combo = sym_coords_u1(alg.mul(gens[h_idx],
                                                  basis.sym[key]))
                    for i, val in combo.items():
                        key2 = basis.keys[i]
                        if key2 in keys_pair:
                            mat[keys_pair.index(key2)][col] = val
                        elif not (poset.leq(key2[0], cls)
                                  and key2[0] != cls):
                            good = False
                    for i in range(2):
                        if mat[i][col] is None:
                            mat[i][col] = _cyclo_int(ctx, 0)
                if not good:
                    break
                action[h_idx] = tuple(tuple(row) for row in mat)
            if not good:
                ok = False
                results[f"{cls!r}/{side}"] = "leaks outside the stratum"
                continue
            verdict = _classify_u1_module(ctx, m, k, r, side, action)
            results[f"{cls!r}/{side}"] = verdict
            if verdict.startswith("FAIL"):
                ok = False

    basis_ok = not poles
    ok = ok and basis_ok

    # simple count: four characters plus one two-dimensional per residue
    residues_present = {poset.residue_of(cls) for cls in poset.lambda2}
    n = ctx.n
    coverage = set(range(1, n + 1)) <= residues_present
    quotient_dim = 4 + 4 * len(residues_present & set(range(1, n + 1)))
    if coverage:
        assert quotient_dim == 2 * m

    return {
        "m": m, "k": k, "mode": "even",
        "basis_ok": basis_ok,
        "modules": results,
        "quotient_dim": quotient_dim,
        "residues_covered": coverage,
        "ok": ok,
    }


def _classify_u1_module(ctx, m, k, r, side, action):
    """Match the two-dimensional u = 1 module against the statement:
    irreducible of residue type for r in [n]; sign-inside-trivial for
    r = 0; mixed characters stacked (order depending on the side) for
    r = m/2."""
    a, b = action[1], action[2]
    two_k = _cyclo_int(ctx, 2 ** k)
    zero = _cyclo_int(ctx, 0)
    tr_a = a[0][0] + a[1][1]
    tr_b = b[0][0] + b[1][1]
    tr_ab = (a[0][0] * b[0][0] + a[0][1] * b[1][0]
             + a[1][0] * b[0][1] + a[1][1] * b[1][1])
    if r != 0 and r != m // 2:
        # expected: the level-k pullback of the two-dimensional
        # reflection representation with parameter w_r
        scale = _cyclo_int(ctx, 4 ** (k - 1))
        if (tr_a == two_k and tr_b == two_k
                and tr_ab == scale * ctx.w[r]
                and not tr_ab.is_zero()
                and tr_ab != _cyclo_int(ctx, 4 ** k)):
            return f"M_{r}"
        return f"FAIL: expected M_{r}"
    if r == 0:
        sub, quot = (False, False), (True, True)
    elif side == "left":
        sub, quot = (False, True), (True, False)
    else:
        sub, quot = (True, False), (False, True)
    want_a = two_k if sub[0] else zero
    want_b = two_k if sub[1] else zero
    v = _common_eigenvector(ctx, a, b, want_a, want_b)
    if v is None:
        return "FAIL: no stable line with the submodule character"
    quot_a = tr_a - want_a
    quot_b = tr_b - want_b
    exp_qa = two_k if quot[0] else zero
    exp_qb = two_k if quot[1] else zero
    if quot_a == exp_qa and quot_b == exp_qb:
        names = {(False, False): "eps-", (True, True): "eps+",
                 (True, False): "eps1", (False, True): "eps2"}
        return f"{names[sub]} inside, {names[quot]} quotient"
    return "FAIL: wrong quotient character"


def _common_eigenvector(ctx, a, b, val_a, val_b):
    """A nonzero common eigenvector of two 2x2 matrices with the given
    eigenvalues, or None."""
    zero = _cyclo_int(ctx, 0)
    for cand in _kernel_vectors(ctx, a, val_a):
        img = (b[0][0] * cand[0] + b[0][1] * cand[1] - val_b * cand[0],
               b[1][0] * cand[0] + b[1][1] * cand[1] - val_b * cand[1])
        if img[0].is_zero() and img[1].is_zero():
            return cand
    return None


def _kernel_vectors(ctx, mat, val):
    """Spanning vectors of ker(mat - val) for a 2x2 matrix."""
    one = _cyclo_int(ctx, 1)
    zero = _cyclo_int(ctx, 0)
    a = mat[0][0] - val
    b = mat[0][1]
    c = mat[1][0]
    d = mat[1][1] - val
    det = a * d - b * c
    if not det.is_zero():
        return []
    if not a.is_zero() or not b.is_zero():
        # kernel spanned by (b, -a) when the first row is nonzero
        return [(b, -a)] if not (b.is_zero() and a.is_zero()) else []
    if not c.is_zero() or not d.is_zero():
        return [(d, -c)]
    return [(one, zero), (zero, one)]


def _u1_terms(elem, ctx):
    out = {}
    for w, c in elem.terms.items():
        if isinstance(c, LaurentInt):
            val = _cyclo_int(ctx, c.at_one())
        else:
            val = c.specialize_u1()
        if not val.is_zero():
            out[w] = val
    return out

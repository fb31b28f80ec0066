"""JSON encodings for the exact value types.

Every encoder has a matching decoder and the pair round-trips
bit-exactly: the decoded value compares equal to the original.
Rationals are written as strings so arbitrary precision survives JSON;
polynomial data is written as dense coefficient arrays starting at
exponent 0.
"""

from gmpy2 import mpq

from .scalars import CycloNum, LaurentInt, RatFun, TowerScalar
from .hecke import HeckeElem, get_hecke, word_from_str, word_str
from .chebyshev import ChebPoly


# --------------------------------------------------------------------------
# Laurent polynomials: {"exponent": coefficient}
# --------------------------------------------------------------------------

def laurent_to_json(x):
    return {str(e): c for e, c in sorted(x.coeffs.items())}


def laurent_from_json(data):
    return LaurentInt({int(e): int(c) for e, c in data.items()})


# --------------------------------------------------------------------------
# cyclotomic numbers: dense arrays of rationals-as-strings
# --------------------------------------------------------------------------

def cyclo_to_json(c):
    return [str(v) for v in c.coeffs]


def cyclo_from_json(ctx, data):
    assert len(data) == ctx.degree
    return CycloNum(ctx, tuple(mpq(v) for v in data))


def _poly_to_json(p):
    """A polynomial dict exponent -> CycloNum as a dense array."""
    if not p:
        return []
    top = max(p)
    out = []
    for e in range(top + 1):
        c = p.get(e)
        out.append(cyclo_to_json(c) if c is not None else [])
    return out


def _poly_from_json(ctx, data):
    out = {}
    for e, arr in enumerate(data):
        if arr:
            c = cyclo_from_json(ctx, arr)
            if not c.is_zero():
                out[e] = c
    return out


# --------------------------------------------------------------------------
# tower scalars: {"sorted,comma,joined,subset": {"num": poly, "den": poly}}
# --------------------------------------------------------------------------

def tower_to_json(x):
    out = {}
    for subset, r in sorted(x.comps.items(), key=lambda t: sorted(t[0])):
        key = ",".join(str(j) for j in sorted(subset))
        out[key] = {"num": _poly_to_json(r.num), "den": _poly_to_json(r.den)}
    return out


def tower_from_json(ctx, data):
    comps = {}
    for key, rd in data.items():
        subset = frozenset(int(j) for j in key.split(",")) if key \
            else frozenset()
        num = _poly_from_json(ctx, rd["num"])
        den = _poly_from_json(ctx, rd["den"])
        # stored form is already canonical; skip re-reduction
        comps[subset] = RatFun(ctx, num, den, reduce=False)
    return TowerScalar(ctx, comps)


# --------------------------------------------------------------------------
# Hecke algebra elements: [{"word": "s1s2s1...", "coeff": TowerScalar}]
# --------------------------------------------------------------------------

def hecke_to_json(x):
    return [{"word": word_str(w), "coeff": tower_to_json(c)}
            for w, c in sorted(x.terms.items(),
                               key=lambda t: (t[0][1], t[0][0]))]


def hecke_from_json(m, data):
    hctx = get_hecke(m)
    terms = {}
    for entry in data:
        w = word_from_str(entry["word"], m)
        terms[w] = tower_from_json(hctx.field, entry["coeff"])
    return HeckeElem(hctx, terms)


# --------------------------------------------------------------------------
# Chebyshev polynomials: {"monomial": integer} with per-variable
# "ex,ey" segments joined by ";"
# --------------------------------------------------------------------------

def cheb_to_json(p):
    coeffs = {}
    for key, c in sorted(p.coeffs.items()):
        name = ";".join(f"{ex},{ey}" for ex, ey in key)
        coeffs[name] = c
    return {"n": p.n, "coeffs": coeffs}


def cheb_from_json(data):
    n = data["n"]
    coeffs = {}
    for name, c in data["coeffs"].items():
        key = tuple(tuple(int(v) for v in seg.split(","))
                    for seg in name.split(";"))
        assert len(key) == n
        coeffs[key] = int(c)
    return ChebPoly(n, coeffs)

"""The irreducible representations and how tensor products decompose.

Each two-dimensional irreducible X(c) is pinned down by a single
scalar c = sigma^2, one per signed composition class; the characters
supply the one-dimensional ones.  Tensoring two X's and changing
basis by the explicit z-vectors splits the 4-dimensional product into
catalog members, with four branches depending on which degeneracy
criteria fire.
"""

from nshecke.compositions import SignedCompClass, enumerate_classes
from nshecke.reps import (decompose_catalog, dimension_census,
                          irreducible_catalog)

# The catalog at (m, k) = (5, 2): 2 characters + one X per class.
print("catalog at (5, 2):")
for rep in irreducible_catalog(5, 2):
    print(f"  {rep.label:>8}  dim {rep.dim}")
print("sum of squared dimensions:", dimension_census(5, 2))

# The product rule: N_a (x) N_b = N_{a-b} (+) N_{a+b}, with the
# difference class splitting into eps+ (+) eps- when a = b.
print("\nall unit-weight products at m = 5:")
classes = enumerate_classes(2, 1, "upto")
for a in classes:
    for b in classes:
        result, expected = decompose_catalog(5, 1, a, 1, b)
        names = " (+) ".join(r.label for r in result.summands)
        print(f"  N{a!r} (x) N{b!r} = {names}   [{result.case}]")

# The four branches: generic, plus-degenerate, minus-degenerate, and
# both-degenerate.  The minus branch needs a pair whose constants sum
# to f^k; mixing the cosine and sine flavours at even m does it.
print("\na minus-degenerate instance at m = 4:")
result, _ = decompose_catalog(
    4, 1, SignedCompClass((1,)),
    2, SignedCompClass((1,), superscript1=True))
print("  case:", result.case)
print("  summands:", [r.label for r in result.summands])

# The change of basis is part of the result -- its columns are the
# z-vectors, and the conjugated action is asserted block-diagonal
# inside decompose_catalog before it returns.
print("  change of basis is 4x4:", len(result.change_of_basis) == 4)

"""The cellular basis and its bilinear forms.

The algebra carries a cellular structure: a poset of labels (two or
four characters plus the composition strata), a basis indexed by
(label, row, column), an anti-involution given by word reversal, and
triangular generator actions.  The Gram matrix of each cell module
follows a closed product formula over the strata above it.
"""

from nshecke.cellular import (build_cellular_basis, gram_form,
                              poset_dot, verify_cellularity)

m, k = 3, 2
basis = build_cellular_basis(m, k)
poset = basis.poset

print(f"poset labels at ({m}, {k}), top down:")
for label in poset.labels():
    print("  ", poset.label_str(label))

print("\nbasis keys (label, S, T):")
for (label, s, t) in basis.keys:
    print(f"   ({poset.label_str(label)}, {s}, {t})")

ok, failures = verify_cellularity(basis)
print("\ncellular axioms:", "pass" if ok else failures)

# The Gram matrices: 2x2 on strata, 1x1 on the characters.  Their
# u = 1 ranks drive the modular representation theory.
print("\nGram forms and u = 1 ranks:")
for label in poset.labels():
    g = gram_form(basis, label)
    size = len(g.matrix)
    print(f"  {poset.label_str(label):>6}: {size}x{size},"
          f" u=1 rank {g.u1_rank()}")

# The poset renders to DOT for visual inspection.
print("\nDOT diagram:")
print(poset_dot(poset))

"""What happens at u = 1: decomposition matrices and module structure.

At u = 1 the algebra stops being semisimple.  For odd m the Gram-form
ranks follow a clean pattern and the decomposition matrix (which cell
module contains which simple) is governed by a residue rule.  For
even m the standard basis degenerates, but a modified basis survives
and exhibits the cell modules as extensions of characters.
"""

from nshecke.cellular import u1_analysis

# Odd m: rank pattern, decomposition matrix, and the semisimple
# quotient of dimension 2m (the group algebra of the dihedral group).
for m, k in ((3, 2), (5, 2)):
    rep = u1_analysis(m, k)
    print(f"(m, k) = ({m}, {k}):  ok = {rep['ok']}")
    print("  u = 1 ranks:", rep["ranks"])
    print("  decomposition matrix "
          f"(rows {rep['decomposition_rows']}, "
          f"cols {rep['decomposition_cols']}):")
    for row_label, row in zip(rep["decomposition_rows"],
                              rep["decomposition"]):
        print(f"    {row_label:>6} {row}")
    print("  semisimple quotient dimension:", rep["quotient_dim"],
          "= 2m" if rep["quotient_dim"] == 2 * m else "(residues not "
          "yet covered)")
    print()

# Even m at (4, 2): the modified basis specializes cleanly, and each
# stratum module either stays simple or stacks two characters whose
# order depends on the side.
rep = u1_analysis(4, 2)
print("(m, k) = (4, 2):  ok =", rep["ok"])
for name, verdict in rep["modules"].items():
    print(f"  {name:>12}: {verdict}")
print("  semisimple quotient dimension:", rep["quotient_dim"])

"""Chebyshev polynomials and the constants behind the braid relation.

cos and sin of integer combinations of angles expand into polynomials
in the individual cosines and sines -- the multivariate Chebyshev
polynomials.  Evaluating them at the algebraic angle pi/m inside the
quadratic tower produces the constants sigma_k whose squares are the
braid-relation roots.
"""

from nshecke.chebyshev import (cheb_T, cheb_T1, cheb_multi,
                               sigma_constant, verify_addition_identity)
from nshecke.scalars import make_base_field

# Univariate: T_k expresses cos(k t) in x = cos t; the sine flavour
# T1_k expresses sin(k t) with an explicit y = sin t (kept reduced so
# y only ever appears to the first power).
for k in range(5):
    print(f"T_{k}  = {cheb_T(k)!r}")
print()
for k in range(4):
    print(f"T1_{k} = {cheb_T1(k)!r}")

# Multivariate: a signed composition (2, -1) means the angle
# 2 t_1 - t_2; the polynomial identity encodes the addition formulas.
print("\nT_(2,-1) =", repr(cheb_multi((2, -1), "T")))

# The addition identity T_{kl -+ kr} = T_kl T_kr +- T1_kl T1_kr holds
# as an exact polynomial identity:
ok, _ = verify_addition_identity((2, 1), (1, -1))
print("addition identity for (2,1), (1,-1):", "pass" if ok else "FAIL")

# The famous coefficient table: sigma_(k) = [2]^k a_(k) at m = 3.
print("\nsigma_(k) at m = 3 (these are the braid constants):")
for k in range(1, 5):
    sig = sigma_constant((k,), 3, k)
    # these constants happen to lie in Z[u, u^-1]; print them there
    print(f"  k = {k}: {sig.try_laurent()!r}")

# At u = 1 every sigma_(k) specializes to 2^k cos(k pi / m) -- compare
# against the exact cyclotomic value.
ctx = make_base_field(5)
for kvec in ((1, 0), (0, 1), (1, 1)):
    sig = sigma_constant(kvec, 5, 2)
    phase = sum(j * v for j, v in enumerate(kvec, start=1))
    lhs = sig.specialize_u1()
    rhs = ctx.cos_multiple(phase) * ctx.cyclo_from_rational(4)
    print(f"  m = 5, class {kvec}: sigma(u=1) == 4 cos({phase} pi/5):",
          lhs == rhs)

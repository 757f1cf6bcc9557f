"""Frobenius classes in the 2+S4 field of case 563 and the weight-1 form.

The field is generated by a square root of gamma over the S4 closure of the
quartic.  Frobenius at an unramified p is located in GL2(F3) through
resolvents and a Hensel-lifted Frobenius; its trace in the faithful
2-dimensional representation is a_p of the weight-1 form, an element of
Z[sqrt(-2)].
"""

from s4lift import octahedral
from s4lift.arith import RationalPoly, primes_up_to

M = octahedral.octahedral_field(563)
fmt = lambda c: f"{c[0]}" if not c[1] else (f"{c[1]:+d}s" if not c[0] else f"{c[0]}{c[1]:+d}s")
print("quartic:", M.quartic)
print(f"{'p':>4} {'order':>5}  a_p  (s = sqrt(-2))")
for p in primes_up_to(60):
    if p == 563:
        continue
    k = M.frobenius_class(p)
    print(f"{p:4d} {M.class_order(k):5d}  {fmt(M.trace(k))}")

base = RationalPoly(M.polys[0].coeffs)
W = octahedral.weight1_coefficients(M.quartic, base, -563, {563: "auto"}, 40,
                                    resolver=M, level=563)
print("f = sum a_n q^n:")
print("  " + " ".join(f"{n}:{fmt(c)}" for n, c in enumerate(W.coefficients()) if c != (0, 0)))

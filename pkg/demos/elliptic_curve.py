"""
Tropicalizing a plane cubic
===========================

The curve y^2 z = x^3 + x^2 z + 16 z^3 over the 2-adic numbers.  The
tropical curve is where the minimum of four affine functions is attained
twice.  The Gröbner complex of the cubic refines the linearity regions
of the same function.
"""
import warnings

from tropgrob import HomogeneousIdeal, PAdicField, groebner_complex, parse_polynomial, trop_hypersurface
from tropgrob.tropical import LaurentIdeal, tropicalize, trop_family

Q2 = PAdicField(2)
f = parse_polynomial("y^2*z-x^3-x^2*z-16*z^3", Q2, ("x", "y", "z"))

print("tropical polynomial terms (offset, slope):")
for a, m in trop_family(f).terms:
    print("  ", a, tuple(int(x) for x in m))

curve = trop_hypersurface(f)
print("tropical curve, cells by dimension modulo (1,1,1):", curve.counts(1))

cx = groebner_complex(HomogeneousIdeal([f]), 3)
print("Gröbner complex, cells by dimension modulo (1,1,1):", cx.counts(1))

# the affine chart z = 1 gives the same curve without the lineality
affine = parse_polynomial("y^2-x^3-x^2-16", Q2, ("x", "y"))
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    trop = tropicalize(LaurentIdeal([affine]))
print("affine tropical curve:", trop.counts())
for c in trop.cells:
    if c.dim == 0:
        print("  vertex at", [str(x) for x in c.point])

"""
A fan structure that depends on coordinates
===========================================

A plane in 5-space has a tropicalization with 5 rays and 10 cones modulo
its lineality space.  Moving the plane by a monomial change of
coordinates moves the tropicalization by a linear map.  The Gröbner
structure inherited by the image subdivides two of the cones, giving 7
rays and 12 cones.  This takes a minute or two.
"""
import time
import warnings

from tropgrob import PuiseuxField, parse_polynomial
from tropgrob.tropical import LaurentIdeal, homogenized_ideal, image_under_monomial_map, tropicalize

K = PuiseuxField(1)
names = tuple("abcde")
I = LaurentIdeal([parse_polynomial(t, K, names) for t in ("a+b+c+d+e", "3*b+5*c+7*d+11*e")])


def summary(cx):
    counts = cx.counts(len(cx.lineality()))
    return f"{counts.get(1, 0)} rays, {counts.get(2, 0)} cones, lineality {cx.lineality()}"


warnings.simplefilter("ignore")
print("plane:", summary(tropicalize(I)))

# a -> ab, b -> bc, c -> cd, d -> de, e -> e
images = [[1, 1, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 1], [0, 0, 0, 0, 1]]
J = image_under_monomial_map(I, images)
print("image ideal:", J)

# exact saturation is needed: one generator of the homogenized ideal has degree 3
Jh = homogenized_ideal(J, saturation="elimination")
print("homogenized generator degrees:", Jh.gen_degrees())

t = time.perf_counter()
print("image:", summary(tropicalize(J, saturation="elimination")), f"({time.perf_counter() - t:.0f} s)")

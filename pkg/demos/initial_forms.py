"""
Initial forms and initial ideals
================================

Weights pick out the lowest terms of a polynomial, counting both the
valuation of each coefficient and the weighted degree of its monomial.
For ideals the same recipe is applied to every element, which can give
more than the initial forms of the generators.
"""
from tropgrob import HomogeneousIdeal, PAdicField, initial_form, parse_polynomial, trop_eval
from tropgrob.ideal_graded import generic_monomial_initial, initial_generators
from tropgrob.poly import epsilon_bound, initial_form_residue

Q2 = PAdicField(2)

# 2-adic valuations: val(6) = 1, val(5) = 0, val(7) = 0
f = parse_polynomial("6*x^2+5*x*y+7*y^2", Q2, ("x", "y"))
w = (1, 2)
W, argmin = trop_eval(f, w)
print("trop(f)(1,2) =", W, "attained at", sorted(argmin))
print("initial form:", initial_form(f, w))

# refining the weight in direction v picks a single term
v = (0, 1)
eps = epsilon_bound(f, w, v)
print("in_v(in_w f) =", initial_form_residue(initial_form(f, w), v), " valid for 0 < e <", eps)

# both generators have initial form x, yet the initial ideal is <x, y>
names = ("x", "y", "z")
I = HomogeneousIdeal([parse_polynomial(t, Q2, names) for t in ("x+2*y", "x+4*z")])
w = (1, 1, 1)
print("initial forms of generators:", [str(initial_form(g, w)) for g in I.generators])
print("initial ideal up to degree 2:", [str(g) for g in initial_generators(I, w, 2)])

# at a weight where three terms tie, a small perturbation makes the initial ideal monomial
Q3 = PAdicField(3)
J = HomogeneousIdeal([parse_polynomial("3*x+8*y+6*z", Q3, names)])
w = (0, 1, 0)
print("initial form at (0,1,0):", initial_form(J.generators[0], w))
pert = generic_monomial_initial(J, w, 1)
print("direction", tuple(int(x) for x in pert.v), "with step", pert.epsilon,
      "gives monomial generators", pert.gens)

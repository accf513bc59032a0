"""
A Gröbner complex over the 3-adic numbers
=========================================

The linear form 3x + 8y + 6z has three monomial initial ideals, one per
variable.  Their cells are cones modulo the line spanned by (1, 1, 1).
The picture is written next to this script.
"""
from pathlib import Path

from tropgrob import HomogeneousIdeal, PAdicField, cone_of, groebner_complex, parse_polynomial
from tropgrob.grobner_complex import maximal_labels
from tropgrob.polyhedra import project_quotient
from tropgrob.render import RenderSpec, render_svg

Q3 = PAdicField(3)
I = HomogeneousIdeal([parse_polynomial("3*x+8*y+6*z", Q3, ("x", "y", "z"))])

cell = cone_of(I, (1, 1, 1), 1)
print("cell of (1,1,1):", cell.poly)
print("its initial ideal:", [str(g) for g in cell.initial_gens])

# the two algorithms must produce the same cells
cx = groebner_complex(I, 1, mode="both")
print("cells by dimension, modulo lineality:", cx.counts(1))
for lab in maximal_labels(cx):
    print("  maximal cell with initial ideal", [str(g) for g in lab.initial_gens],
          "around", [str(x) for x in lab.representative_w])

flat = project_quotient(cx, (1, 1, 1))
label = lambda cell: "<" + ", ".join(str(g) for g in cell.initial_gens) + ">"
out = Path(__file__).with_name("groebner_complex_figure.svg")
out.write_text(render_svg(flat, RenderSpec(label_fn=label, title="3x + 8y + 6z over Q_3")))
print("wrote", out.name)

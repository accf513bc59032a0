"""Command line interface: ``tropgrob <command> FILE [options]``.

Problem files are line oriented::

    field Qp p=3            # or: field Qt N=2
    ring x,y,z
    poly 3*x+8*y+6*z
    weight 1,1,1
    option D=1 slack=2 mode=traversal seed=7

Exit codes: 0 success, 2 input error, 3 internal inconsistency, 4 resource cap.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GenerationWarning, InternalInconsistency, ParseError, ResourceLimit, TropgrobError
from .grobner_complex import DEFAULT_CAP, default_degree, groebner_complex, grobner_json
from .ideal_graded import DEFAULT_SEED, HomogeneousIdeal, hilbert_dim
from .linalg import rank
from .poly import initial_form, parse_polynomial
from .polyhedra import PolyhedralComplex, complex_json, project_quotient, qstr
from .render import RenderSpec, render_svg
from .tropical import (
    DEFAULT_SLACK,
    IdealIsUnit,
    LaurentIdeal,
    homogenized_ideal,
    image_under_monomial_map,
    saturation_defects,
    trop_hypersurface,
    tropical_basis,
    tropicalize,
    verify_tropical_basis,
)
from .valued_field import make_field

MODES = ("state", "traversal", "both")
SATURATIONS = ("slack", "elimination")


@dataclass
class Problem:
    domain: object = None
    names: tuple = ()
    polys: list = field(default_factory=list)
    weights: list = field(default_factory=list)
    options: dict = field(default_factory=dict)


def _parse_weight(text: str, lineno: int) -> tuple:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"line {lineno}: bad weight {text!r}") from e


def parse_problem(text: str) -> Problem:
    prob = Problem()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            parts = rest.split()
            if len(parts) != 2 or "=" not in parts[1]:
                raise ParseError(f"line {lineno}: expected 'field Qp p=<prime>' or 'field Qt N=<int>'")
            key, _, val = parts[1].partition("=")
            if (parts[0], key) not in (("Qp", "p"), ("Qt", "N")):
                raise ParseError(f"line {lineno}: unknown field {rest!r}")
            try:
                prob.domain = make_field(parts[0], int(val))
            except ValueError as e:
                raise ParseError(f"line {lineno}: {e}") from e
        elif head == "ring":
            names = tuple(x.strip() for x in rest.split(","))
            if not all(n.isidentifier() for n in names) or len(set(names)) != len(names):
                raise ParseError(f"line {lineno}: bad variable list {rest!r}")
            prob.names = names
        elif head == "poly":
            if prob.domain is None or not prob.names:
                raise ParseError(f"line {lineno}: 'field' and 'ring' must come before 'poly'")
            prob.polys.append(parse_polynomial(rest, prob.domain, prob.names))
        elif head == "weight":
            prob.weights.append(_parse_weight(rest, lineno))
        elif head == "option":
            for item in rest.split():
                key, eq, val = item.partition("=")
                if not eq or key not in ("D", "slack", "mode", "seed"):
                    raise ParseError(f"line {lineno}: bad option {item!r}")
                if key == "mode":
                    if val not in MODES:
                        raise ParseError(f"line {lineno}: mode must be one of {', '.join(MODES)}")
                    prob.options[key] = val
                else:
                    try:
                        prob.options[key] = int(val)
                    except ValueError as e:
                        raise ParseError(f"line {lineno}: option {key} needs an integer") from e
        else:
            raise ParseError(f"line {lineno}: unknown directive {head!r}")
    if prob.domain is None or not prob.names:
        raise ParseError("missing 'field' or 'ring' line")
    if not prob.polys:
        raise ParseError("no 'poly' lines")
    for w in prob.weights:
        if len(w) != len(prob.names):
            raise ParseError(f"weight {','.join(map(str, w))} has {len(w)} entries for {len(prob.names)} variables")
    return prob


def _settings(prob: Problem, args) -> dict:
    out = {"D": None, "slack": DEFAULT_SLACK, "mode": "traversal", "seed": DEFAULT_SEED}
    out.update(prob.options)
    for key in out:
        v = getattr(args, key, None)
        if v is not None:
            out[key] = v
    out["saturation"] = getattr(args, "saturation", None) or "slack"
    cap = os.environ.get("TROPGROB_CAP")
    try:
        out["cap"] = int(cap) if cap else DEFAULT_CAP
    except ValueError as e:
        raise ParseError(f"TROPGROB_CAP must be an integer, got {cap!r}") from e
    return out


def parse_monomial_map(text: str, prob: Problem) -> list:
    """``"a=a*b, b=b*c, ..."`` to the exponent rows of the images of the variables.

    Unlisted variables map to themselves.
    """
    n = len(prob.names)
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for item in text.split(","):
        name, eq, expr = item.partition("=")
        name = name.strip()
        if not eq or name not in prob.names:
            raise ParseError(f"bad monomial map entry {item.strip()!r}")
        m = parse_polynomial(expr.strip(), prob.domain, prob.names)
        if len(m.terms) != 1 or next(iter(m.terms.values())) != 1:
            raise ParseError(f"image of {name} must be a monic monomial, got {expr.strip()!r}")
        rows[prob.names.index(name)] = list(next(iter(m.terms)))
    return rows


def _ideal(prob: Problem, args, polys=None):
    polys = prob.polys if polys is None else polys
    if getattr(args, "image_map", None):
        return image_under_monomial_map(polys, parse_monomial_map(args.image_map, prob))
    return LaurentIdeal(polys)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _planar(cx: PolyhedralComplex) -> PolyhedralComplex:
    """Project along (1,...,1) when that is a lineality direction, to reach the plane."""
    if cx.ambient == 3 and cx.is_empty():
        return PolyhedralComplex.empty(2)
    if cx.ambient == 3:
        ones = [1] * 3
        lin = cx.lineality()
        if lin and rank([list(map(Fraction, v)) for v in lin] + [list(map(Fraction, ones))], 3) == len(lin):
            return project_quotient(cx, ones)
    return cx


def _write_svg(cx: PolyhedralComplex, path: str, label_fn=None, title=""):
    svg = render_svg(_planar(cx), RenderSpec(label_fn=label_fn, title=title))
    with open(path, "w") as fh:
        fh.write(svg)


def _cell_text(cell) -> str:
    return "<" + ", ".join(str(g) for g in cell.initial_gens) + ">" if cell is not None else ""


def _gen_check_homogeneous(I: HomogeneousIdeal, D: int):
    from .elimination import hilbert_function
    ours = [hilbert_dim(I, d) for d in range(D + 1)]
    ref = hilbert_function(I.generators, D)
    if ours != ref:
        warnings.warn(GenerationWarning(
            f"gen-check: Hilbert function {ours} from graded pieces disagrees with {ref} from a Gröbner basis"))


def _gen_check_laurent(ideal, s: dict):
    Ih = homogenized_ideal(ideal, s["D"], s["slack"], s["saturation"])
    D = s["D"] if s["D"] is not None else max(Ih.gen_degrees())
    bad = saturation_defects(Ih, D)
    if bad:
        d, i = bad[0]
        warnings.warn(GenerationWarning(
            f"gen-check: homogenized ideal is not saturated; a degree {d} form times {Ih.names[i]} lies in it "
            f"({len(bad)} such degree and variable pairs below degree {D})"))


def cmd_initial_form(prob: Problem, args) -> str:
    if args.weight is not None:
        w = _parse_weight(args.weight, 0)
    elif prob.weights:
        w = prob.weights[0]
    else:
        raise ParseError("initial-form needs a weight (file 'weight' line or --weight)")
    return "".join(str(initial_form(f, w)) + "\n" for f in prob.polys)


def cmd_groebner_complex(prob: Problem, args) -> str:
    s = _settings(prob, args)
    I = HomogeneousIdeal(prob.polys)
    D = default_degree(I, s["seed"]) if s["D"] is None else s["D"]
    if args.gen_check:
        _gen_check_homogeneous(I, D)
    cx = groebner_complex(I, D, mode=s["mode"], seed=s["seed"], cap=s["cap"])
    if args.svg:
        _write_svg(cx, args.svg, _cell_text)
    return _dump(grobner_json(cx))


def _tropical_json(cx: PolyhedralComplex) -> dict:
    return complex_json(cx, lambda cell: cell.to_json() if hasattr(cell, "to_json") else {"label": None})


def cmd_tropicalize(prob: Problem, args) -> str:
    s = _settings(prob, args)
    if args.gen_check:
        _gen_check_laurent(_ideal(prob, args), s)
    try:
        cx = tropicalize(_ideal(prob, args), s["D"], s["slack"], s["mode"], s["seed"], s["cap"], s["saturation"])
    except IdealIsUnit:
        cx = PolyhedralComplex.empty(len(prob.names))
    if args.svg:
        _write_svg(cx, args.svg)
    return _dump(_tropical_json(cx))


def cmd_trop_hypersurface(prob: Problem, args) -> str:
    if len(prob.polys) != 1:
        raise ParseError("trop-hypersurface takes exactly one 'poly' line")
    cx = trop_hypersurface(prob.polys[0])
    if args.svg:
        _write_svg(cx, args.svg)
    return _dump(complex_json(cx, lambda lab: {"active": [list(u) for u in lab]}))


def cmd_tropical_basis(prob: Problem, args) -> str:
    s = _settings(prob, args)
    if args.gen_check:
        _gen_check_laurent(_ideal(prob, args), s)
    TB = tropical_basis(_ideal(prob, args), s["D"], s["slack"], s["mode"], s["seed"], s["cap"], s["saturation"])
    return _dump({
        "polynomials": [str(f) for f in TB.polynomials],
        "certificate": [{"representative_w": [qstr(x) for x in w], "basis_index": i} for w, i in TB.certificate],
    })


def cmd_verify_basis(prob: Problem, args) -> str:
    s = _settings(prob, args)
    ideal = prob.polys
    if args.ideal:
        with open(args.ideal) as fh:
            other = parse_problem(fh.read())
        if other.domain != prob.domain or other.names != prob.names:
            raise ParseError("the ideal file must use the same field and ring")
        ideal = other.polys
    if args.gen_check:
        _gen_check_laurent(_ideal(prob, args, ideal), s)
    ok, w = verify_tropical_basis(prob.polys, _ideal(prob, args, ideal), s["D"], s["slack"], s["mode"], s["seed"],
                                  s["cap"], s["saturation"])
    return _dump({"verified": ok, "witness": None if w is None else [qstr(x) for x in w]})


COMMANDS = {
    "initial-form": cmd_initial_form,
    "groebner-complex": cmd_groebner_complex,
    "tropicalize": cmd_tropicalize,
    "trop-hypersurface": cmd_trop_hypersurface,
    "tropical-basis": cmd_tropical_basis,
    "verify-basis": cmd_verify_basis,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropgrob", description="Initial ideals, Gröbner complexes and tropical varieties.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("file", help="problem file ('-' for stdin)")
        sp.add_argument("--output", "-o", help="write the result here instead of stdout")
        if name == "initial-form":
            sp.add_argument("--weight", "-w", help="comma separated rationals")
            continue
        if name != "trop-hypersurface":
            sp.add_argument("--D", type=int, dest="D", help="degree bound")
            sp.add_argument("--slack", type=int)
            sp.add_argument("--mode", choices=MODES)
            sp.add_argument("--seed", type=int)
            sp.add_argument("--gen-check", dest="gen_check", action="store_true",
                            help="cross-check that the generators generate degreewise up to D")
        if name in ("groebner-complex", "tropicalize", "trop-hypersurface"):
            sp.add_argument("--svg", help="also draw the complex (planar after projection) to this file")
        if name in ("tropicalize", "tropical-basis", "verify-basis"):
            sp.add_argument("--saturation", choices=SATURATIONS,
                            help="slack: bounded degreewise saturation; elimination: exact polynomial part")
            sp.add_argument("--image-map", dest="image_map",
                            help="replace the ideal by its image under a monomial map, e.g. 'a=a*b,b=b*c'")
        if name == "verify-basis":
            sp.add_argument("--ideal", help="problem file with generators of the ideal (default: the same polynomials)")
    return p


def run(argv=None) -> tuple[int, str, str]:
    """Run a command and return ``(exit code, stdout text, stderr text)``."""
    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file) as fh:
                text = fh.read()
        prob = parse_problem(text)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = COMMANDS[args.command](prob, args)
        err = "".join(f"warning: {w.message}\n" for w in caught)
    except OSError as e:
        return 2, "", f"error: {e}\n"
    except InternalInconsistency as e:
        return 3, "", f"internal error ({type(e).__name__}): {e}\n"
    except ResourceLimit as e:
        return 4, "", f"resource limit ({type(e).__name__}): {e}\n"
    except (TropgrobError, ValueError, TypeError) as e:
        return 2, "", f"error ({type(e).__name__}): {e}\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(result)
        return 0, "", err
    return 0, result, err


def main(argv=None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())

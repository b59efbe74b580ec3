"""Command-line front end: ``cuspenv <subcommand> ...``.

Every subcommand prints one JSON report (or CSV / SVG with ``--format``).
Exit status: 0 success, 2 when the computation succeeded but the verdict is
negative (not certified, not miniversal, not generic), 1 on errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from .. import __version__
from .. import bifurcate as bif
from .. import ctf as ctfmod
from .. import envelope as env
from .. import orbitspace as orb
from ..jets import DEFAULT_ORDER, CoordChangeJet, MapJet, TruncatedSeries, compose, invert_coordinate_change, \
    jacobian_determinant
from . import render
from .parser import ParseError, format_germ, parse_directions, parse_expression, parse_germ

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with 2, which means "negative verdict" here
        raise UsageError(message)


# -- helpers -------------------------------------------------------------------------------


def _assignments(items: Sequence[str] | None) -> Dict[str, Fraction]:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--set expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = Fraction(v.strip())
    return out


def _window(text: str | None, default=(-1.0, 1.0, -1.0, 1.0)):
    if not text:
        return default
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 4 or parts[0] >= parts[1] or parts[2] >= parts[3]:
        raise UsageError("--window expects x0,x1,y0,y1 with x0 < x1 and y0 < y1")
    return tuple(parts)


def _grid(text: str | None, default=(512, 512)):
    if not text:
        return default
    m = re.fullmatch(r"\s*(\d+)\s*[x×X]\s*(\d+)\s*", text)
    if not m:
        raise UsageError("--grid expects WxH, e.g. 512x512")
    return int(m.group(1)), int(m.group(2))


def _germ(args) -> MapJet:
    g = parse_germ(args.germ, args.order)
    if not isinstance(g, MapJet):
        raise UsageError("this subcommand needs a plane germ (components separated by ';')")
    values = _assignments(args.set)
    if values:
        g = g.subs_params(values)
    return g


def _report(command: str, inputs: dict, result: dict, order: int, notes: Sequence[str] = ()) -> dict:
    return {
        "command": command,
        "input": inputs,
        "result": result,
        "version": __version__,
        "schemaVersion": SCHEMA_VERSION,
        "exactness": {"workingOrder": order, "notes": list(notes)},
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _inputs(args, *names) -> dict:
    out = {}
    for n in names:
        v = getattr(args, n, None)
        if v is not None:
            out[n] = v if not isinstance(v, tuple) else list(v)
    out["order"] = args.order
    return out


class Outcome:
    def __init__(self, text: str, code: int = EXIT_OK):
        self.text = text
        self.code = code


def _emit_json(command, inputs, result, order, notes=(), code=EXIT_OK) -> Outcome:
    return Outcome(dumps(_report(command, inputs, result, order, notes)), code)


# -- subcommands ------------------------------------------------------------------------------


def cmd_jet(args) -> Outcome:
    f = _germ(args)
    op = args.op
    if op == "show":
        out = f
    elif op == "jacobian":
        out = MapJet([jacobian_determinant(f)])
    elif op == "truncate":
        out = f.truncate(args.degree if args.degree is not None else f.order)
    elif op == "compose":
        if not args.inner:
            raise UsageError("--op compose needs --inner")
        inner = parse_germ(args.inner, args.order)
        out = MapJet([compose(c, inner) for c in f])
    elif op == "invert":
        out = invert_coordinate_change(CoordChangeJet(list(f)))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(op)
    names = ("x", "y")
    result = {"operation": op, "jet": format_germ(out), "order": out.order,
              "components": [c.format(names[:c.nvars]) for c in out]}
    return _emit_json("jet", _inputs(args, "germ", "op", "inner", "degree"), result, out.order)


def cmd_determinacy(args) -> Outcome:
    f = _germ(args)
    cert = orb.du_plessis_determinacy(f, args.k, args.l)
    result = cert.as_dict()
    result["determinant"] = None if cert.inclusion5.determinant is None else str(cert.inclusion5.determinant)
    result["determinacyDegree"] = orb.determinacy_degree(f, args.k + args.l) if cert.certified else None
    notes = [f"inclusions checked in the quotients (k, l) = ({args.k}, {args.l})",
             "a negative certificate proves nothing about determinacy"]
    code = EXIT_OK if cert.certified else EXIT_NEGATIVE
    return _emit_json("determinacy", _inputs(args, "germ", "k", "l"), result, f.order, notes, code)


def cmd_codim(args) -> Outcome:
    f = _germ(args)
    res = orb.extended_codimension(f, args.cap, require_certificate=False)
    code = EXIT_NEGATIVE if res.lower_bound else EXIT_OK
    notes = [f"computed modulo degree {res.cap}"]
    return _emit_json("codim", _inputs(args, "germ", "cap"), res.as_dict(), f.order, notes, code)


def cmd_miniversal(args) -> Outcome:
    f = _germ(args)
    g = parse_expression(args.germ, args.order)
    dirs = parse_directions(args.direction or [], g.params, args.order)
    values = _assignments(args.set)
    if values:
        dirs = [d.subs_params(values) for d in dirs]
    res = orb.extended_codimension(f, args.cap, require_certificate=False)
    ok = orb.is_miniversal(f, dirs, args.cap)
    result = dict(res.as_dict(), miniversal=ok, directions=[format_germ(d) for d in dirs])
    code = EXIT_OK if ok else EXIT_NEGATIVE
    return _emit_json("miniversal", _inputs(args, "germ", "direction", "cap"), result, f.order, [], code)


def _ctf(args):
    d = parse_germ(args.ctf, args.order)
    if not isinstance(d, ctfmod.CTFData):
        raise UsageError("--ctf expects 'alpha: ...; A: ...; B: ...; C: ...; D: ...'")
    values = _assignments(args.set)
    if values:
        sub = lambda cs: [c.subs(values) for c in cs]
        rem = None if d.remainder is None else d.remainder.subs_params(values)
        d = ctfmod.CTFData.make(sub(d.alpha), sub(d.A), sub(d.B), sub(d.C), sub(d.D), rem, d.order)
    return d


def cmd_ctf_classify(args) -> Outcome:
    d = _ctf(args)
    if args.format == "svg":
        return Outcome(family_svg(d, args.xi_range))
    gen = ctfmod.genericity(d)
    curve, tag = ctfmod.special_curve(d)
    result = {"genericity": gen.as_dict(), "specialCurve": curve.format(("t",)), "specialCurveTag": tag,
              "classification": None}
    code = EXIT_OK
    try:
        result["classification"] = ctfmod.classify_graph(d).as_dict()
    except ctfmod.GenericityError as exc:
        result["rejected"] = str(exc)
        code = EXIT_NEGATIVE
    return _emit_json("ctf-classify", _inputs(args, "ctf"), result, d.order, [], code)


def family_svg(d, xi_range: Optional[str] = None) -> str:
    """Family members t -> phi(xi, t) for several xi, with the support (xi^2, xi^3)."""
    lo, hi, count = _range(xi_range or "-0.3,0.3,7")
    fam = ctfmod.build_family(d)
    t = np.linspace(-0.6, 0.6, 241)
    curves = []
    for xi in np.linspace(lo, hi, count):
        curves.append(np.column_stack([np.asarray(c.evaluate([xi, t]), float) * np.ones_like(t) for c in fam]))
    s = np.linspace(-0.6, 0.6, 241)
    return render.render_family(curves, np.column_stack([s ** 2, s ** 3]), "cusped tangential family")


def _range(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("ranges are given as lo,hi,count")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _sample_images(result: env.EnvelopeResult, values: Dict[str, Fraction], radius: float):
    curves, labels = [], []
    params = {k: float(v) for k, v in values.items()}
    for b in result.branches:
        if b.image is None:
            continue
        if b.image.params() - set(params):
            raise UsageError(f"assign parameters {sorted(b.image.params())} with --set to sample branches")
        curves.append(env.sample_branch(b, params, (-radius, radius), 401))
        labels.append(f"{b.label}: {b.tag}")
    return curves, labels


def cmd_envelope(args) -> Outcome:
    f = _germ(args)
    if args.format == "csv":
        if f.params():
            raise UsageError(f"assign parameters {sorted(f.params())} with --set for numeric output")
        cloud = env.numeric_envelope(f, window=_window(args.window), resolution=_grid(args.grid))
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "X", "Y"])
        for (a, b), (c, e) in zip(cloud.source, cloud.image):
            w.writerow([f"{a:.12g}", f"{b:.12g}", f"{c:.12g}", f"{e:.12g}"])
        return Outcome(buf.getvalue())
    res = env.envelope_of(f)
    if args.format == "svg":
        curves, labels = _sample_images(res, _assignments(args.set), args.radius)
        return Outcome(render.render_envelope(curves, labels, title="envelope"))
    notes = ["branches through the origin only; working order per branch in 'order'"]
    return _emit_json("envelope", _inputs(args, "germ"), res.as_dict(), f.order, notes)


def cmd_bifurcate(args) -> Outcome:
    delta = Fraction(args.delta)
    if args.format == "svg":
        data = bif.diagram_data(delta, Fraction(args.radius_param), resolution=_grid(args.grid, (200, 200))[0])
        return Outcome(diagram_svg(data))
    inputs = _inputs(args, "family", "germ", "axis", "delta", "values")
    if args.family == "grid":
        lo, hi, count = _range(args.values or "-0.1,0.1,8")
        vals = [Fraction(lo) + (Fraction(hi) - Fraction(lo)) * k / (count - 1) for k in range(count)]
        sig, events = bif.grid_sweep(delta, vals, vals)
        grid = [{"lam": str(k[0]), "mu": str(k[1]), "pairing": ["".join(c) for c in v]} for k, v in sorted(sig.items())]
        result = {"family": "Psi", "delta": str(delta), "grid": grid, "events": [e.as_dict() for e in events]}
        return _emit_json("bifurcate", inputs, result, DEFAULT_ORDER, ["beaks events are structural (low confidence)"])
    if args.germ:
        fam = parse_germ(args.germ, args.order)
        if not isinstance(fam, bif.DeformationFamily):
            raise UsageError("--germ for bifurcate needs a 'deform <name>;' clause")
        if args.axis is None:
            raise UsageError("--axis is required with --germ")
        axis = args.axis
        fam = bif.DeformationFamily(fam.base.subs_params({"d": delta}) if "d" in fam.base.params() else fam.base,
                                    fam.terms, "custom")
    else:
        makers = {"H": (bif.h_family, bif.LAM), "K": (bif.k_family, bif.MU), "nu": (bif.nu_family, bif.NU)}
        maker, axis = makers[args.family]
        fam = maker(delta, args.order)
    lo, hi, count = _range(args.values or "-0.1,0.1,21")
    vals = [Fraction(lo).limit_denominator(10 ** 9) + (Fraction(hi).limit_denominator(10 ** 9)
            - Fraction(lo).limit_denominator(10 ** 9)) * k / (count - 1) for k in range(count)]
    res = bif.sweep(fam, axis, vals)
    notes = [f"event locations bisected to width {bif.BISECTION_WIDTH}"]
    return _emit_json("bifurcate", inputs, res.as_dict(), fam.order, notes)


def diagram_svg(data: "bif.DiagramData") -> str:
    r = float(data.quadrants["++"]["lam"]) * 2 if data.quadrants else 1.0
    markers = []
    for e in data.events:
        if isinstance(e.location, (int, float, Fraction)):
            if e.stratum.startswith(bif.LAM):  # gamma-to-U of the lam sweep sits at lam = 0 on the lam axis
                markers.append((float(e.location), 0.0, e.kind))
            elif e.stratum.startswith(bif.MU):
                markers.append((0.0, float(e.location), e.kind))
    quads = {k: v["cloud"] for k, v in data.quadrants.items()}
    return render.render_bifurcation(quads, markers, r, "double cusp perestroikas")


def cmd_render(args) -> Outcome:
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            rep = json.load(fh)
        return Outcome(render_report(rep, _assignments(args.set), args.radius))
    if args.ctf:
        return Outcome(family_svg(_ctf(args), args.xi_range))
    if args.germ:
        f = _germ(args)
        curves, labels = _sample_images(env.envelope_of(f), _assignments(args.set), args.radius)
        return Outcome(render.render_envelope(curves, labels))
    return Outcome(render.render_envelope([], []))


def render_report(rep: dict, values: Dict[str, Fraction], radius: float = 0.5) -> str:
    """SVG for a saved JSON report (numeric sampling of symbolic series)."""
    cmd = rep.get("command")
    res = rep.get("result", {})
    if cmd == "envelope":
        curves, labels = [], []
        params = {k: float(v) for k, v in values.items()}
        for b in res.get("branches", []):
            if "image" not in b:
                continue
            comps = [_parse_s_series(t, b.get("order", DEFAULT_ORDER)) for t in b["image"]]
            curves.append(env.sample_branch(MapJet(comps), params, (-radius, radius), 401))
            labels.append(f"{b['label']}: {b['tag']}")
        return render.render_envelope(curves, labels)
    if cmd == "bifurcate":
        markers = []
        axis = res.get("axis")
        for e in res.get("events", []):
            if isinstance(e.get("location"), (int, float)):
                markers.append((e["location"], 0.0, e["kind"]) if axis == bif.LAM else (0.0, e["location"], e["kind"]))
        return render.render_bifurcation({}, markers, radius, "bifurcation events")
    if cmd == "ctf-classify":
        d = parse_germ(rep["input"]["ctf"], rep["input"].get("order", DEFAULT_ORDER))
        return family_svg(d)
    return render.render_envelope([], [], title=str(cmd))


def _parse_s_series(text: str, order: int) -> TruncatedSeries:
    names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)) - {"s"})
    head = f"param {', '.join(names)}; " if names else ""
    g = parse_expression(head + text.replace("s", "x") if "s" in text and not names else head + re.sub(r"\bs\b", "x", text),
                         max(order, 1))
    c = g.components[0]
    return TruncatedSeries({(e[0],): v for e, v in c.items()}, c.order, 1)


# -- argument parsing -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--order", type=int, default=DEFAULT_ORDER, help="working order (default 8)")
    common.add_argument("--out", help="write output to FILE instead of standard output")
    common.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    common.add_argument("--grid", help="numeric grid WxH (envelope csv, bifurcation svg)")
    common.add_argument("--window", help="numeric window x0,x1,y0,y1")
    common.add_argument("--set", action="append", metavar="NAME=VALUE", help="assign a parameter value")

    p = _Parser(prog="cuspenv", description="Jets, determinacy, envelopes and bifurcations of plane map germs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("jet", parents=[common], help="jet arithmetic")
    s.add_argument("--germ", required=True)
    s.add_argument("--op", choices=("show", "jacobian", "compose", "invert", "truncate"), default="show")
    s.add_argument("--inner", help="inner map for --op compose")
    s.add_argument("--degree", type=int, help="degree for --op truncate")
    s.set_defaults(func=cmd_jet)

    s = sub.add_parser("determinacy", parents=[common], help="du Plessis determinacy certificate")
    s.add_argument("--germ", required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--l", type=int, default=2)
    s.set_defaults(func=cmd_determinacy)

    s = sub.add_parser("codim", parents=[common], help="extended codimension")
    s.add_argument("--germ", required=True)
    s.add_argument("--cap", type=int)
    s.set_defaults(func=cmd_codim)

    s = sub.add_parser("miniversal", parents=[common], help="miniversality of a set of directions")
    s.add_argument("--germ", required=True)
    s.add_argument("--direction", action="append", help="deformation direction such as 'y ; 0' (repeatable)")
    s.add_argument("--cap", type=int)
    s.set_defaults(func=cmd_miniversal)

    s = sub.add_parser("ctf-classify", parents=[common], help="graph singularity of a cusped tangential family")
    s.add_argument("--ctf", required=True)
    s.add_argument("--xi-range", help="lo,hi,count of family members for --format svg")
    s.set_defaults(func=cmd_ctf_classify)

    s = sub.add_parser("envelope", parents=[common], help="envelope branches of a germ")
    s.add_argument("--germ", required=True)
    s.add_argument("--radius", type=float, default=0.5, help="branch parameter range for svg sampling")
    s.set_defaults(func=cmd_envelope)

    s = sub.add_parser("bifurcate", parents=[common], help="sweeps of the miniversal deformation")
    s.add_argument("--family", choices=("H", "K", "nu", "grid"), default="H")
    s.add_argument("--germ", help="custom family with a 'deform' clause")
    s.add_argument("--axis")
    s.add_argument("--delta", default="1")
    s.add_argument("--values", help="lo,hi,count sample values")
    s.add_argument("--radius-param", default="1/20", help="quadrant representative radius for --format svg")
    s.set_defaults(func=cmd_bifurcate)

    s = sub.add_parser("render", parents=[common], help="SVG from a report, a germ or a family")
    s.add_argument("--input", help="JSON report produced by another subcommand")
    s.add_argument("--germ")
    s.add_argument("--ctf")
    s.add_argument("--xi-range")
    s.add_argument("--radius", type=float, default=0.5)
    s.set_defaults(func=cmd_render)
    return p


_NUMERIC_OPTS = {"--values", "--window", "--xi-range", "--delta", "--set", "--radius", "--radius-param"}


def _join_negative(argv: Sequence[str]) -> List[str]:
    """Let ``--values -0.1,0.1,5`` through: argparse would read ``-0.1,...`` as an option."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in _NUMERIC_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _join_negative(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (UsageError, ParseError, ValueError, ArithmeticError, KeyError, OSError) as exc:
        payload = {"error": str(exc).strip("'\""), "type": type(exc).__name__}
        if isinstance(exc, ParseError):
            payload["position"] = exc.position
        stderr.write(json.dumps(payload, sort_keys=True) + "\n")
        return EXIT_ERROR
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out.text)
    else:
        stdout.write(out.text)
    return out.code


def main() -> None:
    sys.exit(run())

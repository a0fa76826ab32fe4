"""Command-line surface.

Exit codes: 0 = overall verified, 1 = refuted, 2 = inconclusive,
3 = input error. Malformed input never produces a traceback.

The default search bound is 3; it can be overridden per run with
--bound or globally through the KUMMERLAT_BOUND environment variable.
Reports print exact rationals only. FILE arguments accept "-" for stdin.
"""

from __future__ import annotations

import argparse
import os
import sys

from .brauer import brauer_class_of, kernel_with_coords, order_of
from .construction import run_example43
from .hodge import hodge_lattice, ns_and_picard, transcendental_lattice
from .kummer import kummer_brauer_class, kummer_transcendental, t_equivalence
from .lattice import LatticeError, discriminant_form, render_lattice
from .report import EXIT_INPUT_ERROR, INCONCLUSIVE, REFUTED, VERIFIED, Report
from .specdoc import SpecParseError, parse_spec


def _default_bound():
    raw = os.environ.get("KUMMERLAT_BOUND")
    if raw is None:
        return 3
    try:
        value = int(raw)
    except ValueError:
        return 3
    return value if value >= 1 else 3


def _read_file(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="kummerlat",
        description="Exact lattice checks for twisted transcendental structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_file=True):
        if with_file:
            p.add_argument("file", metavar="FILE", help="input document, '-' for stdin")
        p.add_argument("--report", metavar="PATH", help="write a JSON report")
        p.add_argument("--quiet", action="store_true", help="suppress stdout")

    p = sub.add_parser("lattice-info", help="canonical rendering of a named lattice")
    add_common(p)
    p.add_argument("--name", required=True)

    p = sub.add_parser("disc", help="discriminant form of a named lattice")
    add_common(p)
    p.add_argument("--name", required=True)

    p = sub.add_parser("twist", help="rescale the form of a named lattice")
    add_common(p)
    p.add_argument("--name", required=True)
    p.add_argument("--by", required=True, type=int, metavar="M")

    p = sub.add_parser("transcendental", help="transcendental and NS sublattices")
    add_common(p)
    p.add_argument("--period", required=True, metavar="NAME")

    p = sub.add_parser("kernel", help="Brauer class of a B-field and its kernel")
    add_common(p)
    p.add_argument("--bfield", required=True, metavar="NAME")
    p.add_argument("--sublattice", metavar="NAME",
                   help="transcendental sublattice; defaults to the full lattice")

    p = sub.add_parser("theta", help="transport a Brauer class to the Kummer side")
    add_common(p)
    p.add_argument("--surface", metavar="NAME", help="surface section to use")

    p = sub.add_parser("tequiv", help="T-equivalence of two twisted surfaces")
    p.add_argument("file1", metavar="FILE1")
    p.add_argument("file2", metavar="FILE2")
    p.add_argument("--report", metavar="PATH")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--bound", type=int, default=None)

    p = sub.add_parser("example43", help="run the order-n worked construction")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--report", metavar="PATH")
    p.add_argument("--quiet", action="store_true")

    return parser


def _emit(args, text, report=None):
    if not args.quiet and text:
        sys.stdout.write(text)
    if getattr(args, "report", None) and report is not None:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())


def _cmd_lattice_info(args):
    doc = parse_spec(_read_file(args.file))
    if args.name not in doc.lattices:
        raise LatticeError("no lattice named %r in the document" % args.name)
    lat = doc.lattices[args.name]
    rep = Report(command="lattice-info --name %s" % args.name)
    pos, neg = lat.signature()
    rep.add("lattice-info", VERIFIED, values={
        "rank": lat.rank, "det": lat.det, "signature": (pos, neg),
        "gram": lat.gram,
    })
    _emit(args, render_lattice(args.name, lat), rep)
    return 0


def _cmd_disc(args):
    doc = parse_spec(_read_file(args.file))
    if args.name not in doc.lattices:
        raise LatticeError("no lattice named %r in the document" % args.name)
    lat = doc.lattices[args.name]
    disc = discriminant_form(lat)
    lines = ["discriminant %s" % args.name,
             "order %d" % disc.order,
             "divisors %s" % (" ".join(str(d) for d in disc.elementary_divisors) or "-")]
    for i, q in enumerate(disc.q_values):
        lines.append("q %d %s" % (i + 1, q))
    for i in range(len(disc.q_values)):
        for j in range(i + 1, len(disc.q_values)):
            lines.append("pairing %d %d %s" % (i + 1, j + 1, disc.pairings[i][j]))
    rep = Report(command="disc --name %s" % args.name)
    rep.add("disc", VERIFIED, values={
        "order": disc.order,
        "divisors": disc.elementary_divisors,
        "q_values": disc.q_values,
    })
    _emit(args, "\n".join(lines) + "\n", rep)
    return 0


def _cmd_twist(args):
    doc = parse_spec(_read_file(args.file))
    if args.name not in doc.lattices:
        raise LatticeError("no lattice named %r in the document" % args.name)
    twisted = doc.lattices[args.name].twist(args.by)
    name = "%s(%d)" % (args.name, args.by)
    rep = Report(command="twist --name %s --by %d" % (args.name, args.by))
    rep.add("twist", VERIFIED, values={"gram": twisted.gram, "det": twisted.det})
    _emit(args, render_lattice(name, twisted), rep)
    return 0


def _cmd_transcendental(args):
    doc = parse_spec(_read_file(args.file))
    if args.period not in doc.periods:
        raise LatticeError("no period named %r in the document" % args.period)
    period = doc.periods[args.period]
    h = hodge_lattice(period.lattice, period)
    t = transcendental_lattice(h)
    ns, rho = ns_and_picard(h)
    rep = Report(command="transcendental --period %s" % args.period)
    rep.add("transcendental", VERIFIED, values={
        "t_rank": t.rank, "t_basis": t.basis, "t_gram": t.gram(),
        "ns_rank": rho, "ns_basis": ns.basis, "picard_number": rho,
    })
    _emit(args, rep.render_text(), rep)
    return rep.exit_code


def _cmd_kernel(args):
    doc = parse_spec(_read_file(args.file))
    if args.bfield not in doc.bfields:
        raise LatticeError("no bfield named %r in the document" % args.bfield)
    bf = doc.bfields[args.bfield]
    if args.sublattice is not None:
        if args.sublattice not in doc.sublattices:
            raise LatticeError("no sublattice named %r in the document" % args.sublattice)
        t = doc.sublattices[args.sublattice]
    else:
        t = bf.lattice.full_sublattice()
    alpha = brauer_class_of(bf, t)
    kernel, coords = kernel_with_coords(alpha)
    rep = Report(command="kernel --bfield %s%s" % (
        args.bfield,
        "" if args.sublattice is None else " --sublattice %s" % args.sublattice,
    ))
    rep.add("kernel", VERIFIED, values={
        "values": alpha.values,
        "order": order_of(alpha),
        "kernel_basis": kernel.basis,
    }, certificate={"kernel_in_t_coords": coords})
    _emit(args, rep.render_text(), rep)
    return rep.exit_code


def _cmd_theta(args):
    doc = parse_spec(_read_file(args.file))
    model, bf = doc.surface_model(args.surface)
    km = kummer_transcendental(model)
    beta = kummer_brauer_class(model, bf, km)
    alpha = brauer_class_of(bf, model.T)
    rep = Report(command="theta%s" % ("" if args.surface is None else " --surface %s" % args.surface))
    rep.add("theta", VERIFIED, values={
        "km_gram": km.T_km.gram,
        "km_values": beta.values,
        "km_order": order_of(beta),
        "source_order": order_of(alpha),
    })
    _emit(args, rep.render_text(), rep)
    return rep.exit_code


def _cmd_tequiv(args):
    bound = args.bound if args.bound is not None else _default_bound()
    doc1 = parse_spec(_read_file(args.file1))
    doc2 = parse_spec(_read_file(args.file2))
    model1, b1 = doc1.surface_model()
    model2, b2 = doc2.surface_model()
    verdict = t_equivalence(model1, b1, model2, b2, bound)
    rep = Report(command="tequiv --bound %d" % bound)
    if verdict.kind == "equivalent":
        rep.add("t-equivalence", VERIFIED,
                values={"verdict": "equivalent", "lambda": verdict.witness.lam},
                certificate={"witness": verdict.witness.matrix})
    elif verdict.kind == "refuted":
        rep.add("t-equivalence", REFUTED,
                values={"verdict": "refuted"},
                certificate={"invariants": verdict.reason})
    else:
        rep.add("t-equivalence", INCONCLUSIVE,
                values={"verdict": "inconclusive", "bound": verdict.bound,
                        "detail": verdict.reason})
    _emit(args, rep.render_text(), rep)
    return rep.exit_code


def _cmd_example43(args):
    if args.n < 1:
        raise LatticeError("--n must be a positive integer")
    bound = args.bound if args.bound is not None else _default_bound()
    if bound < 1:
        raise LatticeError("--bound must be a positive integer")
    rep = run_example43(args.n, bound)
    _emit(args, rep.render_text(), rep)
    return rep.exit_code


_HANDLERS = {
    "lattice-info": _cmd_lattice_info,
    "disc": _cmd_disc,
    "twist": _cmd_twist,
    "transcendental": _cmd_transcendental,
    "kernel": _cmd_kernel,
    "theta": _cmd_theta,
    "tequiv": _cmd_tequiv,
    "example43": _cmd_example43,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; normalize to the input-error code
        return EXIT_INPUT_ERROR if exc.code not in (0, None) else 0
    try:
        return _HANDLERS[args.command](args)
    except (SpecParseError, LatticeError, OSError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

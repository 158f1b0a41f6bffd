"""Command-line front end.

Exit codes are a stable contract: 0 all checks pass, 1 a mathematical check
or validation failed, 2 the input was malformed or missing a needed field.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import lab, serialize
from .assoc import IrrationalSpectrumError
from .complex_structures import abelian_cs_report, is_abelian_cs, is_integrable
from .constructions import aff_algebra, double_product, semidirect_r2_family
from .hermitian import (
    connection_flags, curvature, curvature_norm_sq, first_canonical,
    is_kahler, levi_civita,
)
from .lie import (
    PreconditionError, center, commutator_ideal, derived_and_central_series,
    is_unimodular,
)

PASS, FAIL, BAD_INPUT = 0, 1, 2

_REQUIRABLE = ("solvable", "nilpotent", "2step", "unimodular",
               "integrable", "abelian-j", "hermitian", "kahler")


def _fmt_scalar(q) -> str:
    return serialize.scalar_str(q)


def _fmt_vector(v, names) -> str:
    terms = []
    for c, name in zip(v, names):
        if c == 0:
            continue
        if c == 1:
            terms.append("+ %s" % name)
        elif c == -1:
            terms.append("- %s" % name)
        else:
            sign = "-" if c < 0 else "+"
            terms.append("%s %s %s" % (sign, _fmt_scalar(abs(c)), name))
    if not terms:
        return "0"
    head = terms[0][2:] if terms[0].startswith("+ ") else "-" + terms[0][2:]
    return " ".join([head] + terms[1:])


def _connection_lines(g, conn, label):
    lines = ["  %s:" % label]
    shown = 0
    for i in range(g.dim):
        for jx in range(g.dim):
            v = conn.gamma[i][jx]
            if not all(c == 0 for c in v):
                lines.append("    nabla_%s %s = %s"
                             % (g.basis_names[i], g.basis_names[jx],
                                _fmt_vector(v, g.basis_names)))
                shown += 1
    if not shown:
        lines.append("    zero connection")
    return lines


def _connection_json(g, conn):
    return [[[_fmt_scalar(c) for c in conn.gamma[i][jx]]
             for jx in range(g.dim)] for i in range(g.dim)]


def _yesno(b) -> str:
    return "yes" if b else "no"


def run_check(args) -> int:
    inst = serialize.load_instance(args.instance)
    g = inst.algebra
    if (args.complex or "integrable" in args.require
            or "abelian-j" in args.require) and inst.j is None:
        raise serialize.InputError("instance has no 'J' entry")
    if (args.metric or "hermitian" in args.require
            or "kahler" in args.require) and inst.metric is None:
        raise serialize.InputError("instance has no 'metric' entry")

    series = derived_and_central_series(g)
    props = {
        "solvable": series.is_solvable,
        "nilpotent": series.is_nilpotent,
        "2step": series.is_2step_solvable,
        "unimodular": is_unimodular(g),
    }
    out = {
        "dim": g.dim,
        "basis": list(g.basis_names),
        "jacobi": "ok",
        "center_dim": center(g).dim,
        "commutator_dim": commutator_ideal(g).dim,
        "series": {k: props[k] for k in ("solvable", "nilpotent", "2step")},
        "unimodular": props["unimodular"],
    }
    lines = [
        "dim %d, basis %s" % (g.dim, " ".join(g.basis_names)),
        "jacobi: ok",
        "center: dim %d, commutator ideal: dim %d"
        % (out["center_dim"], out["commutator_dim"]),
        "solvable: %s  nilpotent: %s  two-step solvable: %s  unimodular: %s"
        % tuple(_yesno(props[k])
                for k in ("solvable", "nilpotent", "2step", "unimodular")),
    ]

    if inst.j is not None:
        j = inst.j
        props["integrable"] = is_integrable(g, j)
        props["abelian-j"] = is_abelian_cs(g, j)
        out["J"] = {
            "integrable": props["integrable"],
            "abelian": props["abelian-j"],
        }
        lines.append("J: integrable: %s  abelian: %s"
                     % (_yesno(props["integrable"]), _yesno(props["abelian-j"])))
        if props["abelian-j"]:
            rep = abelian_cs_report(g, j)
            out["J"]["report"] = {
                "center_j_stable": rep.center_j_stable,
                "ad_twist": rep.ad_twist,
                "commutator_abelian_iff_2step": rep.commutator_abelian_iff_2step,
                "j_commutator_abelian_subalgebra": rep.j_commutator_abelian_subalgebra,
                "intersection_central": rep.intersection_central,
            }
            lines.append("  structure report: " + "  ".join(
                "%s: %s" % (k, _yesno(v)) for k, v in out["J"]["report"].items()))

    if inst.metric is not None:
        out["metric"] = {"hermitian": inst.j is not None}
        lines.append("metric: positive definite: yes")
        if inst.j is not None:
            props["hermitian"] = True    # validated at parse time
            t = inst.triple()
            props["kahler"] = is_kahler(t)
            out["metric"]["kahler"] = props["kahler"]
            lines.append("  hermitian: yes  kahler: %s" % _yesno(props["kahler"]))
            lc = levi_civita(t)
            n1 = first_canonical(t)
            lc_flags = connection_flags(g, inst.j, inst.metric, lc)
            n1_flags = connection_flags(g, inst.j, inst.metric, n1)
            lc_norm = curvature_norm_sq(curvature(g, lc))
            n1_norm = curvature_norm_sq(curvature(g, n1))
            out["connections"] = {
                "levi_civita": {
                    "tensor": _connection_json(g, lc),
                    "flags": lc_flags._asdict(),
                    "curvature_norm_sq": _fmt_scalar(lc_norm),
                },
                "first_canonical": {
                    "tensor": _connection_json(g, n1),
                    "flags": n1_flags._asdict(),
                    "curvature_norm_sq": _fmt_scalar(n1_norm),
                },
            }
            lines.extend(_connection_lines(g, lc, "levi-civita"))
            lines.append("    flags: metric %s, complex %s, torsion type (1,1) %s"
                         % tuple(_yesno(f) for f in lc_flags))
            lines.append("    curvature norm^2: %s" % _fmt_scalar(lc_norm))
            lines.extend(_connection_lines(g, n1, "first canonical"))
            lines.append("    flags: metric %s, complex %s, torsion type (1,1) %s"
                         % tuple(_yesno(f) for f in n1_flags))
            lines.append("    curvature norm^2: %s" % _fmt_scalar(n1_norm))

    failed = [p for p in args.require if not props.get(p, False)]
    out["required"] = {p: p not in failed for p in args.require}

    if args.json:
        sys.stdout.write(serialize.emit(out))
    else:
        for line in lines:
            print(line)
        for p in args.require:
            print("require %s: %s" % (p, "pass" if p not in failed else "FAIL"))
    return FAIL if failed else PASS


def run_construct(args) -> int:
    if args.what == "double-product":
        dp = double_product(serialize.load_algebra(args.dot),
                            serialize.load_algebra(args.star))
        g, j = dp.algebra, dp.j
    elif args.what == "aff":
        dp = aff_algebra(serialize.load_algebra(args.algebra))
        g, j = dp.algebra, dp.j
    else:
        if args.n < 1:
            raise serialize.InputError("--n must be a positive integer")
        g, j = semidirect_r2_family(args.n, serialize.load_matrix(args.t))
    text = serialize.emit(serialize.instance_to_dict(g, j))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return PASS


def _decomposition_dict(dec) -> dict:
    return {
        "n": dec.n,
        "s": dec.s,
        "factors": [{
            "idempotent": [_fmt_scalar(c) for c in f.idempotent],
            "norm_sq": _fmt_scalar(f.norm_sq),
            "curvature": _fmt_scalar(f.curvature),
        } for f in dec.factors],
        "center_basis": [[_fmt_scalar(c) for c in b] for b in dec.center.basis],
        "change_of_basis": [[_fmt_scalar(c) for c in row]
                            for row in dec.change_of_basis.rows],
        "model": serialize.instance_to_dict(
            dec.model.algebra, dec.model.j, dec.model.metric),
    }


def run_decompose(args) -> int:
    inst = serialize.load_instance(args.instance)
    t = inst.triple()
    mode = "float" if args.float_fallback else "exact"
    try:
        dec = lab.kahler_decompose(t, idempotent_mode=mode)
    except IrrationalSpectrumError as exc:
        print("decomposition failed: %s" % exc, file=sys.stderr)
        print("the spectrum is not rational; --float-fallback may recover "
              "certified idempotents", file=sys.stderr)
        return FAIL
    g = t.algebra
    print("factors: n = %d, center: dim %d (s = %d)"
          % (dec.n, dec.center.dim, dec.s))
    for ix, f in enumerate(dec.factors):
        print("  %d: r^2 = %s, c = %s, direction = %s"
              % (ix + 1, _fmt_scalar(f.norm_sq), _fmt_scalar(f.curvature),
                 _fmt_vector(f.idempotent, g.basis_names)))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(serialize.emit(_decomposition_dict(dec)))
    return PASS


def _print_trial_report(data):
    print("seed %s, %s trials" % (data["seed"], data["trials"]))
    width = max(len(k) for k in data["theorems"])
    for name in sorted(data["theorems"]):
        c = data["theorems"][name]
        print("  %-*s  %5d pass  %5d fail" % (width, name, c["pass"], c["fail"]))
    print("counterexamples: %d" % len(data["counterexamples"]))


def run_fuzz(args) -> int:
    if args.trials < 1:
        raise serialize.InputError("--trials must be positive")
    rep = lab.theorem_suite(args.seed, args.trials, max_dim=args.max_dim)
    data = lab.report_to_dict(rep)
    _print_trial_report(data)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(serialize.emit(data))
    return FAIL if rep.counterexamples else PASS


def run_report(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise serialize.InputError("cannot read %s: %s" % (args.file, exc))
    except json.JSONDecodeError as exc:
        raise serialize.InputError("malformed JSON in %s: %s" % (args.file, exc))
    if not isinstance(data, dict) or not {"seed", "trials", "theorems",
                                          "counterexamples"} <= set(data):
        raise serialize.InputError("not a trial report file")
    _print_trial_report(data)
    return PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="abelianj",
        description="Exact computations on Lie algebras with abelian complex "
                    "structures, Hermitian metrics and canonical connections.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate an instance and report its structure")
    p.add_argument("instance")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--complex", action="store_true",
                   help="fail with an input error when J is missing")
    p.add_argument("--metric", action="store_true",
                   help="fail with an input error when the metric is missing")
    p.add_argument("--require", action="append", default=[],
                   choices=_REQUIRABLE, metavar="PROP",
                   help="exit 1 unless the property holds (%s)" % ", ".join(_REQUIRABLE))
    p.set_defaults(func=run_check)

    p = sub.add_parser("construct", help="build instances from products or an acting map")
    csub = p.add_subparsers(dest="what", required=True)
    c = csub.add_parser("double-product", help="double product of a compatible pair")
    c.add_argument("--dot", required=True, help="first product file")
    c.add_argument("--star", required=True, help="second product file")
    c.add_argument("-o", "--out")
    c.set_defaults(func=run_construct)
    c = csub.add_parser("aff", help="affine-motions algebra of one product")
    c.add_argument("--algebra", required=True)
    c.add_argument("-o", "--out")
    c.set_defaults(func=run_construct)
    c = csub.add_parser("semidirect",
                        help="two directions acting on R^{2n} through an "
                             "invertible J-commuting map")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--t", required=True, help="acting map file with a 'matrix' key")
    c.add_argument("-o", "--out")
    c.set_defaults(func=run_construct)

    p = sub.add_parser("decompose-kahler",
                       help="split a Kähler abelian-J instance into curved "
                            "planes and a flat center")
    p.add_argument("--instance", required=True)
    p.add_argument("--report", help="write the decomposition as JSON")
    p.add_argument("--float-fallback", action="store_true",
                   help="allow floating-point spectra, re-certified exactly")
    p.set_defaults(func=run_decompose)

    p = sub.add_parser("fuzz", help="run the randomized structure-theorem suite")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--max-dim", type=int, default=12)
    p.add_argument("--report", help="write the trial report as JSON")
    p.set_defaults(func=run_fuzz)

    p = sub.add_parser("report", help="pretty-print a saved trial report")
    p.add_argument("file")
    p.set_defaults(func=run_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except serialize.InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return BAD_INPUT
    except serialize.ValidationFailure as exc:
        print("validation failed: %s" % exc, file=sys.stderr)
        return FAIL
    except (PreconditionError, ValueError) as exc:
        print("check failed: %s" % exc, file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())

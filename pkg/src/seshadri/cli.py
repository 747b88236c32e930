"""Command-line front end.

Exit codes: 0 success or certified, 1 not certified (traces emitted),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import bounds, classifier as cls_mod
from .bounds import BoundsError, Certificate, MultiplicityVector
from .catalog import SurfaceError, SurfaceModel, resolve_surface, validate
from .exact import RadicalRational, parse_rr

EXIT_OK, EXIT_NOT_CERTIFIED, EXIT_USAGE = 0, 1, 2


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    citations: list[str] = field(default_factory=list)
    exit_status: int = EXIT_OK
    lines: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "citations": self.citations,
            "exit_status": self.exit_status,
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, ensure_ascii=False)
        out = list(self.lines)
        if self.citations:
            out.append("sources: " + "; ".join(self.citations))
        return "\n".join(out)


def _rr_result(x: RadicalRational) -> dict:
    return {"exact": x.to_json(), "text": str(x), "decimal": x.decimal(), "decimal_note": "approximate, 6 places"}


def _surface_and_L2(args) -> tuple[Optional[SurfaceModel], int]:
    if getattr(args, "surface", None):
        s = resolve_surface(args.surface)
        return s, s.L2
    if getattr(args, "L2", None) is None:
        raise BoundsError("give --surface or --L2")
    if args.L2 < 1:
        raise BoundsError("--L2 must be a positive integer")
    return None, args.L2


def _inputs(args, *names) -> dict:
    return {n: getattr(args, n) for n in names if getattr(args, n, None) is not None}


def cmd_upper_bound(args) -> Report:
    surface, L2 = _surface_and_L2(args)
    eu = bounds.epsilon_upper(L2, args.r)
    return Report(
        "upper-bound",
        {**_inputs(args, "surface", "r"), "L2": L2},
        {"epsilon_upper": _rr_result(eu)},
        ["upper bound sqrt(L^2 / r) from nefness on the blow-up"],
        lines=[f"eps_upper(L^2={L2}; r={args.r}) = {eu} ≈ {eu.decimal()}"],
    )


def cmd_quotient(args) -> Report:
    if args.surface:
        surface = resolve_surface(args.surface)
        if args.r is None:
            raise BoundsError("--surface needs --r")
        best = bounds.min_quotient_over_catalog(surface, args.r)
        rows = bounds.catalog_quotients(surface, args.r)
        lines = [f"{w.curve_name}: L.C={w.LC} m={w.mults} quotient={w.quotient}" for w in rows]
        if best == bounds.MAXIMAL:
            lines.append("minimum: MAXIMAL (catalog gives no sub-maximal curve)")
            res = {"minimum": bounds.MAXIMAL}
        else:
            lines.append(f"minimum: {best.quotient} by {best.curve_name} ({best.provenance})")
            res = {"minimum": best.to_json()}
        res["quotients"] = [w.to_json() for w in rows]
        return Report("quotient", _inputs(args, "surface", "r"), res, ["catalog curves, asserted profiles"], lines=lines)
    if args.LC is None or args.m is None:
        raise BoundsError("give --LC and --m, or --surface and --r")
    m = MultiplicityVector.unsorted(int(x) for x in args.m.split(","))
    q = bounds.seshadri_quotient(args.LC, m)
    return Report(
        "quotient",
        {"LC": args.LC, "m": list(m.m)},
        {"quotient": str(q)},
        lines=[f"L.C / sum(m) = {args.LC}/{m.total} = {q}"],
    )


def _certificate_lines(c: Certificate) -> list[str]:
    head = [
        f"CERTIFIED: eps(L; {c.r}) >= {c.t} ≈ {c.t.decimal()} for L^2 = {c.L2}",
        f"scope: {c.semantic_scope}",
        f"enumeration bound: sum(m) < {c.enumeration_bound}; cases checked: {c.cases_checked}",
    ]
    if c.lattice:
        head.append(f"lattice filter: {c.lattice}")
    head += [f"  m={rec.m} xu={rec.xu} excluded by {rec.filter}" for rec in c.refuted_by]
    head += [f"assumption: {a}" for a in c.assumptions]
    return head


def cmd_certify(args) -> Report:
    surface, L2 = _surface_and_L2(args)
    t = parse_rr(args.t)
    eu = bounds.epsilon_upper(L2, args.r)
    if not t < eu:
        raise BoundsError(f"t = {t} is not strictly below eps_upper = {eu}; nothing finite to certify")
    ctx = surface.context() if surface is not None and not args.no_lattice else None
    out = bounds.certify_lower_bound(L2, args.r, t, ctx, jobs=args.jobs)
    inputs = {**_inputs(args, "surface", "r"), "L2": L2, "t": t.to_json()}
    cites = ["Xu's self-intersection bound", "Hodge index inequality"]
    if isinstance(out, Certificate):
        return Report("certify", inputs, {"certificate": out.to_json()}, cites, EXIT_OK, _certificate_lines(out))
    lines = [f"NOT CERTIFIED at t = {t} (this is not a disproof); surviving cases:"]
    lines += [f"  m={tr.m} d={tr.d} quotient={tr.quotient} xu={tr.xu}" for tr in out]
    return Report(
        "certify",
        inputs,
        {"certified": False, "traces": [tr.to_json() for tr in out], "semantic_scope": bounds.VERY_GENERAL_POINTS},
        cites,
        EXIT_NOT_CERTIFIED,
        lines,
    )


def cmd_verify(args) -> Report:
    data = json.loads(Path(args.file).read_text())
    if "results" in data:
        data = data["results"]["certificate"]
    ctx = resolve_surface(args.surface).context() if args.surface else None
    problems = bounds.verify_certificate(data, ctx)
    ok = not problems
    lines = [f"certificate {'valid' if ok else 'INVALID'}: {len(data['refuted_by'])} cases re-checked"] + problems
    return Report("verify", {"file": args.file}, {"valid": ok, "problems": problems}, [], EXIT_OK if ok else EXIT_NOT_CERTIFIED, lines)


def cmd_classify(args) -> Report:
    surface, L2 = _surface_and_L2(args)
    notes = []
    if args.from_catalog:
        if surface is None:
            raise BoundsError("--from-catalog needs --surface")
        w = bounds.min_quotient_over_catalog(surface, args.r)
        if w == bounds.MAXIMAL:
            eps = bounds.epsilon_upper(L2, args.r)
            notes.append("catalog gives no sub-maximal curve; using eps_upper as the (trivial) upper bound")
            witness = None
        else:
            eps = RadicalRational(w.quotient)
            witness = w.to_json()
            notes.append(f"eps <= {w.quotient} witnessed by {w.curve_name}")
        bound = cls_mod.UPPER
    else:
        if args.eps is None:
            raise BoundsError("give --eps or --from-catalog")
        eps = parse_rr(args.eps)
        bound = args.bound
        witness = None
    v = cls_mod.classify(eps, L2, args.r, bound)
    res = {"verdict": v.to_json(), "eps": _rr_result(eps)}
    if witness:
        res["witness"] = witness
    lines = [
        f"{v.kind}  (r={v.r}, eps={eps} as {bound} value, rho = eps^2 r / L^2 = {v.ratio_squared}, threshold {v.threshold_used})",
    ]
    lines += [f"  {c}" for c in v.trace]
    lines += [f"note: {n}" for n in notes + list(v.notes)]
    return Report("classify", {**_inputs(args, "surface", "r"), "L2": L2}, res, [v.source], lines=lines)


def cmd_kuechle_scan(args) -> Report:
    n = sum(1 for _ in bounds.kuechle_vectors(args.r_max, args.m_max))
    bad = bounds.kuechle_scan(args.r_max, args.m_max)
    return Report(
        "kuechle-scan",
        {"r_max": args.r_max, "m_max": args.m_max},
        {"cases": n, "violations": [list(m.m) for m in bad]},
        ["Küchle's inequality (r+1) sum m^2 > (sum m)^2 + m_r (r+1)"],
        EXIT_OK if not bad else EXIT_NOT_CERTIFIED,
        [f"{len(bad)} violations / {n} cases"] + [f"  violation: {m}" for m in bad],
    )


def cmd_catalog(args) -> Report:
    s = resolve_surface(args.name)
    lines = [f"{s.name}: rank {s.lattice.rank}, L^2 = {s.L2}, {len(s.catalog)} catalog entries"]
    lines += [f"  {e.name}: class {list(e.cls.coords)} profile {e.profile.mult} at <= {e.profile.max_points} pts" for e in s.catalog]
    return Report("catalog", {"name": args.name}, {"surface": s.to_json()}, lines=lines)


def cmd_validate(args) -> Report:
    s = resolve_surface(args.file)
    diags = validate(s)
    errors = [d for d in diags if d.level == "error"]
    lines = [f"{s.name}: {len(s.catalog)} catalog entries, {len(diags)} checks, {len(errors)} errors"]
    lines += [f"  [{d.level}] {d.check}: {d.message}" for d in diags]
    return Report(
        "validate",
        {"file": args.file},
        {"name": s.name, "entries": len(s.catalog), "diagnostics": [d.to_json() for d in diags]},
        exit_status=EXIT_OK if not errors else EXIT_USAGE,
        lines=lines,
    )


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        a, b = text.split("..", 1)
        return int(a), int(b)
    return int(text), int(text)


def cmd_nagata_table(args) -> Report:
    lo, hi = _parse_range(args.r)
    rows = cls_mod.nagata_biran_table(args.L2, lo, hi)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "ratio", "ratio_squared", "ratio_decimal", "lower_bound", "lower_bound_decimal"])
        for row in rows:
            w.writerow([row.r, str(row.ratio), str(row.ratio_squared), row.ratio.decimal(), str(row.lower_bound), row.lower_bound.decimal()])
        lines = buf.getvalue().rstrip("\n").split("\n")
    else:
        lines = [
            f"r={row.r}: ratio {row.ratio} ≈ {row.ratio.decimal()}, ratio^2 {row.ratio_squared}, "
            f"lower bound {row.lower_bound} ≈ {row.lower_bound.decimal()}"
            for row in rows
        ]
    return Report(
        "nagata-table",
        {"L2": args.L2, "r": [lo, hi]},
        {"rows": [row.to_json() for row in rows]},
        ["surfaces admitting no fibration over a curve: eps(L; r) >= sqrt((r-1)/r) eps_upper(L; r)"],
        lines=lines,
    )


def cmd_case_analysis(args) -> Report:
    m = MultiplicityVector.unsorted(int(x) for x in args.m.split(","))
    rep = bounds.reproduce_case_analysis(m.r, m)
    lines = []
    node, depth = rep, 0
    while node is not None:
        pad = "  " * depth
        lines.append(f"{pad}r={node.r} m={node.m} case {node.case}: {node.conclusion}")
        lines += [f"{pad}  {s}" for s in node.chain]
        node, depth = node.reduced, depth + 1
    lines.append(f"contradiction: {rep.contradiction}; first-principles check agrees: {rep.contradiction == rep.first_principles}")
    return Report("case-analysis", {"m": list(m.m)}, {"report": rep.to_json()}, lines=lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="seshadri", description="Exact multi-point Seshadri constant toolkit")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for certify (default: $SESHADRI_JOBS or 1)")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    def surface_opts(sp):
        sp.add_argument("--surface", help="built-in name (P2, cubic, scroll(r)) or JSON file")
        sp.add_argument("--L2", type=int, help="self-intersection L^2")

    sp = add("upper-bound", cmd_upper_bound, "exact eps_upper = sqrt(L^2/r)")
    surface_opts(sp)
    sp.add_argument("--r", type=int, required=True)

    sp = add("quotient", cmd_quotient, "Seshadri quotient L.C / sum(m), or catalog minimum")
    sp.add_argument("--LC", type=int)
    sp.add_argument("--m", help="comma-separated multiplicities")
    sp.add_argument("--surface")
    sp.add_argument("--r", type=int)

    sp = add("certify", cmd_certify, "certify eps(L; r) >= t at very general points")
    surface_opts(sp)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--t", required=True, help="'p/q' or 'p/q*sqrt(s)'")
    sp.add_argument("--no-lattice", action="store_true", help="ignore the surface lattice; numeric filters only")

    sp = add("verify", cmd_verify, "re-check a serialized certificate")
    sp.add_argument("file")
    sp.add_argument("--surface", help="surface whose lattice the certificate relies on")

    sp = add("classify", cmd_classify, "fibration verdict from an eps value")
    surface_opts(sp)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--eps")
    sp.add_argument("--bound", choices=(cls_mod.EXACT, cls_mod.UPPER, cls_mod.LOWER), default=cls_mod.EXACT)
    sp.add_argument("--from-catalog", action="store_true")

    sp = add("kuechle-scan", cmd_kuechle_scan, "exhaustive check of Küchle's inequality")
    sp.add_argument("--r-max", type=int, required=True)
    sp.add_argument("--m-max", type=int, required=True)

    sp = add("catalog", cmd_catalog, "show a surface model")
    sp.add_argument("name")

    sp = add("validate", cmd_validate, "validate a surface description")
    sp.add_argument("file")

    sp = add("nagata-table", cmd_nagata_table, "asymptotic lower bounds sqrt((r-1)/r) eps_upper")
    sp.add_argument("--L2", type=int, required=True)
    sp.add_argument("--r", required=True, help="range like 2..10")
    sp.add_argument("--csv", action="store_true")

    sp = add("case-analysis", cmd_case_analysis, "replay the multi-point case analysis for one vector")
    sp.add_argument("--m", required=True, help="comma-separated multiplicities (length = r)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs is None:
        args.jobs = bounds.default_jobs()
    try:
        report = args.fn(args)
    except (BoundsError, SurfaceError, ValueError, OSError) as exc:
        msg = str(exc)
        if args.format == "json":
            print(json.dumps({"command": args.command, "error": msg, "exit_status": EXIT_USAGE}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "nagata-table" and args.csv and args.format == "text":
        print("\n".join(report.lines))
    else:
        print(report.render(args.format))
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())

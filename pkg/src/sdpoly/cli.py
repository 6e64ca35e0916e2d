"""Command-line entry point: coefficient tables, cross-validation and asymptotics.

Exit codes: 0 success, 1 verification mismatch (or inconclusive under
--strict), 2 usage error, 3 resource refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import asymptotics as asy
from .closed_form import NUM_TABLE, DEN_TABLE, assemble, column_convex_g
from .funceq import MIRROR_PAIRS, decompose, ends_duplex_weight, fixed_point_solve, iterated_form_check
from .oracle import S_CLASSES, ResourceRefusal, enumerate_counts, refined_series, safety_ceiling
from .series import QSeries, SeriesRing, jet_at_1

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    order: int = 64
    w: Fraction | None = Fraction(1)  # None means symbolic
    engine: str = "closed-form"
    oracle_max: int = 8
    digits: int = 40
    fmt: str = "table"
    out: str | None = None
    strict: bool = False

    def validate(self) -> None:
        if self.order < 1:
            raise UsageError("--order must be >= 1")
        if self.digits < 16:
            raise UsageError("--digits must be >= 16")
        if self.oracle_max < 1:
            raise UsageError("--oracle-max must be >= 1")
        if self.oracle_max > safety_ceiling():
            raise ResourceRefusal(
                f"--oracle-max {self.oracle_max} exceeds the enumeration ceiling {safety_ceiling()}"
            )

    @property
    def w_label(self) -> str:
        return "symbolic" if self.w is None else str(self.w)


def parse_w(text: str) -> Fraction | None:
    if text == "symbolic":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"--w must be a rational number or 'symbolic', got {text!r}")


# -- coefficient tables ----------------------------------------------------------


def compute_g(cfg: RunConfig) -> QSeries:
    ring = SeriesRing(cfg.order, w=cfg.w)
    if cfg.engine == "funceq":
        return fixed_point_solve(ring).g
    return assemble(ring).g


def coefficient_rows(g: QSeries, symbolic: bool) -> list[dict]:
    rows = []
    if symbolic:
        for (n, k), v in sorted(g.terms().items()):
            if n >= 1:
                rows.append({"n": n, "k": k, "value": str(v)})
    else:
        for n in range(1, g.order + 1):
            rows.append({"n": n, "k": None, "value": str(g.coeff(n))})
    return rows


def cmd_coeffs(cfg: RunConfig) -> tuple[int, dict]:
    g = compute_g(cfg)
    return EXIT_OK, {"coefficients": coefficient_rows(g, cfg.w is None)}


# -- verification ------------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    details: list = field(default_factory=list)
    counterexample: dict | None = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "counterexample": self.counterexample,
        }


def first_mismatch(expected, got) -> dict | None:
    """Lowest (n, [m,] k) where two series differ, in canonical order."""
    e, g = expected.terms(), got.terms()
    for key in sorted(set(e) | set(g)):
        a, b = e.get(key, Fraction(0)), g.get(key, Fraction(0))
        if a != b:
            out = {"n": key[0], "k": key[-1], "expected": str(a), "got": str(b)}
            if len(key) == 3:
                out["m"] = key[1]
            return out
    return None


def compare(name: str, expected, got) -> Check:
    cx = first_mismatch(expected, got)
    return Check(name, cx is None, counterexample=cx)


def _zero_below_minimal_area(g: QSeries, n_max: int) -> dict | None:
    # 5k-3 is only a valid lower bound up to k = 3 (area 15 already admits
    # k = 4), so the check is confined to the enumerated range.
    for (n, k), v in sorted(g.terms().items()):
        if n <= n_max and k >= 1 and n < 5 * k - 3:
            return {"n": n, "k": k, "expected": "0", "got": str(v)}
    return None


def run_checks(order: int, oracle_max: int, num_table=NUM_TABLE, den_table=DEN_TABLE) -> list[Check]:
    ring = SeriesRing(order)
    closed = assemble(ring, num_table, den_table)
    sol = fixed_point_solve(ring)
    checks = [compare("closed-form = funceq (symbolic w)", sol.g, closed.g)]

    check = Check("closed-form at w=0 = column-convex rational function", True)
    cx = first_mismatch(column_convex_g(order), closed.g.at_w(0))
    check.passed, check.counterexample = cx is None, cx
    checks.append(check)

    n_max = min(oracle_max, order)
    table = enumerate_counts(n_max)
    oring = SeriesRing(n_max)
    trunc_closed = closed.g.truncate(n_max)
    oracle_g = refined_series(table, "simplex-duplex", SeriesRing(n_max, wcap=ring.wcap))

    totals = Check("oracle totals = closed-form (w=1)", True)
    closed_w1 = trunc_closed.at_w(1)
    oracle_w1 = oracle_g.at_w(1)
    for n in range(1, n_max + 1):
        a, b = oracle_w1.coeff(n), closed_w1.coeff(n)
        totals.details.append(f"oracle n={n}: {a} {'=' if a == b else '!='} closed-form {b}")
        if a != b and totals.passed:
            totals.passed = False
            totals.counterexample = {"n": n, "k": None, "expected": str(a), "got": str(b)}
    checks.append(totals)

    checks.append(compare("oracle = closed-form (symbolic w)", oracle_g, trunc_closed))
    checks.append(compare("oracle = funceq (symbolic w)", oracle_g, sol.g.truncate(n_max)))
    checks.append(compare(
        "oracle column-convex = closed-form at w=0",
        refined_series(table, "column-convex", SeriesRing(n_max, w=0)),
        trunc_closed.at_w(0),
    ))

    small = fixed_point_solve(oring)
    oracle_a = refined_series(table, "S", oring, by_height=True)
    checks.append(compare("oracle A(t) = funceq A(t)", oracle_a, small.a_t))
    ojet = jet_at_1(oracle_a)
    for label, o, f in zip(("A1", "B1", "C1"), ojet.components(), (small.a1, small.b1, small.c1)):
        checks.append(compare(f"oracle {label} = funceq {label}", o, f))

    parts = decompose(small, oring)
    for name in S_CLASSES:
        checks.append(compare(
            f"oracle class {name} = part formula",
            refined_series(table, "S-" + name, oring, by_height=True),
            parts[name],
        ))

    partition = Check("oracle partition identities", not table.anomalies)
    if table.anomalies:
        poly, matches = table.anomalies[0]
        partition.counterexample = {"polyomino": str(poly), "matches": list(matches)}
    for n in range(1, n_max + 1):
        s = table.total("S", n)
        parts_sum = sum(table.total("S-" + c, n) for c in S_CLASSES)
        sd, ed = table.total("simplex-duplex", n), table.total("ends-duplex", n)
        if (s != parts_sum or s + ed != sd) and partition.passed:
            partition.passed = False
            partition.counterexample = {"n": n, "S": s, "sum of classes": parts_sum,
                                        "ends-duplex": ed, "simplex-duplex": sd}
    checks.append(partition)

    mirror = Check("oracle mirror-pair counts", True)
    for left, right in MIRROR_PAIRS:
        cx = first_mismatch(
            refined_series(table, "S-" + left, oring, by_height=True),
            refined_series(table, "S-" + right, oring, by_height=True),
        )
        if cx and mirror.passed:
            mirror.passed, mirror.counterexample = False, dict(cx, pair=f"{left}/{right}")
    checks.append(mirror)

    checks.append(compare(
        "oracle ends-duplex = q^2w/(1-q)^2 * C1(oracle)",
        refined_series(table, "ends-duplex", oring),
        ends_duplex_weight(oring) * ojet.f2,
    ))

    sparsity = Check(f"zero coefficients below area 5k-3 (n <= {n_max})", True)
    for label, series in (("closed-form", closed.g), ("funceq", sol.g), ("oracle", oracle_g)):
        cx = _zero_below_minimal_area(series, n_max)
        if cx and sparsity.passed:
            sparsity.passed, sparsity.counterexample = False, dict(cx, engine=label)
    checks.append(sparsity)

    report = iterated_form_check(sol, ring)
    checks.append(Check("iterated form reproduces A(t)", report.passed,
                        counterexample=first_mismatch(ring.qt_zero(), report.residual)))
    return checks


def cmd_verify(cfg: RunConfig, num_table=NUM_TABLE, den_table=DEN_TABLE) -> tuple[int, dict]:
    checks = run_checks(cfg.order, cfg.oracle_max, num_table, den_table)
    status = EXIT_OK if all(c.passed for c in checks) else EXIT_MISMATCH
    return status, {"checks": [c.as_dict() for c in checks]}


# -- asymptotics ---------------------------------------------------------------------


def cmd_asymptotics(cfg: RunConfig) -> tuple[int, dict]:
    if cfg.w is None:
        raise UsageError("asymptotics needs a fixed --w")
    ring = SeriesRing(cfg.order, w=cfg.w)
    closed = assemble(ring)
    try:
        if cfg.w == 0:
            pole = asy.pole_locate(list(asy.COLUMN_CONVEX_DENOMINATOR), cfg.digits)
        else:
            pole = asy.pole_locate(closed.den, cfg.digits)
    except asy.InconclusiveError:
        pole = None
    report = asy.ratio_analysis(closed.g, cfg.digits, pole=pole)
    status = EXIT_OK
    if cfg.strict and not report.conclusive:
        status = EXIT_MISMATCH
    return status, {"asymptotics": report.as_dict()}


# -- rendering ---------------------------------------------------------------------


def render(cfg: RunConfig, payload: dict) -> str:
    doc = {
        "command": cfg.command,
        "order": cfg.order,
        "w": cfg.w_label,
        "coefficients": payload.get("coefficients", []),
        "checks": payload.get("checks", []),
        "asymptotics": payload.get("asymptotics", {}),
    }
    if cfg.fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if cfg.command == "coeffs":
            writer.writerow(["n", "k", "count"])
            for row in doc["coefficients"]:
                writer.writerow([row["n"], "" if row["k"] is None else row["k"], row["value"]])
        elif cfg.command == "verify":
            writer.writerow(["check", "passed", "counterexample"])
            for c in doc["checks"]:
                cx = json.dumps(c["counterexample"]) if c["counterexample"] else ""
                writer.writerow([c["name"], c["passed"], cx])
        else:
            writer.writerow(["quantity", "value"])
            for key, val in doc["asymptotics"].items():
                writer.writerow([key, val])
        return buf.getvalue()
    return _render_table(cfg, doc)


def _render_table(cfg: RunConfig, doc: dict) -> str:
    lines = []
    if cfg.command == "coeffs":
        if cfg.w is None:
            by_n: dict[int, list] = {}
            for row in doc["coefficients"]:
                by_n.setdefault(row["n"], []).append(row)
            for n in range(1, cfg.order + 1):
                terms = by_n.get(n, [])
                poly = " + ".join(
                    r["value"] if r["k"] == 0 else f"{r['value']}*w^{r['k']}" for r in terms
                ) or "0"
                lines.append(f"{n:>4}  {poly}")
        else:
            for row in doc["coefficients"]:
                lines.append(f"{row['n']:>4}  {row['value']}")
    elif cfg.command == "verify":
        for c in doc["checks"]:
            lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}")
            lines.extend(f"       {d}" for d in c["details"])
            if c["counterexample"]:
                lines.append(f"       first mismatch: {json.dumps(c['counterexample'])}")
    else:
        a = doc["asymptotics"]
        lines.append(f"order               {a['order']}")
        lines.append(f"w                   {doc['w']}")
        lines.append(f"growth              {a['growth']}")
        lines.append(f"amplitude           {a['amplitude']}")
        lines.append(f"pole                {a['pole']}")
        lines.append(f"ratio stable from   n={a['stabilization_n']}")
        lines.append(f"amplitude stable    n={a['amplitude_stabilization_n']}")
        lines.append(f"conclusive          {a['conclusive']}")
    return "\n".join(lines) + "\n"


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, w_default):
        p.add_argument("--order", type=int, default=64)
        p.add_argument("--format", dest="fmt", choices=("table", "json", "csv"), default="table")
        p.add_argument("--out", default=None)
        if w_default is not None:
            p.add_argument("--w", type=parse_w, default=w_default)

    p = sub.add_parser("coeffs", help="coefficient table of G(q, w)")
    common(p, w_default="1")
    p.add_argument("--engine", choices=("closed-form", "funceq"), default="closed-form")

    p = sub.add_parser("verify", help="cross-check closed form, functional equation and enumeration")
    common(p, w_default=None)
    p.add_argument("--oracle-max", type=int, default=8)

    p = sub.add_parser("asymptotics", help="growth constant, amplitude and dominant pole")
    common(p, w_default="1")
    p.add_argument("--digits", type=int, default=40)
    p.add_argument("--strict", action="store_true")
    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    w = getattr(args, "w", None)
    if isinstance(w, str):
        w = parse_w(w)
    cfg = RunConfig(
        command=args.command,
        order=args.order,
        w=w,
        engine=getattr(args, "engine", "closed-form"),
        oracle_max=getattr(args, "oracle_max", 1),
        digits=getattr(args, "digits", 40),
        fmt=args.fmt,
        out=args.out,
        strict=getattr(args, "strict", False),
    )
    handlers = {"coeffs": cmd_coeffs, "verify": cmd_verify, "asymptotics": cmd_asymptotics}
    try:
        cfg.validate()
        status, payload = handlers[cfg.command](cfg)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except ResourceRefusal as exc:
        print(f"sdpoly: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    text = render(cfg, payload)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

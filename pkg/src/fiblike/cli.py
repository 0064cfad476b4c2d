"""Command-line interface: ``fiblike <command> [flags]`` or ``python -m fiblike``.

Exit codes: 0 success, 1 failed ``examples --check``, 2 usage/parse error,
3 numeric overflow or instability, 4 degenerate data.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Any, Dict, List, Optional

from . import recurrence as rc
from . import wave as ws

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_DEGENERATE = 4

# Terms n = 0..14 as printed in the paper tables; 1 and 5 are rounded to one decimal.
PAPER_EXAMPLES: Dict[int, Dict[str, Any]] = {
    1: dict(params=(3.0, 1.8, -1.0, 1.0, 5.0), rounded=True,
            terms=[1.0, 5.0, 11.0, 17.8, 24.0, 28.5, 30.2, 28.9, 24.8, 18.8, 12.0, 5.8, 1.4, -0.2, 1.2]),
    2: dict(params=(3.0, 1.0, -1.0, 1.0, 5.0), rounded=False,
            terms=[1.0, 5.0, 7.0, 5.0, 1.0, -1.0, 1.0, 5.0, 7.0, 5.0, 1.0, -1.0, 1.0, 5.0, 7.0]),
    3: dict(params=(3.0, 0.0, -1.0, 1.0, 5.0), rounded=False,
            terms=[1.0, 5.0, 2.0, -2.0, 1.0, 5.0, 2.0, -2.0, 1.0, 5.0, 2.0, -2.0, 1.0, 5.0, 2.0]),
    4: dict(params=(3.0, -1.0, -1.0, 1.0, 5.0), rounded=False,
            terms=[1.0, 5.0, -3.0, 1.0, 5.0, -3.0, 1.0, 5.0, -3.0, 1.0, 5.0, -3.0, 1.0, 5.0, -3.0]),
    5: dict(params=(3.0, -1.5, -1.0, 1.0, 5.0), rounded=True,
            terms=[1.0, 5.0, -5.5, 6.3, -0.9, -1.9, 6.8, -5.2, 4.1, 2.1, -4.3, 7.3, -3.6, 1.2, 4.9]),
}


class UsageError(Exception):
    pass


def fmt_number(x) -> str:
    """Shortest decimal that round-trips the float; integral values lose the '.0'."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        r = repr(x)
        return r[:-2] if r.endswith(".0") else r
    return str(x)


def round_half_up(x: float, places: int = 1) -> float:
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


@dataclass
class OutputRecord:
    schema: str
    fields: List[str]
    rows: List[Dict[str, Any]]
    meta: Dict[str, Any] = field(default_factory=dict)
    extra: Optional["OutputRecord"] = None

    def __post_init__(self):
        for row in self.rows:
            if list(row) != self.fields:
                raise ValueError(f"row keys {list(row)} differ from declared fields {self.fields}")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.fields)
        for row in self.rows:
            w.writerow([fmt_number(row[k]) for k in self.fields])
        text = buf.getvalue()
        if self.extra is not None:
            text += "\n" + self.extra.to_csv()
        return text

    def to_obj(self) -> Dict[str, Any]:
        obj: Dict[str, Any] = {"schema": self.schema}
        if self.meta:
            obj["meta"] = self.meta
        obj["rows"] = self.rows
        if self.extra is not None:
            obj[self.extra.schema] = self.extra.rows
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, allow_nan=False) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


def _finite(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return x


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return n


def _params(args) -> rc.RecurrenceParams:
    return rc.RecurrenceParams(args.A, args.B, args.C, args.f0, args.f1)


def classification_row(cls: rc.PeriodClassification) -> Dict[str, Any]:
    mags = cls.roots.magnitudes if cls.roots is not None else (None, None)
    return {
        "variant": cls.variant,
        "T": cls.T,
        "omega": cls.omega,
        "D": cls.D,
        "exact_integer_period": cls.exact_integer_period,
        "root_magnitude_1": mags[0],
        "root_magnitude_2": mags[1],
        "note": cls.note,
    }


CLASSIFY_FIELDS = ["variant", "T", "omega", "D", "exact_integer_period",
                   "root_magnitude_1", "root_magnitude_2", "note"]


def cmd_generate(args) -> OutputRecord:
    if args.count < 2:
        raise UsageError("--count must be at least 2")
    seq = rc.generate(_params(args), args.count)
    rows = [{"n": n, "F_n": x} for n, x in enumerate(seq.terms)]
    return OutputRecord("generate", ["n", "F_n"], rows)


def cmd_classify(args) -> OutputRecord:
    return OutputRecord("classify", CLASSIFY_FIELDS, [classification_row(rc.classify(_params(args)))])


def cmd_closed_form(args) -> OutputRecord:
    try:
        cf = rc.closed_form(_params(args))
    except rc.DomainError as exc:
        raise UsageError(f"closed form needs C = -1 and |B| < 2: {exc}")
    row = {"a0": cf.a0, "a1": cf.a1, "b1": cf.b1, "omega": cf.omega}
    return OutputRecord("closed-form", list(row), [row])


def cmd_period_profile(args) -> OutputRecord:
    lo, hi, h = args.min, args.max, args.step
    if not (-2.0 < lo < hi < 2.0):
        raise UsageError("need -2 < --min < --max < 2")
    if not h > 0:
        raise UsageError("--step must be positive")
    count = int(math.floor((hi - lo) / h + 1e-9)) + 1
    rows = []
    for i in range(count):
        B = min(lo + i * h, hi)
        rows.append({"B": B, "T": 2.0 * math.pi / math.acos(B / 2.0)})
    return OutputRecord("period-profile", ["B", "T"], rows)


def check_example(example_id: int, terms) -> List[bool]:
    ex = PAPER_EXAMPLES[example_id]
    if ex["rounded"]:
        return [round_half_up(x, 1) == p for x, p in zip(terms, ex["terms"])]
    return [x == p for x, p in zip(terms, ex["terms"])]


def cmd_examples(args) -> OutputRecord:
    ex = PAPER_EXAMPLES.get(args.id)
    if ex is None:
        raise UsageError(f"unknown example id {args.id}; choose 1-5")
    params = rc.RecurrenceParams(*ex["params"])
    terms = rc.generate(params, 15).terms
    cls = rc.classify(params)
    ok = check_example(args.id, terms)
    rows = [
        {"n": n, "F_n": x, "paper_F_n": p, "match": m}
        for n, (x, p, m) in enumerate(zip(terms, ex["terms"], ok))
    ]
    meta = {"id": args.id, "A": params.A, "B": params.B, "C": params.C, "f0": params.f0, "f1": params.f1,
            **classification_row(cls)}
    if args.check:
        meta["check"] = "PASS" if all(ok) else "FAIL"
    return OutputRecord("examples", ["n", "F_n", "paper_F_n", "match"], rows, meta=meta)


def _initial_field(lattice: ws.WaveLattice, spec: str):
    kind, _, value = spec.partition(":")
    try:
        idx = int(value)
    except ValueError:
        raise UsageError(f"--init must be mode:<m> or impulse:<i>, got {spec!r}")
    N = lattice.node_count
    if kind == "impulse":
        if not 0 <= idx < N:
            raise UsageError(f"impulse node {idx} outside 0..{N - 1}")
        u = [0.0] * N
        u[idx] = 1.0
        return u
    if kind == "mode":
        for mode in ws.laplacian_eigenmodes(lattice):
            if mode.index == idx:
                return mode.vector.tolist()
        raise UsageError(f"no mode {idx} on a {lattice.topology} lattice of {N} nodes")
    raise UsageError(f"--init must be mode:<m> or impulse:<i>, got {spec!r}")


def cmd_wave(args) -> OutputRecord:
    try:
        lattice = ws.WaveLattice(args.nodes, args.topology, args.courant)
    except ValueError as exc:
        raise UsageError(str(exc))
    u0 = _initial_field(lattice, args.init)
    traj = ws.run(lattice, u0, u0, args.steps)
    N = lattice.node_count
    fields = ["t"] + [f"u_{i}" for i in range(N)]
    rows = [dict(zip(fields, [s.time_index, *s.current.tolist()])) for s in traj]
    out = OutputRecord("wave", fields, rows)
    if args.modal:
        report = []
        for mode in ws.laplacian_eigenmodes(lattice):
            series = ws.modal_coefficients(traj, mode)
            B = ws.modal_B(lattice.courant, mode.eigenvalue)
            T = ws.modal_period(lattice.courant, mode.eigenvalue)
            if T is None:
                print(f"note: mode {mode.index} has |B| = {abs(B)!r} >= 2; not periodic", file=sys.stderr)
            resid = ws.verify_modal_recurrence(series, lattice.courant) if len(series.coefficients) >= 3 else None
            report.append({"mode": mode.index, "lambda": mode.eigenvalue, "B": B, "T": T, "residual": resid})
        out.extra = OutputRecord("modes", ["mode", "lambda", "B", "T", "residual"], report)
    return out


def read_sequence_csv(path: str) -> List[float]:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != ["n", "F_n"]:
                raise UsageError(f"{path}: expected header 'n,F_n'")
            values = []
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 2:
                    raise UsageError(f"{path}:{lineno}: expected 2 columns")
                n, x = int(row[0]), float(row[1])
                if n != len(values) or not math.isfinite(x):
                    raise UsageError(f"{path}:{lineno}: bad row {row}")
                values.append(x)
    except OSError as exc:
        raise UsageError(str(exc))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}")
    return values


def cmd_fit(args) -> OutputRecord:
    values = read_sequence_csv(args.input)
    if len(values) < 5:
        raise UsageError(f"{args.input}: need at least 5 terms to fit")
    fit = rc.fit_recurrence(values)
    cls = rc.classify(fit.params)
    row = {"A": fit.params.A, "B": fit.params.B, "C": fit.params.C, "rms": fit.rms,
           "variant": cls.variant, "T": cls.T, "exact_integer_period": cls.exact_integer_period}
    return OutputRecord("fit", list(row), [row])


def _add_coefficients(p: argparse.ArgumentParser) -> None:
    for name in ("A", "B", "C", "f0", "f1"):
        p.add_argument(f"--{name}", type=_finite, required=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="write here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="fiblike", description="Periodic Fibonacci-like sequences F[n+2] = A + B F[n+1] + C F[n]."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="list the first terms")
    _add_coefficients(p)
    p.add_argument("--count", type=_positive_int, required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("classify", parents=[common], help="periodicity verdict")
    _add_coefficients(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("closed-form", parents=[common], help="a0 + a1 cos(wn) + b1 sin(wn) for C = -1")
    _add_coefficients(p)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("period-profile", parents=[common], help="T(B) = 2 pi / arccos(B/2)")
    p.add_argument("--min", type=_finite, default=-1.99)
    p.add_argument("--max", type=_finite, default=1.99)
    p.add_argument("--step", type=_finite, default=0.01)
    p.set_defaults(func=cmd_period_profile)

    p = sub.add_parser("examples", parents=[common], help="reproduce the worked examples 1-5")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare against the published tables")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("wave", parents=[common], help="leapfrog wave equation demo")
    p.add_argument("--topology", choices=("path", "cycle"), required=True)
    p.add_argument("--nodes", type=_positive_int, required=True)
    p.add_argument("--courant", type=_finite, default=1.0)
    p.add_argument("--steps", type=_positive_int, required=True)
    p.add_argument("--init", required=True, help="mode:<m> or impulse:<i>")
    p.add_argument("--modal", action="store_true", help="append a per-mode period report")
    p.set_defaults(func=cmd_wave)

    p = sub.add_parser("fit", parents=[common], help="least-squares A, B, C from an n,F_n CSV")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (rc.RecurrenceOverflowError, ws.InstabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except rc.DegenerateDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE

    text = record.render(args.format)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if args.format == "csv" and record.meta:
        print(" ".join(f"{k}={fmt_number(v)}" for k, v in record.meta.items() if v is not None), file=sys.stderr)
    if record.meta.get("check") == "FAIL":
        return EXIT_CHECK_FAILED
    return 0


if __name__ == "__main__":
    sys.exit(main())

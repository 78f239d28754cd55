"""Command-line entry point: ``cyclespec <command> [flags]``.

Every run echoes its :class:`JobSpec`, so a JSON output file is enough to
reproduce the computation.  Exit codes: 0 success, 2 bad input or a violated
domain condition, 3 a cross-check or verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import characters as chars
from . import lfn, verify
from .heat import IMAGE, SPECTRAL, CycleParams, heat_kernel_cycle
from .numeric import (
    CrossCheckError,
    DomainError,
    as_rational,
    context,
    default_tolerance,
    format_rational,
    parse_complex,
    rational_mpf,
    resolve_precision,
)
from .resolvent import CANCELLED, KERNEL, resolvent_closed, resolvent_poles, resolvent_spectral
from .trigsums import DIRECT, KINDS, RECURRENCE, SumSpec, direct_sum, evaluate_sum

COMMANDS = ("sum", "series", "lvalue", "heat", "resolvent", "poles", "verify", "table")
FORMATS = ("json", "csv", "text")
EXIT_OK, EXIT_DOMAIN, EXIT_CHECK = 0, 2, 3

SECANT_LIKE = ("secant", "secant_double", "secant_noshift", "tangent")


@dataclass(frozen=True)
class JobSpec:
    command: str
    parameters: dict = field(default_factory=dict)
    precision_bits: int = 128
    output_format: str = "json"

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": dict(sorted(self.parameters.items())),
            "precision_bits": self.precision_bits,
            "output_format": self.output_format,
        }

    @classmethod
    def from_dict(cls, d: dict) -> JobSpec:
        return cls(d["command"], dict(d["parameters"]), int(d["precision_bits"]), d["output_format"])


# -- rendering ---------------------------------------------------------------------


def digits_for(bits: int) -> int:
    """Significant decimal digits shown at ``bits`` of working precision."""
    return max(6, int(bits * math.log10(2)) - 3)


def render_real(x, bits: int) -> str:
    ctx = context(bits)
    x = ctx.mpf(x)
    if x == 0:
        return "0"
    return ctx.nstr(x, digits_for(bits), strip_zeros=False, min_fixed=-6, max_fixed=12)


def render_number(x, bits: int, exact: Fraction | None = None) -> dict:
    """JSON form ``{"re", "im", "exact"}``; ``exact`` is ``"p/q"`` or null."""
    ctx = context(bits)
    z = ctx.mpc(x)
    return {
        "re": render_real(z.real, bits),
        "im": render_real(z.imag, bits),
        "exact": None if exact is None else format_rational(exact),
    }


def number_text(obj: dict) -> str:
    """``"a+bi"`` text for a rendered number (the exact value when there is one)."""
    if obj.get("exact") is not None:
        return obj["exact"]
    im = obj["im"]
    sign = "" if im.startswith("-") else "+"
    return f"{obj['re']}{sign}{im}i"


def _flat(value):
    if isinstance(value, dict) and "re" in value:
        return number_text(value)
    if value is None:
        return ""
    return str(value)


def format_output(job: JobSpec, rows: list[dict], summary: dict) -> str:
    if job.output_format == "json":
        doc = {"job": job.to_dict(), "summary": summary, "results": rows}
        return json.dumps(doc, indent=2) + "\n"
    if job.output_format == "csv":
        buf = io.StringIO()
        buf.write("# job " + json.dumps(job.to_dict(), separators=(",", ":")) + "\n")
        keys = list(dict.fromkeys(k for row in rows for k in row))
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for row in rows:
            writer.writerow([_flat(row.get(k)) for k in keys])
        return buf.getvalue()
    lines = ["job: " + json.dumps(job.to_dict(), separators=(",", ":"))]
    for row in rows:
        lines.append("  ".join(f"{k}={_flat(v)}" for k, v in row.items()))
    for k, v in summary.items():
        lines.append(f"{k}: {_flat(v)}")
    return "\n".join(lines) + "\n"


def parse_output(text: str) -> tuple[JobSpec, dict, list[dict]]:
    """Inverse of the JSON output format."""
    doc = json.loads(text)
    return JobSpec.from_dict(doc["job"]), doc["summary"], doc["results"]


# -- commands ------------------------------------------------------------------------


def _need(params, *names):
    for name in names:
        if params.get(name) is None:
            raise DomainError(f"missing required parameter --{name.replace('_', '-')}")


def _shift_of(params) -> Fraction:
    kind = params.get("kind")
    if params.get("alpha") is not None and params.get("beta") is not None:
        raise DomainError("give either --beta or --alpha, not both")
    raw = params.get("alpha") if params.get("alpha") is not None else params.get("beta")
    if raw is None:
        return Fraction(0)
    if params.get("alpha") is not None and kind not in SECANT_LIKE:
        raise DomainError(f"--alpha applies to secant-type kinds; {kind} takes --beta")
    return as_rational(raw)


def _sum_row(kind, m, r, shift, n, bits):
    spec = SumSpec(kind, m, r, shift, n)
    closed = evaluate_sum(spec, bits, RECURRENCE)
    oracle = direct_sum(spec, bits)
    ctx = context(bits)
    delta = abs(ctx.mpc(closed.value) - ctx.mpc(oracle.value))
    tol = default_tolerance(bits)
    budget = rational_mpf(ctx, tol.abs_eps) + rational_mpf(ctx, tol.rel_eps) * abs(oracle.value)
    return {
        "kind": kind,
        "m": m,
        "r": r,
        "shift": format_rational(spec.shift),
        "n": n,
        "value": render_number(closed.value, bits, closed.exact),
        "direct": render_number(oracle.value, bits),
        "delta": render_real(delta, bits),
        "budget": render_real(budget, bits),
        "ok": bool(delta <= budget),
    }


def _table_row(args):
    return _sum_row(*args)


def cmd_sum(params, bits):
    _need(params, "kind", "m")
    row = _sum_row(params["kind"], params["m"], params.get("r") or 0, _shift_of(params), params.get("n") or 1, bits)
    return [row], {"methods": f"{RECURRENCE}+{DIRECT}"}


def cmd_series(params, bits):
    _need(params, "kind", "m")
    count = params.get("count") or 4
    shift = _shift_of(params)
    rows = [_sum_row(params["kind"], params["m"], params.get("r") or 0, shift, n, bits) for n in range(1, count + 1)]
    return rows, {"methods": f"{RECURRENCE}+{DIRECT}"}


def cmd_table(params, bits):
    _need(params, "kind", "m")
    count = params.get("count") or 2
    shift = _shift_of(params)
    jobs = [(params["kind"], m, r, shift, n, bits)
            for m in range(2, params["m"] + 1) for r in range(m) for n in range(1, count + 1)]
    # validate every row up front so a bad shift fails before any work starts
    valid = []
    for job in jobs:
        try:
            SumSpec(*job[:5])
        except DomainError:
            continue
        valid.append(job)
    if not valid:
        raise DomainError("no (m, r, n) row satisfies the sum's domain conditions")
    workers = params.get("jobs") or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_table_row, valid, chunksize=8))
    else:
        rows = [_table_row(job) for job in valid]
    return rows, {"rows": len(rows), "skipped": len(jobs) - len(valid)}


def _resolve_char(params):
    raw = params.get("char")
    if raw is None:
        raise DomainError("missing required parameter --char")
    m = params.get("m")
    text = str(raw)
    if ":" in text:
        mod, idx = text.split(":", 1)
        if m is not None and int(mod) != m:
            raise DomainError(f"--char modulus {mod} differs from --m {m}")
        m = int(mod)
        text = idx
    if m is None:
        raise DomainError("missing required parameter --m (or give --char as MODULUS:INDEX)")
    return m, chars.character(m, int(text))


def cmd_lvalue(params, bits):
    m, chi = _resolve_char(params)
    n = params.get("n") or 1
    family = params.get("family") or "L"
    if family == "L":
        routes = [lfn.l_direct]
        if chi.is_primitive and chi.is_even:
            routes += [lfn.l_via_gauss, lfn.l_polynomial]
    elif family == "tilde":
        routes = [lfn.l_tilde_direct]
        if chi.is_primitive and not chi.is_even:
            routes.append(lfn.l_tilde)
    elif family == "hat":
        routes = [lfn.l_hat_direct]
        if chi.is_primitive:
            routes.append(lfn.l_hat)
    else:
        raise DomainError(f"unknown L-value family {family!r}; use L, tilde or hat")
    results = [route(m, chi, n, bits) for route in routes]
    ctx = context(bits)
    ref = results[0]
    rows, worst, ok = [], ctx.zero, True
    for res in results:
        delta = abs(res.value - ref.value)
        budget = res.error_budget + ref.error_budget
        worst = max(worst, delta)
        ok = ok and delta <= budget
        rows.append({
            "family": family,
            "m": m,
            "char": chi.index,
            "n": n,
            "route": res.route,
            "value": render_number(res.value, bits),
            "error_budget": render_real(res.error_budget, bits),
            "delta": render_real(delta, bits),
            "flags": ";".join(res.flags),
        })
    summary = {
        "parity": chi.parity,
        "primitive": chi.is_primitive,
        "conductor": chi.conductor,
        "route_agreement_delta": render_real(worst, bits),
        "ok": bool(ok),
    }
    return rows, summary


def cmd_heat(params, bits):
    _need(params, "m", "t")
    p = CycleParams(params["m"], as_rational(params.get("beta") or 0), bits)
    x, y = params.get("x") or 0, params.get("y") or 0
    t = rational_mpf(context(bits), as_rational(params["t"]))
    img = heat_kernel_cycle(p, x, y, t, IMAGE)
    spec = heat_kernel_cycle(p, x, y, t, SPECTRAL)
    ctx = context(bits)
    budget = img.tail_bound + rational_mpf(ctx, default_tolerance(bits).abs_eps)
    delta = abs(img.value - spec.value)
    rows = [
        {"method": SPECTRAL, "value": render_number(spec.value, bits), "tail_bound": "0"},
        {"method": IMAGE, "value": render_number(img.value, bits), "tail_bound": render_real(img.tail_bound, bits)},
    ]
    return rows, {"delta": render_real(delta, bits), "budget": render_real(budget, bits), "ok": bool(delta <= budget)}


def cmd_resolvent(params, bits):
    _need(params, "m", "s")
    m = params["m"]
    beta = as_rational(params.get("beta") or 0)
    if params.get("r") is not None:
        r = params["r"]
    else:
        r = (params.get("x") or 0) - (params.get("y") or 0)
    ctx = context(bits)
    sr, si = parse_complex(params["s"])
    s = ctx.mpc(rational_mpf(ctx, sr), rational_mpf(ctx, si))
    values = [("spectral", resolvent_spectral(m, beta, r, s, bits, normalization=CANCELLED)),
              ("chebyshev", resolvent_closed(m, beta, r, s, bits, form="chebyshev"))]
    if sr > 0:
        values.append(("hyperbolic", resolvent_closed(m, beta, r, s, bits, form="hyperbolic")))
    kernel = resolvent_spectral(m, beta, r, s, bits, normalization=KERNEL)
    ref = values[0][1]
    worst = max(abs(v - ref) for _, v in values)
    budget = rational_mpf(ctx, default_tolerance(bits).abs_eps) * (1 + abs(ref))
    rows = [{"form": name, "value": render_number(v, bits), "delta": render_real(abs(v - ref), bits)}
            for name, v in values]
    summary = {
        "kernel_value": render_number(kernel, bits),
        "max_delta": render_real(worst, bits),
        "budget": render_real(budget, bits),
        "ok": bool(worst <= budget),
    }
    return rows, summary


def cmd_poles(params, bits):
    _need(params, "m")
    beta = as_rational(params.get("beta") or 0)
    poles = resolvent_poles(params["m"], beta, bits)
    rows = [{"pole": render_number(p.value, bits), "modes": " ".join(map(str, p.modes)),
             "multiplicity": len(p.modes)} for p in poles]
    return rows, {"distinct": len(poles)}


def cmd_verify(params, bits):
    suite = params.get("suite") or "all"
    if suite not in verify.SUITES:
        raise DomainError(f"unknown suite {suite!r}; use one of {', '.join(verify.SUITES)}")
    if bits != verify.BITS:
        raise DomainError(f"the verification suite runs at {verify.BITS} bits; drop --precision-bits")
    results = verify.run_suite(suite, params.get("max_m"))
    rows = [{"check": r.key, "status": r.status, "title": r.title, "detail": r.detail} for r in results]
    summary = {
        "checked": len(results),
        "unexpected": sum(not r.ok for r in results),
        "ok": all(r.ok for r in results),
    }
    return rows, summary


HANDLERS = {
    "sum": cmd_sum,
    "series": cmd_series,
    "lvalue": cmd_lvalue,
    "heat": cmd_heat,
    "resolvent": cmd_resolvent,
    "poles": cmd_poles,
    "verify": cmd_verify,
    "table": cmd_table,
}


def run(job: JobSpec) -> tuple[int, str]:
    """Execute ``job``; returns ``(exit code, rendered output)``."""
    rows, summary = HANDLERS[job.command](job.parameters, job.precision_bits)
    code = EXIT_OK if summary.get("ok", all(r.get("ok", True) for r in rows)) else EXIT_CHECK
    return code, format_output(job, rows, summary)


# -- argument parsing ------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--precision-bits", type=int, default=None)
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--out", default=None, help="write output to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclespec", description="Twisted trigonometric sums, kernels and "
                                     "L-values on the cycle graph.")
    sub = parser.add_subparsers(dest="command", required=True)

    def sum_flags(p, with_r=True):
        p.add_argument("--kind", choices=KINDS, required=True)
        p.add_argument("--m", type=int, required=True)
        if with_r:
            p.add_argument("--r", type=int, default=0)
        p.add_argument("--beta", default=None, help="shift as p/q or decimal")
        p.add_argument("--alpha", default=None, help="secant-type shift as p/q or decimal")

    p = sub.add_parser("sum", help="one sum, closed form and direct")
    sum_flags(p)
    p.add_argument("--n", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("series", help="powers n = 1..count of one sum")
    sum_flags(p)
    p.add_argument("--count", type=int, default=4)
    _add_common(p)

    p = sub.add_parser("table", help="sweep m = 2..M, every r, n = 1..count")
    sum_flags(p, with_r=False)
    p.add_argument("--count", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1, help="worker processes; row order is fixed")
    _add_common(p)

    p = sub.add_parser("lvalue", help="spectral L-values by every applicable route")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--char", required=True, help="INDEX, or MODULUS:INDEX")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--family", choices=("L", "tilde", "hat"), default="L")
    _add_common(p)

    p = sub.add_parser("heat", help="twisted heat kernel, image vs spectral")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--beta", default="0")
    p.add_argument("--x", type=int, default=0)
    p.add_argument("--y", type=int, default=0)
    p.add_argument("--t", required=True)
    _add_common(p)

    p = sub.add_parser("resolvent", help="resolvent kernel by spectral and closed forms")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--beta", default="0")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--x", type=int, default=0)
    p.add_argument("--y", type=int, default=0)
    p.add_argument("--s", required=True, help='complex as "a+bi"')
    _add_common(p)

    p = sub.add_parser("poles", help="resolvent poles and their modes")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--beta", default="0")
    _add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=tuple(verify.SUITES), default="all")
    p.add_argument("--max-m", type=int, default=None)
    _add_common(p)
    return parser


_NOT_PARAMS = {"command", "precision_bits", "format", "out"}


def job_from_args(ns: argparse.Namespace) -> JobSpec:
    params = {k: v for k, v in vars(ns).items() if k not in _NOT_PARAMS and v is not None}
    for key in ("beta", "alpha", "t"):
        if key in params:
            params[key] = format_rational(as_rational(params[key]))
    return JobSpec(ns.command, params, resolve_precision(ns.precision_bits), ns.format)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        job = job_from_args(ns)
        code, text = run(job)
    except DomainError as exc:
        print(f"cyclespec: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except CrossCheckError as exc:
        print(f"cyclespec: cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

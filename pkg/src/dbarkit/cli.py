"""Command-line front end.

Subcommands
-----------
``moments``    table of n, ln c_n^2, c_n^2 (when representable) and the ratio
``spectrum``   table of eigenvalues, partial sums, ratios and the verdict
``solve``      apply the solution operator to a coefficient file
``reproduce``  run the acceptance criteria and write one artifact per criterion

Exit codes: 0 success, 2 parameter-domain error, 3 input error (files,
malformed data), 4 numerical failure (quadrature or series truncation),
5 acceptance failure.

Output is deterministic: a fixed seed yields byte-identical files.  Reals are
printed with 17 significant digits; values whose natural log exceeds 700 in
magnitude are emitted as decimal strings built from the log so nothing ever
overflows.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .criteria import CRITERIA, DEFAULT_SEED, run_criteria
from .errors import (
    ConvergenceDomainError,
    DbarKitError,
    DivergenceError,
    InconclusiveSupremumError,
    ParameterDomainError,
    QuadratureError,
    SeriesTruncationError,
)
from .solver import (
    HolomorphicCoeffs,
    apply_solution_operator,
    bound_constant,
    dbar_residual,
    defect_norm_sq,
    monomial_inner_product,
)
from .spectrum import diagnostics, stirling_surrogate
from .weights import DiscPolynomial, FockExponential, MomentSequence

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_INPUT = 3
EXIT_NUMERICAL = 4
EXIT_ACCEPTANCE = 5

_LOG_OVERFLOW = 700.0


class InputError(DbarKitError):
    """Malformed input data (files, coefficient lists)."""


@dataclass
class RunConfig:
    command: str
    weight: str | None = None
    n_max: int = 50
    tol: float = 1e-10
    fmt: str = "csv"
    out: str | None = None
    seed: int = DEFAULT_SEED
    only: str | None = None
    coeffs: str | None = None

    def as_dict(self) -> dict:
        # `out` is deliberately not echoed: the artifact must not depend on
        # where it is written
        d = {"command": self.command, "format": self.fmt, "seed": self.seed}
        for key in ("weight", "n_max", "tol", "only", "coeffs"):
            v = getattr(self, key)
            if v is not None:
                d[key] = v
        return d


def parse_weight(text: str):
    """Parse ``family:key=value[,key=value]`` into a weight spec."""
    family, _, rest = text.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, sep, val = item.partition("=")
            if not sep:
                raise ParameterDomainError(
                    f"expected key=value in weight parameter {item!r}")
            try:
                params[key.strip()] = float(val)
            except ValueError:
                raise ParameterDomainError(
                    f"weight parameter {key.strip()!r} is not a number: {val!r}")
    if family == "disc":
        if set(params) != {"alpha"}:
            raise ParameterDomainError(
                f"disc weight takes exactly alpha=..., got {sorted(params)}")
        return DiscPolynomial(params["alpha"])
    if family == "fock":
        if set(params) != {"m"}:
            raise ParameterDomainError(
                f"fock weight takes exactly m=..., got {sorted(params)}")
        return FockExponential(params["m"])
    raise ParameterDomainError(
        f"unknown weight family {family!r}; use disc:alpha=... or fock:m=...")


# -- number rendering --------------------------------------------------------


def render_from_log(log_value: float):
    """The number exp(log_value): a float when representable, else a decimal
    string assembled from the log."""
    if abs(log_value) <= _LOG_OVERFLOW:
        return math.exp(log_value)
    log10 = log_value / math.log(10.0)
    e = math.floor(log10)
    mant = 10.0 ** (log10 - e)
    return f"{mant:.12g}e{int(e):+d}"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value + 0.0:.17g}"  # folds -0.0 into 0
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _json_cell(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, float):
        return value + 0.0 if math.isfinite(value) else str(value)
    return value


def rows_to_csv(rows, footer=None) -> str:
    lines = []
    if rows:
        header = list(rows[0].keys())
        lines.append(",".join(header))
        for row in rows:
            lines.append(",".join(_csv_cell(row.get(k)) for k in header))
    if footer:
        lines.append(",".join(_csv_cell(v) for v in footer))
    return "\n".join(lines) + "\n"


def envelope_to_json(config: RunConfig, rows, verdict=None, passed=None) -> str:
    body = {"command": config.command, "config": config.as_dict(),
            "rows": [{k: _json_cell(v) for k, v in row.items()} for row in rows]}
    if verdict is not None:
        body["verdict"] = verdict
    if passed is not None:
        body["pass"] = passed
    return json.dumps(body, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


# -- subcommands --------------------------------------------------------------


def cmd_moments(config: RunConfig) -> int:
    weight = parse_weight(config.weight)
    ms = MomentSequence(weight, quad_rel_tol=config.tol)
    rows = []
    for n in range(config.n_max + 1):
        log_c2 = ms.log_moment(n)
        rows.append({"n": n, "log_c2": log_c2, "c2": render_from_log(log_c2),
                     "ratio": ms.ratio(n)})
    if config.fmt == "json":
        _emit(envelope_to_json(config, rows), config.out)
    else:
        _emit(rows_to_csv(rows), config.out)
    return EXIT_OK


def cmd_spectrum(config: RunConfig) -> int:
    weight = parse_weight(config.weight)
    ms = MomentSequence(weight, quad_rel_tol=config.tol)
    diag = diagnostics(ms, config.n_max)
    is_fock = isinstance(weight, FockExponential)
    rows = []
    for n in range(config.n_max + 1):
        row = {"n": n, "lambda": float(diag.lambdas[n]),
               "partial_sum": float(diag.partial_sums[n]),
               "ratio": float(diag.ratios[n])}
        if is_fock:
            row["stirling_surrogate"] = (
                stirling_surrogate(weight.m, n) if n >= 1 else None)
        rows.append(row)
    verdict = None
    footer = None
    if diag.classification is not None:
        c = diag.classification
        verdict = {
            "verdict": c.verdict.value,
            "tail_window": list(c.evidence.tail_window),
            "lambda_tail_max": c.evidence.lambda_tail_max,
            "lambda_tail_min": c.evidence.lambda_tail_min,
            "ratio_tail": c.evidence.ratio_tail,
            "ratio_drift": c.evidence.ratio_drift,
            "decay_exponent": c.evidence.decay_exponent,
        }
        footer = ["classification", c.verdict.value,
                  f"window={c.evidence.tail_window[0]}..{c.evidence.tail_window[1]}",
                  f"lambda_tail_max={c.evidence.lambda_tail_max:.17g}",
                  f"lambda_tail_min={c.evidence.lambda_tail_min:.17g}",
                  f"ratio_tail={c.evidence.ratio_tail:.17g}",
                  f"ratio_drift={c.evidence.ratio_drift:.17g}",
                  f"decay_exponent={c.evidence.decay_exponent:.17g}"]
    if config.fmt == "json":
        _emit(envelope_to_json(config, rows, verdict=verdict), config.out)
    else:
        _emit(rows_to_csv(rows, footer=footer), config.out)
    return EXIT_OK


def read_coefficients(path: str) -> HolomorphicCoeffs:
    """Read a JSON array of [re, im] pairs, index = Taylor degree."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read coefficient file {path!r}: {exc}")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"coefficient file {path!r} is not valid JSON: {exc}")
    if not isinstance(data, list):
        raise InputError("coefficient file must hold a JSON array of [re, im] pairs")
    coeffs = []
    for i, pair in enumerate(data):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) for x in pair)):
            raise InputError(
                f"coefficient {i} must be a [re, im] number pair, got {pair!r}")
        coeffs.append(complex(pair[0], pair[1]))
    return HolomorphicCoeffs(coeffs)


def cmd_solve(config: RunConfig) -> int:
    weight = parse_weight(config.weight)
    f = read_coefficients(config.coeffs)
    ms = MomentSequence(weight, quad_rel_tol=config.tol)
    F = apply_solution_operator(f, ms)
    rng = np.random.default_rng(config.seed)
    r = 2.0 * np.sqrt(rng.uniform(0.0, 1.0, 100))
    th = rng.uniform(0.0, 2.0 * math.pi, 100)
    pts = r * np.exp(1j * th)

    rows = []
    for k, a in enumerate(F.conj_factor):
        rows.append({"section": "conj_factor", "index": k,
                     "re": a.real, "im": a.imag, "value": None})
    for k, a in enumerate(F.holo_part):
        rows.append({"section": "holo_part", "index": k,
                     "re": a.real, "im": a.imag, "value": None})
    rows.append({"section": "defect_norm_sq", "index": None, "re": None,
                 "im": None, "value": defect_norm_sq(f, 1.0, ms)})
    for j in range(f.degree + 3):
        rows.append({"section": "orthogonality_residual", "index": j,
                     "re": None, "im": None,
                     "value": abs(monomial_inner_product(F, j, ms))})
    rows.append({"section": "dbar_residual_max", "index": None, "re": None,
                 "im": None, "value": dbar_residual(F, f, pts)})
    rows.append({"section": "bound_constant", "index": None, "re": None,
                 "im": None,
                 "value": bound_constant(ms, max(f.degree, 1))})
    if config.fmt == "json":
        _emit(envelope_to_json(config, rows), config.out)
    else:
        _emit(rows_to_csv(rows), config.out)
    return EXIT_OK


def cmd_reproduce(config: RunConfig) -> int:
    results = run_criteria(only=config.only, seed=config.seed)
    outdir = None
    if config.out is not None:
        outdir = Path(config.out)
        outdir.mkdir(parents=True, exist_ok=True)
    all_passed = True
    for res in results:
        all_passed = all_passed and res.passed
        sys.stdout.write(res.summary() + "\n")
        if outdir is not None:
            if config.fmt == "json":
                body = {"command": "reproduce", "criterion": res.cid,
                        "title": res.title, "pass": res.passed,
                        "failures": res.failures,
                        "rows": [{k: _json_cell(v) for k, v in row.items()}
                                 for row in res.rows]}
                path = outdir / f"{res.cid}.json"
                path.write_text(json.dumps(body, indent=2) + "\n",
                                encoding="utf-8")
            else:
                footer = ["result", "PASS" if res.passed else "FAIL"]
                path = outdir / f"{res.cid}.csv"
                path.write_text(rows_to_csv(res.rows, footer=footer),
                                encoding="utf-8")
    sys.stdout.write(("all criteria PASS" if all_passed
                      else "some criteria FAILED") + "\n")
    return EXIT_OK if all_passed else EXIT_ACCEPTANCE


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dbarkit",
        description="canonical d-bar solution operator on weighted spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, weight=True):
        if weight:
            p.add_argument("--weight", required=True,
                           help="family:key=val, e.g. disc:alpha=0 or fock:m=2")
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--format", dest="fmt", choices=("csv", "json"),
                       default="csv")
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("moments", help="moment table for a weight")
    add_common(p)
    p.add_argument("--n-max", dest="n_max", type=int, default=50)

    p = sub.add_parser("spectrum", help="eigenvalue table and classification")
    add_common(p)
    p.add_argument("--n-max", dest="n_max", type=int, default=1000)

    p = sub.add_parser("solve", help="apply the solution operator to coefficients")
    add_common(p)
    p.add_argument("coeffs", help="JSON file: array of [re, im] pairs")

    p = sub.add_parser("reproduce", help="run the acceptance criteria")
    add_common(p, weight=False)
    p.add_argument("--only", choices=sorted(CRITERIA), default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        command=args.command,
        weight=getattr(args, "weight", None),
        n_max=getattr(args, "n_max", 50),
        tol=args.tol,
        fmt=args.fmt,
        out=args.out,
        seed=args.seed,
        only=getattr(args, "only", None),
        coeffs=getattr(args, "coeffs", None),
    )
    handlers = {"moments": cmd_moments, "spectrum": cmd_spectrum,
                "solve": cmd_solve, "reproduce": cmd_reproduce}
    try:
        return handlers[config.command](config)
    except ParameterDomainError as exc:
        sys.stderr.write(f"parameter error: {exc}\n")
        return EXIT_PARAMETER
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (QuadratureError, DivergenceError, SeriesTruncationError,
            ConvergenceDomainError, InconclusiveSupremumError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

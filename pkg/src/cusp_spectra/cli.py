"""Command-line front end.

Subcommands: spectrum, zeta, mode0-det, asymptotics, verify.  Data goes to
stdout (or --out), diagnostics to stderr.  Exit codes: 0 success, 2 invalid
configuration, 3 solver failure, 4 verification failure.
"""

from __future__ import annotations

import dataclasses
import math
import sys
from dataclasses import dataclass

import click

from . import spectrum, verify, zetadet
from .charfn import DEFAULT_DELTA, BundleError, CuspBundle, validate_delta
from .serialize import dumps, to_plain

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_VERIFY = 4

THEOREMS = ("mu-alpha", "mu-alpha0", "a-alpha", "a-alpha0")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    alpha: float = 0.3
    a: float = 1.0
    mu: float = 1.0
    lambda_max: float = 200.0
    k_max: int = 32
    s_re: float = 1.5
    s_im: float = 0.0
    tol: float = 1e-10
    delta: float = DEFAULT_DELTA
    format: str = "json"
    out_path: str | None = None
    deterministic: bool = True
    workers: int = 1

    def validate(self) -> "RunConfig":
        for name in ("alpha", "a", "mu", "lambda_max", "s_re", "s_im", "tol", "delta"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        if not 0.0 <= self.alpha < 1.0:
            raise ConfigError("alpha must lie in [0, 1)")
        if not self.a > 0:
            raise ConfigError("a must be positive")
        if self.mu < 0:
            raise ConfigError("mu must be nonnegative")
        if self.lambda_max < 0:
            raise ConfigError("lambda-max must be nonnegative")
        if self.k_max < 1:
            raise ConfigError("k-max must be at least 1")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        try:
            validate_delta(self.delta)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return self

    @property
    def s(self) -> complex:
        return complex(self.s_re, self.s_im)

    def bundle(self) -> CuspBundle:
        return CuspBundle(self.alpha, self.a, self.delta)


# --- output ------------------------------------------------------------------------

def _num(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def spectrum_csv(sl: spectrum.SpectrumSlice) -> str:
    lines = ["k,j,r,lambda,residual"]
    for rec in sl.records:
        lines.append(",".join((str(rec.k), str(rec.j), _num(rec.r), _num(rec.lam), _num(rec.residual))))
    return "\n".join(lines) + "\n"


def _rows_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _csv_cell(v) -> str:
    if isinstance(v, str):
        return '"' + v.replace('"', '""') + '"' if ("," in v or '"' in v) else v
    if v is None:
        return ""
    return _num(v)


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict) and set(v) == {"re", "im"}:
            out[key + "_re"] = v["re"]
            out[key + "_im"] = v["im"]
        elif isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            for i, item in enumerate(v):
                out[f"{key}.{i}"] = item
        else:
            out[key] = v
    return out


def _emit(cfg: RunConfig, text: str):
    if cfg.out_path:
        with open(cfg.out_path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _emit_record(cfg: RunConfig, payload: dict):
    if cfg.format == "json":
        _emit(cfg, dumps(payload) + "\n")
    else:
        flat = _flatten(to_plain(payload))
        _emit(cfg, _rows_csv(list(flat), [list(flat.values())]))


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


# --- shared options ------------------------------------------------------------------

def _options(f):
    opts = [
        click.option("--alpha", type=float, default=RunConfig.alpha, show_default=True, help="holonomy in [0, 1)"),
        click.option("--a", "a", type=float, default=RunConfig.a, show_default=True, help="cusp height"),
        click.option("--mu", type=float, default=RunConfig.mu, show_default=True, help="spectral shift"),
        click.option("--lambda-max", type=float, default=RunConfig.lambda_max, show_default=True),
        click.option("--k-max", type=int, default=RunConfig.k_max, show_default=True, help="modes integrated exactly"),
        click.option("--s-re", type=float, default=RunConfig.s_re, show_default=True),
        click.option("--s-im", type=float, default=RunConfig.s_im, show_default=True),
        click.option("--tol", type=float, default=RunConfig.tol, show_default=True, help="eigenvalue tolerance"),
        click.option("--delta", type=float, default=RunConfig.delta, show_default=True, help="splitting exponent"),
        click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True),
        click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="write here, not stdout"),
        click.option("--workers", type=int, default=1, show_default=True, help="worker processes"),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _config(**kw) -> RunConfig:
    kw["format"] = kw.pop("fmt")
    kw.pop("theorem", None)
    try:
        return RunConfig(**kw).validate()
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))


def _solve(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (BundleError, zetadet.StripError, zetadet.SliceError, spectrum.RangeError) as exc:
        _fail(EXIT_CONFIG, str(exc))
    except (ArithmeticError, RuntimeError) as exc:
        _fail(EXIT_SOLVER, f"{type(exc).__name__}: {exc}")


@click.group()
def main():
    """Spectra, zeta functions and determinants on a hyperbolic cusp."""


@main.command("spectrum")
@_options
def cmd_spectrum(**kw):
    """Eigenvalues up to --lambda-max, one row per eigenfunction."""
    cfg = _config(**kw)
    sl = _solve(spectrum.enumerate_eigenvalues, cfg.bundle(), cfg.lambda_max, tol=cfg.tol, workers=cfg.workers)
    for w in sl.warnings:
        click.echo(f"warning: {w}", err=True)
    if cfg.format == "csv":
        _emit(cfg, spectrum_csv(sl))
    else:
        payload = {
            "alpha": cfg.alpha, "a": cfg.a, "lambda_max": sl.lambda_max, "kernel_present": sl.kernel_present,
            "k_cutoff_used": sl.k_cutoff_used, "tol": sl.tol, "records": [r.as_dict() for r in sl.records],
        }
        _emit(cfg, dumps(payload) + "\n")
    sys.exit(EXIT_OK)


@main.command("zeta")
@_options
def cmd_zeta(**kw):
    """zeta(s) by eigenvalue summation and by the integral representation."""
    cfg = _config(**kw)
    if not 1.0 < cfg.s_re < 2.0:
        _fail(EXIT_CONFIG, f"s_re = {cfg.s_re} violates the strip 1 < Re s < 2 of the integral route")
    b = cfg.bundle()
    sl = _solve(spectrum.enumerate_eigenvalues, b, cfg.lambda_max, tol=cfg.tol, workers=cfg.workers)
    r = _solve(verify.cross_route, cfg.s, cfg.mu, sl, cfg.k_max, workers=cfg.workers)
    payload = {
        "s": cfg.s, "mu": cfg.mu, "alpha": cfg.alpha, "a": cfg.a,
        "value_direct": r["direct"].value, "value_integral": r["integral"].value,
        "estimate_direct": r["direct"].truncation_estimate, "estimate_integral": r["integral"].truncation_estimate,
        "abs_diff": r["abs_diff"], "combined_estimate": r["combined_estimate"],
    }
    _emit_record(cfg, payload)
    sys.exit(EXIT_OK)


@main.command("mode0-det")
@_options
def cmd_mode0_det(**kw):
    """Exact mode-0 contribution to the log-determinant derivative."""
    cfg = _config(**kw)
    if cfg.alpha == 0.0:
        _fail(EXIT_CONFIG, "mode 0 is excluded for the trivial character (alpha = 0)")
    if not cfg.mu > 0:
        _fail(EXIT_CONFIG, "mode0-det needs mu > 0")
    d = _solve(zetadet.mode0_aw_logdet_derivative, cfg.mu, cfg.bundle())
    payload = dataclasses.asdict(d)
    payload["closed_chain"] = zetadet.mode0_closed_chain(cfg.mu, cfg.bundle())
    _emit_record(cfg, payload)
    sys.exit(EXIT_OK)


@main.command("asymptotics")
@_options
@click.option("--theorem", type=click.Choice(THEOREMS), required=True, help="which expansion")
def cmd_asymptotics(theorem, **kw):
    """Term-by-term values of a large-mu or large-a expansion."""
    cfg = _config(**kw)
    try:
        if theorem == "mu-alpha":
            rep = zetadet.asymptotic_logdet_mu(cfg.bundle(), cfg.mu)
        elif theorem == "mu-alpha0":
            rep = zetadet.asymptotic_logdet_mu_alpha0(cfg.a, cfg.mu)
        elif theorem == "a-alpha":
            rep = zetadet.asymptotic_logdet_a(cfg.bundle())
        else:
            rep = zetadet.asymptotic_logdet_a_alpha0(cfg.a)
    except ValueError as exc:
        _fail(EXIT_CONFIG, str(exc))
    if cfg.format == "json":
        payload = dataclasses.asdict(rep)
        payload["total"] = rep.total
        _emit(cfg, dumps(payload) + "\n")
    else:
        rows = [[k, v] for k, v in rep.term_values.items()] + [["total", rep.total]]
        _emit(cfg, _rows_csv(["term", "value"], rows))
    sys.exit(EXIT_OK)


@main.command("verify")
@_options
def cmd_verify(**kw):
    """Run the verification suite; exit 4 if any check fails.

    With CUSP_SPECTRA_GOLDEN set, the spectrum of the reference bundle is also
    compared with the golden file in that directory.
    """
    cfg = _config(**kw)

    def progress(r):
        click.echo(f"{r.status:4s} {r.check_id}: measured {r.measured:.3e} threshold {r.threshold:.3e}", err=True)

    reports = _solve(
        verify.run_suite, cfg.alpha, cfg.a, cfg.mu, cfg.s, cfg.lambda_max, cfg.k_max, cfg.tol,
        workers=cfg.workers, render_csv=spectrum_csv, progress=progress,
    )
    if cfg.format == "json":
        _emit(cfg, dumps([r.as_dict() for r in reports]) + "\n")
    else:
        rows = [[r.check_id, r.status, r.measured, r.threshold, r.notes] for r in reports]
        _emit(cfg, _rows_csv(["check_id", "status", "measured", "threshold", "notes"], rows))
    failed = [r.check_id for r in reports if r.status == "fail"]
    if failed:
        click.echo(f"{len(failed)} check(s) failed: " + ", ".join(failed), err=True)
        sys.exit(EXIT_VERIFY)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()

"""Command-line front end: spectra, certificates, audits, void radii and grid export."""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import __version__
from .audit import AuditReport, _clean
from .config import PRECISIONS, Accuracy, default_precision
from .disk_spectrum import certify_nondegenerate, plate_mode, radial_modes, scan_admissible
from .eigenfunctions import DiskEigenfunction, write_grid_csv
from .envelopes import DEFAULT_SEED, lemma3_sweep, lemma5_report, lemma6_report
from .errors import (
    BracketFailure,
    CertificationFailed,
    DivergentEnvelope,
    DomainError,
    KnTooLarge,
    NodalVoidError,
    NonConvergence,
    NondegeneracyRequired,
    Overflow,
    PoleProximity,
    QuadratureUnconverged,
    RampViolation,
)

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2, 64
OUTPUTS = ("json", "pretty", "csv")
LEMMAS = ("3", "5", "6", "7", "8", "9", "10", "11", "sec6", "tangent", "sigma")

# grid keys accepted in the config file, with defaults
GRID_DEFAULTS = {
    "lemma3.n_max": 300,
    "lemma6.trials": 10_000,
    "lemma6.points": 100,
    "lemma10.n_r": 512,
    "lemma10.n_theta": 2048,
    "lemma10.ramp_start": math.exp(-2.0),
    "void.rtol": 1e-6,
    "void.radii": 32,
    "sigma.points": 10_000,
}
NUMERIC_ERRORS = (NonConvergence, BracketFailure, QuadratureUnconverged, Overflow, PoleProximity, DivergentEnvelope)
FAIL_ERRORS = (CertificationFailed, RampViolation, KnTooLarge, NondegeneracyRequired)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    precision: str = "double"
    seed: int = DEFAULT_SEED
    output: str = "json"
    out_path: str | None = None
    grids: dict = field(default_factory=lambda: dict(GRID_DEFAULTS))

    @property
    def acc(self) -> Accuracy:
        return Accuracy(precision=self.precision)

    def grid(self, key: str):
        return self.grids[key]


def _coerce(key: str, raw: str):
    default = GRID_DEFAULTS[key]
    try:
        return int(raw) if isinstance(default, int) else float(raw)
    except ValueError as exc:
        raise UsageError(f"bad value for {key}: {raw!r}") from exc


def parse_config_text(text: str) -> dict:
    """key = value lines; '#' starts a comment."""
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        if key in ("precision", "output", "out_path"):
            out[key] = value
        elif key == "seed":
            try:
                out[key] = int(value, 0)
            except ValueError as exc:
                raise UsageError(f"config line {lineno}: seed must be an integer") from exc
        elif key in GRID_DEFAULTS:
            out.setdefault("grids", {})[key] = _coerce(key, value)
        else:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
    return out


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(precision=default_precision())
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                values = parse_config_text(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        cfg.grids.update(values.pop("grids", {}))
        for k, v in values.items():
            setattr(cfg, k, v)
    for key in ("precision", "seed", "output", "out_path"):
        v = getattr(args, key, None)
        if v is not None:
            setattr(cfg, key, v)
    for item in getattr(args, "set", None) or []:
        if "=" not in item:
            raise UsageError(f"--set expects key=value, got {item!r}")
        k, v = (p.strip() for p in item.split("=", 1))
        if k not in GRID_DEFAULTS:
            raise UsageError(f"unknown grid key {k!r}")
        cfg.grids[k] = _coerce(k, v)
    if cfg.precision not in PRECISIONS:
        raise UsageError(f"precision must be one of {PRECISIONS}")
    if cfg.output not in OUTPUTS:
        raise UsageError(f"output must be one of {OUTPUTS}")
    if not 0 <= cfg.seed < 2 ** 64:
        raise UsageError("seed must be a 64-bit unsigned integer")
    return cfg


# ---------------------------------------------------------------------------
# output

def _envelope(command: str, cfg: RunConfig, result, ok: bool = True) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "pass": ok,
        "seed": cfg.seed,
        "config": _clean(asdict(cfg)),
        "result": _clean(result),
    }


def _emit(text: str, cfg: RunConfig):
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(command: str, cfg: RunConfig, result, ok: bool = True):
    _emit(json.dumps(_envelope(command, cfg, result, ok), indent=2, sort_keys=True) + "\n", cfg)


def _first_admissible(start: int = 100, stop: int = 1000) -> int:
    for N in range(start, stop + 1):
        if certify_nondegenerate(N).passed:
            return N
    raise CertificationFailed(f"no admissible N in [{start}, {stop}]")


# ---------------------------------------------------------------------------
# commands

def cmd_spectrum(args, cfg: RunConfig) -> int:
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    if args.radial:
        modes = radial_modes(args.count, cfg.acc)
    else:
        if args.n is None:
            raise UsageError("spectrum needs --n or --radial")
        modes = [plate_mode(args.n, k, cfg.acc) for k in range(1, args.count + 1)]
    rows = [m.as_dict() for m in modes]
    if cfg.output == "json":
        _emit_json("spectrum", cfg, rows)
    elif cfg.output == "csv":
        lines = ["N,k,xi,lambda,plate_eig"] + [f"{r['N']},{r['k']},{r['xi']!r},{r['lambda']!r},{r['plate_eig']!r}" for r in rows]
        _emit("\n".join(lines) + "\n", cfg)
    else:
        lines = [f"{'N':>6} {'k':>4} {'xi':>22} {'xi^4':>24}"]
        lines += [f"{r['N']:>6} {r['k']:>4} {r['xi']:>22.15f} {r['plate_eig']:>24.10f}" for r in rows]
        _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK


def _cert_lines(c) -> list[str]:
    lines = [f"N={c.N} xi={c.xi1:.15g} {'PASS' if c.passed else 'FAIL'}"]
    for name, ok in c.checks.items():
        lines.append(f"  {'ok  ' if ok else 'FAIL'} {name:<22} margin {c.margins[name]:.6g}")
    return lines


def cmd_certify(args, cfg: RunConfig) -> int:
    if args.scan is not None:
        lo, hi = args.scan
        ns = scan_admissible(lo, hi, cfg.acc)
        certs = [certify_nondegenerate(N, cfg.acc) for N in ns]
        if cfg.output == "pretty":
            _emit("\n".join(l for c in certs for l in _cert_lines(c)) + f"\nadmissible: {ns}\n", cfg)
        else:
            _emit_json("certify", cfg, [c.as_dict() for c in certs])
        return EXIT_OK
    if args.n is None:
        raise UsageError("certify needs --n or --scan")
    c = certify_nondegenerate(args.n, cfg.acc)
    if cfg.output == "pretty":
        _emit("\n".join(_cert_lines(c)) + "\n", cfg)
    else:
        _emit_json("certify", cfg, c.as_dict(), c.passed)
    if not c.passed:
        sys.stderr.write(f"N={c.N} failed: {', '.join(c.failed_checks())}\n")
        for name in c.failed_checks():
            sys.stderr.write(f"  {name}: margin {c.margins[name]:.6g}\n")
        return EXIT_FAIL
    return EXIT_OK


def _audit(lemma: str, args, cfg: RunConfig) -> AuditReport:
    from . import perturbation as P
    from .voidcert import sigma_and_tangent_bound

    if lemma == "3":
        return lemma3_sweep(n_max=cfg.grid("lemma3.n_max"))
    if lemma == "7":
        return P.audit_lemma7_bootstrap()
    if lemma == "8":
        return P.audit_lemma8_constants()
    if lemma == "9":
        return P.audit_lemma9_constants()
    if lemma == "sigma":
        n = cfg.grid("sigma.points")
        return sigma_and_tangent_bound(np.linspace(1e-4, 1.0 - 1e-4, n))
    if lemma == "10":
        N = args.n if args.n is not None else 10
        return P.audit_lemma10_jacobians(
            N, P.quadratic_ramp(cfg.grid("lemma10.ramp_start")),
            n_r=cfg.grid("lemma10.n_r"), n_theta=cfg.grid("lemma10.n_theta"))
    N = args.n if args.n is not None else _first_admissible()
    if lemma == "tangent":
        return P.audit_tangent(N)
    cert = certify_nondegenerate(N, cfg.acc)
    if lemma == "5":
        return lemma5_report(N, cert.xi1)
    if lemma == "6":
        return lemma6_report(N, cert.xi1, trials=cfg.grid("lemma6.trials"),
                             points=cfg.grid("lemma6.points"), seed=cfg.seed)
    if lemma == "11":
        return P.audit_lemma11_constants(N, cert, cfg.acc)
    if lemma == "sec6":
        return P.audit_section6_simplifications(N, cert)
    raise UsageError(f"unknown lemma {lemma!r}")


def cmd_audit(args, cfg: RunConfig) -> int:
    lemmas = list(LEMMAS) if args.lemma == "all" else [args.lemma]
    reports = [_audit(l, args, cfg) for l in lemmas]
    ok = all(r.passed for r in reports)
    if cfg.output == "pretty":
        _emit("\n\n".join(r.table() for r in reports) + "\n", cfg)
    else:
        payload = [r.as_dict() for r in reports]
        _emit_json("audit", cfg, payload if len(payload) > 1 else payload[0], ok)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_void(args, cfg: RunConfig) -> int:
    from .voidcert import certify_void

    N = args.n if args.n is not None else _first_admissible()
    cert = certify_nondegenerate(N, cfg.acc)
    if not cert.passed:
        sys.stderr.write(f"N={N} is not certified; failed nondegeneracy checks: {', '.join(cert.failed_checks())}\n")
        if cfg.output == "json":
            _emit_json("void", cfg, {"N": N, "nondegeneracy": cert.as_dict()}, False)
        return EXIT_FAIL
    vc = certify_void(N, cfg.acc, K_N=args.kn, rtol=cfg.grid("void.rtol"), radii=cfg.grid("void.radii"))
    if cfg.output == "pretty":
        lines = [
            f"N = {vc.N}   sqrt(lambda) = {vc.xi:.15g}   K_N = {vc.K_N:.6g}",
            f"t = exp({vc.log_t:.6f}) ~ {vc.t:.6e}",
            f"r_theorem   = {vc.r_theorem:.10g}",
            f"r_certified = {vc.r_certified:.10g}   (margin {vc.margin_at_r:.3e})",
            f"r_infinity  = {vc.r_infinity:.10g}",
        ]
        for name, c in vc.checks.items():
            lines.append(f"  {'ok  ' if c['pass'] else 'FAIL'} {name}: {c['value']!r} vs {c['bound']!r}")
        _emit("\n".join(lines) + "\n", cfg)
    else:
        _emit_json("void", cfg, vc.as_dict(), vc.passed)
    return EXIT_OK


def parse_grid(spec: str) -> np.ndarray:
    """'start:stop:count' (inclusive linspace) or a comma-separated list."""
    try:
        if ":" in spec:
            a, b, n = spec.split(":")
            n = int(n)
            if n < 1:
                raise ValueError
            return np.linspace(float(a), float(b), n)
        return np.asarray([float(v) for v in spec.split(",") if v.strip()], dtype=float)
    except ValueError as exc:
        raise UsageError(f"bad grid {spec!r}; use start:stop:count or a comma list") from exc


def cmd_eval(args, cfg: RunConfig) -> int:
    mode = plate_mode(args.n, args.k, cfg.acc)
    ef = DiskEigenfunction(mode, parity=args.parity)
    r = parse_grid(args.r_grid)
    th = parse_grid(args.theta_grid)
    if r.size == 0 or th.size == 0:
        raise UsageError("grids must be nonempty")
    if np.any(r < 0) or np.any(r > 1):
        raise UsageError("r grid must lie in [0, 1]")
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
            write_grid_csv(ef, r, th, fh)
    else:
        write_grid_csv(ef, r, th, sys.stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="key = value config file")
    common.add_argument("--precision", choices=PRECISIONS, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=argparse.SUPPRESS)
    common.add_argument("--output", choices=OUTPUTS, default=argparse.SUPPRESS)
    common.add_argument("--out", dest="out_path", default=argparse.SUPPRESS, help="write output here")
    common.add_argument("--set", action="append", default=argparse.SUPPRESS, metavar="KEY=VALUE",
                        help="override a grid setting, e.g. lemma6.trials=1000")

    p = _Parser(prog="nodal-void", description=__doc__, parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("spectrum", parents=[common], help="clamped-plate eigenvalues of the disk")
    s.add_argument("--n", type=int)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--radial", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("certify", parents=[common], help="nondegeneracy certificates")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--scan", type=int, nargs=2, metavar=("FROM", "TO"))
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("audit", parents=[common], help="numeric inequality audits")
    s.add_argument("--lemma", required=True, choices=LEMMAS + ("all",))
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("void", parents=[common], help="certify the nodal-void radius")
    s.add_argument("--n", type=int)
    s.add_argument("--kn", type=float)
    s.set_defaults(func=cmd_void)

    s = sub.add_parser("eval", parents=[common], help="export eigenfunction values on a polar grid")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--parity", choices=("cos", "sin"), default="cos")
    s.add_argument("--r-grid", default="0:1:11")
    s.add_argument("--theta-grid", default="0:6.283185307179586:9")
    s.set_defaults(func=cmd_eval)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command != "eval" and cfg.output == "csv" and args.command != "spectrum":
            raise UsageError("csv output is available for spectrum and eval only")
        return args.func(args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"nodal-void: error: {exc}\n")
        return EXIT_USAGE
    except FAIL_ERRORS as exc:
        sys.stderr.write(f"nodal-void: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL
    except NUMERIC_ERRORS as exc:
        sys.stderr.write(f"nodal-void: numerical failure: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC
    except DomainError as exc:
        sys.stderr.write(f"nodal-void: error: {exc}\n")
        return EXIT_USAGE
    except NodalVoidError as exc:
        sys.stderr.write(f"nodal-void: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``dunkl-landau {spectrum,wavefunction,verify,oracle,dump-config}``.

Exit codes: 0 success, 1 a required verification check failed, 2 bad
usage or configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import oracle, spectrum
from .angular import Sector
from .spectrum import ModelParams
from .verify import resolve_seed, run_verification

SPECTRUM_COLUMNS = ("n", "ell", "s1", "s2", "lambda_sign", "lambda", "k", "e_tilde", "E_plus", "E_minus", "source", "status")
PARAM_NAMES = tuple(f.name for f in fields(ModelParams))
FORMATS = ("csv", "json")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    params: ModelParams = field(default_factory=ModelParams)
    sectors: object = "all"  # "all" or a list of Sector
    n_max: int = 3
    format: str = "csv"
    out: str | None = None
    ell_max: float = 2.0

    def __post_init__(self):
        if isinstance(self.n_max, bool) or not isinstance(self.n_max, int) or self.n_max < 0:
            raise ConfigError(f"n_max must be an integer >= 0, got {self.n_max!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.sectors != "all" and not all(isinstance(s, Sector) for s in self.sectors):
            raise ConfigError("sectors must be 'all' or a list of sectors")

    def sector_list(self):
        if self.sectors == "all":
            return spectrum.enumerate_sectors(self.ell_max)
        return list(self.sectors)

    def to_json(self) -> dict:
        data = asdict(self.params)
        data["n_max"] = self.n_max
        data["format"] = self.format
        data["ell_max"] = self.ell_max
        if self.sectors == "all":
            data["sectors"] = "all"
        else:
            data["sectors"] = [[s.s1, s.s2, s.ell, s.lambda_sign] for s in self.sectors]
        return data


def parse_sector(text) -> Sector:
    """'s1,s2,ell,sign' (sign optional, default +1) or a 3/4-element list."""
    parts = text.split(",") if isinstance(text, str) else list(text)
    if len(parts) not in (3, 4):
        raise ConfigError(f"sector needs s1,s2,ell[,sign], got {text!r}")
    try:
        s1, s2 = int(parts[0]), int(parts[1])
        ell = float(parts[2])
        sign = int(parts[3]) if len(parts) == 4 else 1
        return Sector(s1, s2, ell, sign)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid sector {text!r}: {exc}") from None


def parse_grid(text) -> oracle.RadialGrid:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"grid needs rmin,rmax,N, got {text!r}")
    try:
        return oracle.RadialGrid(float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ConfigError(f"invalid grid {text!r}: {exc}") from None


def load_config_file(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - set(PARAM_NAMES) - {"n_max", "sectors", "format", "ell_max"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def build_config(args) -> RunConfig:
    data = load_config_file(args.config) if args.config else {}
    for name in PARAM_NAMES:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    for name in ("n_max", "format", "ell_max"):
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    if getattr(args, "sector", None):
        data["sectors"] = args.sector

    try:
        params = ModelParams(**{k: float(data[k]) for k in PARAM_NAMES if k in data})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid model parameters: {exc}") from None
    sectors = data.get("sectors", "all")
    if sectors != "all":
        if not isinstance(sectors, list):
            raise ConfigError("sectors must be 'all' or a list")
        sectors = [s if isinstance(s, Sector) else parse_sector(s) for s in sectors]
    return RunConfig(
        params=params,
        sectors=sectors,
        n_max=data.get("n_max", 3),
        format=data.get("format", "csv"),
        out=getattr(args, "out", None),
        ell_max=float(data.get("ell_max", 2.0)),
    )


# --- output ------------------------------------------------------------------

def _fmt(value):
    if isinstance(value, float):
        return "nan" if math.isnan(value) else format(value, ".15g")
    return str(value)


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, np.generic):
        return _json_safe(value.item())
    return value


def render_rows(rows, columns, fmt) -> str:
    if fmt == "json":
        return json.dumps(_json_safe([{c: r[c] for c in columns} for r in rows]), indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands ------------------------------------------------------------------

def cmd_spectrum(config: RunConfig) -> str:
    records = spectrum.spectrum_table(config.params, config.sector_list(), config.n_max)
    return render_rows([r.row() for r in records], SPECTRUM_COLUMNS, config.format)


def wavefunction_samples(config: RunConfig, n: int, sector: Sector, n_rho=121, n_phi=181, rho_max=None):
    """Samples of Psi on a tensor (rho, phi) grid, phi in [0, 2 pi] inclusive."""
    if n < 0:
        raise ConfigError(f"n must be >= 0, got {n}")
    if n_rho < 2 or n_phi < 2:
        raise ConfigError("wavefunction grid needs at least 2 points per axis")
    p = config.params
    rho_max = rho_max or 7.0 * p.length_scale
    rho = np.linspace(0.0, rho_max, n_rho)
    phi = np.linspace(0.0, 2 * np.pi, n_phi)
    rr, pp = np.meshgrid(rho, phi, indexing="ij")
    psi = spectrum.wavefunction_eval(p, n, sector, rr, pp)
    return [
        {"rho": float(a), "phi": float(b), "re": float(z.real), "im": float(z.imag), "abs2": float(abs(z) ** 2)}
        for a, b, z in zip(rr.ravel(), pp.ravel(), psi.ravel())
    ]


def cmd_wavefunction(config: RunConfig, n: int, sector: Sector, n_rho=121, n_phi=181, rho_max=None) -> str:
    rows = wavefunction_samples(config, n, sector, n_rho, n_phi, rho_max)
    return render_rows(rows, ("rho", "phi", "re", "im", "abs2"), config.format)


def cmd_verify(config: RunConfig, quick=False):
    try:
        seed = resolve_seed()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    report = run_verification(config.params, seed=seed, quick=quick)
    text = json.dumps(_json_safe(report.as_dict()), indent=2) + "\n"
    return text, report


def cmd_oracle(config: RunConfig, levels: int, grid: oracle.RadialGrid | None) -> str:
    rows = []
    for s in config.sector_list():
        rep = oracle.oracle_vs_chain(config.params, s, levels, grid)
        for r in rep.rows:
            rows.append({"s1": s.s1, "s2": s.s2, "ell": s.ell, "lambda_sign": s.lambda_sign, **r})
    columns = ("s1", "s2", "ell", "lambda_sign", "n", "e_tilde_oracle", "e_tilde_exact", "E_oracle",
               "E_chain", "E_verbatim", "dE_chain", "dE_verbatim", "E_tolerance")
    return render_rows(rows, columns, config.format)


# --- argument parsing -------------------------------------------------------

def _common(parser):
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--n-max", dest="n_max", type=int)
    parser.add_argument("--ell-max", dest="ell_max", type=float, help="largest ell when sectors are 'all'")
    parser.add_argument("--sector", action="append", help="s1,s2,ell[,sign], repeatable; write --sector=-1,... when s1 is negative")
    parser.add_argument("--dump-config", action="store_true", help="print the effective config as JSON and stop")
    for name in PARAM_NAMES:
        flag = "--" + name.replace("_", "-")
        parser.add_argument(flag, dest=name, type=float)


def build_parser():
    parser = argparse.ArgumentParser(prog="dunkl-landau", description="Dunkl-Klein-Gordon oscillator Landau levels")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="energy table")
    _common(p)

    p = sub.add_parser("wavefunction", help="sample Psi on a (rho, phi) grid")
    _common(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--n-rho", type=int, default=121)
    p.add_argument("--n-phi", type=int, default=181)
    p.add_argument("--rho-max", type=float)

    p = sub.add_parser("verify", help="run all numerical checks, JSON report")
    _common(p)
    p.add_argument("--quick", action="store_true", help="smaller sizes, skips the full oracle sweep")

    p = sub.add_parser("oracle", help="finite-difference levels against both energy formulas")
    _common(p)
    p.add_argument("--grid", help="rmin,rmax,N")
    p.add_argument("--levels", type=int, default=5)

    p = sub.add_parser("dump-config", help="print the effective config as JSON")
    _common(p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = build_config(args)
        if args.dump_config or args.command == "dump-config":
            emit(json.dumps(config.to_json(), indent=2, sort_keys=True) + "\n", config.out)
        elif args.command == "spectrum":
            emit(cmd_spectrum(config), config.out)
        elif args.command == "wavefunction":
            sectors = config.sector_list()
            sector = sectors[0] if config.sectors != "all" else Sector(1, 1, 0.0)
            emit(cmd_wavefunction(config, args.n, sector, args.n_rho, args.n_phi, args.rho_max), config.out)
        elif args.command == "verify":
            text, report = cmd_verify(config, args.quick)
            emit(text, config.out)
            if not report.passed:
                print(f"verification failed: {', '.join(report.failed_required)}", file=sys.stderr)
                return 1
        elif args.command == "oracle":
            if args.levels < 1:
                raise ConfigError(f"--levels must be >= 1, got {args.levels}")
            grid = parse_grid(args.grid) if args.grid else None
            emit(cmd_oracle(config, args.levels, grid), config.out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

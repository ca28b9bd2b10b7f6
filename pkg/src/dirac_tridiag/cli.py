"""Command-line front end emitting spectra, convergence tables, sweeps and wavefunctions.

Usage::

    dirac-tridiag spectrum --model halfsine --m 1 --lambda 1.2 --v0 0.5 --case mm --size 30
    dirac-tridiag converge --sizes 10,15,20,30
    dirac-tridiag sweep --lambda 1.5 --v0-max 3 --v0-step 0.25 --case mp
    dirac-tridiag wavefunction --state 2 --grid 401 --format json --out psi.json
    dirac-tridiag verify

Exit codes: 0 success, 1 solver or verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import halfsine, oscillator
from .errors import (DegenerateRecursionError, OracleError, ParameterDomainError, RootNotFoundError,
                     TruncationError)
from .tridiag import SymTridiagonal, eigenvalues, eigenvalues_dense_oracle

SCHEMA = "dirac-tridiag"
SCHEMA_VERSION = "v1"
COMMANDS = ("spectrum", "converge", "sweep", "wavefunction", "verify")

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

# flag / config key -> RunConfig field
_KEY_TO_FIELD = {"lambda": "lam"}
_FIELD_TO_KEY = {v: k for k, v in _KEY_TO_FIELD.items()}


class UsageError(ValueError):
    """Bad flags, config keys or parameter combinations."""


@dataclass(frozen=True)
class RunConfig:
    model: str = "halfsine"
    m: float = 1.0
    lam: float = 1.2
    v0: float = 0.5
    case: str = "mm"
    gamma: float = 0.7
    tau: float = 0.5
    nu_sign: str = "plus"
    size: int = 30
    levels: int | None = None
    grid: int = 201
    sizes: tuple = (10, 15, 20, 30)
    v0_max: float = 2.0
    v0_step: float = 0.1
    state: int = 1
    format: str = "csv"
    out: str | None = None

    def validate(self):
        if self.model not in ("halfsine", "oscillator"):
            raise UsageError(f"model must be halfsine or oscillator, got {self.model!r}")
        if self.case not in halfsine.CASES:
            raise UsageError(f"case must be one of {sorted(halfsine.CASES)}")
        if self.nu_sign not in ("plus", "minus"):
            raise UsageError("nu_sign must be plus or minus")
        if self.format not in ("csv", "json"):
            raise UsageError("format must be csv or json")
        if not self.lam > 0:
            raise UsageError("lambda must be positive")
        if self.size < 1:
            raise UsageError("size must be at least 1")
        if self.levels is not None and not 1 <= self.levels <= self.size:
            raise UsageError(f"levels must lie in [1, size={self.size}]")
        if self.grid < 2:
            raise UsageError("grid needs at least 2 points")
        if not self.sizes or any(s < 1 for s in self.sizes) or list(self.sizes) != sorted(set(self.sizes)):
            raise UsageError("sizes must be a strictly ascending list of positive integers")
        if not self.v0_step > 0 or self.v0_max < 0:
            raise UsageError("sweep needs v0_step > 0 and v0_max >= 0")
        if self.state < 0:
            raise UsageError("state must be non-negative")
        return self

    def level_count(self, default):
        return min(self.levels if self.levels is not None else default, self.size)

    def halfsine_model(self, v0=None):
        return halfsine.HalfSineModel(self.m, self.lam, self.v0 if v0 is None else v0, self.case)

    def oscillator_model(self, v0=None):
        return oscillator.OscillatorModel(self.m, self.lam, self.v0 if v0 is None else v0,
                                          self.gamma, self.tau, self.nu_sign)


def _parse_sizes(text):
    if isinstance(text, (tuple, list)):
        return tuple(int(s) for s in text)
    try:
        return tuple(int(s) for s in str(text).split(",") if s.strip())
    except ValueError as exc:
        raise UsageError(f"sizes must be comma-separated integers, got {text!r}") from exc


def _optional_int(text):
    return None if text in (None, "", "none") else int(text)


def _optional_str(text):
    return None if text in (None, "", "-") else str(text)


_CONVERTERS = {
    "model": str, "m": float, "lam": float, "v0": float, "case": str, "gamma": float,
    "tau": float, "nu_sign": str, "size": int, "levels": _optional_int, "grid": int,
    "sizes": _parse_sizes, "v0_max": float, "v0_step": float, "state": int, "format": str,
    "out": _optional_str,
}


def _convert(name, value):
    try:
        return _CONVERTERS[name](value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad value for {_FIELD_TO_KEY.get(name, name)}: {value!r}") from exc


def read_config(path):
    """Parse ``key = value`` lines; ``#`` starts a comment. Unknown keys are an error."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        name = _KEY_TO_FIELD.get(key, key)
        if key in _KEY_TO_FIELD.values() or name not in _CONVERTERS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[name] = _convert(name, value)
    return values


def build_config(file_values=None, overrides=None):
    """Defaults, then config-file values, then explicit flag values."""
    merged = {}
    merged.update(file_values or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return RunConfig(**merged).validate()


# ---------------------------------------------------------------- tables


@dataclass
class Table:
    command: str
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)
    # columns printed with a fixed 10 decimals instead of 12 significant digits
    fixed: frozenset = frozenset()


def _sig12(value):
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return int(value)
    if isinstance(value, str):
        return value
    return float(f"{float(value):.12g}")


def _csv_cell(column, value, fixed):
    if isinstance(value, (int, np.integer, str)):
        return str(value)
    if column in fixed:
        return f"{float(value):.10f}"
    return f"{float(value):.12g}"


def to_csv(table: Table):
    buf = io.StringIO()
    buf.write(f"# {SCHEMA},{SCHEMA_VERSION},{table.command}\n")
    for key, value in table.metadata.items():
        buf.write(f"# {key}={_csv_cell(key, value, table.fixed)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_csv_cell(c, v, table.fixed) for c, v in zip(table.columns, row)])
    return buf.getvalue()


def table_to_json_obj(table: Table):
    return {
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "command": table.command,
        "metadata": {k: _sig12(v) for k, v in table.metadata.items()},
        "columns": list(table.columns),
        "rows": [[_sig12(v) for v in row] for row in table.rows],
    }


def to_json(table: Table):
    return json.dumps(table_to_json_obj(table), indent=2) + "\n"


def emit(table: Table, cfg: RunConfig):
    text = to_csv(table) if cfg.format == "csv" else to_json(table)
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------- commands


def _energies(cfg, size, count, v0=None):
    if cfg.model == "halfsine":
        return halfsine.spectrum(cfg.halfsine_model(v0), size, count)
    return oscillator.spectrum_osc(cfg.oscillator_model(v0), size, count)


def cmd_spectrum(cfg: RunConfig) -> Table:
    count = cfg.level_count(10)
    eps = _energies(cfg, cfg.size, count)
    scaled = (eps - cfg.m) / (2 * cfg.lam)
    rows = [[k, float(scaled[k]), float(eps[k])] for k in range(count)]
    return Table("spectrum", ["k", "E_over_2lambda", "epsilon"], rows,
                 {"model": cfg.model, "size": cfg.size}, frozenset({"E_over_2lambda"}))


def cmd_converge(cfg: RunConfig) -> Table:
    count = min(cfg.levels if cfg.levels is not None else 10, cfg.sizes[0])
    columns = ["k"] + [f"N={n}" for n in cfg.sizes]
    per_size = [(_energies(cfg, n, count) - cfg.m) / (2 * cfg.lam) for n in cfg.sizes]
    rows = [[k] + [float(col[k]) for col in per_size] for k in range(count)]
    return Table("converge", columns, rows, {"model": cfg.model}, frozenset(columns[1:]))


def sweep_values(v0_max, v0_step):
    """Symmetric grid ``i * step`` for ``i = -n..n`` with ``n = round(v0_max / step)``."""
    n = int(round(v0_max / v0_step))
    return [i * v0_step for i in range(-n, n + 1)]


def cmd_sweep(cfg: RunConfig) -> Table:
    count = cfg.level_count(4)
    columns = ["v0"] + [f"epsilon_{k}" for k in range(count)]
    rows = []
    for v0 in sweep_values(cfg.v0_max, cfg.v0_step):
        eps = _energies(cfg, cfg.size, count, v0)
        rows.append([v0] + [float(e) for e in eps])
    return Table("sweep", columns, rows, {"model": cfg.model, "size": cfg.size})


def cmd_wavefunction(cfg: RunConfig) -> Table:
    if cfg.model != "halfsine":
        raise UsageError("wavefunction output is available for the halfsine model only")
    model = cfg.halfsine_model()
    half = model.length / 2
    xs = np.linspace(-half, half, cfg.grid)
    state = halfsine.reconstruct_spinor(model, cfg.state, xs)
    rows = [[float(x), float(u), float(lw)]
            for x, u, lw in zip(xs, state.sample.upper, state.sample.lower)]
    meta = {"state": cfg.state, "size": state.size, "epsilon": state.epsilon,
            "E_over_2lambda": state.t}
    return Table("wavefunction", ["x", "psi_upper", "psi_lower"], rows, meta,
                 frozenset({"E_over_2lambda"}))


@dataclass(frozen=True)
class Check:
    name: str
    error: float
    threshold: float

    @property
    def passed(self):
        return bool(self.error <= self.threshold)


def _check_quadrature(cfg, exact):
    worst = 0.0
    eps = cfg.m + 0.3 * cfg.lam
    for case in halfsine.CASES:
        model = halfsine.HalfSineModel(cfg.m, cfg.lam, cfg.v0, case)
        dense = halfsine.build_J(model, eps, 9, exact=exact).to_dense()
        first = 0 if exact else 1
        for n in range(first, 9):
            for k in range(first, 9):
                if abs(n - k) <= 3:
                    ref = halfsine.jmatrix_quadrature_oracle(model, eps, n, k)
                    worst = max(worst, abs(dense[n, k] - ref))
    return worst


def _check_oscillator_quadrature(cfg):
    model = oscillator.OscillatorModel(cfg.m, cfg.lam, cfg.v0, cfg.gamma, 0.2, cfg.nu_sign)
    eps = cfg.m + 0.1
    dense = oscillator.build_J_osc(model, eps, 9).to_dense()
    return max(abs(dense[n, k] - oscillator.jmatrix_quadrature_oracle_osc(model, eps, n, k))
               for n in range(9) for k in range(9) if abs(n - k) <= 3)


def _check_eigensolver(fault):
    rng = np.random.default_rng(20240611)
    worst = 0.0
    for _ in range(100):
        size = int(rng.integers(1, 9))
        mat = SymTridiagonal(rng.uniform(-2, 2, size), rng.uniform(-1, 1, size - 1))
        ours = eigenvalues(mat) + fault
        worst = max(worst, float(np.max(np.abs(ours - eigenvalues_dense_oracle(mat)))))
    return worst


def _check_mp_identity(cfg):
    model = oscillator.OscillatorModel(cfg.m, cfg.lam, abs(cfg.v0) or 0.3, cfg.gamma, 0.0, cfg.nu_sign)
    # any energy above the admissible threshold 2(lambda - m) + m
    eps = cfg.m + max(2 * (cfg.lam - cfg.m), 0.0) + 0.3
    forward = oscillator.angle_form_coefficients(model, eps, 20)
    closed = oscillator.mp_coefficients(model, eps, 20)
    return float(np.max(np.abs(forward - closed) / np.maximum(1.0, np.abs(closed))))


def _check_nonrel_map(cfg):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10):
        m = rng.uniform(0.5, 2.0)
        model = halfsine.HalfSineModel(m, m + rng.uniform(0.01, 2.0), rng.uniform(-2, 2), "pp")
        rel, schr = halfsine.nonrel_matrices(model, 20)
        a, b = rel.to_dense(), schr.to_dense()
        worst = max(worst, float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a)))))
    return worst


def run_checks(cfg: RunConfig, fault=0.0):
    """Oracle comparisons behind ``verify``; ``fault`` shifts every Sturm eigenvalue."""
    return [
        Check("jmatrix_exact_vs_quadrature", _check_quadrature(cfg, exact=True), 1e-10),
        Check("jmatrix_closed_form_vs_quadrature_n_ge_1", _check_quadrature(cfg, exact=False), 1e-10),
        Check("oscillator_jmatrix_vs_quadrature", _check_oscillator_quadrature(cfg), 1e-10),
        Check("sturm_vs_dense_eigenvalues", _check_eigensolver(fault), 1e-10),
        Check("recursion_vs_meixner_pollaczek", _check_mp_identity(cfg), 1e-12),
        Check("nonrelativistic_parameter_map", _check_nonrel_map(cfg), 1e-14),
    ]


def cmd_verify(cfg: RunConfig, fault=0.0) -> Table:
    checks = run_checks(cfg, fault)
    rows = [[c.name, c.error, c.threshold, "pass" if c.passed else "fail"] for c in checks]
    return Table("verify", ["check", "error", "threshold", "status"], rows)


# ---------------------------------------------------------------- argument parsing


def _add_common(sub):
    sub.add_argument("--config", help="plain-text 'key = value' file; flags override it")
    sub.add_argument("--model", choices=["halfsine", "oscillator"])
    sub.add_argument("--m", type=float, help="particle mass")
    sub.add_argument("--lambda", dest="lam", type=float, help="basis scale (inverse length)")
    sub.add_argument("--v0", type=float, help="potential strength")
    sub.add_argument("--case", choices=sorted(halfsine.CASES), help="half-sine spinor basis")
    sub.add_argument("--gamma", type=float, help="oscillator 1/x pseudo-scalar strength")
    sub.add_argument("--tau", type=float, help="oscillator linear pseudo-scalar slope")
    sub.add_argument("--nu-sign", dest="nu_sign", choices=["plus", "minus"])
    sub.add_argument("--size", type=int, help="basis truncation N")
    sub.add_argument("--levels", type=int, help="number of energy levels")
    sub.add_argument("--grid", type=int, help="number of x samples")
    sub.add_argument("--sizes", type=str, help="comma-separated truncations for converge")
    sub.add_argument("--v0-max", dest="v0_max", type=float)
    sub.add_argument("--v0-step", dest="v0_step", type=float)
    sub.add_argument("--state", type=int, help="level index for wavefunction")
    sub.add_argument("--format", choices=["csv", "json"])
    sub.add_argument("--out", help="output path (default standard output)")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)


def make_parser():
    parser = _Parser(prog="dirac-tridiag",
                     description="Tridiagonal-representation solver for the 1D Dirac equation.")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "spectrum": "lowest energy levels at one truncation",
        "converge": "energy levels across several truncations",
        "sweep": "lowest levels over a symmetric range of V0",
        "wavefunction": "reconstructed spinor components on a grid",
        "verify": "run the oracle checks",
    }
    for name in COMMANDS:
        sub = subs.add_parser(name, help=helps[name])
        _add_common(sub)
        if name == "verify":
            sub.add_argument("--inject-fault", dest="inject_fault", action="store_true",
                             help="perturb the eigensolver to confirm that checks can fail")
    return parser


_RUNNERS = {
    "spectrum": cmd_spectrum,
    "converge": cmd_converge,
    "sweep": cmd_sweep,
    "wavefunction": cmd_wavefunction,
}


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        file_values = read_config(args.config) if args.config else {}
        overrides = {f.name: getattr(args, f.name, None) for f in dataclasses.fields(RunConfig)}
        if overrides["sizes"] is not None:
            overrides["sizes"] = _parse_sizes(overrides["sizes"])
        cfg = build_config(file_values, overrides)
    except (UsageError, TypeError) as exc:
        print(f"dirac-tridiag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "verify":
            fault = 1e-6 if args.inject_fault else 0.0
            table = cmd_verify(cfg, fault)
            emit(table, cfg)
            return EXIT_OK if all(row[3] == "pass" for row in table.rows) else EXIT_FAILURE
        emit(_RUNNERS[args.command](cfg), cfg)
    except (UsageError, ParameterDomainError) as exc:
        print(f"dirac-tridiag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TruncationError as exc:
        print(f"dirac-tridiag: truncation failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (RootNotFoundError, DegenerateRecursionError, OracleError, ArithmeticError, ValueError) as exc:
        print(f"dirac-tridiag: solver failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

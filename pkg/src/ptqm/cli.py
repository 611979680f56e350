"""Command-line front end: parameter sweeps emitted as CSV or JSON.

Example:
  ptqm signal --alpha 0.7854 --cpt --t 1 --mode naive
  ptqm metric --alpha-grid=-1.4:1.4:8 --u 0.1 --format csv --output metric.csv

Exit codes: 0 success, 2 invalid configuration or metric parameters,
3 request inside the exceptional-point domain, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    ComplexSpectrum,
    DegenerateSpectrum,
    ExceptionalPoint,
    InadmissibleObservable,
    InadmissibleProjector,
    InvalidConfig,
    InvalidMetricParams,
)
from .linalg import eigensystem
from .model import (
    MetricParams,
    ModelParams,
    build_hamiltonian,
    build_metric,
    cpt_metric,
    ep_diagnostics,
    family_coefficients,
    quasi_hermiticity_residual,
    solve_metric_family,
)
from .nosignaling import AliceAction, CompositeSystem, bell_state, signaling_magnitude, theta_projectors
from .space import PhysicalSpace, evolve, s_norm2

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_EP = 3
EXIT_IO = 4

COMMANDS = ("metric", "family", "evolve", "signal", "ep-scan")
SCHEMA_PATH = Path(__file__).with_name("schema") / "output.schema.json"


@dataclass
class ScenarioConfig:
    command: str
    s: float = 1.0
    alphas: list[float] = field(default_factory=lambda: [0.0])
    us: list[float] = field(default_factory=lambda: [0.0])
    a: float = 1.0
    cpt: bool = False
    ts: list[float] = field(default_factory=lambda: [1.0])
    mode: str = "both"
    action: str = "evolve"
    psi: list[complex] | None = None
    output: str | None = None
    format: str = "json"

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidConfig(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise InvalidConfig(f"format must be csv or json, got {self.format!r}")
        if self.mode not in ("corrected", "naive", "both"):
            raise InvalidConfig(f"unknown mode {self.mode!r}")
        if self.action not in ("evolve", "project"):
            raise InvalidConfig(f"unknown action {self.action!r}")
        for name in ("alphas", "us", "ts"):
            values = getattr(self, name)
            if not values:
                raise InvalidConfig(f"{name} grid is empty")
            if not all(math.isfinite(v) for v in values):
                raise InvalidConfig(f"{name} grid has non-finite values")
        if not (math.isfinite(self.s) and self.s != 0):
            raise InvalidConfig("s must be finite and nonzero")
        if not math.isfinite(self.a) or self.a == 0:
            raise InvalidConfig("a must be finite and nonzero")
        if self.psi is not None and not any(self.psi):
            raise InvalidConfig("initial state must be nonzero")


# -- argument parsing ---------------------------------------------------------


def parse_range(spec: str) -> list[float]:
    """``START:STOP:NUM`` -> inclusive linspace; ``START`` alone -> one value."""
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) != 3:
            raise ValueError
        start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InvalidConfig(f"bad range {spec!r}; expected START:STOP:NUM") from None
    if num < 1:
        raise InvalidConfig(f"range {spec!r} needs NUM >= 1")
    if start > stop:
        raise InvalidConfig(f"range {spec!r} is not ordered")
    return np.linspace(start, stop, num).tolist()


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ptqm", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--s", type=float, default=1.0, help="coupling scale")
    ap.add_argument("--alpha", type=float, nargs="+", help="angle(s) in radians")
    ap.add_argument("--alpha-deg", type=float, nargs="+", help="angle(s) in degrees")
    ap.add_argument("--alpha-grid", help="START:STOP:NUM in radians")
    ap.add_argument("--approach", type=int, help="ep-scan: alpha = pi/2 - 10^-k for k=1..K, then pi/2")
    ap.add_argument("--a", type=float, default=1.0, help="metric scale")
    ap.add_argument("--u", type=float, nargs="+", help="metric asymmetry value(s)")
    ap.add_argument("--u-grid", help="START:STOP:NUM")
    ap.add_argument("--cpt", action="store_true", help="use the CPT-fixed metric (overrides --a/--u)")
    ap.add_argument("--t", type=float, nargs="+", help="time value(s)")
    ap.add_argument("--t-grid", help="START:STOP:NUM")
    ap.add_argument("--mode", default="both", choices=("corrected", "naive", "both"))
    ap.add_argument("--action", default="evolve", choices=("evolve", "project"))
    ap.add_argument("--psi", type=float, nargs=4, metavar=("RE0", "IM0", "RE1", "IM1"),
                    help="evolve: initial qubit state (default |0>)")
    ap.add_argument("--output", "-o", help="output path (default stdout)")
    ap.add_argument("--format", default="json", choices=("csv", "json"))
    return ap


def read_config_file(path: str) -> tuple[str | None, list[str]]:
    """Translate ``key=value`` lines into ``(command, argv tokens)``."""
    command: str | None = None
    tokens: list[str] = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"{path}:{lineno}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("_", "-")
        if key == "command":
            command = value
        elif value.lower() in ("true", "yes", "on"):
            tokens.append(f"--{key}")
        elif value.lower() in ("false", "no", "off"):
            continue
        elif len(value.split()) == 1:
            # "=" form keeps negative values from reading as flags
            tokens.append(f"--{key}={value}")
        else:
            tokens += [f"--{key}", *value.split()]
    return command, tokens


def config_from_args(ns: argparse.Namespace) -> ScenarioConfig:
    alpha_sources = [x for x in (ns.alpha, ns.alpha_deg, ns.alpha_grid, ns.approach) if x is not None]
    if len(alpha_sources) > 1:
        raise InvalidConfig("give only one of --alpha, --alpha-deg, --alpha-grid, --approach")
    if ns.alpha is not None:
        alphas = list(ns.alpha)
    elif ns.alpha_deg is not None:
        alphas = [math.radians(x) for x in ns.alpha_deg]
    elif ns.alpha_grid is not None:
        alphas = parse_range(ns.alpha_grid)
    elif ns.approach is not None:
        if ns.approach < 1:
            raise InvalidConfig("--approach needs K >= 1")
        alphas = [math.pi / 2 - 10.0 ** -k for k in range(1, ns.approach + 1)] + [math.pi / 2]
    else:
        alphas = [0.0]

    if ns.u is not None and ns.u_grid is not None:
        raise InvalidConfig("give only one of --u, --u-grid")
    us = list(ns.u) if ns.u is not None else parse_range(ns.u_grid) if ns.u_grid else [0.0]

    if ns.t is not None and ns.t_grid is not None:
        raise InvalidConfig("give only one of --t, --t-grid")
    ts = list(ns.t) if ns.t is not None else parse_range(ns.t_grid) if ns.t_grid else [1.0]

    psi = None
    if ns.psi is not None:
        psi = [complex(ns.psi[0], ns.psi[1]), complex(ns.psi[2], ns.psi[3])]

    cfg = ScenarioConfig(
        command=ns.command, s=ns.s, alphas=alphas, us=us, a=ns.a, cpt=ns.cpt, ts=ts,
        mode=ns.mode, action=ns.action, psi=psi, output=ns.output, format=ns.format,
    )
    cfg.validate()
    return cfg


# -- scenario evaluation ------------------------------------------------------


def _metric_points(cfg: ScenarioConfig, alpha: float):
    """Yield ``(a, u, theta)`` for every requested metric at this alpha."""
    p = ModelParams(cfg.s, alpha)
    if cfg.cpt:
        theta = cpt_metric(p)
        yield 1.0 / math.sqrt(math.cos(alpha)), 0.0, theta
        return
    for u in cfg.us:
        yield cfg.a, u, build_metric(p, MetricParams(cfg.a, u))


def _fixing(cfg: ScenarioConfig) -> str:
    return "cpt" if cfg.cpt else "explicit"


def _run_metric(cfg):
    rows = []
    for alpha in cfg.alphas:
        h = build_hamiltonian(ModelParams(cfg.s, alpha))
        for a, u, theta in _metric_points(cfg, alpha):
            evs = np.linalg.eigvalsh(theta)
            rows.append({
                "alpha": alpha, "a": a, "u": u, "metric_fixing": _fixing(cfg),
                "theta": theta,
                "metric_eigenvalue_min": float(evs[0]), "metric_eigenvalue_max": float(evs[-1]),
                "residual": quasi_hermiticity_residual(h, theta),
            })
    return rows


def _run_family(cfg):
    rows = []
    for alpha in cfg.alphas:
        p = ModelParams(cfg.s, alpha)
        if p.at_exceptional_point():
            raise ExceptionalPoint(f"no metric family at alpha={alpha!r}")
        family = solve_metric_family(build_hamiltonian(p))
        for u in cfg.us:
            m = MetricParams(cfg.a, u)
            theta = build_metric(p, m)
            coeffs = family_coefficients(p, m)
            row = {"alpha": alpha, "a": cfg.a, "u": u}
            for i, ray in enumerate(family.rays):
                row[f"eigenvalue_{i}"] = float(family.eigenvalues[i])
                row[f"ray_{i}"] = ray
                row[f"a2_per_c_{i}"] = float(ray[0, 0].real)
                row[f"a2u_per_c_{i}"] = float(ray[0, 1].real)
                row[f"c_{i}"] = float(coeffs[i])
            row["reconstruction_error"] = float(
                np.linalg.norm(family.combine(coeffs) - theta) / np.linalg.norm(theta)
            )
            rows.append(row)
    return rows


def _run_evolve(cfg):
    rows = []
    psi0 = np.array(cfg.psi if cfg.psi is not None else [1, 0], dtype=complex)
    for alpha in cfg.alphas:
        h = build_hamiltonian(ModelParams(cfg.s, alpha))
        for a, u, theta in _metric_points(cfg, alpha):
            space = PhysicalSpace(theta)
            s0 = s_norm2(space, psi0)
            f0 = float(np.vdot(psi0, psi0).real)
            for t in cfg.ts:
                psi = evolve(space, h, psi0, t)
                sn = s_norm2(space, psi)
                fn = float(np.vdot(psi, psi).real)
                rows.append({
                    "alpha": alpha, "a": a, "u": u, "metric_fixing": _fixing(cfg), "t": t,
                    "s_norm": math.sqrt(sn), "f_norm": math.sqrt(fn),
                    "s_norm_drift": abs(sn - s0) / s0, "f_norm_drift": abs(fn - f0) / f0,
                })
    return rows


def _run_signal(cfg):
    rows = []
    modes = ("corrected", "naive") if cfg.mode == "both" else (cfg.mode,)
    psi0 = bell_state()
    for alpha in cfg.alphas:
        h = build_hamiltonian(ModelParams(cfg.s, alpha))
        for a, u, theta in _metric_points(cfg, alpha):
            system = CompositeSystem.from_operators(h, theta)
            if cfg.action == "project":
                projectors = theta_projectors(theta, eigensystem(h).right)
                actions = [(0.0, AliceAction.project(projectors))]
            else:
                actions = [(t, AliceAction.evolve(t)) for t in cfg.ts]
            for t, action in actions:
                for mode in modes:
                    rows.append({
                        "alpha": alpha, "a": a, "u": u, "metric_fixing": _fixing(cfg),
                        "action": cfg.action, "t": t, "mode": mode,
                        "signaling": signaling_magnitude(system, psi0, action, mode),
                    })
    return rows


def _run_ep_scan(cfg):
    rows = []
    for alpha in cfg.alphas:
        for u in cfg.us:
            d = ep_diagnostics(ModelParams(cfg.s, alpha), MetricParams(cfg.a, u))
            rows.append({
                "alpha": alpha, "a": cfg.a, "u": u,
                "min_metric_eigenvalue": d.min_metric_eigenvalue,
                "metric_condition_number": d.metric_condition_number,
                "eigenvector_overlap": d.eigenvector_overlap,
                "degenerate_spectrum": d.degenerate_spectrum,
            })
    return rows


_RUNNERS = {
    "metric": _run_metric,
    "family": _run_family,
    "evolve": _run_evolve,
    "signal": _run_signal,
    "ep-scan": _run_ep_scan,
}

_SORT_KEYS = ("alpha", "u", "t", "mode")


def evaluate(cfg: ScenarioConfig) -> dict:
    """Compute the output document (``command``, ``metadata``, ``columns``, ``rows``)."""
    rows = _RUNNERS[cfg.command](cfg)
    rows.sort(key=lambda r: tuple(r.get(k, 0) for k in _SORT_KEYS if k in r))
    metadata = {"s": cfg.s, "format_version": 1}
    if cfg.command in ("metric", "evolve", "signal"):
        metadata["metric_fixing"] = "cpt: u=0, a^2=1/cos(alpha)" if cfg.cpt else "explicit (a, u)"
    if cfg.command in ("signal",):
        metadata["initial_state"] = "bell"
        metadata["action"] = cfg.action
    return {
        "command": cfg.command,
        "metadata": metadata,
        "columns": list(rows[0].keys()) if rows else [],
        "rows": rows,
    }


# -- serialization ------------------------------------------------------------


def fmt_float(x: float) -> str:
    return f"{x:.16e}"


def _json_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(float(v)) if math.isfinite(v) else "null"
    if isinstance(v, (complex, np.complexfloating)):
        return f'{{"re": {_json_value(v.real)}, "im": {_json_value(v.imag)}}}'
    if isinstance(v, np.ndarray):
        return _json_value(v.tolist())
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, str):
        return json.dumps(v)
    if v is None:
        return "null"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def to_json(doc: dict) -> str:
    rows = ",\n    ".join(_json_value(r) for r in doc["rows"])
    return (
        "{\n"
        f'  "command": {_json_value(doc["command"])},\n'
        f'  "metadata": {_json_value(doc["metadata"])},\n'
        f'  "columns": {_json_value(doc["columns"])},\n'
        f'  "rows": [\n    {rows}\n  ]\n'
        "}\n"
    )


def _csv_cells(name: str, v) -> list[tuple[str, str]]:
    if isinstance(v, np.ndarray) and v.ndim == 2:
        cells = []
        for i in range(v.shape[0]):
            for j in range(v.shape[1]):
                cells += _csv_cells(f"{name}_{i}{j}", complex(v[i, j]))
        return cells
    if isinstance(v, (complex, np.complexfloating)):
        return [(f"{name}_re", fmt_float(v.real)), (f"{name}_im", fmt_float(v.imag))]
    if isinstance(v, (bool, np.bool_)):
        return [(name, "true" if v else "false")]
    if isinstance(v, (float, np.floating)):
        return [(name, fmt_float(float(v)))]
    return [(name, str(v))]


def to_csv(doc: dict) -> str:
    lines = []
    header = None
    for row in doc["rows"]:
        cells = [c for k, v in row.items() for c in _csv_cells(k, v)]
        if header is None:
            header = [k for k, _ in cells]
            lines.append(",".join(header))
        lines.append(",".join(v for _, v in cells))
    if header is None:
        lines.append(",".join(doc["columns"]))
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    return to_json(doc) if fmt == "json" else to_csv(doc)


def run(cfg: ScenarioConfig) -> int:
    """Evaluate ``cfg`` and write the result; returns the process exit code."""
    try:
        cfg.validate()
        text = render(evaluate(cfg), cfg.format)
    except (InvalidConfig, InvalidMetricParams, InadmissibleObservable, InadmissibleProjector,
            ComplexSpectrum) as exc:
        print(f"ptqm: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ExceptionalPoint, DegenerateSpectrum) as exc:
        print(f"ptqm: exceptional point: {exc}", file=sys.stderr)
        return EXIT_EP
    try:
        if cfg.output:
            Path(cfg.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"ptqm: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if known.config:
        try:
            file_command, file_tokens = read_config_file(known.config)
        except OSError as exc:
            print(f"ptqm: cannot read config: {exc}", file=sys.stderr)
            return EXIT_IO
        except InvalidConfig as exc:
            print(f"ptqm: {exc}", file=sys.stderr)
            return EXIT_INVALID
        command = rest.pop(0) if rest and rest[0] in COMMANDS else file_command
        rest = ([command] if command else []) + file_tokens + rest
    try:
        ns = _parser().parse_args(rest)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
    except InvalidConfig as exc:
        print(f"ptqm: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())

"""Command line front end: ``seawedge <command> [flags]``.

Exit status is 0 when every check passes, 1 when a check fails, 2 on a bad
configuration and 3 on an I/O error. Reports are JSON, written atomically to
``--out`` or printed to stdout, and carry no timing fields so equal seeds give
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from seawedge import dirac, serialization, suites, wedge
from seawedge.equivalence import differential_suite, map_U
from seawedge.vectors import mode

log = logging.getLogger("seawedge")

COMMANDS = ("verify-car", "verify-basis-independence", "verify-equivalence", "spectrum", "evolve", "dump-state")
DEFAULT_TOL = {"verify-car": 1e-12, "verify-basis-independence": 1e-10, "verify-equivalence": 1e-10}

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    tolerance: float = 1e-12
    window: int = 4
    trials: int = 200
    grid: Path | None = None
    out: Path | None = None
    state: Path | None = None
    time: float = 0.0
    a_star: tuple[int, ...] = ()
    b_star: tuple[int, ...] = ()
    fock: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.window < 1:
            raise ConfigError("--window must be >= 1")
        if self.trials < 0:
            raise ConfigError("--trials must be >= 0")
        if not (self.tolerance > 0 and math.isfinite(self.tolerance)):
            raise ConfigError("--tol must be a positive finite number")
        if not -(2**63) <= self.seed < 2**64:
            raise ConfigError("--seed must fit in 64 bits")


def _int_list(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None, help="pass threshold on max deviation")
    common.add_argument("--window", type=int, default=4, help="mode window K (modes +-1..+-K)")
    common.add_argument("--trials", type=int, default=200)
    common.add_argument("--grid", type=Path, default=None, help="grid JSON {mass, momenta}")
    common.add_argument("--out", type=Path, default=None, help="report path (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="seawedge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-car", parents=[common], help="CAR, norm, adjointness, vacuum and determinant checks")
    sub.add_parser("verify-basis-independence", parents=[common], help="invariance under splitting-preserving rotations")
    sub.add_parser("verify-equivalence", parents=[common], help="Dirac sea vs Fock space differential suite")
    sub.add_parser("spectrum", parents=[common], help="per-momentum spectrum and mode basis table")
    ev = sub.add_parser("evolve", parents=[common], help="evolve a one-particle vector by exp(iHt)")
    ev.add_argument("--state", type=Path, required=True, help="one-particle vector JSON")
    ev.add_argument("--time", type=float, required=True)
    ds = sub.add_parser("dump-state", parents=[common], help="serialize a*(..) b*(..) Omega_D")
    ds.add_argument("--a-star", type=_int_list, default=(), help="particle modes, e.g. 1,2")
    ds.add_argument("--b-star", type=_int_list, default=(), help="antiparticle modes")
    ds.add_argument("--fock", action="store_true", help="dump the Fock space image instead")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    tol = ns.tol if ns.tol is not None else DEFAULT_TOL.get(ns.command, 1e-12)
    return RunConfig(
        command=ns.command,
        seed=ns.seed,
        tolerance=tol,
        window=ns.window,
        trials=ns.trials,
        grid=ns.grid,
        out=ns.out,
        state=getattr(ns, "state", None),
        time=getattr(ns, "time", 0.0),
        a_star=getattr(ns, "a_star", ()),
        b_star=getattr(ns, "b_star", ()),
        fock=getattr(ns, "fock", False),
    )


def _threads() -> int:
    raw = os.environ.get("SEAWEDGE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"SEAWEDGE_THREADS must be an integer, got {raw!r}") from None


def _load_grid(cfg: RunConfig) -> dirac.MomentumGrid:
    if cfg.grid is None:
        raise ConfigError(f"{cfg.command} needs --grid")
    text = cfg.grid.read_text()  # OSError -> exit 3
    try:
        return dirac.MomentumGrid.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"bad grid file {cfg.grid}: {exc}") from exc


def _verify_report(cfg: RunConfig, checks: dict[str, float]) -> dict:
    checks = {k: float(v) for k, v in checks.items()}
    worst = max(checks.values(), default=0.0)
    return {
        "command": cfg.command,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "window": cfg.window,
        "tolerance": cfg.tolerance,
        "checks": checks,
        "max_deviation": worst,
        "pass": all(math.isfinite(v) and v <= cfg.tolerance for v in checks.values()),
    }


def _spectrum_report(cfg: RunConfig) -> dict:
    grid = _load_grid(cfg)
    basis = dirac.build_mode_basis(grid)
    rows = dirac.spectrum(grid)
    gap = all(abs(ev) >= grid.mass - cfg.tolerance for r in rows for ev in r["eigenvalues"])
    split = 0.0
    for i in basis.modes:
        md = basis.mode(i)
        h = dirac.hamiltonian_matrix(md.momentum, grid.mass)
        split = max(split, float(abs(h @ md.spinor - md.energy * md.spinor).max()))
    return {
        "command": cfg.command,
        "grid": grid.to_json(),
        "spectrum": rows,
        "modes": basis.table(),
        "splitting_deviation": split,
        "gap": gap,
        "pass": gap and split <= max(cfg.tolerance, 1e-10),
    }


def _evolve_report(cfg: RunConfig) -> dict:
    basis = dirac.build_mode_basis(_load_grid(cfg))
    text = cfg.state.read_text()
    try:
        f = serialization.one_particle_from_json(json.loads(text))
        out = dirac.evolve(f, cfg.time, basis)
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"bad state file {cfg.state}: {exc}") from exc
    drift = abs(out.norm() - f.norm())
    return {
        "command": cfg.command,
        "time": cfg.time,
        "state": serialization.one_particle_to_json(out),
        "norm_in": f.norm(),
        "norm_out": out.norm(),
        "pass": drift <= cfg.tolerance * max(1.0, f.norm()),
    }


def _dump_state(cfg: RunConfig):
    try:
        ops = [("a*", mode(k)) for k in cfg.a_star] + [("b*", mode(k)) for k in cfg.b_star]
        v = wedge.WedgeVector.vacuum()
        for kind, h in reversed(ops):
            v = (wedge.a_star if kind == "a*" else wedge.b_star)(h, v)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return serialization.fock_to_json(map_U(v)) if cfg.fock else serialization.wedge_to_json(v)


def execute(cfg: RunConfig):
    """Run one command; returns the JSON-able report."""
    if cfg.command == "verify-car":
        return _verify_report(cfg, suites.verify_car(cfg.seed, cfg.trials, cfg.window))
    if cfg.command == "verify-basis-independence":
        return _verify_report(cfg, suites.verify_basis_independence(cfg.seed, cfg.trials, cfg.window))
    if cfg.command == "verify-equivalence":
        if cfg.window > 8:
            raise ConfigError("verify-equivalence needs --window <= 8")
        basis = dirac.build_mode_basis(_load_grid(cfg)) if cfg.grid else None
        if basis is not None and any(k not in basis for k in range(1, cfg.window + 1)):
            raise ConfigError("grid has fewer positive modes than --window")
        report = differential_suite(cfg.seed, cfg.trials, cfg.window, basis, cfg.tolerance, _threads())
        return {"command": cfg.command, **report.to_json()}
    if cfg.command == "spectrum":
        return _spectrum_report(cfg)
    if cfg.command == "evolve":
        return _evolve_report(cfg)
    return _dump_state(cfg)


def run(cfg: RunConfig) -> int:
    try:
        report = execute(cfg)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_IO
    text = serialization.dumps(report)
    try:
        if cfg.out is None:
            sys.stdout.write(text)
        else:
            serialization.write_atomic(cfg.out, text)
    except OSError as exc:
        log.error("could not write report: %s", exc)
        return EXIT_IO
    ok = report.get("pass", True) if isinstance(report, dict) else True
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits 2 on bad flags
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        cfg = config_from_args(ns)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

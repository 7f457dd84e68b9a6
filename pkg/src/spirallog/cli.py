"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a bound is violated, 2 on
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import logging
import sys
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path

import numpy as np

from . import bounds as B
from .config import TOL
from .membership import (
    Family,
    FamilyTag,
    member_G,
    member_N,
    member_st_ss,
    random_schwarz,
    verify_condition,
)
from .report import BoundReport
from .series import EvaluationGrid, TruncatedSeries, evaluate_ring, pow_real
from .spiral import SpiralParams, boundary_points, q_eval, write_points_csv
from .zoo import _one_plus_zn, closed_form_G_F, extremal_F, koebe, transform_G, transform_N

SCHEMA_VERSION = 1
log = logging.getLogger("spirallog")

MAP_FUNCTIONS = ("N_F", "G_F", "G_F_over_z", "log_G_F_over_z", "q_lambda_zn", "identity")


class ConfigError(ValueError):
    pass


class MissingArtifacts(ConfigError):
    pass


@dataclass
class RunConfig:
    command: str
    lam: float = 0.5
    family: str = "G"
    seeds: int = 100
    base_seed: int = 0
    order: int = TOL.order
    grid_rmax: float = 0.95
    grid_angles: int = 720
    output_path: str | None = None
    format: str = "json"
    workers: int = 1
    include_negative_controls: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in ("report",) and not (0.0 < self.lam <= 1.0):
            raise ConfigError("lambda out of (0,1]")
        if self.seeds < 0:
            raise ConfigError("seeds must be >= 0")
        if self.order < 8:
            raise ConfigError("order must be >= 8")
        if not 0 < self.grid_rmax < 1:
            raise ConfigError("grid r_max must lie in (0,1)")
        if self.grid_angles < 1:
            raise ConfigError("grid angles must be positive")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.command in ("verify", "hankel", "fs", "gamma"):
            try:
                Family.parse(self.family)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None

    @property
    def grid(self) -> EvaluationGrid:
        return EvaluationGrid.with_rmax(self.grid_rmax, self.grid_angles)


# -- per-seed work (module level so worker processes can pickle it) ------------

def _seed_label(prefix: str, seed: int) -> str:
    return f"{prefix}#seed={seed}"


def _verify_one(args) -> list[dict]:
    family, lam, order, seed, rmax, angles = args
    w = random_schwarz(seed, max(order, TOL.grid_order))
    out: list[BoundReport] = []
    if family is Family.G_FAMILY:
        f = member_G(lam, w, order)
        f = type(f)(f.series, _seed_label(f.label, seed), f.params)
        out += [B.gamma_conjecture_G(f, lam), B.gamma_sums_G(f, lam), B.coefficient_bounds(f, lam, family)]
    elif family is Family.N_FAMILY:
        f = member_N(lam, w, order)
        f = type(f)(f.series, _seed_label(f.label, seed), f.params)
        fg = member_N(lam, w, TOL.grid_order)
        fg = type(fg)(fg.series, f.label, fg.params)
        radii = [r for r in (0.25, 0.5, 0.75, 0.9) if r < rmax] + [rmax]
        out += [B.coefficient_bounds(f, lam, family), B.growth_envelopes(fg, lam, family, radii, angles)]
    elif family is Family.ST_SS:
        f = member_st_ss(lam, w, order)
        f = type(f)(f.series, _seed_label(f.label, seed), f.params)
        out += [B.gamma_bounds_st_ss(f, lam), B.hankel_check(f, lam), B.fekete_szego_check(f, _fs_deltas(lam), lam)]
    else:
        raise ConfigError(f"no sweep defined for {family}")
    return [r.to_dict() for r in out]


def _negative_controls(family: Family, lam: float, order: int, grid: EvaluationGrid) -> list[dict]:
    k = koebe(0.0, order)
    kg = koebe(0.0, TOL.grid_order)
    out = [verify_condition(kg, FamilyTag(family, lam), grid)]
    if family is Family.G_FAMILY:
        out.append(B.gamma_conjecture_G(k, lam))
    elif family is Family.N_FAMILY:
        out.append(B.coefficient_bounds(k, lam, family))
    else:
        out += [B.gamma_bounds_st_ss(k, lam), B.hankel_check(k, lam)]
    return [r.to_dict() for r in out]


def _fs_deltas(lam: float, count: int = 50) -> np.ndarray:
    lo, hi = B.fs_breakpoints(lam)
    return np.linspace(lo - 1.0, hi + 1.0, count)


def _map(cfg: RunConfig, fn, jobs):
    if cfg.workers > 1 and len(jobs) > 1:
        with Pool(cfg.workers) as pool:
            return pool.map(fn, jobs)
    return [fn(j) for j in jobs]


def _envelope(cfg: RunConfig, reports: list[dict], **fields) -> dict:
    failed = [r for r in reports if not r["pass"]]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": cfg.command,
        "lambda": cfg.lam,
        "family": cfg.family,
        "order": cfg.order,
        "base_seed": cfg.base_seed,
        "seeds": cfg.seeds,
        "pass_tolerance": TOL.pass_tol,
        **fields,
        "totals": {"checks": len(reports), "passed": len(reports) - len(failed), "failed": len(failed)},
        "failed_witnesses": sorted({r["witness"] for r in failed}),
        "reports": reports,
        "generated_at": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }


def _write(cfg: RunConfig, doc: dict) -> None:
    if cfg.output_path is None:
        if cfg.format == "json":
            json.dump(doc, sys.stdout, indent=1)
            sys.stdout.write("\n")
        else:
            _write_rows_csv(sys.stdout, doc["reports"])
        return
    path = Path(cfg.output_path)
    try:
        with path.open("w", newline="") as fh:
            if cfg.format == "json":
                json.dump(doc, fh, indent=1)
                fh.write("\n")
            else:
                _write_rows_csv(fh, doc["reports"])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _write_rows_csv(fh, reports: list[dict]) -> None:
    out = csv.writer(fh)
    out.writerow(["check", "witness", "n", "label", "value", "bound", "margin", "pass"])
    for rep in reports:
        for e in rep["per_index"]:
            out.writerow([rep["check_name"], rep["witness"], e["n"], e["label"],
                          repr(e["value"]), repr(e["bound"]), repr(e["margin"]), int(e["margin"] >= -TOL.pass_tol)])


def _exit_code(reports: list[dict]) -> int:
    return 0 if all(r["pass"] for r in reports) else 1


# -- commands -----------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> tuple[int, dict]:
    cfg.validate()
    family = Family.parse(cfg.family)
    seeds = range(cfg.base_seed, cfg.base_seed + cfg.seeds)
    jobs = [(family, cfg.lam, cfg.order, s, cfg.grid_rmax, cfg.grid_angles) for s in seeds]
    reports = [r for batch in _map(cfg, _verify_one, jobs) for r in batch]
    if cfg.include_negative_controls:
        reports += _negative_controls(family, cfg.lam, cfg.order, cfg.grid)
    doc = _envelope(cfg, reports)
    return _exit_code(reports), doc


def cmd_gamma(cfg: RunConfig) -> tuple[int, dict]:
    """Extremal attainment table plus an optional seeded G(lam) sweep."""
    cfg.validate()
    lam = cfg.lam
    nmax = int(cfg.extra.get("nmax", 10))
    reports = []
    for n in range(1, nmax + 1):
        order = max(cfg.order, 4 * n + 4)
        reports.append(B.gamma_conjecture_G(transform_G(extremal_F(lam, n, n, order)), lam, nmax=n).to_dict())
        reports.append(B.gamma_bounds_st_ss(extremal_F(lam, 1, n, order), lam).to_dict())
    jobs = [(Family.G_FAMILY, lam, cfg.order, s, cfg.grid_rmax, cfg.grid_angles)
            for s in range(cfg.base_seed, cfg.base_seed + cfg.seeds)]
    for batch in _map(cfg, _verify_one, jobs):
        reports.append(batch[0])
    return _exit_code(reports), _envelope(cfg, reports)


def _st_sweep(cfg: RunConfig, pick) -> list[dict]:
    out = []
    for s in range(cfg.base_seed, cfg.base_seed + cfg.seeds):
        f = member_st_ss(cfg.lam, random_schwarz(s, cfg.order), cfg.order)
        f = type(f)(f.series, _seed_label(f.label, s), f.params)
        out += [r.to_dict() for r in pick(f)]
    return out


def cmd_hankel(cfg: RunConfig) -> tuple[int, dict]:
    cfg.validate()
    lam = cfg.lam
    reports = [B.hankel_check(extremal_F(lam, 1, 2, cfg.order), lam).to_dict()]
    reports += _st_sweep(cfg, lambda f: [B.hankel_check(f, lam)])
    return _exit_code(reports), _envelope(cfg, reports)


def cmd_fs(cfg: RunConfig) -> tuple[int, dict]:
    cfg.validate()
    lam = cfg.lam
    deltas = _fs_deltas(lam, int(cfg.extra.get("deltas", 50)))
    reports = []
    for f in (extremal_F(lam, 1, 1, cfg.order), extremal_F(lam, 1, 2, cfg.order)):
        reports.append(B.fekete_szego_check(f, deltas, lam).to_dict())
        reports.append(B.inverse_functional_check(f, deltas, lam).to_dict())
    reports += _st_sweep(cfg, lambda f: [B.fekete_szego_check(f, deltas, lam),
                                         B.inverse_functional_check(f, deltas, lam)])
    return _exit_code(reports), _envelope(cfg, reports, deltas=[float(d) for d in deltas])


def boundary_rows(lam: float, count: int, grid: EvaluationGrid | None, with_image: bool = True) -> list[complex]:
    params = SpiralParams(lam)
    rows = [p.w for p in boundary_points(params, count)]
    if with_image and grid is not None:
        rows += list(q_eval(params, grid.points()).ravel())
    return rows


def cmd_boundary(cfg: RunConfig) -> tuple[int, Path]:
    cfg.validate()
    count = int(cfg.extra.get("count", 1001))
    rows = boundary_rows(cfg.lam, count, cfg.grid, bool(cfg.extra.get("with_image", True)))
    path = cfg.output_path or f"boundary_lambda{cfg.lam:g}.csv"
    return 0, write_points_csv(path, rows)


def map_values(name: str, lam: float, grid: EvaluationGrid, rays: int = 16, ray_steps: int = 60, n: int = 2) -> np.ndarray:
    """Images of the grid circles followed by radial segments under the chosen map."""
    if name not in MAP_FUNCTIONS:
        raise ConfigError(f"unknown map function {name!r}; choose from {', '.join(MAP_FUNCTIONS)}")
    order = TOL.grid_order
    if name == "N_F":
        series = transform_N(extremal_F(lam, 1, 1, order)).series
    elif name in ("G_F", "G_F_over_z", "log_G_F_over_z"):
        series = closed_form_G_F(lam, order).series
        if name != "G_F":
            series = series.over_z()
    elif name == "q_lambda_zn":
        series = pow_real(_one_plus_zn(n, order), lam)
    else:
        series = TruncatedSeries.identity(order)
    circles = np.concatenate([evaluate_ring(series, r, grid.angles_per_ring) for r in grid.radii])
    rs = np.linspace(0.0, grid.r_max, ray_steps + 1)[1:]
    zs = np.outer(np.exp(2j * np.pi * np.arange(rays) / rays), rs).ravel()
    values = np.concatenate([circles, series(zs)])
    if name == "log_G_F_over_z":
        values = np.log(values)
    return values


def cmd_map(cfg: RunConfig) -> tuple[int, Path]:
    cfg.validate()
    name = cfg.extra.get("function", "G_F")
    values = map_values(name, cfg.lam, cfg.grid, int(cfg.extra.get("rays", 16)), n=int(cfg.extra.get("n", 2)))
    path = cfg.output_path or f"map_{name}_lambda{cfg.lam:g}.csv"
    return 0, write_points_csv(path, values)


def aggregate_reports(docs: list[dict]) -> dict:
    reports = [r for d in docs for r in d.get("reports", [])]
    worst: dict[str, float] = {}
    table = []
    for r in reports:
        m = r["aggregate"]["margin"]
        worst[r["check_name"]] = min(worst.get(r["check_name"], float("inf")), m)
        if r["attained"]:
            for e in r["per_index"]:
                if e["attained"]:
                    table.append({"check": r["check_name"], "n": e["n"], "label": e["label"], "witness": r["witness"]})
    failed = sum(not r["pass"] for r in reports)
    lams = sorted({d.get("lambda") for d in docs if d.get("lambda") is not None})
    fams = sorted({d.get("family") for d in docs if d.get("family") is not None})
    return {
        "schema_version": SCHEMA_VERSION,
        "lambda": lams[0] if len(lams) == 1 else lams,
        "family": fams[0] if len(fams) == 1 else fams,
        "totals": {"runs": len(docs), "checks": len(reports), "passed": len(reports) - failed, "failed": failed},
        "worst_margins": dict(sorted(worst.items())),
        "attainment_table": table,
    }


def cmd_report(cfg: RunConfig) -> tuple[int, dict]:
    src = Path(cfg.extra.get("input", "."))
    files = sorted(src.glob("*.json")) if src.is_dir() else []
    docs = []
    for p in files:
        try:
            d = json.loads(p.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            log.warning("skipping %s: %s", p, exc)
            continue
        if isinstance(d, dict) and "reports" in d:
            docs.append(d)
    if not docs:
        raise MissingArtifacts(f"no run reports found in {src}")
    summary = aggregate_reports(docs)
    return (0 if summary["totals"]["failed"] == 0 else 1), summary


COMMANDS = {
    "verify": cmd_verify,
    "gamma": cmd_gamma,
    "hankel": cmd_hankel,
    "fs": cmd_fs,
    "boundary": cmd_boundary,
    "map": cmd_map,
    "report": cmd_report,
}


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=float, default=0.5)
    common.add_argument("--family", default="G", help="G, N or ST_SS")
    common.add_argument("--seeds", type=int, default=100)
    common.add_argument("--base-seed", type=int, default=0)
    common.add_argument("--order", type=int, default=TOL.order)
    common.add_argument("--grid-rmax", type=float, default=0.95)
    common.add_argument("--grid-angles", type=int, default=720)
    common.add_argument("--out", dest="output_path", default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="spirallog", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", parents=[common], help="seeded family sweep")
    p.add_argument("--include-negative-controls", action="store_true")
    p = sub.add_parser("gamma", parents=[common], help="logarithmic-coefficient attainment and sweep")
    p.add_argument("--nmax", type=int, default=10)
    sub.add_parser("hankel", parents=[common], help="second Hankel determinant on ST_ss")
    p = sub.add_parser("fs", parents=[common], help="Fekete-Szego and z/f functionals on ST_ss")
    p.add_argument("--deltas", type=int, default=50)
    p = sub.add_parser("boundary", parents=[common], help="spiral boundary (and q image) as re,im CSV")
    p.add_argument("--count", type=int, default=1001)
    p.add_argument("--no-image", dest="with_image", action="store_false")
    p = sub.add_parser("map", parents=[common], help="images of circles and rays as re,im CSV")
    p.add_argument("--function", choices=MAP_FUNCTIONS, default="G_F")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--rays", type=int, default=16)
    p = sub.add_parser("report", parents=[common], help="aggregate run reports in a directory")
    p.add_argument("input", nargs="?", default=".")
    return parser


_EXTRA = ("nmax", "deltas", "count", "with_image", "function", "n", "rays", "input")


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    extra = {k: getattr(ns, k) for k in _EXTRA if hasattr(ns, k)}
    return RunConfig(
        command=ns.command, lam=ns.lam, family=ns.family, seeds=ns.seeds, base_seed=ns.base_seed,
        order=ns.order, grid_rmax=ns.grid_rmax, grid_angles=ns.grid_angles, output_path=ns.output_path,
        format=ns.format, workers=ns.workers,
        include_negative_controls=getattr(ns, "include_negative_controls", False), extra=extra,
    )


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    cfg = config_from_args(ns)
    try:
        code, result = COMMANDS[cfg.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"spirallog: error: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, Path):
        log.info("wrote %s", result)
        print(result)
    else:
        _write(cfg, result)
        t = result["totals"]
        print(f"{cfg.command}: {t['passed']}/{t['checks']} checks passed", file=sys.stderr)
        if result.get("failed_witnesses"):
            print("failed: " + ", ".join(result["failed_witnesses"]), file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

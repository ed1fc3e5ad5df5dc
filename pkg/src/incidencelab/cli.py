"""Command-line orchestration: generate, count, rich, partition, dual, scan,
verify.

Configuration is a single JSON document; command-line flags override config
fields (defaults < config < flags).  All outputs are deterministic given the
seed, except the wall-clock seconds fields, which golden comparisons must
ignore.  Exit codes: 0 ok, 1 usage, 2 verification failure, 3 infeasible
spec.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .dual3 import circle_dual, dp_dual_line, rich_planes, rich_planes_to_json
from .engine import CSV_HEADER, bound_ratio, count, exponent_fit, t_rich_points
from .exact import Vec3
from .generators import GenSpec, InfeasibleSpecError, Instance, gen, st_grid_k
from .partition import PartitionError, build_partition, classify
from .verify import run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_INFEASIBLE = 3

SCAN_FAMILIES = ("pencil", "st-grid", "random-tangency", "circle-sampled", "anchored-planted")

DEFAULTS = {
    "kind": "random-tangency",
    "m": 100,
    "n": 100,
    "seed": 0,
    "coord_range": 100,
    "den_bound": 100,
    "density": 0.05,
    "z_levels": 1,
    "mode": "exact",
    "threads": 1,
    "format": "json",
    "out": None,
    "input": None,
    "t": 2,
    "q": 2,
    "levels": 2,
    "epsilon": 0.1,
    "family": "pencil",
    "base": 64,
    "steps": 4,
    "histograms": False,
    "quick": False,
}


@dataclass
class ScanRow:
    m: int
    n: int
    total: int
    bound_ratio: float
    seconds: float


@dataclass
class ScanResult:
    family: str
    rows: List[ScanRow] = field(default_factory=list)
    exponent: Optional[float] = None

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "rows": [
                {"m": r.m, "n": r.n, "total": r.total,
                 "bound_ratio": r.bound_ratio, "seconds": r.seconds}
                for r in self.rows
            ],
        }
        if self.exponent is not None:
            out["exponent"] = self.exponent
        return out

    def to_csv(self) -> str:
        lines = ["family,m,n,total,bound_ratio,seconds"]
        for r in self.rows:
            lines.append(
                f"{self.family},{r.m},{r.n},{r.total},{r.bound_ratio:.6f},{r.seconds:.6f}"
            )
        return "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="incidencelab")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", type=str, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--format", choices=("json", "csv"), default=None)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--mode", choices=("exact", "prefilter"), default=None)
        p.add_argument("--kind", type=str, default=None)
        p.add_argument("--m", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--input", type=str, default=None)
        p.add_argument("--coord-range", dest="coord_range", type=int, default=None)
        p.add_argument("--den-bound", dest="den_bound", type=int, default=None)
        p.add_argument("--density", type=float, default=None)
        p.add_argument("--z-levels", dest="z_levels", type=int, default=None)
        p.add_argument("--histograms", action="store_true", default=None)

    for name in ("generate", "count", "rich", "partition", "dual", "scan", "verify"):
        p = sub.add_parser(name)
        common(p)
        if name == "rich":
            p.add_argument("--t", type=int, default=None)
        if name == "dual":
            p.add_argument("--q", type=int, default=None)
        if name == "partition":
            p.add_argument("--levels", type=int, default=None)
            p.add_argument("--epsilon", type=float, default=None)
        if name == "scan":
            p.add_argument("--family", choices=SCAN_FAMILIES, default=None)
            p.add_argument("--base", type=int, default=None)
            p.add_argument("--steps", type=int, default=None)
        if name == "verify":
            p.add_argument("--quick", action="store_true", default=None)
    return parser


def _merge_config(args: argparse.Namespace, stderr) -> Optional[dict]:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except json.JSONDecodeError as exc:
            print(f"config parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                  file=stderr)
            return None
        except OSError as exc:
            print(f"cannot read config: {exc}", file=stderr)
            return None
        unknown = set(loaded) - set(cfg)
        if unknown:
            print(f"unknown config fields: {sorted(unknown)}", file=stderr)
            return None
        cfg.update(loaded)
    for key in cfg:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _genspec(cfg: dict) -> GenSpec:
    return GenSpec(
        kind=cfg["kind"], m=cfg["m"], n=cfg["n"], seed=cfg["seed"],
        coord_range=cfg["coord_range"], den_bound=cfg["den_bound"],
        density=cfg["density"], z_levels=cfg["z_levels"],
    )


def _load_instance(cfg: dict) -> Tuple[Instance, int]:
    if cfg["input"]:
        with open(cfg["input"]) as fh:
            inst = Instance.from_json(json.load(fh))
        return inst, len(inst.planted_pairs)
    return gen(_genspec(cfg))


def _emit(text: str, cfg: dict, stdout) -> None:
    if cfg["out"]:
        with open(cfg["out"], "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text, file=stdout)


def _points_for_partition(inst: Instance) -> List[Vec3]:
    if inst.kind == "tangency":
        return [Vec3(p.p.x, p.p.y, p.u) for p in inst.points]
    return list(inst.points)


def cmd_generate(cfg, stdout, stderr) -> int:
    inst, planted = _load_instance(cfg)
    _emit(json.dumps(inst.to_json(), indent=2), cfg, stdout)
    return EXIT_OK


def cmd_count(cfg, stdout, stderr) -> int:
    inst, _ = _load_instance(cfg)
    report = count(inst.points, inst.curves, mode=cfg["mode"], threads=cfg["threads"])
    if cfg["format"] == "csv":
        _emit(CSV_HEADER + "\n" + report.csv_row(), cfg, stdout)
    else:
        _emit(json.dumps(report.to_json(histograms=bool(cfg["histograms"])), indent=2), cfg, stdout)
    return EXIT_OK


def cmd_rich(cfg, stdout, stderr) -> int:
    inst, _ = _load_instance(cfg)
    rich = t_rich_points(inst.points, inst.curves, cfg["t"],
                         mode=cfg["mode"], threads=cfg["threads"])
    payload = {
        "t": cfg["t"],
        "count": len(rich),
        "points": [p.to_json() for p in rich],
    }
    _emit(json.dumps(payload, indent=2), cfg, stdout)
    return EXIT_OK


def cmd_partition(cfg, stdout, stderr) -> int:
    inst, _ = _load_instance(cfg)
    points = _points_for_partition(inst)
    try:
        pp = build_partition(points, cfg["levels"], cfg["epsilon"], seed=cfg["seed"])
    except PartitionError as exc:
        print(f"partition failed: {exc}", file=stderr)
        return EXIT_INFEASIBLE
    assignment = classify(points, pp)
    if cfg["format"] == "csv":
        _emit("\n".join(assignment.csv_rows()), cfg, stdout)
    else:
        payload = pp.to_json()
        payload["populations"] = {
            "".join("+" if s > 0 else "-" for s in key): v
            for key, v in sorted(assignment.populations.items())
        }
        payload["zero_set_points"] = sum(assignment.on_zero_set)
        _emit(json.dumps(payload, indent=2), cfg, stdout)
    return EXIT_OK


def cmd_dual(cfg, stdout, stderr) -> int:
    inst, _ = _load_instance(cfg)
    if inst.kind != "tangency":
        print("dual expects a tangency instance", file=stderr)
        return EXIT_USAGE
    payload = {
        "dual_points": [circle_dual(c).to_json() for c in inst.curves],
        "dual_lines": [dp_dual_line(p).to_json() for p in inst.points],
    }
    if cfg["q"] >= 2:
        payload["rich_planes"] = rich_planes_to_json(rich_planes(inst.points, cfg["q"]))
    _emit(json.dumps(payload, indent=2), cfg, stdout)
    return EXIT_OK


def _scan_sizes(family: str, base: int, steps: int, z_levels: int) -> List[Tuple[int, int]]:
    sizes = []
    for i in range(steps):
        target = base * (2 ** i)
        if family == "pencil":
            sizes.append((1, target))
        elif family == "st-grid":
            k = st_grid_k(target, z_levels)
            actual = 2 * k ** 3 * z_levels
            sizes.append((actual, actual))
        else:
            sizes.append((target, target))
    return sizes


def cmd_scan(cfg, stdout, stderr) -> int:
    family = cfg["family"]
    kind = {"st-grid": "st-grid-horizontal-lines"}.get(family, family)
    result = ScanResult(family)
    series = []
    for m, n in _scan_sizes(family, cfg["base"], cfg["steps"], cfg["z_levels"]):
        spec = GenSpec(kind, m, n, seed=cfg["seed"],
                       coord_range=cfg["coord_range"], den_bound=cfg["den_bound"],
                       density=cfg["density"], z_levels=cfg["z_levels"])
        inst, _ = gen(spec)
        report = count(inst.points, inst.curves, mode=cfg["mode"], threads=cfg["threads"])
        result.rows.append(ScanRow(report.m, report.n, report.total,
                                   bound_ratio(report), report.seconds))
        series.append((report.m, report.n, report.total))
    result.rows.sort(key=lambda r: r.m)
    if len([r for r in result.rows if r.total > 0]) >= 3:
        result.exponent = exponent_fit(series)[0]
    if cfg["format"] == "csv":
        _emit(result.to_csv(), cfg, stdout)
    else:
        _emit(json.dumps(result.to_json(), indent=2), cfg, stdout)
    return EXIT_OK


def cmd_verify(cfg, stdout, stderr) -> int:
    ok = run_suite(quick=bool(cfg["quick"]), seed=cfg["seed"],
                   log=lambda msg: print(msg, file=stdout))
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "generate": cmd_generate,
    "count": cmd_count,
    "rich": cmd_rich,
    "partition": cmd_partition,
    "dual": cmd_dual,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = _merge_config(args, stderr)
    if cfg is None:
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](cfg, stdout, stderr)
    except InfeasibleSpecError as exc:
        print(f"infeasible spec: {exc}", file=stderr)
        return EXIT_INFEASIBLE
    except FileNotFoundError as exc:
        print(f"input not found: {exc}", file=stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

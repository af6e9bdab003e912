"""Exhaustive grid search over (system, ibo, b_bpf) maximizing the normalized FOM."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import pipeline
from .errors import ConfigurationError


@dataclass(frozen=True)
class GridSpec:
    """Search grid: back-off values, bandpass widths (in units of B), and variants."""

    ibo_values: tuple
    bbpf_values: tuple
    systems: tuple = ("sys2",)

    def __post_init__(self):
        for name, values in (("ibo", self.ibo_values), ("b_bpf", self.bbpf_values)):
            arr = np.asarray(values, dtype=float)
            if arr.size == 0:
                raise ConfigurationError(f"empty {name} grid")
            if np.any(arr <= 0):
                raise ConfigurationError(f"{name} grid values must be positive")
            if np.any(np.diff(arr) <= 0):
                raise ConfigurationError(f"{name} grid must be strictly increasing")
        if not self.systems:
            raise ConfigurationError("empty system list")
        unknown = set(self.systems) - set(pipeline.VARIANTS)
        if unknown:
            raise ConfigurationError(f"unknown system variants: {sorted(unknown)}")


@dataclass(frozen=True)
class GridPoint:
    system: str
    ibo: float
    b_bpf: float
    metrics: object = None
    error: str = ""


@dataclass(frozen=True)
class GridResult:
    """All evaluated points plus the per-system argmax of the normalized FOM."""

    points: tuple
    argmax: dict

    def failures(self):
        return [p for p in self.points if p.metrics is None]


def _point_seed(base_seed, i_ibo, j_bbpf, n_bbpf):
    # Flat enumeration of the (ibo, b_bpf) grid; the variant is deliberately
    # absent so cross-system comparisons at one grid point are paired.
    return base_seed + i_ibo * n_bbpf + j_bbpf


def _eval_point(args):
    system, ibo, bbpf, seed, sys_cfg, pa_cfg, ch_cfg = args
    cfg = replace(sys_cfg, variant=system, seed=seed)
    cfg_pa = replace(pa_cfg, ibo=ibo,
                     bpf=pipeline.bpf_spec_for(bbpf, cfg, pa_cfg.bpf.order))
    try:
        return GridPoint(system, ibo, bbpf, metrics=pipeline.run_link(cfg, cfg_pa, ch_cfg))
    except Exception as exc:
        return GridPoint(system, ibo, bbpf, error=f"{type(exc).__name__}: {exc}")


def grid_search(grid, sys_cfg, pa_cfg, ch_cfg, jobs=1, runner=None):
    """Evaluate every grid point and return a GridResult.

    Points run concurrently when jobs > 1 (process pool); results are always
    collected into (system, ibo, b_bpf) order, so the output is independent
    of scheduling. Per-point failures are recorded, not fatal; the argmax per
    system is taken over its successful points, with exact FOM ties broken
    toward smaller ibo, then smaller b_bpf. A system with no successful point
    raises. `runner` substitutes the link evaluator for testing (serial only).
    """
    n_bbpf = len(grid.bbpf_values)
    tasks = []
    for system in sorted(grid.systems):
        for i, ibo in enumerate(grid.ibo_values):
            for j, bbpf in enumerate(grid.bbpf_values):
                seed = _point_seed(sys_cfg.seed, i, j, n_bbpf)
                tasks.append((system, float(ibo), float(bbpf), seed, sys_cfg, pa_cfg, ch_cfg))

    if runner is not None:
        points = []
        for system, ibo, bbpf, seed, *_ in tasks:
            try:
                points.append(GridPoint(system, ibo, bbpf, metrics=runner(system, ibo, bbpf, seed)))
            except Exception as exc:
                points.append(GridPoint(system, ibo, bbpf, error=f"{type(exc).__name__}: {exc}"))
    elif jobs == 1:
        points = [_eval_point(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            points = list(pool.map(_eval_point, tasks, chunksize=1))

    points.sort(key=lambda p: (p.system, p.ibo, p.b_bpf))
    argmax = {}
    for system in sorted(grid.systems):
        best = None
        for p in points:
            if p.system != system or p.metrics is None:
                continue
            if best is None or p.metrics.fom_normalized > best.metrics.fom_normalized:
                best = p
        if best is None:
            raise RuntimeError(f"every grid point of {system} failed; no argmax exists")
        argmax[system] = (best.ibo, best.b_bpf, best.metrics.fom_normalized)
    return GridResult(points=tuple(points), argmax=argmax)

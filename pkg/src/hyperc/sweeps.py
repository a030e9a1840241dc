"""Deterministic data generation behind the figure-style sweeps.

Each generator returns (header, rows) where rows is a list of plain tuples;
the CLI serializes them to CSV or JSON.  Given an identical SweepConfig the
rows are bit-for-bit reproducible: randomness only enters through the seeded
pair generator, and all evaluation is pure.

Parallelism: generators split their work over independent groups (curve
indices, exponent pairs, dilation values).  HYPERC_THREADS caps the worker
count; the output order never depends on it.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from . import core
from .core import ExponentPair
from .errors import InputDomainError
from .solver import solve_biased, solve_z3

__all__ = ["SweepConfig", "SWEEP_KINDS", "generate", "random_pairs"]

SWEEP_KINDS = (
    "curves-h", "curves-H", "blowup-b", "blowup-B", "curves-Hlambda",
    "sigma-heatmap", "nonmult", "defect",
)

SCHEMAS = {
    "curves-h": ("p", "x", "u", "v"),
    "curves-H": ("alpha", "t", "H1", "H2"),
    "blowup-b": ("alpha", "t", "U", "V"),
    "blowup-B": ("alpha", "t", "U", "V"),
    "curves-Hlambda": ("lambda", "alpha", "t", "U", "V"),
    "sigma-heatmap": ("lambda", "p", "q", "sigma"),
    "nonmult": ("p", "s", "q", "r_pq", "r_ps", "r_sq", "gap"),
    "defect": ("p", "q", "r", "rho", "G"),
}


@dataclass(frozen=True)
class SweepConfig:
    """Everything a sweep needs; identical configs give identical files."""

    kind: str
    p: float = 1.5
    q: float = 4.0
    lam: float = 1e-100
    p_list: Tuple[float, ...] = (1.2, 1.5, 2.0, 3.0, 6.0)
    r_values: Tuple[float, ...] = ()     # defect: empty means 0.9/1.0/1.1 of solved r
    alphas: int = 9
    alpha_max: float = 0.9
    t_grid: int = 256
    x_grid: int = 256
    rho_grid: int = 256
    s_grid: int = 33
    lambda_grid: int = 16
    lambda_min: float = 0.05
    lambda_max: float = 0.45
    pairs: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.kind not in SWEEP_KINDS:
            raise InputDomainError(f"unknown sweep kind {self.kind!r}; have {SWEEP_KINDS}")
        for name in ("t_grid", "x_grid", "rho_grid", "s_grid", "lambda_grid"):
            if getattr(self, name) < 2:
                raise InputDomainError(f"{name} must be at least 2")
        if self.alphas < 1 or self.pairs < 1:
            raise InputDomainError("alphas and pairs must be positive")
        if not 0.0 < self.alpha_max < 1.0:
            raise InputDomainError("alpha_max must lie in (0, 1)")
        if not 0.0 < self.lambda_min <= self.lambda_max < 0.5:
            raise InputDomainError("lambda range must satisfy 0 < min <= max < 1/2")


def _n_workers() -> int:
    env = os.environ.get("HYPERC_THREADS", "")
    try:
        n = int(env)
    except ValueError:
        n = 0
    return max(1, n) if n else 1


def _map_groups(fn, items):
    """Apply fn across groups, optionally threaded, preserving order."""
    workers = _n_workers()
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def random_pairs(n: int, seed, p_lo: float = 1.05, p_hi: float = 6.0):
    """n seeded exponent pairs cycling through the three regimes
    (both below 2, straddling 2, both above 2)."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    out = []
    for i in range(n):
        regime = i % 3
        if regime == 0:
            p = rng.uniform(p_lo, 1.9)
            q = rng.uniform(p + 0.02, 1.98)
        elif regime == 1:
            p = rng.uniform(p_lo, 2.0)
            q = rng.uniform(2.02, p_hi)
        else:
            p = rng.uniform(2.02, p_hi - 0.5)
            q = rng.uniform(p + 0.05, p_hi)
        out.append(ExponentPair(float(p), float(q)))
    return out


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

def _alpha_values(cfg: SweepConfig) -> np.ndarray:
    if cfg.alphas == 1:
        return np.array([cfg.alpha_max])
    return np.linspace(-cfg.alpha_max, cfg.alpha_max, cfg.alphas)


def _rows_curves_h(cfg: SweepConfig):
    x = np.linspace(0.0, 1.0, cfg.x_grid)

    def per_p(p):
        u, v = core.h_curve(float(p), x)
        return [(float(p), float(xi), float(ui), float(vi))
                for xi, ui, vi in zip(x, u, v)]

    return [row for chunk in _map_groups(per_p, list(cfg.p_list)) for row in chunk]


def _rows_curves_H(cfg: SweepConfig, blowup: Optional[str] = None):
    # v = H2 vanishes at t = 1, so blowup charts stop short of it
    t = np.linspace(0.0, 1.0, cfg.t_grid) if blowup is None \
        else np.linspace(0.0, 1.0, cfg.t_grid, endpoint=False)

    def per_alpha(a):
        u, v = core.H_curve(float(a), t)
        if blowup == "b":
            u, v = core.blowup_b((u, v))
        elif blowup == "B":
            u, v = core.blowup_B((u, v))
        return [(float(a), float(ti), float(ui), float(vi))
                for ti, ui, vi in zip(t, u, v)]

    return [row for chunk in _map_groups(per_alpha, list(_alpha_values(cfg)))
            for row in chunk]


def _rows_curves_Hlambda(cfg: SweepConfig):
    t = np.linspace(0.0, 1.0, cfg.t_grid)

    def per_alpha(a):
        u, v = core.H_lambda_curve(cfg.lam, float(a), t)
        return [(cfg.lam, float(a), float(ti), float(ui), float(vi))
                for ti, ui, vi in zip(t, u, v)]

    return [row for chunk in _map_groups(per_alpha, list(_alpha_values(cfg)))
            for row in chunk]


def _rows_sigma_heatmap(cfg: SweepConfig):
    lams = np.linspace(cfg.lambda_min, cfg.lambda_max, cfg.lambda_grid)
    pairs = random_pairs(cfg.pairs, cfg.seed)

    def per_pair(pair):
        return [(float(lam), pair.p, pair.q, solve_biased(float(lam), pair).sigma)
                for lam in lams]

    return [row for chunk in _map_groups(per_pair, pairs) for row in chunk]


def _rows_nonmult(cfg: SweepConfig):
    pair = ExponentPair(cfg.p, cfg.q)
    s_vals = list(np.linspace(cfg.p + 1e-3, cfg.q - 1e-3, cfg.s_grid))
    if cfg.p < 2.0 < cfg.q and not any(s == 2.0 for s in s_vals):
        s_vals.append(2.0)  # the pivot where the multiplicative relation is exact
        s_vals.sort()
    r_pq = solve_z3(pair).r

    def per_s(s):
        r_ps = solve_z3(ExponentPair(cfg.p, float(s))).r
        r_sq = solve_z3(ExponentPair(float(s), cfg.q)).r
        return (cfg.p, float(s), cfg.q, r_pq, r_ps, r_sq, r_pq - r_ps * r_sq)

    return _map_groups(per_s, s_vals)


def _rows_defect(cfg: SweepConfig):
    pair = ExponentPair(cfg.p, cfg.q)
    if cfg.r_values:
        r_vals = list(cfg.r_values)
    else:
        r_star = solve_z3(pair).r
        r_vals = [0.9 * r_star, r_star, min(1.0, 1.1 * r_star)]
    rho = np.linspace(0.0, 1.0, cfg.rho_grid)

    def per_r(r):
        g = core.defect_segment(pair, float(r), rho)
        return [(cfg.p, cfg.q, float(r), float(rh), float(gi))
                for rh, gi in zip(rho, g)]

    return [row for chunk in _map_groups(per_r, r_vals) for row in chunk]


def generate(cfg: SweepConfig):
    """Produce (header, rows) for the configured sweep."""
    if cfg.kind == "curves-h":
        rows = _rows_curves_h(cfg)
    elif cfg.kind == "curves-H":
        rows = _rows_curves_H(cfg)
    elif cfg.kind == "blowup-b":
        rows = _rows_curves_H(cfg, blowup="b")
    elif cfg.kind == "blowup-B":
        rows = _rows_curves_H(cfg, blowup="B")
    elif cfg.kind == "curves-Hlambda":
        rows = _rows_curves_Hlambda(cfg)
    elif cfg.kind == "sigma-heatmap":
        rows = _rows_sigma_heatmap(cfg)
    elif cfg.kind == "nonmult":
        rows = _rows_nonmult(cfg)
    else:
        rows = _rows_defect(cfg)
    return SCHEMAS[cfg.kind], rows

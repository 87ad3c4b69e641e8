"""Monte Carlo estimates of the k-averaged ``|a_n(k)|**2``.

Samples of ``k`` are drawn i.i.d. from a window far above zero.  The stream
for chunk ``c`` comes from a Philox generator keyed on ``(seed, c)``; chunks
have a fixed size and their partial statistics are merged in chunk order, so
the result does not depend on how many threads evaluate the chunks.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .graphs import BinaryGraph
from .orbits import DEFAULT_BUDGET, count_ppo
from .quantum import bond_scattering, charpoly_coeffs, evolution_maps
from .variance import predict_variance

__all__ = [
    "SimulationConfig",
    "VarianceEstimate",
    "sample_lengths",
    "estimate_variance",
    "convergence_series",
    "ConvergencePoint",
    "mean_spacing",
]

MEAN_SPACING_NOTE = (
    "mean spacing taken as 2*pi/L_total (Weyl law); some references quote "
    "pi/L_total, which would double spacings_covered"
)


def mean_spacing(lengths) -> float:
    return 2 * math.pi / float(np.sum(lengths))


@dataclass(frozen=True)
class SimulationConfig:
    p: int
    r: int
    seed: int = 0
    samples: int = 100_000
    chunk: int = 4096
    length_interval: Tuple[float, float] = (0.9, 1.1)
    k_min: float = 1000.0
    # window width in units of the mean spacing
    spacings: float = 5e7
    threads: Optional[int] = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.chunk < 1:
            raise ValueError("chunk must be >= 1")
        lo, hi = self.length_interval
        if not 0 < lo <= hi:
            raise ValueError("length interval must be positive and ordered")
        if not 0 < self.spacings:
            raise ValueError("spacings must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def k_interval(self, lengths) -> Tuple[float, float]:
        return self.k_min, self.k_min + self.spacings * mean_spacing(lengths)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["length_interval"] = list(self.length_interval)
        return d


@dataclass
class VarianceEstimate:
    mean: np.ndarray
    std_error: np.ndarray
    samples: int
    mean_spacing: float
    spacings_covered: float
    k_interval: Tuple[float, float]

    @property
    def B(self) -> int:
        return len(self.mean) - 1

    def rows(self, theory: Optional[Sequence] = None) -> List[dict]:
        out = []
        for n in range(len(self.mean)):
            row = {"n": n, "estimate": float(self.mean[n]), "std_error": float(self.std_error[n]),
                   "samples": self.samples}
            if theory is not None:
                t = theory[n]
                row["theorem_value"] = t
                row["error"] = None if t is None else float(self.mean[n]) - float(t)
            out.append(row)
        return out


def sample_lengths(g: BinaryGraph, seed: int, interval: Tuple[float, float] = (0.9, 1.1)) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    return rng.uniform(interval[0], interval[1], size=g.B)


def _chunk_stats(sigma, lengths, seed, index, size, k_lo, k_hi):
    rng = np.random.Generator(np.random.Philox(key=int(seed) | ((index + 1) << 64)))
    ks = rng.uniform(k_lo, k_hi, size=size)
    a2 = np.abs(charpoly_coeffs(evolution_maps(sigma, lengths, ks))) ** 2
    mean = a2.mean(axis=0)
    m2 = ((a2 - mean) ** 2).sum(axis=0)
    return size, mean, m2


def _merge(acc, part):
    # pairwise update of count, mean and centered sum of squares
    n_a, mean_a, m2_a = acc
    n_b, mean_b, m2_b = part
    n = n_a + n_b
    delta = mean_b - mean_a
    return n, mean_a + delta * (n_b / n), m2_a + m2_b + delta ** 2 * (n_a * n_b / n)


def estimate_variance(g: BinaryGraph, lengths, config: SimulationConfig) -> VarianceEstimate:
    lengths = np.asarray(lengths, dtype=float)
    if lengths.shape != (g.B,) or not np.all(lengths > 0):
        raise ValueError("need one positive length per bond")
    sigma = bond_scattering(g)
    k_lo, k_hi = config.k_interval(lengths)
    sizes = [config.chunk] * (config.samples // config.chunk)
    if config.samples % config.chunk:
        sizes.append(config.samples % config.chunk)
    threads = config.threads or os.cpu_count() or 1
    args = [(sigma, lengths, config.seed, i, s, k_lo, k_hi) for i, s in enumerate(sizes)]
    if threads == 1:
        parts = [_chunk_stats(*a) for a in args]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda a: _chunk_stats(*a), args))
    acc = parts[0]
    for part in parts[1:]:
        acc = _merge(acc, part)
    n, mean, m2 = acc
    if n > 1:
        se = np.sqrt(m2 / (n - 1)) / math.sqrt(n)
    else:
        se = np.zeros_like(mean)
    spacing = mean_spacing(lengths)
    return VarianceEstimate(mean, se, n, spacing, (k_hi - k_lo) / spacing, (k_lo, k_hi))


@dataclass(frozen=True)
class ConvergencePoint:
    r: int
    n: int
    B: int
    theorem_value: Optional[Fraction]
    estimate: Optional[float] = None
    std_error: Optional[float] = None


def convergence_series(p: int, r_list: Sequence[int], ratio, config: Optional[SimulationConfig] = None,
                       budget: Optional[int] = DEFAULT_BUDGET) -> List[ConvergencePoint]:
    """Variance at ``n = ratio * B`` for each ``r``.

    The exact value is used whenever the pseudo orbits to count fit in
    ``budget``; a Monte Carlo estimate is added when ``config`` is given
    (its ``p``/``r`` fields are overridden per point).
    """
    if not r_list:
        raise ValueError("need at least one r")
    ratio = Fraction(ratio).limit_denominator(10 ** 6) if isinstance(ratio, float) else Fraction(ratio)
    out = []
    for r in r_list:
        g = BinaryGraph(p, r)
        n_frac = ratio * g.B
        if n_frac.denominator != 1 or not 0 <= n_frac <= g.B:
            raise ValueError(f"ratio {ratio} gives non-integral or out-of-range n for B={g.B}")
        n = int(n_frac)
        m = min(n, g.B - n)
        theory = None
        if budget is None or count_ppo(p, m) <= budget:
            theory = predict_variance(g, n, budget=budget).value
        est = se = None
        if config is not None:
            cfg = SimulationConfig(**{**config.to_dict(), "p": p, "r": r,
                                      "length_interval": tuple(config.length_interval)})
            lengths = sample_lengths(g, cfg.seed, cfg.length_interval)
            res = estimate_variance(g, lengths, cfg)
            est, se = float(res.mean[n]), float(res.std_error[n])
        out.append(ConvergencePoint(r, n, g.B, theory, est, se))
    return out

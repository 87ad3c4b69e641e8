"""Exact variance of the characteristic-polynomial coefficients.

Two independent routes are provided.  :func:`predict_variance` counts the
encounter-free pseudo orbits and the pseudo orbits whose encounters are all
single vertices crossed twice.  :func:`variance_exact_pairing` needs no
encounter theory: for generic (rationally independent) bond lengths, two
pseudo orbits have equal metric length exactly when they visit every bond the
same number of times, so the k-average keeps only pairs inside such classes.
Amplitudes are signed powers of ``2**-1/2``, so everything is rational.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .graphs import BinaryGraph
from .orbits import (
    DEFAULT_BUDGET,
    FREE,
    TWO_ZERO,
    PseudoOrbit,
    c_constant,
    classify,
    count_ppo,
    enumerate_ppo,
    partition,
    tabulate_sets,
)
from .quantum import orbit_amplitude

__all__ = [
    "VariancePrediction",
    "predict_variance",
    "contribution",
    "variance_exact_pairing",
    "pairing_contributions",
    "diagonal_contribution",
    "asymptotic_variance",
    "variance_table",
]


@dataclass(frozen=True)
class VariancePrediction:
    n: int
    value: Fraction
    p0: int
    hat: Dict[int, int] = field(default_factory=dict)
    # length whose sets were counted; differs from n when B - n was used
    counted_length: int = -1

    @property
    def breakdown(self) -> Tuple[int, List[Tuple[int, int]]]:
        return self.p0, sorted(self.hat.items())


def _check_n(g: BinaryGraph, n: int) -> None:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > g.B:
        raise ValueError(f"n={n} exceeds the number of bonds B={g.B}")


def predict_variance(g: BinaryGraph, n: int, budget: Optional[int] = DEFAULT_BUDGET) -> VariancePrediction:
    _check_n(g, n)
    m = g.B - n if 2 * n > g.B else n
    sizes = tabulate_sets(g, m, budget=budget)
    total = sizes.p0 + sum(2 ** N * c for N, c in sizes.hat.items())
    return VariancePrediction(n, Fraction(total, 2 ** m), sizes.p0, dict(sizes.hat), m)


def contribution(po: PseudoOrbit, g: BinaryGraph) -> Fraction:
    """Contribution of one pseudo orbit to the variance of ``a_n``."""
    prof = classify(po, g)
    if prof.category == FREE:
        return Fraction(1, 2 ** po.n)
    if prof.category == TWO_ZERO:
        return Fraction(2 ** prof.N, 2 ** po.n)
    return Fraction(0)


def _signed(po: PseudoOrbit, g: BinaryGraph) -> int:
    if not po.orbits:
        return 1
    return orbit_amplitude(po, g).sign * (-1) ** po.m


def _class_sums(g: BinaryGraph, ppos: Iterable[PseudoOrbit]):
    sums = defaultdict(int)
    signs = {}
    for po in ppos:
        s = _signed(po, g)
        signs[po] = s
        sums[po.bond_class] += s
    return sums, signs


def variance_exact_pairing(g: BinaryGraph, n: int, ppos: Optional[Iterable[PseudoOrbit]] = None,
                           budget: Optional[int] = DEFAULT_BUDGET) -> Fraction:
    _check_n(g, n)
    if ppos is None:
        ppos = enumerate_ppo(g, n, budget=budget)
    sums, _ = _class_sums(g, ppos)
    return Fraction(sum(s * s for s in sums.values()), 2 ** n)


def pairing_contributions(g: BinaryGraph, n: int, ppos: Optional[Iterable[PseudoOrbit]] = None,
                          budget: Optional[int] = DEFAULT_BUDGET) -> Dict[PseudoOrbit, Fraction]:
    """Share of each pseudo orbit in the pairing sum; the shares add up to the variance."""
    _check_n(g, n)
    if ppos is None:
        ppos = enumerate_ppo(g, n, budget=budget)
    sums, signs = _class_sums(g, ppos)
    return {po: Fraction(s * sums[po.bond_class], 2 ** n) for po, s in signs.items()}


def diagonal_contribution(g, n: int) -> Fraction:
    """``2**-n`` times the number of pseudo orbits; ``g`` may be a graph or ``p``."""
    p = g.p if isinstance(g, BinaryGraph) else int(g)
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(count_ppo(p, n), 2 ** n)


def asymptotic_variance(p: int) -> Fraction:
    return c_constant(p) / 2


def variance_table(g: BinaryGraph, n_max: int, oracle: bool = True,
                   budget: Optional[int] = DEFAULT_BUDGET) -> Tuple[List[dict], List[str]]:
    """Rows and column names for ``n = 0..n_max``.

    Set sizes are those at ``n`` itself; ``theorem_value`` may come from the
    sets at ``B - n`` (see :func:`predict_variance`).  Values are exact
    :class:`~fractions.Fraction` objects.
    """
    n_hat = n_max // 2
    rows = []
    for n in range(n_max + 1):
        ppos = enumerate_ppo(g, n, budget=budget)
        row = partition(g, n, ppos=ppos).sizes().to_row(n_hat)
        row["theorem_value"] = predict_variance(g, n, budget=budget).value
        row["oracle_value"] = variance_exact_pairing(g, n, ppos) if oracle else None
        row["diagonal_value"] = diagonal_contribution(g, n)
        rows.append(row)
    columns = ["n", "P0"] + [f"hat_{N}" for N in range(1, n_hat + 1)] + [
        "zero", "total", "theorem_value", "oracle_value", "diagonal_value"]
    return rows, columns

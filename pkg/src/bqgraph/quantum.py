"""Quantization of binary graphs with Fourier (DFT) vertex scattering.

Conventions
-----------
``Sigma[b_out, b_in]`` is the amplitude for scattering from bond ``b_in`` into
bond ``b_out``, so ``U(k) = Sigma @ diag(exp(i k L))`` acts on column vectors
of bond amplitudes.  At a vertex the incoming and outgoing bonds are ordered
as in :mod:`bqgraph.graphs`; the single ``-1/sqrt(2)`` sits at
(second outgoing, second incoming).

``charpoly_coeffs`` returns ``a_n`` with ``det(U - zeta I) = sum a_n zeta**(B-n)``,
hence ``a_0 = (-1)**B``.  The pseudo-orbit sum reproduces the normalized
coefficients ``a_n / a_0`` (the expansion of ``det(I - U / zeta)``).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .graphs import BinaryGraph
from .orbits import DEFAULT_BUDGET, PeriodicOrbit, PseudoOrbit, enumerate_ppo

__all__ = [
    "Amplitude",
    "vertex_scattering",
    "bond_scattering",
    "classical_matrix",
    "evolution_map",
    "evolution_maps",
    "charpoly_coeffs",
    "normalized_coeffs",
    "orbit_amplitude",
    "coeff_via_pseudo_orbits",
]

_S = 1 / np.sqrt(2.0)


def vertex_scattering() -> np.ndarray:
    """2x2 DFT matrix; row = outgoing index, column = incoming index."""
    return _S * np.array([[1.0, 1.0], [1.0, -1.0]])


def _vertex_sign(b_out: int, b_in: int, V: int) -> int:
    return -1 if (b_in >= V and b_out % 2 == 1) else 1


def bond_scattering(g: BinaryGraph) -> np.ndarray:
    sigma = np.zeros((g.B, g.B))
    for v in range(g.V):
        for b_in in g.in_bonds(v):
            for b_out in g.out_bonds(v):
                sigma[b_out, b_in] = _vertex_sign(b_out, b_in, g.V) * _S
    return sigma


def classical_matrix(g: BinaryGraph) -> np.ndarray:
    return bond_scattering(g) ** 2


def _check_lengths(g: BinaryGraph, lengths) -> np.ndarray:
    L = np.asarray(lengths, dtype=float)
    if L.shape != (g.B,):
        raise ValueError(f"expected {g.B} bond lengths, got shape {L.shape}")
    if not np.all(L > 0):
        raise ValueError("bond lengths must be positive")
    return L


def evolution_map(g: BinaryGraph, lengths, k: float, sigma: Optional[np.ndarray] = None) -> np.ndarray:
    L = _check_lengths(g, lengths)
    if sigma is None:
        sigma = bond_scattering(g)
    return sigma * np.exp(1j * k * L)[None, :]


def evolution_maps(sigma: np.ndarray, lengths: np.ndarray, ks: np.ndarray) -> np.ndarray:
    """Stack of ``U(k)`` for every ``k`` in ``ks``; shape ``(len(ks), B, B)``.
    Lengths are assumed validated."""
    phases = np.exp(1j * np.multiply.outer(np.asarray(ks, dtype=float), lengths))
    return sigma[None, :, :] * phases[:, None, :]


def charpoly_coeffs(U) -> np.ndarray:
    """Coefficients ``a_0..a_B`` of ``det(U - zeta I)`` in powers ``zeta**(B-n)``.

    Accepts a single matrix or a stack ``(..., B, B)``.  Eigenvalues are
    expanded into elementary symmetric functions one factor at a time, which
    is stable for eigenvalues on the unit circle.
    """
    U = np.asarray(U)
    if U.ndim < 2 or U.shape[-1] != U.shape[-2]:
        raise ValueError(f"expected a square matrix, got shape {U.shape}")
    B = U.shape[-1]
    lam = np.linalg.eigvals(U)
    c = np.zeros(U.shape[:-2] + (B + 1,), dtype=complex)
    c[..., 0] = 1.0
    # c holds the coefficients of prod (zeta - lambda_j) after each factor
    for j in range(B):
        c[..., 1:j + 2] -= lam[..., j, None] * c[..., 0:j + 1]
    return (-1) ** B * c


def normalized_coeffs(U) -> np.ndarray:
    """``a_n / a_0``; the values produced by the pseudo-orbit expansion."""
    a = charpoly_coeffs(U)
    return a / a[..., :1]


@dataclass(frozen=True)
class Amplitude:
    """Exact ``sign * 2**(-magnitude_exponent / 2)``."""

    sign: int
    magnitude_exponent: int

    @property
    def value(self) -> float:
        return self.sign * 2.0 ** (-self.magnitude_exponent / 2)

    @property
    def squared_modulus(self) -> Fraction:
        return Fraction(1, 2 ** self.magnitude_exponent)

    def __mul__(self, other: "Amplitude") -> "Amplitude":
        return Amplitude(self.sign * other.sign, self.magnitude_exponent + other.magnitude_exponent)


def _bond_chain_sign(g: BinaryGraph, bonds: Sequence[int]) -> int:
    sign = 1
    n = len(bonds)
    for t in range(n):
        b_in, b_out = bonds[t], bonds[(t + 1) % n]
        if g.terminus(b_in) != g.origin(b_out):
            raise ValueError(f"bonds {b_in} and {b_out} do not form a chain")
        sign *= _vertex_sign(b_out, b_in, g.V)
    return sign


def orbit_amplitude(orbit, g: BinaryGraph) -> Amplitude:
    """Amplitude of a periodic orbit, a pseudo orbit, or a closed chain of bond ids."""
    if isinstance(orbit, PseudoOrbit):
        amp = Amplitude(1, 0)
        for o in orbit.orbits:
            amp = amp * orbit_amplitude(o, g)
        return amp
    if isinstance(orbit, PeriodicOrbit):
        bonds = orbit.bonds
    else:
        bonds = tuple(int(b) for b in orbit)
    if not bonds:
        raise ValueError("empty bond chain")
    return Amplitude(_bond_chain_sign(g, bonds), len(bonds))


def coeff_via_pseudo_orbits(g: BinaryGraph, lengths, k, n: int,
                            ppos: Optional[Iterable[PseudoOrbit]] = None,
                            budget: Optional[int] = DEFAULT_BUDGET):
    """Sum over primitive pseudo orbits of length ``n`` of
    ``(-1)**m * A * exp(i k L)``; equals ``normalized_coeffs(U(k))[n]``.

    ``k`` may be a scalar or an array of values.
    """
    L = _check_lengths(g, lengths)
    if not 0 <= n <= g.B:
        raise ValueError(f"n must lie in [0, {g.B}]")
    if ppos is None:
        ppos = enumerate_ppo(g, n, budget=budget)
    weights, metric = [], []
    for po in ppos:
        amp = orbit_amplitude(po, g) if po.orbits else Amplitude(1, 0)
        weights.append((-1) ** po.m * amp.value)
        metric.append(po.metric_length(L))
    ks = np.asarray(k, dtype=float)
    phases = np.exp(1j * np.multiply.outer(ks, np.asarray(metric)))
    total = phases @ np.asarray(weights, dtype=float) if weights else np.zeros(ks.shape, dtype=complex)
    return complex(total) if ks.ndim == 0 else total

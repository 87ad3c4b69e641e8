"""Binary graphs on ``V = p * 2**r`` vertices and the spectral data of their
adjacency matrices.

Bond numbering: the bond leaving vertex ``i`` towards ``(2*i + e) % V`` has
id ``2*i + e`` for ``e`` in ``{0, 1}``.  With this choice bond ``b`` ends at
``b % V``, the two incoming bonds at ``j`` are ``j`` and ``j + V`` (ordered by
origin) and the two outgoing bonds at ``i`` are ``2*i`` and ``2*i + 1``
(ordered by terminus).  For ``p == 1`` the bond id written in ``r + 1`` binary
digits is the bond's word label.
"""

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

__all__ = [
    "BinaryGraph",
    "CycleStructure",
    "build_graph",
    "adjacency",
    "reduce_to_Ap",
    "cycle_structure",
    "nonzero_spectrum",
    "trace_power",
    "spectral_gap",
]


def _check_p(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or p < 1 or p % 2 == 0:
        raise ValueError(f"p must be an odd positive integer, got {p!r}")


@dataclass(frozen=True)
class BinaryGraph:
    p: int
    r: int
    V: int = field(init=False)
    B: int = field(init=False)

    def __post_init__(self):
        _check_p(self.p)
        if self.r < 0:
            raise ValueError("r must be non-negative")
        V = self.p * 2 ** self.r
        if V < 2:
            raise ValueError("the single-vertex graph (p=1, r=0) is not supported")
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "B", 2 * V)

    @property
    def bonds(self) -> List[Tuple[int, int]]:
        return [(b // 2, b % self.V) for b in range(self.B)]

    def origin(self, b: int) -> int:
        return b // 2

    def terminus(self, b: int) -> int:
        return b % self.V

    def out_neighbors(self, v: int) -> Tuple[int, int]:
        return (2 * v) % self.V, (2 * v + 1) % self.V

    def in_neighbors(self, v: int) -> Tuple[int, int]:
        return v // 2, (v + self.V) // 2

    def out_bonds(self, v: int) -> Tuple[int, int]:
        return 2 * v, 2 * v + 1

    def in_bonds(self, v: int) -> Tuple[int, int]:
        return v, v + self.V

    def bond_between(self, u: int, w: int) -> int:
        e = (w - 2 * u) % self.V
        if e not in (0, 1):
            raise ValueError(f"no bond from {u} to {w}")
        return 2 * u + e

    def vertex_label(self, v: int) -> str:
        """Binary word of length ``r`` for de Bruijn graphs, decimal otherwise."""
        if self.p == 1:
            return format(v, f"0{self.r}b")
        return str(v)

    def bond_label(self, b: int) -> str:
        if self.p == 1:
            return format(b, f"0{self.r + 1}b")
        return f"{self.origin(b)}->{self.terminus(b)}"

    def adjacency(self) -> np.ndarray:
        return adjacency(self.V)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "V": self.V,
            "B": self.B,
            "vertices": [
                {"id": v, "label": self.vertex_label(v)} for v in range(self.V)
            ],
            "bonds": [
                {"id": b, "origin": o, "terminus": t, "label": self.bond_label(b)}
                for b, (o, t) in enumerate(self.bonds)
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def build_graph(p: int, r: int) -> BinaryGraph:
    return BinaryGraph(p, r)


def adjacency(V: int) -> np.ndarray:
    """Adjacency matrix with ``A[i, (2i) % V] = A[i, (2i + 1) % V] = 1``.

    For even ``V`` this is the two-block-row form; for odd ``V`` it is the
    reduced ``p x p`` matrix.
    """
    A = np.zeros((V, V), dtype=np.int64)
    for i in range(V):
        A[i, (2 * i) % V] += 1
        A[i, (2 * i + 1) % V] += 1
    return A


def reduce_to_Ap(p: int) -> np.ndarray:
    """The ``p x p`` matrix carrying every nonzero eigenvalue of ``A_V``."""
    _check_p(p)
    if p == 1:
        return np.array([[2]], dtype=np.int64)
    return adjacency(p)


@dataclass(frozen=True)
class CycleStructure:
    """Cycles of ``j -> 2j mod p`` on ``{1, ..., p-1}``; ``0`` is the fixed point
    belonging to the eigenvalue 2 and is kept out of ``cycles``."""

    p: int
    cycles: Tuple[Tuple[int, ...], ...]
    fixed_point: int = 0

    @property
    def lengths(self) -> List[int]:
        return [len(c) for c in self.cycles]

    @property
    def beta(self) -> Dict[int, int]:
        return dict(Counter(self.lengths))

    def beta_of(self, c: int) -> int:
        return self.beta.get(c, 0)


def cycle_structure(p: int) -> CycleStructure:
    _check_p(p)
    seen = {0}
    cycles = []
    for j in range(1, p):
        if j in seen:
            continue
        cyc = [j]
        seen.add(j)
        x = (2 * j) % p
        while x != j:
            cyc.append(x)
            seen.add(x)
            x = (2 * x) % p
        cycles.append(tuple(cyc))
    return CycleStructure(p, tuple(cycles))


def nonzero_spectrum(p: int) -> np.ndarray:
    """Closed-form nonzero eigenvalues of ``A_V``: 2 plus a full set of c-th
    roots of unity for every cycle of length c."""
    vals = [2.0 + 0j]
    for c in cycle_structure(p).lengths:
        vals.extend(np.exp(2j * np.pi * np.arange(c) / c))
    return np.array(vals)


def trace_power(p: int, r: int, n: int) -> int:
    """``Tr(A_V ** n)`` from the cycle structure; independent of ``r``."""
    _check_p(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    beta = cycle_structure(p).beta
    return 2 ** n + sum(d * beta.get(d, 0) for d in range(1, n + 1) if n % d == 0)


def spectral_gap(p: int) -> int:
    _check_p(p)
    return 2 if p == 1 else 1

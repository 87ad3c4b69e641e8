"""Primitive periodic orbits and primitive pseudo orbits on binary graphs:
enumeration, exact counts and self-intersection (encounter) classification.

An orbit is stored by its vertex cycle rotated to the lexicographically least
rotation.  Since a binary graph with ``V >= 2`` never has parallel bonds, the
vertex cycle fixes the bond cycle.  For de Bruijn graphs (``p == 1``) the
least rotation of the vertex cycle matches the Lyndon word of the orbit.
"""

import re
from math import comb
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graphs import BinaryGraph, cycle_structure
from .words import count_lyndon, is_lyndon, is_strictly_decreasing, cfl_decompose, lyndon_words

__all__ = [
    "BudgetExceeded",
    "PeriodicOrbit",
    "PseudoOrbit",
    "Encounter",
    "EncounterProfile",
    "SetSizes",
    "Partition",
    "periodic_orbit",
    "orbit_from_label",
    "pseudo_orbit_from_label",
    "enumerate_po",
    "count_po",
    "enumerate_ppo",
    "enumerate_ppo_words",
    "ppo_series",
    "count_ppo",
    "c_constant",
    "classify",
    "classify_fast",
    "partition",
    "tabulate_sets",
    "sets_table",
    "generating_check",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 2 ** 24

FREE = "free"
TWO_ZERO = "two_zero"
ZERO = "zero"


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would produce more pseudo orbits than allowed."""


@dataclass(frozen=True, order=True)
class PeriodicOrbit:
    vertices: Tuple[int, ...]
    graph: BinaryGraph = field(compare=False)

    @cached_property
    def bonds(self) -> Tuple[int, ...]:
        vs = self.vertices
        n = len(vs)
        return tuple(self.graph.bond_between(vs[t], vs[(t + 1) % n]) for t in range(n))

    @property
    def length(self) -> int:
        return len(self.vertices)

    topological_length = length

    def label(self) -> str:
        """Binary orbit word for ``p == 1``; vertex word otherwise."""
        g = self.graph
        if g.p == 1:
            return "".join(str(v >> (g.r - 1)) for v in self.vertices)
        sep = "" if g.V <= 10 else "."
        return sep.join(str(v) for v in self.vertices)

    def __repr__(self) -> str:
        return f"PeriodicOrbit({self.label()})"


def periodic_orbit(vertices: Sequence[int], g: BinaryGraph) -> PeriodicOrbit:
    """Validate a closed vertex walk and return its canonical primitive orbit."""
    vs = tuple(int(v) for v in vertices)
    if not vs:
        raise ValueError("an orbit needs at least one vertex")
    n = len(vs)
    for t in range(n):
        if not 0 <= vs[t] < g.V:
            raise ValueError(f"vertex {vs[t]} not in graph")
        g.bond_between(vs[t], vs[(t + 1) % n])
    best = min(vs[i:] + vs[:i] for i in range(n))
    if not is_lyndon(best):
        raise ValueError(f"walk {vs} is not primitive")
    return PeriodicOrbit(best, g)


def _lyndon_to_vertices(word: Sequence[int], r: int) -> Tuple[int, ...]:
    n = len(word)
    out = []
    for t in range(n):
        v = 0
        for s in range(r):
            v = 2 * v + word[(t + s) % n]
        out.append(v)
    return tuple(out)


def orbit_from_label(label: str, g: BinaryGraph) -> PeriodicOrbit:
    """Inverse of :meth:`PeriodicOrbit.label` (any rotation is accepted)."""
    label = label.strip()
    if g.p == 1:
        word = [int(ch) for ch in label]
        if any(a not in (0, 1) for a in word):
            raise ValueError(f"bad binary orbit label {label!r}")
        return periodic_orbit(_lyndon_to_vertices(word, g.r), g)
    parts = label.split(".") if g.V > 10 else list(label)
    return periodic_orbit([int(x) for x in parts], g)


@dataclass(frozen=True)
class PseudoOrbit:
    orbits: Tuple[PeriodicOrbit, ...]

    def __post_init__(self):
        orbits = tuple(sorted(self.orbits))
        if len(set(o.vertices for o in orbits)) != len(orbits):
            raise ValueError("a primitive pseudo orbit cannot repeat an orbit")
        object.__setattr__(self, "orbits", orbits)

    @property
    def m(self) -> int:
        return len(self.orbits)

    @cached_property
    def n(self) -> int:
        return sum(o.length for o in self.orbits)

    @cached_property
    def bond_visits(self) -> Counter:
        return Counter(b for o in self.orbits for b in o.bonds)

    @cached_property
    def vertex_visits(self) -> Counter:
        return Counter(v for o in self.orbits for v in o.vertices)

    @cached_property
    def bond_class(self) -> Tuple[Tuple[int, int], ...]:
        """Sorted bond multiplicities; equal classes mean equal metric length
        for generic bond lengths."""
        return tuple(sorted(self.bond_visits.items()))

    def metric_length(self, lengths: Sequence[float]) -> float:
        return float(sum(lengths[b] * c for b, c in self.bond_visits.items()))

    def label(self) -> str:
        if not self.orbits:
            return "{}"
        labels = sorted((o.label() for o in self.orbits), reverse=True)
        return "".join(f"({s})" for s in labels)

    def __repr__(self) -> str:
        return f"PseudoOrbit({self.label()})"


def pseudo_orbit_from_label(label, g: BinaryGraph) -> PseudoOrbit:
    """Build a pseudo orbit from ``"(1)(0011)(0)"`` or a list of orbit labels."""
    if isinstance(label, str):
        parts = re.findall(r"\(([^()]*)\)", label)
    else:
        parts = list(label)
    return PseudoOrbit(tuple(orbit_from_label(s, g) for s in parts))


def _search_po(g: BinaryGraph, n: int) -> List[PeriodicOrbit]:
    """Closed walks that are strictly smaller than all their rotations."""
    out = []
    walk = []

    def extend(v, s):
        if len(walk) == n:
            if v == s:
                vs = tuple(walk)
                if is_lyndon(vs):
                    out.append(PeriodicOrbit(vs, g))
            return
        walk.append(v)
        for w in g.out_neighbors(v):
            if w >= s:
                extend(w, s)
        walk.pop()

    for s in range(g.V):
        extend(s, s)
    return sorted(out)


def enumerate_po(g: BinaryGraph, n: int, method: str = "auto") -> List[PeriodicOrbit]:
    """All primitive periodic orbits of topological length ``n``, sorted."""
    if n < 1:
        raise ValueError("orbit length must be >= 1")
    if method == "auto":
        method = "lyndon" if g.p == 1 else "search"
    if method == "lyndon":
        if g.p != 1:
            raise ValueError("the Lyndon-word path only applies to p == 1")
        return sorted(PeriodicOrbit(_lyndon_to_vertices(w, g.r), g) for w in lyndon_words(2, n))
    if method == "search":
        return _search_po(g, n)
    raise ValueError(f"unknown method {method!r}")


def count_po(p: int, n: int) -> int:
    """Number of primitive periodic orbits of length ``n`` (any ``r``)."""
    if n < 1:
        raise ValueError("orbit length must be >= 1")
    return count_lyndon(2, n) + cycle_structure(p).beta_of(n)


def ppo_series(p: int, n_max: int) -> List[int]:
    """Coefficients 0..n_max of the product over l of (1 + x^l)^PO_p(l)."""
    coeffs = [1] + [0] * n_max
    for l in range(1, n_max + 1):
        coeffs = _times_binomial_power(coeffs, l, count_po(p, l))
    return coeffs


def _times_binomial_power(coeffs: List[int], l: int, c: int) -> List[int]:
    """Truncated product of ``coeffs`` with ``(1 + x**l)**c``."""
    return [sum(comb(c, j) * coeffs[k - j * l] for j in range(k // l + 1)) for k in range(len(coeffs))]


def c_constant(p: int) -> Fraction:
    """Product over the nontrivial doubling cycles mod ``p`` of ``1 + 2**-c``."""
    result = Fraction(1)
    for c in cycle_structure(p).lengths:
        result *= 1 + Fraction(1, 2 ** c)
    return result


def count_ppo(p: int, n: int) -> int:
    """Number of primitive pseudo orbits of total length ``n``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > p:
        value = c_constant(p) * 2 ** (n - 1)
        assert value.denominator == 1
        return int(value)
    # below the threshold use the exact truncated product with cycle factors
    coeffs = [1] + [0] * n
    for c in cycle_structure(p).lengths:
        if c <= n:
            for k in range(n, c - 1, -1):
                coeffs[k] += coeffs[k - c]
    for l in range(1, n + 1):
        coeffs = _times_binomial_power(coeffs, l, count_lyndon(2, l))
    return coeffs[n]


def generating_check(p: int, n_max: int) -> bool:
    series = ppo_series(p, n_max)
    return all(series[n] == count_ppo(p, n) for n in range(n_max + 1))


def _check_budget(g: BinaryGraph, n: int, budget: Optional[int]) -> None:
    if budget is not None and count_ppo(g.p, n) > budget:
        raise BudgetExceeded(
            f"{count_ppo(g.p, n)} pseudo orbits of length {n} exceed the budget of {budget}"
        )


def enumerate_ppo(g: BinaryGraph, n: int, budget: Optional[int] = DEFAULT_BUDGET) -> List[PseudoOrbit]:
    """All primitive pseudo orbits of total length ``n`` by subset search.

    Orbits are sorted by length so the search stops scanning candidates once
    they no longer fit the remaining length.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    _check_budget(g, n, budget)
    items = [o for l in range(1, n + 1) for o in enumerate_po(g, l)]
    lengths = [o.length for o in items]
    out = []
    chosen = []

    def rec(start, remaining):
        if remaining == 0:
            out.append(PseudoOrbit(tuple(chosen)))
            return
        for i in range(start, len(items)):
            if lengths[i] > remaining:
                break
            chosen.append(items[i])
            rec(i + 1, remaining - lengths[i])
            chosen.pop()

    rec(0, n)
    return sorted(out, key=_ppo_key)


def enumerate_ppo_words(g: BinaryGraph, n: int, budget: Optional[int] = DEFAULT_BUDGET) -> List[PseudoOrbit]:
    """De Bruijn fast path: binary ``n``-words whose Lyndon factors are distinct."""
    if g.p != 1:
        raise ValueError("the word path only applies to p == 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return [PseudoOrbit(())]
    _check_budget(g, n, budget)
    out = []
    for x in range(2 ** n):
        w = tuple((x >> (n - 1 - i)) & 1 for i in range(n))
        if is_strictly_decreasing(w):
            out.append(PseudoOrbit(tuple(
                PeriodicOrbit(_lyndon_to_vertices(f, g.r), g) for f in cfl_decompose(w)
            )))
    return sorted(out, key=_ppo_key)


def _ppo_key(po: PseudoOrbit):
    return tuple(o.vertices for o in po.orbits)


@dataclass(frozen=True)
class Encounter:
    multiplicity: int
    length: int
    vertices: Tuple[int, ...]
    # (orbit index, offset of the first encounter vertex) for each traversal
    starts: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class EncounterProfile:
    encounters: Tuple[Encounter, ...]

    @property
    def N(self) -> int:
        return len(self.encounters)

    @property
    def category(self) -> str:
        if not self.encounters:
            return FREE
        if all(e.multiplicity == 2 and e.length == 0 for e in self.encounters):
            return TWO_ZERO
        return ZERO


def _validate_primitive(po: PseudoOrbit, g: BinaryGraph) -> None:
    for o in po.orbits:
        if o.graph != g:
            raise ValueError("pseudo orbit lives on a different graph")
        if not is_lyndon(o.vertices):
            raise ValueError(f"orbit {o.vertices} is not primitive and canonical")


def classify(po: PseudoOrbit, g: BinaryGraph) -> EncounterProfile:
    """Full encounter profile by growing maximal repeats.

    Every vertex visited at least twice seeds a candidate: its traversals are
    extended forwards and backwards in lockstep while all of them agree on the
    next (previous) vertex.  Growth stops exactly when the exits (entries) are
    not all equal, so each grown segment is a maximal repeat appearing
    ``multiplicity`` times.
    """
    _validate_primitive(po, g)
    cycles = [o.vertices for o in po.orbits]
    n_total = po.n
    where: Dict[int, List[Tuple[int, int]]] = {}
    for i, cyc in enumerate(cycles):
        for t, v in enumerate(cyc):
            where.setdefault(v, []).append((i, t))

    def shift(pos, k):
        i, t = pos
        return (i, (t + k) % len(cycles[i]))

    def vertex(pos):
        return cycles[pos[0]][pos[1]]

    found = {}
    for v, occ in sorted(where.items()):
        if len(occ) < 2:
            continue
        fwd = 0
        while all(vertex(shift(p, fwd + 1)) == vertex(shift(occ[0], fwd + 1)) for p in occ):
            fwd += 1
            if fwd > n_total:
                raise ValueError("repeat never terminates: pseudo orbit is not primitive")
        back = 0
        while all(vertex(shift(p, -back - 1)) == vertex(shift(occ[0], -back - 1)) for p in occ):
            back += 1
            if back > n_total:
                raise ValueError("repeat never terminates: pseudo orbit is not primitive")
        starts = tuple(sorted(shift(p, -back) for p in occ))
        length = fwd + back
        key = (starts, length)
        if key not in found:
            verts = tuple(vertex(shift(starts[0], k)) for k in range(length + 1))
            found[key] = Encounter(len(occ), length, verts, starts)
    encounters = tuple(sorted(found.values(), key=lambda e: (e.starts, e.length)))
    return EncounterProfile(encounters)


def classify_fast(po: PseudoOrbit) -> Tuple[str, int]:
    """Category and self-intersection count from visit multiplicities alone.

    On a graph with in- and out-degree 2: no vertex revisited means no
    encounter; no bond revisited and every vertex visited at most twice means
    every encounter is a single vertex crossed twice with distinct entries and
    exits.  Anything else contains a repeated bond or a triple visit.
    """
    vv = po.vertex_visits
    doubled = sum(1 for c in vv.values() if c == 2)
    if all(c == 1 for c in vv.values()):
        return FREE, 0
    if all(c <= 2 for c in vv.values()) and all(c == 1 for c in po.bond_visits.values()):
        return TWO_ZERO, doubled
    return ZERO, -1


@dataclass(frozen=True)
class SetSizes:
    n: int
    p0: int
    hat: Dict[int, int]
    zero: int

    @property
    def total(self) -> int:
        return self.p0 + sum(self.hat.values()) + self.zero

    def to_row(self, n_hat: int) -> dict:
        row = {"n": self.n, "P0": self.p0}
        for N in range(1, n_hat + 1):
            row[f"hat_{N}"] = self.hat.get(N, 0)
        row["zero"] = self.zero
        row["total"] = self.total
        return row


@dataclass
class Partition:
    """Pseudo orbits of one length split into the encounter-free set, the
    all-2-encounters-of-length-zero sets by ``N``, and the rest."""

    n: int
    p0: List[PseudoOrbit]
    hat: Dict[int, List[PseudoOrbit]]
    zero: List[PseudoOrbit]

    def sizes(self) -> SetSizes:
        return SetSizes(self.n, len(self.p0), {N: len(v) for N, v in sorted(self.hat.items())}, len(self.zero))


def partition(g: BinaryGraph, n: int, method: str = "fast", budget: Optional[int] = DEFAULT_BUDGET,
              ppos: Optional[Iterable[PseudoOrbit]] = None) -> Partition:
    if ppos is None:
        ppos = enumerate_ppo(g, n, budget=budget)
    part = Partition(n, [], {}, [])
    for po in ppos:
        if method == "fast":
            cat, N = classify_fast(po)
        elif method == "full":
            prof = classify(po, g)
            cat, N = prof.category, prof.N
        else:
            raise ValueError(f"unknown method {method!r}")
        if cat == FREE:
            part.p0.append(po)
        elif cat == TWO_ZERO:
            part.hat.setdefault(N, []).append(po)
        else:
            part.zero.append(po)
    return part


def tabulate_sets(g: BinaryGraph, n: int, method: str = "fast", budget: Optional[int] = DEFAULT_BUDGET) -> SetSizes:
    return partition(g, n, method=method, budget=budget).sizes()


def sets_table(g: BinaryGraph, n_max: int, budget: Optional[int] = DEFAULT_BUDGET) -> Tuple[List[dict], List[str]]:
    """Rows and column names for the set sizes at ``n = 0..n_max``."""
    n_hat = n_max // 2
    rows = [tabulate_sets(g, n, budget=budget).to_row(n_hat) for n in range(n_max + 1)]
    columns = ["n", "P0"] + [f"hat_{N}" for N in range(1, n_hat + 1)] + ["zero", "total"]
    return rows, columns

"""Periodic orbits, pseudo orbits and spectral statistics of binary quantum graphs."""

from .graphs import BinaryGraph, build_graph, cycle_structure
from .orbits import (
    BudgetExceeded,
    PeriodicOrbit,
    PseudoOrbit,
    classify,
    count_po,
    count_ppo,
    enumerate_po,
    enumerate_ppo,
    tabulate_sets,
)
from .quantum import bond_scattering, charpoly_coeffs, evolution_map
from .variance import predict_variance, variance_exact_pairing

__version__ = "0.1.0"

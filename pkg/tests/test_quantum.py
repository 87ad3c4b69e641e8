from fractions import Fraction

import numpy as np
import pytest

from bqgraph.graphs import BinaryGraph
from bqgraph.orbits import enumerate_po, enumerate_ppo, pseudo_orbit_from_label
from bqgraph.quantum import (
    Amplitude,
    bond_scattering,
    charpoly_coeffs,
    classical_matrix,
    coeff_via_pseudo_orbits,
    evolution_map,
    evolution_maps,
    normalized_coeffs,
    orbit_amplitude,
    vertex_scattering,
)

S = 2 ** -0.5
GRAPHS = [(1, 2), (3, 1), (1, 3), (5, 1), (1, 4)]


def random_unitary(rng, B):
    z = rng.normal(size=(B, B)) + 1j * rng.normal(size=(B, B))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / abs(np.diag(r)))


def coeffs_by_interpolation(U):
    """Coefficients of det(U - zeta I) from its values at B + 1 points on a circle."""
    B = U.shape[0]
    zs = 1.3 * np.exp(2j * np.pi * np.arange(B + 1) / (B + 1))
    vals = [np.linalg.det(U - z * np.eye(B)) for z in zs]
    # highest power first, so column n multiplies zeta^(B-n)
    vander = np.vander(zs, B + 1)
    return np.linalg.solve(vander, vals)


class TestScattering:
    def test_vertex_matrix(self):
        s = vertex_scattering()
        assert s[0, 0] == pytest.approx(S)
        assert np.allclose(s ** 2, 0.5)
        assert np.allclose(s @ s.T, np.eye(2))
        assert s[1, 1] < 0 and (s.flatten()[:3] > 0).all()

    def test_v4_structure(self):
        g = BinaryGraph(1, 2)
        sig = bond_scattering(g)
        assert sig.shape == (8, 8)
        nz = sig[sig != 0]
        assert len(nz) == 16 and np.allclose(abs(nz), S)
        assert ((sig != 0).sum(axis=0) == 2).all() and ((sig != 0).sum(axis=1) == 2).all()

    @pytest.mark.parametrize("p,r", GRAPHS)
    def test_unitary_and_local(self, p, r):
        g = BinaryGraph(p, r)
        sig = bond_scattering(g)
        assert np.abs(sig @ sig.T - np.eye(g.B)).max() < 1e-12
        for b_out in range(g.B):
            for b_in in range(g.B):
                if sig[b_out, b_in] != 0:
                    assert g.terminus(b_in) == g.origin(b_out)
        T = classical_matrix(g)
        assert np.allclose(T.sum(axis=0), 1) and np.allclose(T.sum(axis=1), 1)

    @pytest.mark.parametrize("p,r", GRAPHS)
    def test_sign_placement(self, p, r):
        g = BinaryGraph(p, r)
        sig = bond_scattering(g)
        for v in range(g.V):
            a, b = g.in_bonds(v)
            c, d = g.out_bonds(v)
            block = np.array([[sig[c, a], sig[c, b]], [sig[d, a], sig[d, b]]])
            assert np.allclose(block, vertex_scattering())


class TestEvolution:
    def test_k_zero(self):
        g = BinaryGraph(1, 2)
        L = np.linspace(0.9, 1.1, g.B)
        assert np.allclose(evolution_map(g, L, 0.0), bond_scattering(g))

    @pytest.mark.parametrize("p,r", [(1, 2), (3, 1), (1, 3), (5, 1), (1, 4)])
    def test_unitary_random_draws(self, p, r):
        g = BinaryGraph(p, r)
        rng = np.random.default_rng(p * 100 + r)
        for _ in range(100):
            L = rng.uniform(0.9, 1.1, g.B)
            k = rng.uniform(0, 1e4)
            U = evolution_map(g, L, k)
            assert np.abs(U @ U.conj().T - np.eye(g.B)).max() < 1e-12
            assert abs(abs(np.linalg.det(U)) - 1) < 1e-10

    def test_batched_matches_single(self):
        g = BinaryGraph(3, 1)
        L = np.linspace(0.9, 1.1, g.B)
        ks = np.array([0.3, 10.0, 1234.5])
        stack = evolution_maps(bond_scattering(g), L, ks)
        for i, k in enumerate(ks):
            assert np.allclose(stack[i], evolution_map(g, L, k))

    @pytest.mark.parametrize("bad", [0.0, -1.0])
    def test_bad_lengths(self, bad):
        g = BinaryGraph(1, 2)
        L = np.ones(g.B)
        L[3] = bad
        with pytest.raises(ValueError):
            evolution_map(g, L, 1.0)
        with pytest.raises(ValueError):
            evolution_map(g, np.ones(g.B - 1), 1.0)


class TestCharpoly:
    def test_identity(self):
        assert np.allclose(charpoly_coeffs(np.eye(2)), [1, -2, 1])

    @pytest.mark.parametrize("B", [1, 2, 3, 4, 5, 6])
    def test_against_determinant(self, B):
        rng = np.random.default_rng(B)
        for _ in range(10):
            U = random_unitary(rng, B)
            a = charpoly_coeffs(U)
            assert a[0] == (-1) ** B
            assert np.allclose(a, coeffs_by_interpolation(U), atol=1e-10)

    def test_stack(self):
        rng = np.random.default_rng(0)
        Us = np.stack([random_unitary(rng, 5) for _ in range(4)])
        a = charpoly_coeffs(Us)
        assert a.shape == (4, 6)
        for i in range(4):
            assert np.allclose(a[i], charpoly_coeffs(Us[i]))

    def test_self_inversive_modulus(self):
        g = BinaryGraph(1, 2)
        rng = np.random.default_rng(3)
        for _ in range(50):
            a = charpoly_coeffs(evolution_map(g, rng.uniform(0.9, 1.1, g.B), rng.uniform(0, 1e3)))
            assert np.allclose(abs(a), abs(a[::-1]), atol=1e-10)

    def test_non_square(self):
        with pytest.raises(ValueError):
            charpoly_coeffs(np.ones((2, 3)))
        with pytest.raises(ValueError):
            charpoly_coeffs(np.ones(3))

    def test_normalized(self):
        rng = np.random.default_rng(5)
        U = random_unitary(rng, 4)
        c = normalized_coeffs(U)
        assert c[0] == 1 and np.allclose(c, charpoly_coeffs(U) / charpoly_coeffs(U)[0])


class TestAmplitudes:
    def test_loops(self):
        for r in (1, 2, 3, 4):
            g = BinaryGraph(1, r)
            zero, one = enumerate_po(g, 1)
            assert orbit_amplitude(zero, g) == Amplitude(1, 1)
            assert orbit_amplitude(one, g) == Amplitude(-1, 1)

    @pytest.mark.parametrize("p,r", GRAPHS)
    def test_trace_of_sigma(self, p, r):
        g = BinaryGraph(p, r)
        loops = enumerate_po(g, 1)
        assert np.trace(bond_scattering(g)) == pytest.approx(sum(orbit_amplitude(o, g).value for o in loops))

    @pytest.mark.parametrize("p,r", [(1, 2), (3, 1), (1, 3)])
    def test_matches_matrix_product(self, p, r):
        g = BinaryGraph(p, r)
        sig = bond_scattering(g)
        for n in range(1, 7):
            for o in enumerate_po(g, n):
                bs = o.bonds
                prod = np.prod([sig[bs[(t + 1) % n], bs[t]] for t in range(n)])
                assert orbit_amplitude(o, g).value == pytest.approx(prod)

    def test_pseudo_orbit_modulus(self):
        g = BinaryGraph(1, 3)
        for n in range(1, 8):
            for po in enumerate_ppo(g, n):
                amp = orbit_amplitude(po, g)
                assert amp.squared_modulus == Fraction(1, 2 ** n)

    def test_product_rule(self):
        g = BinaryGraph(1, 3)
        po = pseudo_orbit_from_label("(1)(0011)(0)", g)
        amps = [orbit_amplitude(o, g) for o in po.orbits]
        assert orbit_amplitude(po, g) == amps[0] * amps[1] * amps[2]

    def test_broken_chain(self):
        g = BinaryGraph(1, 2)
        with pytest.raises(ValueError):
            orbit_amplitude([0, 5], g)
        with pytest.raises(ValueError):
            orbit_amplitude([], g)
        # 0 -> 1 -> 2 -> 0
        assert orbit_amplitude([1, 2, 4], g).magnitude_exponent == 3


class TestPseudoOrbitExpansion:
    def test_n_zero(self):
        g = BinaryGraph(1, 2)
        assert coeff_via_pseudo_orbits(g, np.ones(g.B), 2.5, 0) == 1

    @pytest.mark.parametrize("p,r,n", [(1, 2, 2), (1, 3, 5)])
    def test_examples(self, p, r, n):
        g = BinaryGraph(p, r)
        rng = np.random.default_rng(n)
        L = rng.uniform(0.9, 1.1, g.B)
        for k in rng.uniform(0, 500, 5):
            a = normalized_coeffs(evolution_map(g, L, k))
            assert abs(coeff_via_pseudo_orbits(g, L, k, n) - a[n]) < 1e-10

    @pytest.mark.parametrize("p,r", [(1, 2), (3, 1)])
    def test_all_n(self, p, r):
        g = BinaryGraph(p, r)
        rng = np.random.default_rng(11)
        L = rng.uniform(0.9, 1.1, g.B)
        ks = rng.uniform(0, 1000, 20)
        a = normalized_coeffs(np.stack([evolution_map(g, L, k) for k in ks]))
        for n in range(g.B + 1):
            assert np.abs(coeff_via_pseudo_orbits(g, L, ks, n) - a[:, n]).max() < 1e-10

    def test_range(self):
        g = BinaryGraph(1, 2)
        with pytest.raises(ValueError):
            coeff_via_pseudo_orbits(g, np.ones(g.B), 1.0, g.B + 1)

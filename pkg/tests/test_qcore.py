"""Core operator and state types, tensor plumbing, unitary spectra."""

import numpy as np
import pytest

from unidisc.qcore import (
    DEFAULT_TOL,
    DensityOperator,
    StateVector,
    Tolerances,
    UnitaryOperator,
    apply,
    as_matrix,
    eig_unitary,
    haar_unitary,
    kron,
    overlap,
    partial_trace,
    projector,
    simultaneous_eigenbasis,
)


def test_tolerance_defaults():
    t = Tolerances()
    assert t.validation == 1e-10
    assert t.comparison == 1e-9
    assert t.orthogonality == 1e-10
    assert DEFAULT_TOL == t


def test_as_matrix_rejects_non_2d():
    with pytest.raises(ValueError):
        as_matrix([1, 2, 3])


class TestUnitaryOperator:
    def test_accepts_unitary(self):
        u = UnitaryOperator(np.diag([1, 1j]))
        assert u.dim == 2
        assert u.matrix.dtype == complex

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            UnitaryOperator(np.ones((2, 3)))

    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError, match="not unitary"):
            UnitaryOperator(np.array([[1.0, 0.0], [0.0, 2.0]]))

    def test_dagger_inverts(self):
        rng = np.random.default_rng(3)
        u = haar_unitary(4, rng)
        prod = u.dagger().matrix @ u.matrix
        assert np.max(np.abs(prod - np.eye(4))) < 1e-12


class TestDensityOperator:
    def test_accepts_maximally_mixed(self):
        rho = DensityOperator(np.eye(3) / 3)
        assert rho.dim == 3

    def test_rejects_trace(self):
        with pytest.raises(ValueError, match="trace"):
            DensityOperator(np.eye(2))

    def test_rejects_negative(self):
        with pytest.raises(ValueError, match="negative"):
            DensityOperator(np.diag([1.5, -0.5]))

    def test_rejects_non_hermitian(self):
        m = np.array([[0.5, 0.5], [0.0, 0.5]])
        with pytest.raises(ValueError, match="Hermitian"):
            DensityOperator(m)


class TestStateVector:
    def test_normalizes(self):
        psi = StateVector([3.0, 4.0])
        assert np.isclose(np.linalg.norm(psi.amplitudes), 1.0)
        assert np.isclose(psi.amplitudes[0], 0.6)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            StateVector([0.0, 0.0])

    def test_density_is_projector(self):
        psi = StateVector([1.0, 1j])
        rho = psi.density().matrix
        assert np.allclose(rho @ rho, rho)
        assert np.isclose(np.trace(rho), 1.0)


def test_apply_overlap_projector():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    psi = StateVector([1.0, 0.0])
    out = apply(x, psi)
    assert np.allclose(out.amplitudes, [0.0, 1.0])
    assert np.isclose(overlap(psi, out), 0.0)
    p = projector(psi)
    assert np.allclose(p, np.diag([1.0, 0.0]))


def test_kron_matches_numpy():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(2, 2))
    b = rng.normal(size=(3, 3))
    assert np.allclose(kron(a, b), np.kron(a, b))


class TestPartialTrace:
    def _random_density(self, d, rng):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        m = g @ g.conj().T
        return m / np.trace(m)

    def test_product_state_splits(self):
        rng = np.random.default_rng(7)
        ra = self._random_density(2, rng)
        rb = self._random_density(3, rng)
        joint = np.kron(ra, rb)
        assert np.allclose(partial_trace(joint, (2, 3), keep=[0]), ra)
        assert np.allclose(partial_trace(joint, (2, 3), keep=[1]), rb)

    def test_einsum_oracle_three_parties(self):
        # independent contraction of the middle subsystem via einsum
        rng = np.random.default_rng(11)
        rho = self._random_density(2 * 3 * 2, rng)
        t = rho.reshape(2, 3, 2, 2, 3, 2)
        expect = np.einsum("ajkalm->jklm", t).reshape(6, 6)
        got = partial_trace(rho, (2, 3, 2), keep=[1, 2])
        assert np.allclose(got, expect)

    def test_keep_order_swaps_subsystems(self):
        rng = np.random.default_rng(13)
        ra = self._random_density(2, rng)
        rb = self._random_density(3, rng)
        joint = np.kron(ra, rb)
        swapped = partial_trace(joint, (2, 3), keep=[1, 0])
        assert np.allclose(swapped, np.kron(rb, ra))

    def test_trace_everything(self):
        rng = np.random.default_rng(17)
        rho = self._random_density(4, rng)
        full = partial_trace(rho, (2, 2), keep=[])
        assert np.isclose(full[0, 0], 1.0)

    def test_rejects_bad_dims(self):
        with pytest.raises(ValueError):
            partial_trace(np.eye(4) / 4, (2, 3), keep=[0])
        with pytest.raises(ValueError):
            partial_trace(np.eye(4) / 4, (2, 2), keep=[0, 0])


class TestEigUnitary:
    def test_reconstructs(self):
        rng = np.random.default_rng(23)
        u = haar_unitary(5, rng).matrix
        phases, vecs = eig_unitary(u)
        recon = vecs @ np.diag(np.exp(1j * phases)) @ vecs.conj().T
        assert np.max(np.abs(recon - u)) < 1e-9

    def test_phases_sorted_in_range(self):
        rng = np.random.default_rng(29)
        u = haar_unitary(6, rng).matrix
        phases, _ = eig_unitary(u)
        assert np.all(np.diff(phases) >= 0)
        assert phases[0] >= 0 and phases[-1] < 2 * np.pi

    def test_identity_degenerate(self):
        phases, vecs = eig_unitary(np.eye(4))
        assert np.allclose(phases, 0.0)
        assert np.allclose(vecs.conj().T @ vecs, np.eye(4))

    def test_pauli_x(self):
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        phases, vecs = eig_unitary(x)
        assert np.allclose(sorted(phases), [0.0, np.pi])
        for j in range(2):
            assert np.allclose(x @ vecs[:, j],
                               np.exp(1j * phases[j]) * vecs[:, j])

    def test_clustered_spectrum(self):
        # eigenvalues {1, 1, -1} force the blockwise rescue path to stay exact
        rng = np.random.default_rng(31)
        q = haar_unitary(3, rng).matrix
        u = q @ np.diag([1.0, 1.0, -1.0]) @ q.conj().T
        phases, vecs = eig_unitary(u)
        assert np.allclose(np.sort(phases), [0.0, 0.0, np.pi], atol=1e-9)
        assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(3))) < 1e-9


class TestSimultaneousEigenbasis:
    def test_commuting_family(self):
        rng = np.random.default_rng(37)
        q = haar_unitary(4, rng).matrix
        h1 = q @ np.diag([1.0, 1.0, 2.0, 3.0]) @ q.conj().T
        h2 = q @ np.diag([5.0, -1.0, 0.5, 0.5]) @ q.conj().T
        basis = simultaneous_eigenbasis([h1, h2])
        for h in (h1, h2):
            off = basis.conj().T @ h @ basis
            off = off - np.diag(np.diag(off))
            assert np.max(np.abs(off)) < 1e-8

    def test_non_commuting_raises(self):
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        z = np.diag([1.0, -1.0])
        with pytest.raises(ValueError, match="commute"):
            simultaneous_eigenbasis([x, z])

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            simultaneous_eigenbasis([])


class TestHaarUnitary:
    def test_unitarity(self):
        rng = np.random.default_rng(41)
        for d in (2, 3, 5):
            u = haar_unitary(d, rng).matrix
            assert np.max(np.abs(u.conj().T @ u - np.eye(d))) < 1e-12

    def test_seed_reproducible(self):
        a = haar_unitary(3, np.random.default_rng(5)).matrix
        b = haar_unitary(3, np.random.default_rng(5)).matrix
        assert np.array_equal(a, b)

    def test_draws_differ(self):
        rng = np.random.default_rng(43)
        a = haar_unitary(3, rng).matrix
        b = haar_unitary(3, rng).matrix
        assert np.max(np.abs(a - b)) > 1e-3

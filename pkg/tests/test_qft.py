import numpy as np
import pytest

from dihedral_hsp.group import elements, identity, reflection, rotation
from dihedral_hsp.hsp import make_coset_state
from dihedral_hsp.qft import (FOURIER, GROUP, REAL_BASIS, BasisMismatch, FourierIndex, StateVector,
                              apply_qft, basis_state, block_slices, build_qft, fourier_indices,
                              real_basis_distribution)
from dihedral_hsp.representations import OneDim, TwoDim, coset_sum, evaluate, irrep_list

TOL = 1e-12


def test_n1_is_hadamard():
    F = build_qft(1).matrix
    np.testing.assert_allclose(F, np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=TOL)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 11])
def test_identity_column(n):
    F = build_qft(n)
    col = F.matrix[:, 0]
    want = [np.sqrt(idx.label.dim / (2 * n)) * (idx.i == idx.j) for idx in F.indices]
    np.testing.assert_allclose(col, want, atol=TOL)


def test_entries_follow_definition():
    n = 6
    F = build_qft(n)
    for row, idx in enumerate(F.indices):
        for col, g in enumerate(elements(n)):
            want = np.sqrt(idx.label.dim / (2 * n)) * evaluate(idx.label, g, n)[idx.i, idx.j]
            assert F.matrix[row, col] == pytest.approx(want, abs=TOL)


@pytest.mark.parametrize("n", range(1, 65))
def test_unitarity_and_index_count(n):
    F = build_qft(n)
    assert len(F.indices) == 2 * n == len(set(F.indices))
    assert F.unitarity_deviation() < TOL


def test_fourier_index_order():
    idx = fourier_indices(4)
    assert idx[:4] == [FourierIndex(OneDim(u, v), 0, 0) for u in (0, 1) for v in (0, 1)]
    assert idx[4:] == [FourierIndex(TwoDim(1), i, j) for i in (0, 1) for j in (0, 1)]
    sl = block_slices(7)
    assert sl[TwoDim(3)] == slice(10, 14)


def test_cache_returns_same_object():
    assert build_qft(12) is build_qft(12)
    assert not build_qft(12).matrix.flags.writeable


def test_apply_to_identity():
    n = 5
    out = apply_qft(build_qft(n), basis_state(identity(), n))
    assert out.basis == FOURIER
    want = [np.sqrt(i.label.dim / (2 * n)) * (i.i == i.j) for i in fourier_indices(n)]
    np.testing.assert_allclose(out.amplitudes, want, atol=TOL)


@pytest.mark.parametrize("n,a", [(4, 1), (5, 3), (8, 0)])
def test_apply_to_coset_state(n, a):
    cs = make_coset_state(identity(), a, n)
    out = apply_qft(build_qft(n), cs.state)
    want = []
    for label in irrep_list(n):
        S = coset_sum(label, a, identity(), n)
        want.extend(np.sqrt(label.dim / (4 * n)) * S.ravel())
    np.testing.assert_allclose(out.amplitudes, want, atol=TOL)


def test_plancherel_random_vectors(rng):
    F = build_qft(16)
    for _ in range(100):
        v = rng.normal(size=32) + 1j * rng.normal(size=32)
        v /= np.linalg.norm(v)
        s = StateVector(v)
        assert apply_qft(F, s).norm == pytest.approx(1.0, abs=TOL)


def test_basis_mismatch():
    F = build_qft(3)
    with pytest.raises(BasisMismatch):
        apply_qft(F, StateVector(np.eye(6)[0], FOURIER))
    with pytest.raises(ValueError):
        apply_qft(F, StateVector(np.eye(4)[0], GROUP))


def test_real_basis_is_real_form():
    n = 7
    for k in (1, 2, 3):
        Rx = REAL_BASIS @ evaluate(TwoDim(k), rotation(1, n), n) @ REAL_BASIS.conj().T
        t = 2 * np.pi * k / n
        np.testing.assert_allclose(Rx, [[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]], atol=TOL)
        Ry = REAL_BASIS @ evaluate(TwoDim(k), reflection(0, n), n) @ REAL_BASIS.conj().T
        np.testing.assert_allclose(Ry, np.diag([1, -1]), atol=TOL)
    np.testing.assert_allclose(REAL_BASIS @ REAL_BASIS.conj().T, np.eye(2), atol=TOL)


@pytest.mark.parametrize("n", [1, 2, 3, 8, 17])
def test_real_basis_normalized(n):
    for a in range(n):
        for c in (identity(), reflection(a + 1, n), rotation(2, n)):
            assert real_basis_distribution(n, a, c).total == pytest.approx(1.0, abs=1e-10)


def test_real_basis_depends_on_slope():
    d1 = real_basis_distribution(8, 1, identity()).probabilities
    d3 = real_basis_distribution(8, 3, identity()).probabilities
    assert 0.5 * np.abs(d1 - d3).sum() > 0.01


def test_real_basis_flat_n64(rng):
    n = 64
    for a in range(n):
        for beta, alpha in rng.integers(0, [2, n], size=(3, 2)):
            dist = real_basis_distribution(n, a, elements_at(beta, alpha, n))
            two = [p for o, p in zip(dist.outcomes, dist.probabilities) if o.label.dim == 2]
            assert max(two) <= 4 / n + TOL


def elements_at(beta, alpha, n):
    return reflection(alpha, n) if beta else rotation(alpha, n)

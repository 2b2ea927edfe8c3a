import itertools

import numpy as np
import pytest

from dihedral_hsp.group import DihedralElement, elements, identity, multiply, reflection, rotation
from dihedral_hsp.representations import (OneDim, TwoDim, coset_sum, dimension_check, evaluate,
                                          evaluate_all, irrep_list, parse_label, schur_check,
                                          validate_label)

TOL = 1e-12


def generator_images(label, n):
    """rho(x), rho(y) written straight from the defining formulas."""
    if isinstance(label, OneDim):
        return np.array([[(-1) ** label.u]]), np.array([[(-1) ** label.v]])
    w = np.exp(2j * np.pi / n)
    return np.diag([w ** label.k, w ** -label.k]), np.array([[0, 1], [1, 0]])


def from_generators(label, g, n):
    X, Y = generator_images(label, n)
    return np.linalg.matrix_power(Y, g.beta) @ np.linalg.matrix_power(X, g.alpha)


def test_irrep_list_examples():
    assert irrep_list(3) == [OneDim(0, 0), OneDim(0, 1), TwoDim(1)]
    assert irrep_list(4) == [OneDim(0, 0), OneDim(0, 1), OneDim(1, 0), OneDim(1, 1), TwoDim(1)]
    six = irrep_list(6)
    assert sum(isinstance(lbl, OneDim) for lbl in six) == 4
    assert [lbl for lbl in six if isinstance(lbl, TwoDim)] == [TwoDim(1), TwoDim(2)]
    assert dimension_check(6) == 12
    assert irrep_list(1) == [OneDim(0, 0), OneDim(0, 1)]
    assert irrep_list(2) == [OneDim(0, 0), OneDim(0, 1), OneDim(1, 0), OneDim(1, 1)]


@pytest.mark.parametrize("n", range(1, 65))
def test_completeness(n):
    assert dimension_check(n) == 2 * n
    assert sum(isinstance(lbl, TwoDim) for lbl in irrep_list(n)) == (n - 1) // 2


def test_label_validation():
    with pytest.raises(ValueError):
        validate_label(OneDim(1, 0), 5)
    with pytest.raises(ValueError):
        validate_label(TwoDim(2), 4)
    with pytest.raises(ValueError):
        validate_label(TwoDim(0), 4)
    assert parse_label("phi_10") == OneDim(1, 0)
    assert parse_label(str(TwoDim(7))) == TwoDim(7)


def test_evaluate_examples():
    np.testing.assert_allclose(evaluate(TwoDim(1), identity(), 7), np.eye(2), atol=TOL)
    np.testing.assert_allclose(evaluate(TwoDim(1), rotation(1, 4), 4), np.diag([1j, -1j]), atol=TOL)
    g = reflection(3, 4)
    expected = from_generators(TwoDim(1), g, 4)
    np.testing.assert_allclose(expected, [[0, 1j], [-1j, 0]], atol=TOL)
    np.testing.assert_allclose(evaluate(TwoDim(1), g, 4), expected, atol=TOL)


@pytest.mark.parametrize("n", range(1, 9))
def test_homomorphism_and_generator_oracle(n):
    for label in irrep_list(n):
        for g in elements(n):
            np.testing.assert_allclose(evaluate(label, g, n), from_generators(label, g, n), atol=TOL)
        for g, h in itertools.product(elements(n), repeat=2):
            np.testing.assert_allclose(evaluate(label, multiply(g, h, n), n),
                                       evaluate(label, g, n) @ evaluate(label, h, n), atol=TOL)


@pytest.mark.parametrize("n", [1, 2, 3, 8, 13, 64])
def test_unitarity_and_entry_bound(n):
    for label in irrep_list(n):
        vals = evaluate_all(label, n)
        eye = np.eye(label.dim)
        for M in vals:
            np.testing.assert_allclose(M @ M.conj().T, eye, atol=TOL)
        assert np.all(np.abs(vals) <= 1 + TOL)


def test_evaluate_all_matches_evaluate():
    n = 9
    for label in irrep_list(n):
        stacked = evaluate_all(label, n)
        for i, g in enumerate(elements(n)):
            np.testing.assert_allclose(stacked[i], evaluate(label, g, n), atol=TOL)


def test_large_exponent_phase_is_reduced():
    n = 1000003
    g = rotation(n - 1, n)
    np.testing.assert_allclose(evaluate(TwoDim(1), g, n)[0, 0], np.exp(-2j * np.pi / n), atol=1e-15)


def test_coset_sum_examples():
    np.testing.assert_allclose(coset_sum(TwoDim(1), 1, identity(), 4), [[1, -1j], [1j, 1]], atol=TOL)
    for n in (3, 4, 7):
        for a in range(n):
            assert coset_sum(OneDim(0, 0), a, identity(), n)[0, 0] == pytest.approx(2)
    n, k, a, alpha = 6, 2, 3, 1
    c = reflection(alpha, n)
    w = np.exp(2j * np.pi / n)
    display = [[w ** ((a - alpha) * k), w ** (-alpha * k)],
               [w ** (alpha * k), w ** (-(a - alpha) * k)]]
    direct = from_generators(TwoDim(k), c, n) + from_generators(TwoDim(k), rotation(a - alpha, n), n)
    np.testing.assert_allclose(direct, display, atol=TOL)
    np.testing.assert_allclose(coset_sum(TwoDim(k), a, c, n), display, atol=TOL)


@pytest.mark.parametrize("n", [3, 4, 5, 8, 11])
def test_coset_sum_rotation_display(n):
    w = np.exp(2j * np.pi / n)
    for lbl in irrep_list(n):
        if not isinstance(lbl, TwoDim):
            continue
        k = lbl.k
        for a, alpha in itertools.product(range(n), repeat=2):
            display = [[w ** (alpha * k), w ** (-(a - alpha) * k)],
                       [w ** ((a - alpha) * k), w ** (-alpha * k)]]
            np.testing.assert_allclose(coset_sum(lbl, a, rotation(alpha, n), n), display, atol=1e-11)


@pytest.mark.parametrize("n", [2, 4, 6, 3, 5])
def test_one_dim_coset_sums_have_plus_sign(n):
    # sum = (-1)^(alpha u) (1 + (-1)^(v + a u)); the "-1 +" variant is wrong
    for lbl in irrep_list(n):
        if not isinstance(lbl, OneDim):
            continue
        for a, alpha in itertools.product(range(n), repeat=2):
            got = coset_sum(lbl, a, rotation(alpha, n), n)[0, 0]
            want = (-1) ** (alpha * lbl.u) * (1 + (-1) ** (lbl.v + a * lbl.u))
            assert got == pytest.approx(want)


@pytest.mark.parametrize("n", range(1, 9))
def test_coset_sum_factorization(n):
    for lbl in irrep_list(n):
        for a in range(n):
            R = evaluate(lbl, reflection(a, n), n)
            for c in elements(n):
                np.testing.assert_allclose(coset_sum(lbl, a, c, n),
                                           evaluate(lbl, c, n) @ (np.eye(lbl.dim) + R), atol=TOL)


@pytest.mark.parametrize("n", [1, 3, 16])
def test_schur_examples(n):
    rep = schur_check(n)
    assert rep.passed and rep.max_deviation < TOL


def test_schur_brute_force_oracle():
    n = 5
    labels = irrep_list(n)
    els = list(elements(n))
    worst = 0.0
    for l1, l2 in itertools.product(labels, repeat=2):
        for i, j, i2, j2 in itertools.product(range(l1.dim), range(l1.dim), range(l2.dim), range(l2.dim)):
            s = sum(evaluate(l1, g, n)[i, j] * np.conj(evaluate(l2, g, n)[i2, j2]) for g in els)
            s *= l1.dim / (2 * n)
            expected = float(l1 == l2 and i == i2 and j == j2)
            worst = max(worst, abs(s - expected))
    assert worst < TOL
    assert schur_check(n).max_deviation == pytest.approx(worst, abs=TOL)


def test_schur_reports_offending_index():
    rep = schur_check(8, tol=0.0)
    assert not rep.passed
    assert len(rep.worst_index) == 2

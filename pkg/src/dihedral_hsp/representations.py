"""Irreducible unitary representations of D_n in the complex basis.

One-dimensional representations ``phi_{u,v}`` send ``x -> (-1)^u`` and
``y -> (-1)^v`` (``u = 0`` only when n is odd).  The two-dimensional
``rho_k``, ``0 < k < n/2``, send ``x -> diag(w^k, w^-k)`` and ``y`` to the
swap matrix, with ``w = exp(2 pi i / n)``.  Values are always returned as
``d x d`` arrays, 1x1 included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .group import DihedralElement, ReflectionSubgroup, check_order, multiply

TOL = 1e-12


@dataclass(frozen=True, order=True)
class OneDim:
    u: int
    v: int

    dim = 1

    def __str__(self) -> str:
        return f"phi_{self.u}{self.v}"


@dataclass(frozen=True, order=True)
class TwoDim:
    k: int

    dim = 2

    def __str__(self) -> str:
        return f"rho_{self.k}"


IrrepLabel = Union[OneDim, TwoDim]


def parse_label(text: str) -> IrrepLabel:
    """Inverse of ``str(label)``."""
    if text.startswith("phi_") and len(text) == 6:
        return OneDim(int(text[4]), int(text[5]))
    if text.startswith("rho_"):
        return TwoDim(int(text[4:]))
    raise ValueError(f"not an irrep label: {text!r}")


def irrep_list(n: int) -> list[IrrepLabel]:
    """All irreps of D_n: one-dim labels by ``(u, v)``, then ``rho_k`` by k."""
    check_order(n)
    us = (0, 1) if n % 2 == 0 else (0,)
    labels: list[IrrepLabel] = [OneDim(u, v) for u in us for v in (0, 1)]
    labels += [TwoDim(k) for k in range(1, (n - 1) // 2 + 1)]
    return labels


def validate_label(label: IrrepLabel, n: int) -> None:
    if isinstance(label, OneDim):
        if label.u not in (0, 1) or label.v not in (0, 1):
            raise ValueError(f"bad one-dimensional label {label}")
        if label.u == 1 and n % 2:
            raise ValueError(f"{label} is not a representation of D_{n} (n odd)")
    elif isinstance(label, TwoDim):
        if not 0 < 2 * label.k < n:
            raise ValueError(f"{label} requires 0 < k < n/2 (n={n})")
    else:
        raise TypeError(f"unknown irrep label {label!r}")


def root_of_unity(m, n: int):
    """``exp(2 pi i m / n)`` with the exponent reduced mod n first."""
    m = np.mod(m, n)
    return np.exp(2j * np.pi * m / n)


def evaluate(label: IrrepLabel, g: DihedralElement, n: int) -> np.ndarray:
    validate_label(label, n)
    if isinstance(label, OneDim):
        sign = (-1) ** ((label.u * g.alpha + label.v * g.beta) % 2)
        return np.array([[sign]], dtype=complex)
    w = root_of_unity(label.k * g.alpha, n)
    w_bar = root_of_unity(-label.k * g.alpha, n)
    if g.beta == 0:
        return np.array([[w, 0], [0, w_bar]], dtype=complex)
    # rho(y) rho(x)^alpha = swap . diag(w, w_bar)
    return np.array([[0, w_bar], [w, 0]], dtype=complex)


def evaluate_all(label: IrrepLabel, n: int) -> np.ndarray:
    """``rho(g)`` for every element, stacked in index order: shape ``(2n, d, d)``."""
    validate_label(label, n)
    alpha = np.arange(n)
    if isinstance(label, OneDim):
        signs = np.concatenate([(-1.0) ** ((label.u * alpha) % 2),
                                (-1.0) ** ((label.u * alpha + label.v) % 2)])
        return signs.astype(complex).reshape(2 * n, 1, 1)
    w = root_of_unity(label.k * alpha, n)
    w_bar = root_of_unity(-label.k * alpha, n)
    out = np.zeros((2 * n, 2, 2), dtype=complex)
    out[:n, 0, 0] = w
    out[:n, 1, 1] = w_bar
    out[n:, 0, 1] = w_bar
    out[n:, 1, 0] = w
    return out


def coset_sum(label: IrrepLabel, a: int, c: DihedralElement, n: int) -> np.ndarray:
    """Sum of ``rho(c h)`` over ``h`` in ``H_a``."""
    H = ReflectionSubgroup(a, n)
    return sum(evaluate(label, multiply(c, h, n), n) for h in H.elements())


@dataclass
class SchurReport:
    n: int
    max_deviation: float
    worst_index: tuple
    passed: bool


def schur_check(n: int, tol: float = TOL) -> SchurReport:
    """Check the orthogonality relations of matrix coefficients.

    Stacks every normalised coefficient function ``sqrt(d/2n) rho(g)_ij`` as
    a row and compares the Gram matrix against the identity.
    """
    check_order(n)
    rows = []
    names = []
    for label in irrep_list(n):
        vals = evaluate_all(label, n)
        d = label.dim
        for i in range(d):
            for j in range(d):
                rows.append(np.sqrt(d / (2 * n)) * vals[:, i, j])
                names.append((str(label), i, j))
    M = np.array(rows)
    gram = M @ M.conj().T
    dev = np.abs(gram - np.eye(len(rows)))
    worst = np.unravel_index(np.argmax(dev), dev.shape)
    max_dev = float(dev[worst])
    return SchurReport(n, max_dev, (names[worst[0]], names[worst[1]]), max_dev < tol)


def dimension_check(n: int) -> int:
    """Sum of squared irrep dimensions (equals 2n)."""
    return sum(label.dim ** 2 for label in irrep_list(n))


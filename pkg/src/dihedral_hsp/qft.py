"""Dense quantum Fourier transform over D_n.

Row ``(rho, i, j)`` of the transform holds ``sqrt(d/2n) rho(g)_ij`` as g
runs over the group basis.  Fourier rows follow :func:`irrep_list` order,
each block row-major.  Indices ``i, j`` are 0-based.
"""

from __future__ import annotations

import functools
import threading
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .group import DihedralElement, check_order
from .representations import IrrepLabel, TwoDim, coset_sum, evaluate_all, irrep_list

GROUP = "group"
FOURIER = "fourier"

# Real form of the two-dimensional block: rho(x) becomes a planar rotation
# and rho(y) becomes diag(1, -1) under B rho B^dagger.
REAL_BASIS = np.array([[1, 1], [1j, -1j]], dtype=complex) / np.sqrt(2)


class BasisMismatch(ValueError):
    pass


class FourierIndex(NamedTuple):
    label: IrrepLabel
    i: int
    j: int

    def __str__(self) -> str:
        return f"{self.label}[{self.i},{self.j}]"


@dataclass
class StateVector:
    amplitudes: np.ndarray
    basis: str = GROUP

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.basis not in (GROUP, FOURIER):
            raise ValueError(f"unknown basis tag {self.basis!r}")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def is_normalized(self, tol: float = 1e-10) -> bool:
        return abs(self.norm ** 2 - 1.0) <= tol


@dataclass(frozen=True)
class QftMatrix:
    n: int
    matrix: np.ndarray = field(repr=False)
    indices: tuple[FourierIndex, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return 2 * self.n

    def position(self, idx: FourierIndex) -> int:
        return self.indices.index(idx)

    def unitarity_deviation(self) -> float:
        F = self.matrix
        return float(np.max(np.abs(F @ F.conj().T - np.eye(self.dim))))


def fourier_indices(n: int) -> list[FourierIndex]:
    return [FourierIndex(label, i, j)
            for label in irrep_list(n)
            for i in range(label.dim)
            for j in range(label.dim)]


def block_slices(n: int) -> dict[IrrepLabel, slice]:
    """Row range of each irrep block in the Fourier basis."""
    out = {}
    start = 0
    for label in irrep_list(n):
        out[label] = slice(start, start + label.dim ** 2)
        start += label.dim ** 2
    return out


_cache_lock = threading.Lock()


@functools.lru_cache(maxsize=64)
def _build(n: int) -> QftMatrix:
    rows = []
    for label in irrep_list(n):
        vals = evaluate_all(label, n)
        d = label.dim
        # (2n, d, d) -> (d*d, 2n), row-major over (i, j)
        rows.append(np.sqrt(d / (2 * n)) * vals.reshape(2 * n, d * d).T)
    F = np.vstack(rows)
    F.setflags(write=False)
    return QftMatrix(n, F, tuple(fourier_indices(n)))


def build_qft(n: int) -> QftMatrix:
    check_order(n)
    with _cache_lock:
        return _build(n)


def apply_qft(F: QftMatrix, s: StateVector) -> StateVector:
    if s.basis != GROUP:
        raise BasisMismatch("apply_qft expects a group-basis state")
    if s.amplitudes.shape != (F.dim,):
        raise ValueError(f"state has shape {s.amplitudes.shape}, expected ({F.dim},)")
    return StateVector(F.matrix @ s.amplitudes, FOURIER)


def basis_state(g: DihedralElement, n: int) -> StateVector:
    amps = np.zeros(2 * n, dtype=complex)
    amps[g.beta * n + g.alpha] = 1.0
    return StateVector(amps, GROUP)


def real_basis_distribution(n: int, a: int, c: DihedralElement):
    """Strong Fourier sampling probabilities in the real basis of each 2-dim block.

    The coset state for ``c H_a`` is transformed and every ``rho_k`` block is
    conjugated by :data:`REAL_BASIS`; one-dimensional outcomes are unchanged.
    """
    from .hsp import OutcomeDistribution

    check_order(n)
    if not 0 <= a < n:
        raise ValueError(f"slope a={a} outside [0, {n})")
    outcomes = fourier_indices(n)
    probs = []
    for label in irrep_list(n):
        S = coset_sum(label, a, c, n)
        if isinstance(label, TwoDim):
            S = REAL_BASIS @ S @ REAL_BASIS.conj().T
        probs.extend((label.dim / (4 * n)) * np.abs(S.ravel()) ** 2)
    return OutcomeDistribution.from_probabilities(outcomes, probs)

"""Dihedral coset problem samples ``(|x^alpha> + |y x^(a-alpha)>) / sqrt(2)``."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import check_order
from .hsp import CosetState
from .qft import GROUP, StateVector

GROUP_BASIS = "group"
TWO_REGISTER = "two_register"

_AMP = 1.0 / np.sqrt(2)


@dataclass(frozen=True)
class DcpSample:
    """A DCP sample.

    ``a`` and ``alpha`` are bookkeeping for tests and oracles only; anything
    that estimates ``a`` must work from ``state`` alone.
    """

    a: int
    alpha: int
    n: int
    state: StateVector = field(repr=False, compare=False)
    encoding: str = GROUP_BASIS

    def as_two_register(self) -> np.ndarray:
        """Amplitudes indexed ``[bit, j]`` for ``(|0>|alpha> + |1>|a-alpha>)/sqrt(2)``."""
        return two_register_from_group(self.state.amplitudes, self.n)


def _sample_vector(a: int, alpha: int, n: int) -> np.ndarray:
    amps = np.zeros(2 * n, dtype=complex)
    amps[alpha] = _AMP
    amps[n + (a - alpha) % n] = _AMP
    return amps


def make_dcp_sample(a: int, alpha: int, n: int) -> DcpSample:
    check_order(n)
    if not (0 <= a < n and 0 <= alpha < n):
        raise ValueError(f"need 0 <= a, alpha < n; got a={a}, alpha={alpha}, n={n}")
    return DcpSample(a, alpha, n, StateVector(_sample_vector(a, alpha, n), GROUP))


# The group index beta*n + alpha coincides with the row-major index of the
# two-register basis |bit>|j>, so the encodings differ only by a reshape.
def two_register_permutation(n: int) -> np.ndarray:
    """Group-basis position of each two-register basis vector ``|bit>|j>``."""
    bit, j = np.divmod(np.arange(2 * n), n)
    return bit * n + j


def two_register_from_group(amplitudes: np.ndarray, n: int) -> np.ndarray:
    return np.asarray(amplitudes)[two_register_permutation(n)].reshape(2, n)


def group_from_two_register(amplitudes: np.ndarray, n: int) -> np.ndarray:
    out = np.empty(2 * n, dtype=complex)
    out[two_register_permutation(n)] = np.asarray(amplitudes).reshape(2 * n)
    return out


def support_pattern(amplitudes: np.ndarray, n: int, tol: float = 1e-12):
    """Return ``(alpha, alpha_reflection)`` if the vector is a two-term DCP-shaped state.

    Raises ``ValueError`` unless there is exactly one amplitude of modulus
    ``1/sqrt(2)`` in each half of the group basis and nothing else.
    """
    amps = np.asarray(amplitudes)
    if amps.shape != (2 * n,):
        raise ValueError(f"expected a vector of length {2 * n}")
    nz = np.flatnonzero(np.abs(amps) > tol)
    if len(nz) != 2 or not (nz[0] < n <= nz[1]):
        raise ValueError("not a two-amplitude coset state")
    if np.any(np.abs(np.abs(amps[nz]) - _AMP) > 1e-10):
        raise ValueError("coset state amplitudes must have modulus 1/sqrt(2)")
    return int(nz[0]), int(nz[1] - n)


def hsp_to_dcp(cs: CosetState, a: int, n: int) -> DcpSample:
    """Relabel a coset state of ``H_a`` as a DCP sample.

    For ``c = x^alpha`` the sample parameter is ``alpha``; for
    ``c = y x^alpha`` it is ``a - alpha``.  The state vector is unchanged.
    """
    alpha, refl = support_pattern(cs.state.amplitudes, n)
    if (alpha + refl) % n != a % n:
        raise ValueError(f"state is not a coset state of H_{a}")
    expected = (a - cs.c.alpha) % n if cs.c.beta else cs.c.alpha
    if expected != alpha:
        raise ValueError("coset representative does not match the state")
    return DcpSample(a, alpha, n, StateVector(cs.state.amplitudes.copy(), GROUP))


def inner_product(p: DcpSample, q: DcpSample) -> float:
    """``<psi_a^alpha | psi_b^beta>`` from the overlap of the two supports."""
    if p.n != q.n:
        raise ValueError("samples belong to different groups")
    n = p.n
    same_rot = p.alpha == q.alpha
    same_refl = (p.a - p.alpha) % n == (q.a - q.alpha) % n
    value = (same_rot + same_refl) / 2
    assert abs(vector_inner_product(p, q) - value) < 1e-12
    return value


def vector_inner_product(p: DcpSample, q: DcpSample) -> complex:
    return complex(np.vdot(p.state.amplitudes, q.state.amplitudes))

"""Copying DCP samples when the slope is known, and numerical no-cloning witnesses.

Register conventions
--------------------
slope register   dimension n, basis |a>
sample register  dimension 2n, basis |bit>|j> with index bit*n + j (this is
                 also the group index of y^bit x^j)

A DCP sample for ``a`` is ``(|0>|alpha> + |1>|a - alpha>) / sqrt(2)`` on the
sample register.  ``V_a`` fixes the ``bit = 0`` branch and sends
``j -> a - j`` on the ``bit = 1`` branch; ``T_a = (H (x) I) V_a`` then maps the
sample to the basis state ``|0>|alpha>``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .dcp import DcpSample, inner_product, make_dcp_sample, support_pattern
from .group import DihedralElement, check_order, from_index

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def _check_slope(a: int, n: int) -> None:
    check_order(n)
    if not 0 <= a < n:
        raise ValueError(f"slope a={a} outside [0, {n})")


# -- basis copying ---------------------------------------------------------

def copy_permutation(d: int) -> np.ndarray:
    """Permutation unitary ``|x>|y> -> |x>|y + x mod d>`` on two d-level registers.

    On a blank second register this is ``|x>|0> -> |x>|x>``; for d a power
    of two it plays the role of the bitwise CNOT ladder.
    """
    x, y = np.divmod(np.arange(d * d), d)
    P = np.zeros((d * d, d * d))
    P[x * d + (x + y) % d, np.arange(d * d)] = 1.0
    return P


def _copy_axes(state: np.ndarray, src: int, dst: int) -> np.ndarray:
    """Apply ``|x>|y> -> |x>|y + x>`` between two tensor axes."""
    d = state.shape[src]
    if state.shape[dst] != d:
        raise ValueError("copy registers must have equal dimension")
    moved = np.moveaxis(state, (src, dst), (0, 1))
    x = np.arange(d)[:, None]
    # new[x, z] = old[x, z - x]
    out = moved[x, (np.arange(d)[None, :] - x) % d]
    return np.moveaxis(out, (0, 1), (src, dst))


def copy_basis_state(i: int, d: int) -> np.ndarray:
    """``|i>|0> -> |i>|i>``, returned as a ``(d, d)`` amplitude array."""
    if not 0 <= i < d:
        raise ValueError(f"basis index {i} outside [0, {d})")
    state = np.zeros((d, d), dtype=complex)
    state[i, 0] = 1.0
    return _copy_axes(state, 0, 1)


def copy_into_blank(vector: np.ndarray) -> np.ndarray:
    """Run the basis copier on ``vector (x) |0>`` (linear extension)."""
    v = np.asarray(vector, dtype=complex)
    state = np.zeros((len(v), len(v)), dtype=complex)
    state[:, 0] = v
    return _copy_axes(state, 0, 1)


# -- V, U_0 and T ----------------------------------------------------------

def _v_index(a: int, n: int) -> np.ndarray:
    """Image index of each sample-register basis vector under ``V_a``."""
    idx = np.arange(2 * n)
    idx[n:] = n + (a - np.arange(n)) % n
    return idx


def build_V(a: int, n: int) -> np.ndarray:
    """Block of ``V`` acting on the sample register while the slope register holds ``a``."""
    _check_slope(a, n)
    V = np.zeros((2 * n, 2 * n), dtype=complex)
    V[_v_index(a, n), np.arange(2 * n)] = 1.0
    return V


def build_U0(n: int) -> np.ndarray:
    """Hadamard on the bit, identity on ``j``."""
    check_order(n)
    return np.kron(HADAMARD, np.eye(n))


def build_T(a: int, n: int) -> np.ndarray:
    """``T_a = U_0 V_a``, with ``T_a |psi_a^alpha> = |0>|alpha>``."""
    return build_U0(n) @ build_V(a, n)


def controlled(blocks: Sequence[np.ndarray]) -> np.ndarray:
    """Dense ``sum_a |a><a| (x) blocks[a]`` for small checks."""
    n = len(blocks)
    d = blocks[0].shape[0]
    out = np.zeros((n * d, n * d), dtype=complex)
    for a, B in enumerate(blocks):
        out[a * d:(a + 1) * d, a * d:(a + 1) * d] = B
    return out


def build_controlled_T(n: int) -> np.ndarray:
    """Full ``T`` on slope (x) sample, dimension ``2 n^2``."""
    return controlled([build_T(a, n) for a in range(n)])


# -- sparse register states -----------------------------------------------

@dataclass
class RegisterState:
    """Sparse amplitudes over a product of registers.

    ``index[t]`` is the multi-index of the ``t``-th stored basis vector.
    Every gate in the cloning circuit is a basis permutation or a Hadamard
    on one bit, so the support stays tiny and cancellations are exact zeros.
    """

    dims: tuple[int, ...]
    index: np.ndarray
    amps: np.ndarray

    @classmethod
    def product(cls, vectors: Sequence[np.ndarray]) -> "RegisterState":
        supports = [np.flatnonzero(np.asarray(v)) for v in vectors]
        grids = np.meshgrid(*supports, indexing="ij")
        index = np.stack([g.ravel() for g in grids], axis=1)
        amps = np.ones(len(index), dtype=complex)
        for r, v in enumerate(vectors):
            amps = amps * np.asarray(v, dtype=complex)[index[:, r]]
        return cls(tuple(len(v) for v in vectors), index, amps)

    def dense(self) -> np.ndarray:
        out = np.zeros(self.dims, dtype=complex)
        np.add.at(out, tuple(self.index.T), self.amps)
        return out

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def overlap(self, vectors: Sequence[Optional[np.ndarray]]) -> np.ndarray:
        """Contract with ``conj(vectors[r])`` on every register where one is given.

        Returns the remaining amplitudes as a dense array over the registers
        left open (``None`` entries).
        """
        weights = self.amps.copy()
        open_axes = []
        for r, v in enumerate(vectors):
            if v is None:
                open_axes.append(r)
            else:
                weights = weights * np.conj(np.asarray(v, dtype=complex))[self.index[:, r]]
        if not open_axes:
            return np.asarray(weights.sum())
        out = np.zeros(tuple(self.dims[r] for r in open_axes), dtype=complex)
        np.add.at(out, tuple(self.index[:, r] for r in open_axes), weights)
        return out

    def marginal(self, axes: Sequence[int]) -> np.ndarray:
        """Born probabilities of measuring the given registers."""
        out = np.zeros(tuple(self.dims[r] for r in axes))
        np.add.at(out, tuple(self.index[:, r] for r in axes), np.abs(self.amps) ** 2)
        return out

    def _merged(self, index: np.ndarray, amps: np.ndarray) -> "RegisterState":
        flat = np.ravel_multi_index(tuple(index.T), self.dims)
        uniq, inv = np.unique(flat, return_inverse=True)
        summed = np.zeros(len(uniq), dtype=complex)
        np.add.at(summed, inv, amps)
        keep = summed != 0
        new_index = np.stack(np.unravel_index(uniq[keep], self.dims), axis=1)
        return RegisterState(self.dims, new_index, summed[keep])

    def copy_register(self, src: int, dst: int) -> "RegisterState":
        """``|x>|y> -> |x>|y + x>`` between two registers of equal dimension."""
        d = self.dims[src]
        if self.dims[dst] != d:
            raise ValueError("copy registers must have equal dimension")
        index = self.index.copy()
        index[:, dst] = (index[:, dst] + index[:, src]) % d
        return RegisterState(self.dims, index, self.amps.copy())

    def controlled_T(self, slope: int, sample: int, inverse: bool = False) -> "RegisterState":
        n = self.dims[slope]
        if self.dims[sample] != 2 * n:
            raise ValueError("sample register must have dimension 2n")
        index = self.index.copy()
        amps = self.amps
        if not inverse:
            index = _v_apply(index, slope, sample, n)
            index, amps = _hadamard_bit(index, amps, sample, n)
            return self._merged(index, amps)
        index, amps = _hadamard_bit(index, amps, sample, n)
        return self._merged(_v_apply(index, slope, sample, n), amps)

    def permute(self, order: Sequence[int]) -> "RegisterState":
        order = list(order)
        return RegisterState(tuple(self.dims[r] for r in order),
                             self.index[:, order].copy(), self.amps.copy())


def _v_apply(index: np.ndarray, slope: int, sample: int, n: int) -> np.ndarray:
    index = index.copy()
    s = index[:, sample]
    refl = s >= n
    index[refl, sample] = n + (index[refl, slope] - (s[refl] - n)) % n
    return index


def _hadamard_bit(index: np.ndarray, amps: np.ndarray, sample: int, n: int):
    bit, j = np.divmod(index[:, sample], n)
    sign = np.where(bit == 1, -1.0, 1.0)
    to0 = index.copy()
    to0[:, sample] = j
    to1 = index.copy()
    to1[:, sample] = n + j
    h = 1.0 / np.sqrt(2)
    return (np.concatenate([to0, to1]),
            np.concatenate([amps * h, amps * (h * sign)]))


# -- cloning with the slope in a register ----------------------------------

SLOPE, SAMPLE, COPY, SLOPE_COPY = 0, 1, 2, 3


def _basis(i: int, d: int) -> np.ndarray:
    e = np.zeros(d, dtype=complex)
    e[i] = 1.0
    return e


def clone_known_a(a: int, sample: DcpSample, validate: bool = True) -> RegisterState:
    """Copy a DCP sample given ``|a>`` in a register.

    Runs ``T`` on (slope, sample), copies both basis registers into blanks,
    runs ``T^-1`` on both pairs and swaps the last two registers.  The result
    is over registers (slope, sample, copy, slope copy) of dimensions
    ``(n, 2n, 2n, n)`` and equals ``|a>|psi>|psi>|a>`` when ``a`` is the
    sample's slope.

    With ``validate=False`` the sample is not checked against ``a``, which is
    how the mechanism is run with a wrong slope.
    """
    n = sample.n
    _check_slope(a, n)
    psi = sample.state.amplitudes
    if validate:
        alpha, refl = support_pattern(psi, n)
        if (alpha + refl) % n != a:
            raise ValueError(f"sample is not a DCP sample for a={a}")
    # registers here: slope, sample, slope copy, sample copy
    state = RegisterState.product([_basis(a, n), psi, _basis(0, n), _basis(0, 2 * n)])
    state = state.controlled_T(0, 1)
    state = state.copy_register(0, 2)
    state = state.copy_register(1, 3)
    state = state.controlled_T(0, 1, inverse=True)
    state = state.controlled_T(2, 3, inverse=True)
    return state.permute([0, 1, 3, 2])


def clone_known_a_dense(a: int, sample: DcpSample) -> np.ndarray:
    """Same circuit as :func:`clone_known_a` with dense matrices (small n only)."""
    n = sample.n
    _check_slope(a, n)
    T = build_controlled_T(n)
    Ti = T.conj().T
    # rows: (slope, sample); columns: (slope copy, sample copy)
    state = np.zeros((2 * n * n, 2 * n * n), dtype=complex)
    state[:, 0] = np.kron(_basis(a, n), sample.state.amplitudes)
    state = T @ state
    state = state.reshape(n, 2 * n, n, 2 * n)
    state = _copy_axes(state, 0, 2)
    state = _copy_axes(state, 1, 3).reshape(2 * n * n, 2 * n * n)
    state = Ti @ state @ Ti.T
    return np.transpose(state.reshape(n, 2 * n, n, 2 * n), (0, 1, 3, 2))


def clone_fidelity(a: int, sample: DcpSample, output: RegisterState) -> float:
    """``|<a, psi, psi, a | output>|^2``."""
    n = sample.n
    psi = sample.state.amplitudes
    ov = output.overlap([_basis(a, n), psi, psi, _basis(a, n)])
    return float(abs(ov) ** 2)


def pair_fidelity(output: RegisterState, psi: np.ndarray) -> float:
    """Weight of the output on ``psi (x) psi`` in the sample and copy registers."""
    ov = output.overlap([None, psi, psi, None])
    return float(np.sum(np.abs(ov) ** 2))


@functools.lru_cache(maxsize=4096)
def clone_pair_distribution(a: int, alpha: int, n: int) -> np.ndarray:
    """Born probabilities of measuring sample and copy after :func:`clone_known_a`.

    Shape ``(2n, 2n)``, indexed by group indices of the two outcomes.
    """
    probs = clone_known_a(a, make_dcp_sample(a, alpha, n)).marginal([SAMPLE, COPY])
    probs.setflags(write=False)
    return probs


def recover_a_from_clone_pairs(pairs: Sequence[tuple[DihedralElement, DihedralElement]],
                               n: int) -> Optional[int]:
    """Slope from the first pair holding one rotation and one reflection.

    Returns ``None`` when every pair has matching reflection bits.
    """
    for g, h in pairs:
        if g.beta != h.beta:
            return (g.alpha + h.alpha) % n
    return None


def measure_clone_pairs(a: int, n: int, count: int, rng: np.random.Generator):
    """Clone ``count`` fresh samples (uniform alpha) and measure both copies."""
    alphas = rng.integers(n, size=count)
    us = rng.random(count)
    flat = np.empty(count, dtype=np.int64)
    for alpha in np.unique(alphas):
        sel = alphas == alpha
        probs = clone_pair_distribution(a, int(alpha), n).ravel()
        cdf = np.cumsum(probs)
        flat[sel] = kernels.inverse_cdf(cdf / cdf[-1], us[sel])
    i, j = np.divmod(flat, 2 * n)
    return [(from_index(int(p), n), from_index(int(q), n)) for p, q in zip(i, j)]


def clone_recovery_rate(a: int, n: int, pairs: int, trials: int, seed: int,
                        threads: int = 1) -> float:
    """Monte Carlo success rate of clone-then-measure slope recovery."""
    _check_slope(a, n)

    def trial(t: int) -> bool:
        rng = np.random.default_rng([seed, t])
        return recover_a_from_clone_pairs(measure_clone_pairs(a, n, pairs, rng), n) == a

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        for alpha in range(n):  # warm the cache before fanning out
            clone_pair_distribution(a, alpha, n)
        with ThreadPoolExecutor(threads) as pool:
            hits = list(pool.map(trial, range(trials)))
    else:
        hits = [trial(t) for t in range(trials)]
    return sum(hits) / trials


# -- no-cloning ------------------------------------------------------------

@dataclass
class WitnessReport:
    n: int
    samples: tuple
    inner_product: float
    left: float
    right_bound: float
    ancilla_overlap_bound: float
    contradiction: bool


def no_cloning_witness(n: int, p: Optional[DcpSample] = None,
                       q: Optional[DcpSample] = None) -> WitnessReport:
    """Compare both sides of the inner-product identity a cloner would force.

    A unitary copying both ``p`` and ``q`` needs
    ``<p|q> = <p|q>^2 <M_p|M_q>``.  With ``|<M_p|M_q>| <= 1`` the right side
    is at most ``|<p|q>|^2``, so any overlap strictly between 0 and 1 rules
    such a unitary out.  The default pair is ``a=1, alpha=0`` against
    ``b=2, beta=1``, which share the reflection ``y x^1``.
    """
    if p is None or q is None:
        if n < 3:
            raise ValueError("the default witness needs n >= 3")
        p, q = make_dcp_sample(1, 0, n), make_dcp_sample(2, 1, n)
    ip = inner_product(p, q)
    ancilla_bound = 1.0
    right = ip ** 2 * ancilla_bound
    return WitnessReport(n, ((p.a, p.alpha), (q.a, q.alpha)), float(ip), float(ip),
                         float(right), ancilla_bound, bool(ip > right))


@dataclass
class RefuterReport:
    n: int
    trials: int
    min_fidelity: float
    worst: tuple
    unitarity_deviation: float


def unitary_cloner_refuter(candidate: np.ndarray, n: int, trials: int,
                           rng: np.random.Generator, ancilla_dim: int = 1) -> RefuterReport:
    """Worst copying fidelity of ``candidate`` over random DCP samples.

    ``candidate`` acts on sample (x) copy (x) ancilla, dimension
    ``(2n)^2 * ancilla_dim``.  Input is ``psi (x) |0> (x) |0>``; fidelity is
    the squared norm of the output's projection onto ``psi (x) psi (x) anything``.
    """
    check_order(n)
    dim = (2 * n) ** 2 * ancilla_dim
    U = np.asarray(candidate, dtype=complex)
    if U.shape != (dim, dim):
        raise ValueError(f"candidate has shape {U.shape}, expected {(dim, dim)}")
    unit_dev = float(np.max(np.abs(U @ U.conj().T - np.eye(dim))))
    worst, best_seen = None, np.inf
    for _ in range(trials):
        a, alpha = (int(v) for v in rng.integers(n, size=2))
        psi = make_dcp_sample(a, alpha, n).state.amplitudes
        inp = np.zeros((2 * n, 2 * n, ancilla_dim), dtype=complex)
        inp[:, 0, 0] = psi
        out = (U @ inp.ravel()).reshape(2 * n, 2 * n, ancilla_dim)
        overlap = np.einsum("s,t,stm->m", psi.conj(), psi.conj(), out)
        fid = float(np.sum(np.abs(overlap) ** 2))
        if fid < best_seen:
            best_seen, worst = fid, (a, alpha)
    return RefuterReport(n, trials, float(best_seen), worst, unit_dev)


def known_slope_cloner(a: int, n: int) -> np.ndarray:
    """Unitary on sample (x) copy that clones DCP samples for one fixed slope.

    ``(T_a^-1 (x) T_a^-1) . copy . (T_a (x) I)``: map the sample to
    ``|0>|alpha>``, copy that basis state, map both back.
    """
    T = build_T(a, n)
    Ti = T.conj().T
    return np.kron(Ti, Ti) @ copy_permutation(2 * n) @ np.kron(T, np.eye(2 * n))


def identity_cloner(n: int) -> np.ndarray:
    return np.eye((2 * n) ** 2, dtype=complex)


def basis_copy_cloner(n: int) -> np.ndarray:
    return copy_permutation(2 * n).astype(complex)

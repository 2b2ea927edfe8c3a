"""Arithmetic in the dihedral group D_n of order 2n.

Elements are kept in the canonical form ``y^beta x^alpha`` with
``0 <= alpha < n``.  For state-vector addressing an element maps to the
index ``beta * n + alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True, order=True)
class DihedralElement:
    """The element ``y^beta x^alpha``.

    Ordering is lexicographic on ``(beta, alpha)``, which is the order used
    to pick coset representatives.
    """

    beta: int
    alpha: int

    def __str__(self) -> str:
        if self.beta == 0:
            return "e" if self.alpha == 0 else f"x^{self.alpha}"
        return "y" if self.alpha == 0 else f"y x^{self.alpha}"


def check_order(n: int) -> int:
    if not isinstance(n, (int,)) or isinstance(n, bool) or n < 1:
        raise ValueError(f"group order parameter must be a positive integer, got {n!r}")
    return n


def element(beta: int, alpha: int, n: int) -> DihedralElement:
    """Build ``y^beta x^alpha`` reduced to canonical form."""
    return DihedralElement(beta % 2, alpha % n)


def identity() -> DihedralElement:
    return DihedralElement(0, 0)


def rotation(alpha: int, n: int) -> DihedralElement:
    return DihedralElement(0, alpha % n)


def reflection(alpha: int, n: int) -> DihedralElement:
    """The reflection ``y x^alpha``."""
    return DihedralElement(1, alpha % n)


def multiply(g: DihedralElement, h: DihedralElement, n: int) -> DihedralElement:
    # x^a y = y x^-a, so (y^b x^a)(y x^c) = y^(b+1) x^(c-a)
    if h.beta == 0:
        return DihedralElement(g.beta, (g.alpha + h.alpha) % n)
    return DihedralElement(g.beta ^ 1, (h.alpha - g.alpha) % n)


def inverse(g: DihedralElement, n: int) -> DihedralElement:
    if g.beta == 1:
        return g
    return DihedralElement(0, (-g.alpha) % n)


def power(g: DihedralElement, e: int, n: int) -> DihedralElement:
    if g.beta == 1:
        return g if e % 2 else identity()
    return DihedralElement(0, (g.alpha * e) % n)


def index(g: DihedralElement, n: int) -> int:
    return g.beta * n + g.alpha


def from_index(i: int, n: int) -> DihedralElement:
    if not 0 <= i < 2 * n:
        raise IndexError(f"index {i} out of range for D_{n}")
    return DihedralElement(i // n, i % n)


def elements(n: int) -> Iterator[DihedralElement]:
    """All 2n elements in index order."""
    for i in range(2 * n):
        yield from_index(i, n)


@dataclass(frozen=True)
class ReflectionSubgroup:
    """The order-two subgroup ``H_a = <y x^a>``."""

    a: int
    n: int

    def __post_init__(self):
        check_order(self.n)
        if not 0 <= self.a < self.n:
            raise ValueError(f"slope a={self.a} outside [0, {self.n})")

    @property
    def generator(self) -> DihedralElement:
        return DihedralElement(1, self.a)

    def elements(self) -> tuple[DihedralElement, DihedralElement]:
        return (identity(), self.generator)

    def __contains__(self, g: DihedralElement) -> bool:
        return g in self.elements()


def left_coset(g: DihedralElement, H: ReflectionSubgroup, n: int) -> frozenset[DihedralElement]:
    """The left coset ``gH = {g, g y x^a}``."""
    return frozenset(multiply(g, h, n) for h in H.elements())


def coset_representative(g: DihedralElement, H: ReflectionSubgroup, n: int) -> DihedralElement:
    """Lexicographically minimal element of ``gH``.

    Every coset of a reflection subgroup holds exactly one rotation, so the
    representative is always of the form ``x^alpha``.
    """
    return min(left_coset(g, H, n))


def left_cosets(H: ReflectionSubgroup, n: int) -> list[frozenset[DihedralElement]]:
    seen = set()
    out = []
    for g in elements(n):
        if g in seen:
            continue
        coset = left_coset(g, H, n)
        seen |= coset
        out.append(coset)
    return out


def cayley_table(n: int):
    """Multiplication table on element indices as an ``(2n, 2n)`` int array."""
    import numpy as np

    beta = np.repeat([0, 1], n)
    alpha = np.tile(np.arange(n), 2)
    b_g, b_h = beta[:, None], beta[None, :]
    a_g, a_h = alpha[:, None], alpha[None, :]
    rot = np.where(b_h == 0, (a_g + a_h) % n, (a_h - a_g) % n)
    return (b_g ^ b_h) * n + rot

"""Brute-force invariant dimensions of graded tensor powers.

This is the independent check on the Macdonald formula: the symmetric group
acts on ``V^{(x)m}`` by permuting tensor factors with Koszul signs, and the
invariants are measured as the rank of the averaging projector, computed in
exact rational arithmetic.  No character-theoretic shortcut is taken.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .linalg import rank
from .permgroup import Permutation, compose, symmetric_group
from .series import GradedDimension, symmetric_power_dimension

DEFAULT_MAX_CELLS = 10**6
MAX_POWER = 6


class SizeBoundExceeded(ValueError):
    pass


def max_cells(default: int = DEFAULT_MAX_CELLS) -> int:
    """Size cap, raised by the environment variable SYMORB_MAX_CELLS."""
    env = os.environ.get("SYMORB_MAX_CELLS")
    return max(default, int(env)) if env else default


@dataclass(frozen=True)
class SignedPermutationMatrix:
    """``entries[i] = (j, s)`` means basis vector i maps to ``s`` times basis vector j."""

    dimension: int
    entries: tuple[tuple[int, int], ...]

    def __matmul__(self, other: SignedPermutationMatrix) -> SignedPermutationMatrix:
        # (self @ other) applies other first
        if self.dimension != other.dimension:
            raise ValueError("dimension mismatch")
        out = []
        for j, s in other.entries:
            k, t = self.entries[j]
            out.append((k, s * t))
        return SignedPermutationMatrix(self.dimension, tuple(out))

    def is_identity(self) -> bool:
        return all(j == i and s == 1 for i, (j, s) in enumerate(self.entries))

    def dense(self) -> list[list[int]]:
        m = [[0] * self.dimension for _ in range(self.dimension)]
        for i, (j, s) in enumerate(self.entries):
            m[j][i] = s
        return m


def _words(degrees: list[int], m: int) -> list[tuple[int, ...]]:
    return list(product(range(len(degrees)), repeat=m))


def _check_size(phi: GradedDimension, m: int) -> None:
    cells = phi.total() ** m
    if cells > max_cells():
        raise SizeBoundExceeded(f"tensor power has {cells} basis words, cap is {max_cells()}")


def build_koszul_action(
    phi: GradedDimension, m: int, sigma: Permutation, basis_order: list[int] | None = None
) -> SignedPermutationMatrix:
    """Matrix of sigma acting on V^{(x)m} by moving tensor factor i to slot sigma(i).

    The sign is the parity of the number of odd-odd pairs of factors whose
    relative order sigma reverses.  ``basis_order`` optionally permutes the
    homogeneous basis of V (used to check basis independence).
    """
    if sigma.n != m:
        raise ValueError(f"permutation of degree {sigma.n} acting on a {m}-fold power")
    _check_size(phi, m)
    degrees = phi.degrees()
    if basis_order is not None:
        degrees = [degrees[i] for i in basis_order]
    words = _words(degrees, m)
    index = {w: i for i, w in enumerate(words)}
    entries = []
    s = sigma.images
    for w in words:
        new = [0] * m
        for i, letter in enumerate(w):
            new[s[i]] = letter
        odd = [i for i in range(m) if degrees[w[i]] % 2]
        inversions = sum(1 for a in range(len(odd)) for b in range(a + 1, len(odd)) if s[odd[a]] > s[odd[b]])
        entries.append((index[tuple(new)], -1 if inversions % 2 else 1))
    return SignedPermutationMatrix(len(words), tuple(entries))


def averaging_projector(phi: GradedDimension, m: int, basis_order: list[int] | None = None) -> dict:
    """The projector (1/m!) sum_sigma action(sigma) as sparse rows ``{row: {col: Fraction}}``."""
    _check_size(phi, m)
    if m > MAX_POWER:
        raise SizeBoundExceeded(f"power {m} exceeds the factorial enumeration bound {MAX_POWER}")
    if m == 0:
        # V^{(x)0} is the ground field
        return {0: {0: Fraction(1)}}
    dim = phi.total() ** m
    acc: dict[int, dict[int, int]] = {}
    for sigma in symmetric_group(m):
        mat = build_koszul_action(phi, m, sigma, basis_order)
        for col, (row, s) in enumerate(mat.entries):
            r = acc.setdefault(row, {})
            r[col] = r.get(col, 0) + s
    scale = Fraction(1, math.factorial(m))
    proj = {}
    for row in range(dim):
        entries = {c: v * scale for c, v in acc.get(row, {}).items() if v}
        if entries:
            proj[row] = entries
    return proj


def invariant_dimension(phi: GradedDimension, m: int, basis_order: list[int] | None = None) -> GradedDimension:
    """Graded dimension of the S_m-invariants of V^{(x)m}, as projector rank per degree."""
    proj = averaging_projector(phi, m, basis_order)
    degrees = phi.degrees()
    if basis_order is not None:
        degrees = [degrees[i] for i in basis_order]
    words = _words(degrees, m)
    word_degree = [sum(degrees[a] for a in w) for w in words]
    blocks: dict[int, list[dict]] = {}
    for row, entries in proj.items():
        blocks.setdefault(word_degree[row], []).append(entries)
    dims = {deg: rank(rows) for deg, rows in blocks.items()}
    top = max((k for k, v in dims.items() if v), default=-1)
    return GradedDimension(tuple(dims.get(i, 0) for i in range(top + 1)))


def projector_is_idempotent(proj: dict) -> bool:
    square: dict = {}
    for i, row in proj.items():
        acc: dict = {}
        for k, a in row.items():
            for j, b in proj.get(k, {}).items():
                acc[j] = acc.get(j, 0) + a * b
        acc = {j: v for j, v in acc.items() if v}
        if acc:
            square[i] = acc
    return square == proj


def action_is_homomorphism(phi: GradedDimension, m: int) -> bool:
    """action(sigma * tau) == action(tau) @ action(sigma) for all pairs in S_m."""
    group = symmetric_group(m)
    mats = {g: build_koszul_action(phi, m, g) for g in group}
    return all(mats[compose(s, t)] == mats[t] @ mats[s] for s in group for t in group)


def verify_macdonald(phi: GradedDimension, max_m: int) -> dict:
    """Compare projector ranks with the symmetric-power formula for m = 0..max_m."""
    cases = []
    for m in range(max_m + 1):
        got = invariant_dimension(phi, m)
        expected = symmetric_power_dimension(phi, m)
        for deg in range(max(len(got.betti), len(expected.betti))):
            cases.append(
                {"m": m, "degree": deg, "expected": expected[deg], "got": got[deg], "pass": expected[deg] == got[deg]}
            )
    return {"cases": cases, "pass": all(c["pass"] for c in cases)}

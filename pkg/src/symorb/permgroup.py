"""Permutation and partition combinatorics of the symmetric group.

Permutations are stored 0-based internally (``images[i]`` is the image of
``i``) and serialized 1-based as comma-separated image words ("2,1,3").

Composition is a right action: ``p * q`` applies ``p`` first, then ``q``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1:
            raise ValueError("permutation degree must be at least 1")
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"not a bijection of {{1..{n}}}: {self.word()}")

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        # skips the bijection check; callers guarantee it
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Parse a 1-based image word such as ``"2,1,3"``."""
        try:
            images = tuple(int(tok) - 1 for tok in text.split(","))
        except ValueError:
            raise ValueError(f"malformed permutation word: {text!r}") from None
        return cls(images)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from 1-based disjoint cycles, e.g. ``from_cycles(3, [(1, 2)])``."""
        images = list(range(n))
        for cyc in cycles:
            for k, a in enumerate(cyc):
                images[a - 1] = cyc[(k + 1) % len(cyc)] - 1
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def sign(self) -> int:
        return tuple_sign(self.images)

    def word(self) -> str:
        return ",".join(str(i + 1) for i in self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles (0-based), fixed points included, each starting at its minimum."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)

    def __str__(self) -> str:
        return self.word()


def tuple_sign(images) -> int:
    """Sign of a permutation of range(len(images)) given by its images."""
    seen = [False] * len(images)
    s = 1
    for i in range(len(images)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = images[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p * q``, the permutation ``i -> q(p(i))``."""
    if p.n != q.n:
        raise DegreeMismatch(f"cannot compose degrees {p.n} and {q.n}")
    qi = q.images
    return Permutation._trusted(tuple(qi[j] for j in p.images))


def conjugate(h: Permutation, tau: Permutation) -> Permutation:
    """``h^-1 * tau * h`` under the composition convention of :func:`compose`."""
    return compose(compose(h.inverse(), tau), h)


def symmetric_group(n: int) -> list[Permutation]:
    """All of S_n in lexicographic order of image words."""
    return list(_symmetric_group(n))


@lru_cache(maxsize=None)
def _symmetric_group(n: int) -> tuple[Permutation, ...]:
    return tuple(Permutation._trusted(p) for p in itertools.permutations(range(n)))


@dataclass(frozen=True, slots=True)
class CycleType:
    """A partition of ``n`` as (part, multiplicity) pairs, largest part first."""

    counts: tuple[tuple[int, int], ...]
    n: int

    def __post_init__(self):
        if any(j < 1 or m < 0 for j, m in self.counts):
            raise ValueError(f"invalid cycle type {self.counts}")
        if sum(j * m for j, m in self.counts) != self.n:
            raise ValueError(f"cycle type {self.counts} does not sum to {self.n}")

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> CycleType:
        parts = list(parts)
        mult: dict[int, int] = {}
        for j in parts:
            mult[j] = mult.get(j, 0) + 1
        counts = tuple(sorted(((j, m) for j, m in mult.items() if m), reverse=True))
        return cls(counts, sum(parts))

    @classmethod
    def parse(cls, text: str) -> CycleType:
        """Parse ``"2^1 1^1"``; a bare ``"3"`` means ``3^1``."""
        parts: list[int] = []
        for tok in text.split():
            j, _, m = tok.partition("^")
            parts.extend([int(j)] * (int(m) if m else 1))
        return cls.from_parts(parts)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def parts(self) -> tuple[int, ...]:
        return tuple(j for j, m in self.counts for _ in range(m))

    def num_cycles(self) -> int:
        return sum(m for _, m in self.counts)

    def representative(self) -> Permutation:
        """A permutation of this type with cycles on consecutive blocks."""
        cycles = []
        start = 1
        for j in self.parts():
            cycles.append(tuple(range(start, start + j)))
            start += j
        return Permutation.from_cycles(self.n, cycles)

    def __str__(self) -> str:
        return " ".join(f"{j}^{m}" for j, m in self.counts)


def cycle_type(p: Permutation) -> CycleType:
    return CycleType.from_parts(len(c) for c in p.cycles())


def _partitions_desc(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield (first,) + rest


def partitions(n: int) -> list[CycleType]:
    """All partitions of ``n`` in decreasing-part lexicographic order.

    >>> [str(p) for p in partitions(3)]
    ['3^1', '2^1 1^1', '1^3']
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [CycleType.from_parts(p) for p in _partitions_desc(n, n)]


def centralizer_order(ct: CycleType) -> int:
    out = 1
    for j, m in ct.counts:
        out *= j**m * math.factorial(m)
    return out


@dataclass(frozen=True, slots=True)
class OrbitStructure:
    """Orbits of a subgroup of S_n on the points, indexed by increasing minimum element."""

    orbit_assignment: tuple[int, ...]
    orbit_count: int
    orbit_sizes: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.orbit_assignment)

    def orbits(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.orbit_count)]
        for i, o in enumerate(self.orbit_assignment):
            out[o].append(i)
        return [tuple(o) for o in out]

    def coarsens(self, finer: OrbitStructure) -> bool:
        """True when each orbit of ``finer`` lies inside one orbit of ``self``."""
        return self.coarsening_map(finer, check=False) is not None

    def coarsening_map(self, finer: OrbitStructure, check: bool = True) -> tuple[int, ...] | None:
        """Index of the orbit of ``self`` containing each orbit of ``finer``."""
        if finer.n != self.n:
            raise DegreeMismatch(f"orbit structures on {finer.n} and {self.n} points")
        target: list[int | None] = [None] * finer.orbit_count
        for i, o in enumerate(finer.orbit_assignment):
            t = self.orbit_assignment[i]
            if target[o] is None:
                target[o] = t
            elif target[o] != t:
                if check:
                    raise ValueError("target orbits do not coarsen source orbits")
                return None
        return tuple(target)  # type: ignore[arg-type]


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def orbit_structure(generators: Sequence[Permutation], n: int | None = None) -> OrbitStructure:
    """Orbits of the subgroup generated by ``generators`` acting on the points.

    An empty generator list is the trivial group; pass ``n`` in that case.
    """
    if not generators:
        if n is None:
            raise ValueError("degree n required for the trivial group")
    else:
        degrees = {g.n for g in generators}
        if len(degrees) != 1 or (n is not None and n not in degrees):
            raise DegreeMismatch(f"generators of mixed degree {sorted(degrees)}")
        n = degrees.pop()
    parent = list(range(n))
    for g in generators:
        for i, j in enumerate(g.images):
            ri, rj = _find(parent, i), _find(parent, j)
            if ri != rj:
                if ri < rj:
                    parent[rj] = ri
                else:
                    parent[ri] = rj
    # roots are orbit minima, so numbering roots in order of first appearance is canonical
    index: dict[int, int] = {}
    assignment = []
    for i in range(n):
        r = _find(parent, i)
        if r not in index:
            index[r] = len(index)
        assignment.append(index[r])
    sizes = [0] * len(index)
    for o in assignment:
        sizes[o] += 1
    return OrbitStructure(tuple(assignment), len(index), tuple(sizes))


def orbit_count(*generators: Permutation) -> int:
    """Number of orbits of <generators>; same value as orbit_structure, without building it."""
    if len(generators) == 1:
        return _cycle_count(generators[0])
    if not generators or len({g.n for g in generators}) != 1:
        return orbit_structure(generators).orbit_count
    n = generators[0].n
    parent = list(range(n))
    count = n
    for g in generators:
        for i, j in enumerate(g.images):
            ri, rj = _find(parent, i), _find(parent, j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
                count -= 1
    return count


@lru_cache(maxsize=None)
def _cycle_count(p: Permutation) -> int:
    return len(p.cycles())


def excess_euler_degree(tau: Permutation, sigma: Permutation, d: int) -> int:
    """Degree of the excess intersection Euler class of the fixed loci of tau and sigma in M^n."""
    if tau.n != sigma.n:
        raise DegreeMismatch(f"degrees {tau.n} and {sigma.n}")
    n = tau.n
    value = d * (n + orbit_count(tau, sigma) - orbit_count(tau) - orbit_count(sigma))
    assert value >= 0
    return value


def chen_ruan_degree(tau: Permutation, sigma: Permutation, d: int) -> int:
    """Degree of the Chen-Ruan obstruction class; ``d`` must be even."""
    if tau.n != sigma.n:
        raise DegreeMismatch(f"degrees {tau.n} and {sigma.n}")
    if d % 2:
        raise ValueError(f"Chen-Ruan degree needs even dimension, got d={d}")
    n = tau.n
    return (d // 2) * (
        n
        + 2 * orbit_count(tau, sigma)
        - orbit_count(tau)
        - orbit_count(sigma)
        - orbit_count(compose(tau, sigma))
    )


def conjugacy_pair_representatives(n: int) -> list[tuple[Permutation, Permutation]]:
    """One pair (tau, sigma) per orbit of S_n x S_n under simultaneous conjugation.

    tau runs over the cycle-type representatives in partition order; sigma over
    the minimal elements of the conjugation orbits of the centralizer of tau.
    """
    group = symmetric_group(n)
    out = []
    for ct in partitions(n):
        tau = ct.representative()
        cent = [h for h in group if compose(h, tau) == compose(tau, h)]
        seen: set[Permutation] = set()
        for sigma in group:
            if sigma in seen:
                continue
            orbit = {conjugate(h, sigma) for h in cent}
            seen |= orbit
            out.append((tau, min(orbit, key=lambda p: p.images)))
    return out


def excess_rank(tau: Permutation, sigma: Permutation) -> int:
    """n + O(tau, sigma) - O(tau) - O(sigma), the excess rank in units of d."""
    return tau.n + orbit_count(tau, sigma) - orbit_count(tau) - orbit_count(sigma)


def rank_cocycle_sides(g: Permutation, h: Permutation, k: Permutation) -> tuple[int, int]:
    """Both groupings of the excess rank accumulated by (g h) k and g (h k).

    Each side adds the ranks of the two pairwise products and the rank of the
    pushforward between the triple fixed locus and the intermediate one.
    """
    gh, hk = compose(g, h), compose(h, k)
    o_ghk = orbit_count(g, h, k)
    left = excess_rank(g, h) + excess_rank(gh, k) + (orbit_count(gh) + o_ghk - orbit_count(g, h) - orbit_count(gh, k))
    right = excess_rank(h, k) + excess_rank(g, hk) + (orbit_count(hk) + o_ghk - orbit_count(h, k) - orbit_count(g, hk))
    return left, right

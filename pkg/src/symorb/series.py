"""Graded dimensions and truncated generating functions in (q, y).

A series coefficient is a dense tuple of integers in ascending powers of y,
with trailing zeros stripped (the zero polynomial is ``()``).  All arithmetic
is exact.

Truncation: a product over ``j > 0`` of factors in ``q**j`` is finite at order
``N`` because factors with ``j > N`` are ``1 + O(q**(N+1))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .permgroup import partitions

Poly = tuple[int, ...]


def _trim(coeffs: Iterable[int]) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    return _trim([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_eval(a: Poly, y: int) -> int:
    return sum(c * y**i for i, c in enumerate(a))


def format_poly(a: Poly, var: str = "y") -> str:
    """Ascending-degree rendering, e.g. ``2 + 2y^2 + y^4``."""
    terms = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if (mono == "" or mag != 1) else ""
        text = body + mono
        if not terms:
            terms.append(text if c > 0 else "-" + text)
        else:
            terms.append(("+ " if c > 0 else "- ") + text)
    return " ".join(terms) if terms else "0"


@dataclass(frozen=True)
class GradedDimension:
    """Betti numbers ``b^0, b^1, ...`` of a graded space (trailing zeros dropped)."""

    betti: Poly

    def __post_init__(self):
        if any(b < 0 for b in self.betti):
            raise ValueError(f"negative Betti number in {self.betti}")
        object.__setattr__(self, "betti", _trim(int(b) for b in self.betti))

    @classmethod
    def parse(cls, text: str) -> GradedDimension:
        text = text.strip()
        if not text:
            raise ValueError("empty Betti list")
        try:
            values = [int(tok) for tok in text.split(",")]
        except ValueError:
            raise ValueError(f"malformed Betti list: {text!r}") from None
        if any(v < 0 for v in values):
            raise ValueError(f"negative Betti number in {text!r}")
        return cls(tuple(values))

    @classmethod
    def point(cls) -> GradedDimension:
        return cls((1,))

    def __getitem__(self, i: int) -> int:
        return self.betti[i] if 0 <= i < len(self.betti) else 0

    def total(self) -> int:
        return sum(self.betti)

    def euler(self) -> int:
        return poly_eval(self.betti, -1)

    def degrees(self) -> list[int]:
        """One entry per homogeneous basis vector, in ascending degree."""
        return [i for i, b in enumerate(self.betti) for _ in range(b)]

    def __str__(self) -> str:
        return ",".join(map(str, self.betti)) if self.betti else "0"


@dataclass(frozen=True)
class TruncatedSeries:
    order: int
    coeffs: tuple[Poly, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("negative order")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(_trim(c) for c in self.coeffs))

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls(order, ((1,),) + ((),) * order)

    def __getitem__(self, n: int) -> Poly:
        return self.coeffs[n]

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        order = min(self.order, other.order)
        out: list[Poly] = [()] * (order + 1)
        for i in range(order + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(order + 1 - i):
                if other.coeffs[j]:
                    out[i + j] = poly_add(out[i + j], poly_mul(a, other.coeffs[j]))
        return TruncatedSeries(order, tuple(out))

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(order, self.coeffs[: order + 1])

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [list(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc: dict) -> TruncatedSeries:
        return cls(int(doc["order"]), tuple(tuple(int(x) for x in c) for c in doc["coeffs"]))

    def lines(self) -> list[str]:
        return [f"q^{n}: {format_poly(c)}" for n, c in enumerate(self.coeffs)]


def _binomial_general(a: int, k: int) -> int:
    """``binomial(a, k)`` for any integer ``a`` (falling factorial over k!)."""
    num = 1
    for i in range(k):
        num *= a - i
    return num // math.factorial(k)


def _factor_series(degree: int, mult: int, step: int, order: int) -> TruncatedSeries:
    """``(1 + q^step y^degree)^mult`` for odd degree, ``(1 - q^step y^degree)^-mult`` for even."""
    coeffs: list[Poly] = [()] * (order + 1)
    for k in range(order // step + 1):
        if degree % 2:
            c = math.comb(mult, k)
        else:
            c = math.comb(mult + k - 1, k) if k else 1
        if c:
            coeffs[k * step] = (0,) * (degree * k) + (c,)
    return TruncatedSeries(order, tuple(coeffs))


def _macdonald_in(phi: GradedDimension, step: int, order: int) -> TruncatedSeries:
    out = TruncatedSeries.one(order)
    for degree, mult in enumerate(phi.betti):
        if mult:
            out = out * _factor_series(degree, mult, step, order)
    return out


def macdonald_series(phi: GradedDimension, order: int) -> TruncatedSeries:
    """Generating function of Poincare polynomials of the symmetric products of X."""
    return _macdonald_in(phi, 1, order)


def orbifold_series(phi: GradedDimension, order: int) -> TruncatedSeries:
    """Generating function of orbifold Poincare polynomials of [X^n/S_n]."""
    out = TruncatedSeries.one(order)
    for j in range(1, order + 1):
        out = out * _macdonald_in(phi, j, order)
    return out


def loop_series(phi_loop: GradedDimension, order: int) -> TruncatedSeries:
    """Poincare series of the loop orbifolds of [X^n/S_n], given the Betti numbers of LX.

    The Betti numbers of the free loop space are user input; the formula is the
    orbifold product formula applied to them.
    """
    return orbifold_series(phi_loop, order)


def symmetric_power_dimension(phi: GradedDimension, m: int) -> GradedDimension:
    """Graded dimension of the m-th graded-symmetric power of a graded space.

    Counted directly: distribute ``m`` tensor slots over the homogeneous
    pieces, taking symmetric powers of even pieces and exterior powers of odd ones.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    pieces = [(i, b) for i, b in enumerate(phi.betti) if b]
    out: dict[int, int] = {}
    for split in _compositions(m, len(pieces)):
        dim = 1
        deg = 0
        for (i, b), k in zip(pieces, split):
            dim *= math.comb(b, k) if i % 2 else math.comb(b + k - 1, k)
            deg += i * k
        if dim:
            out[deg] = out.get(deg, 0) + dim
    top = max(out, default=-1)
    return GradedDimension(tuple(out.get(i, 0) for i in range(top + 1)))


def _compositions(m: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 0:
        if m == 0:
            yield ()
        return
    for first in range(m + 1):
        for rest in _compositions(m - first, parts - 1):
            yield (first,) + rest


def direct_orbifold_coefficient(phi: GradedDimension, n: int) -> Poly:
    """Coefficient of q^n of the orbifold series, summed over cycle types of S_n.

    Each cycle type ``{j^(n_j)}`` contributes the product of the Poincare
    polynomials of the symmetric powers ``Sym^(n_j)``.
    """
    total: Poly = ()
    for ct in partitions(n):
        term: Poly = (1,)
        for _, nj in ct.counts:
            term = poly_mul(term, symmetric_power_dimension(phi, nj).betti)
        total = poly_add(total, term)
    return total


def euler_specialize(s: TruncatedSeries) -> list[int]:
    """Evaluate every coefficient at y = -1."""
    return [poly_eval(c, -1) for c in s.coeffs]


def _euler_product(chi: int, steps: Iterable[int], order: int) -> TruncatedSeries:
    if order < 0:
        raise ValueError("negative order")
    out = TruncatedSeries.one(order)
    for j in steps:
        coeffs: list[Poly] = [()] * (order + 1)
        for k in range(order // j + 1):
            # (1 - x)^(-chi) = sum_k binom(-chi, k) (-x)^k
            c = (-1) ** k * _binomial_general(-chi, k)
            coeffs[k * j] = (c,) if c else ()
        out = out * TruncatedSeries(order, tuple(coeffs))
    return out


def symmetric_euler_series(chi: int, order: int) -> TruncatedSeries:
    """Euler characteristics of the symmetric products, (1 - q)^(-chi)."""
    return _euler_product(chi, [1], order)


def equivariant_euler_series(chi: int, order: int) -> TruncatedSeries:
    """Exact expansion of prod_{j>0} (1 - q^j)^(-chi); chi may be negative."""
    return _euler_product(chi, range(1, order + 1), order)


__all__ = [
    "GradedDimension",
    "TruncatedSeries",
    "direct_orbifold_coefficient",
    "equivariant_euler_series",
    "euler_specialize",
    "format_poly",
    "loop_series",
    "macdonald_series",
    "orbifold_series",
    "symmetric_euler_series",
    "symmetric_power_dimension",
]

"""Multiplication tables of the S_n-invariant part of the inertia ring.

The invariant basis consists of orbit sums: for every conjugacy class take
its block representative tau0, and for every word w of the tau0
sector not yet covered, average the basis class (tau0, w) over S_n and scale
so the coefficient of (tau0, w) is 1.  Since S_n acts by signed monomials,
a product of invariants is read off from its coefficients at these
representative positions alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..oracle import max_cells
from ..permgroup import (
    Permutation,
    compose,
    excess_euler_degree,
    orbit_count,
    partitions,
    symmetric_group,
)
from .model import CohomologyModel, format_rational
from .products import InertiaElement, SectorVector, act, cs_product, pair_orbits, sn_project, vip_product
from .tensor import Word, calculus

BUILTIN_LIMITS = {"torus": 4, "sphere": 5}


class TableSizeError(ValueError):
    pass


def check_size(model: CohomologyModel, n: int) -> None:
    """Refuse tables beyond the enumeration bounds (torus n <= 4, sphere n <= 5)."""
    if n < 1:
        raise TableSizeError("n must be at least 1")
    family = (model.kind or "").split("(")[0]
    limit = BUILTIN_LIMITS.get(family)
    if limit is not None:
        if n > limit:
            raise TableSizeError(f"{family} tables are limited to n <= {limit}")
        return
    cells = model.dim**n
    if cells > max_cells():
        raise TableSizeError(f"sector words {cells} exceed the cap {max_cells()}")


@lru_cache(maxsize=None)
def class_representatives(n: int) -> tuple[Permutation, ...]:
    """One label per conjugacy class (cycles on consecutive blocks), untwisted class first."""
    return tuple(ct.representative() for ct in reversed(partitions(n)))


@dataclass(frozen=True)
class BasisElement:
    label: Permutation
    word: Word
    degree: int
    homology_degree: int
    vector: InertiaElement

    def name(self, model: CohomologyModel) -> str:
        names = "|".join(model.names[a] for a in self.word)
        return f"{self.label.cycle_notation()}[{names}]"


def invariant_basis(model: CohomologyModel, n: int) -> list[BasisElement]:
    calc = calculus(model)
    out = []
    for tau0 in class_representatives(n):
        k = orbit_count(tau0)
        words = sorted(calc.words(k), key=lambda w: (calc.word_degree(w), w))
        covered: set[Word] = set()
        for w in words:
            if w in covered:
                continue
            avg = sn_project(InertiaElement.from_vectors([SectorVector.basis(tau0, w)]), model)
            own = avg.sectors.get(tau0, {})
            covered.update(own)
            if w not in own:
                # the orbit sum cancels: a sign character is nontrivial on the stabilizer
                continue
            deg = calc.word_degree(w)
            out.append(BasisElement(tau0, w, deg, model.d * k - deg, avg.scale(1 / own[w])))
    return out


def degree_law_holds(a: SectorVector, b: SectorVector, result: SectorVector, model: CohomologyModel) -> bool:
    """deg(a x b) = deg a + deg b + excess degree + d (O(tau sigma) - O(tau, sigma))."""
    if result.is_zero():
        return True
    (da,), (db,) = a.degrees(model), b.degrees(model)
    shift = excess_euler_degree(a.label, b.label, model.d) + model.d * (
        orbit_count(result.label) - pair_orbits(a.label, b.label).orbit_count
    )
    return result.degrees(model) == {da + db + shift}


@dataclass
class MultiplicationTable:
    model: CohomologyModel
    n: int
    use: str
    basis: list[BasisElement]
    entries: dict[tuple[int, int], dict[int, Fraction]]
    degree_violations: int = 0

    def to_json(self) -> dict:
        names = [b.name(self.model) for b in self.basis]
        return {
            "model": self.model.label(),
            "n": self.n,
            "product": self.use,
            "sector_basis": [
                {
                    "name": names[i],
                    "sector": b.label.word(),
                    "degree": b.degree,
                    "homology_degree": b.homology_degree,
                }
                for i, b in enumerate(self.basis)
            ],
            "entries": [
                {
                    "left": names[i],
                    "right": names[j],
                    "result": [{"basis": names[k], "coeff": format_rational(c)} for k, c in sorted(res.items())],
                }
                for (i, j), res in sorted(self.entries.items())
            ],
        }

    def lines(self) -> list[str]:
        names = [b.name(self.model) for b in self.basis]
        out = [f"# {self.model.label()}, n={self.n}, product={self.use}", "# basis (cohomology degree / homology degree):"]
        for i, b in enumerate(self.basis):
            out.append(f"  e{i} = {names[i]}  deg {b.degree} / {b.homology_degree}")
        out.append("# products:")
        for (i, j), res in sorted(self.entries.items()):
            out.append(f"  e{i} * e{j} = {format_combination(res)}")
        return out


def format_combination(res: dict[int, Fraction]) -> str:
    if not res:
        return "0"
    parts = []
    for k, c in sorted(res.items()):
        coeff = "" if c == 1 else "-" if c == -1 else format_rational(c) + " "
        parts.append(f"{coeff}e{k}")
    return " + ".join(parts).replace("+ -", "- ")


def multiplication_table(model: CohomologyModel, n: int, use: str = "vip") -> MultiplicationTable:
    check_size(model, n)
    mul = {"vip": vip_product, "cs": cs_product}[use]
    basis = invariant_basis(model, n)
    position = {(b.label, b.word): i for i, b in enumerate(basis)}
    reps = set(class_representatives(n))
    components = [list(b.vector) for b in basis]
    entries: dict[tuple[int, int], dict[int, Fraction]] = {}
    violations = 0
    for i, left in enumerate(components):
        for j, right in enumerate(components):
            res: dict[int, Fraction] = {}
            for a in left:
                for b in right:
                    if compose(a.label, b.label) not in reps:
                        continue
                    for wa, ca in a.coeffs.items():
                        for wb, cb in b.coeffs.items():
                            va, vb = SectorVector.basis(a.label, wa), SectorVector.basis(b.label, wb)
                            r = mul(va, vb, model)
                            if not degree_law_holds(va, vb, r, model):
                                violations += 1
                            for w, c in r.coeffs.items():
                                k = position.get((r.label, w))
                                if k is not None:
                                    v = res.get(k, 0) + ca * cb * c
                                    if v:
                                        res[k] = v
                                    else:
                                        res.pop(k, None)
            entries[(i, j)] = res
    return MultiplicationTable(model, n, use, basis, entries, violations)


def expand(table: MultiplicationTable, combination: dict[int, Fraction]) -> InertiaElement:
    out = InertiaElement()
    for k, c in combination.items():
        out = out + table.basis[k].vector.scale(c)
    return out


def table_is_closed(table: MultiplicationTable) -> bool:
    """Full products of basis pairs equal the expansion of the recorded entries."""
    from .products import product_element

    for (i, j), res in table.entries.items():
        full = product_element(table.basis[i].vector, table.basis[j].vector, table.model, table.use)
        if full != expand(table, res):
            return False
    return True


def table_diff(first: MultiplicationTable, second: MultiplicationTable) -> list[tuple[int, int]]:
    """Entry positions where two tables over the same basis disagree."""
    keys = sorted(set(first.entries) | set(second.entries))
    return [k for k in keys if first.entries.get(k, {}) != second.entries.get(k, {})]


def invariant_counts(basis: list[BasisElement]) -> dict[int, int]:
    """Number of invariant basis elements per cohomology degree."""
    counts: dict[int, int] = {}
    for b in basis:
        counts[b.degree] = counts.get(b.degree, 0) + 1
    return counts


class SectorAlgebra:
    """Structure constants of one product on the full (non-invariant) sector basis."""

    def __init__(self, model: CohomologyModel, n: int, use: str = "vip"):
        check_size(model, n)
        calc = calculus(model)
        mul = {"vip": vip_product, "cs": cs_product}[use]
        self.model, self.n, self.use = model, n, use
        self.basis = [(t, w) for t in symmetric_group(n) for w in calc.words(orbit_count(t))]
        self.index = {bw: i for i, bw in enumerate(self.basis)}
        self.table: list[list[dict[int, Fraction]]] = []
        self.degree_violations = 0
        for ta, wa in self.basis:
            row = []
            va = SectorVector.basis(ta, wa)
            for tb, wb in self.basis:
                vb = SectorVector.basis(tb, wb)
                r = mul(va, vb, model)
                if not degree_law_holds(va, vb, r, model):
                    self.degree_violations += 1
                row.append({self.index[(r.label, w)]: c for w, c in r.coeffs.items()})
            self.table.append(row)

    def product(self, x: dict[int, Fraction], y: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                for k, v in row[j].items():
                    s = out.get(k, 0) + a * b * v
                    if s:
                        out[k] = s
                    else:
                        out.pop(k)
        return out

    def associativity_failures(self) -> list[tuple[int, int, int]]:
        size = len(self.basis)
        bad = []
        for i in range(size):
            for j in range(size):
                ab = self.table[i][j]
                for k in range(size):
                    if self.product(ab, {k: 1}) != self.product({i: 1}, self.table[j][k]):
                        bad.append((i, j, k))
        return bad

    def acted(self, h: Permutation, x: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, c in x.items():
            label, word = self.basis[i]
            image = act(h, SectorVector.basis(label, word), self.model)
            for w, v in image.coeffs.items():
                out[self.index[(image.label, w)]] = c * v
        return out

    def equivariance_failures(self) -> list[tuple[Permutation, int, int]]:
        """Triples (h, i, j) with h.(e_i e_j) != (h.e_i)(h.e_j)."""
        bad = []
        size = len(self.basis)
        for h in symmetric_group(self.n):
            images = [self.acted(h, {i: Fraction(1)}) for i in range(size)]
            for i in range(size):
                for j in range(size):
                    if self.acted(h, self.table[i][j]) != self.product(images[i], images[j]):
                        bad.append((h, i, j))
        return bad

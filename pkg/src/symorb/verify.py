"""Invariant suites shared by the CLI ``verify`` command and the acceptance tests."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .oracle import verify_macdonald
from .permgroup import (
    chen_ruan_degree,
    centralizer_order,
    compose,
    conjugate,
    cycle_type,
    excess_euler_degree,
    orbit_count,
    partitions,
    rank_cocycle_sides,
    symmetric_group,
)
from .series import (
    GradedDimension,
    direct_orbifold_coefficient,
    equivariant_euler_series,
    euler_specialize,
    loop_series,
    macdonald_series,
    orbifold_series,
)

PARTITION_NUMBERS = (1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42)
RING_MODELS = (("sphere", 2), ("sphere", 4), ("torus", 1), ("torus", 2))
SUITES = ("macdonald", "series", "degrees", "cocycle", "ring")


@dataclass(frozen=True)
class Case:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.suite}: {self.name}{tail}"


def macdonald_cases(max_n: int = 4) -> Iterator[Case]:
    """Projector ranks against the Macdonald coefficients for a few small spaces."""
    for text in ("1,0,1", "1,1", "1,2,1", "1,0,0,1"):
        phi = GradedDimension.parse(text)
        m = min(max_n, 4 if phi.total() <= 2 else 3)
        report = verify_macdonald(phi, m)
        series = macdonald_series(phi, m)
        agree = all(
            series[c["m"]][c["degree"]] == c["got"] if c["degree"] < len(series[c["m"]]) else c["got"] == 0
            for c in report["cases"]
        )
        failed = [c for c in report["cases"] if not c["pass"]]
        yield Case("macdonald", f"betti {text}, m <= {m}", report["pass"] and agree, f"{len(report['cases'])} degree checks, {len(failed)} failed")


def betti_vectors(max_total: int = 4, max_degree: int = 4) -> Iterator[GradedDimension]:
    for betti in itertools.product(range(max_total + 1), repeat=max_degree + 1):
        if sum(betti) <= max_total:
            yield GradedDimension(betti)


def series_cases(max_n: int = 8) -> Iterator[Case]:
    order = max(max_n, 0)
    chi_series = equivariant_euler_series(1, 10)
    yield Case("series", "partition numbers from chi = 1", tuple(euler_specialize(chi_series)) == PARTITION_NUMBERS)
    point = euler_specialize(orbifold_series(GradedDimension.point(), 10))
    yield Case("series", "point orbifold series at y = -1", tuple(point) == PARTITION_NUMBERS)
    sphere = euler_specialize(macdonald_series(GradedDimension.parse("1,0,1"), 10))
    yield Case("series", "Euler characteristics of Sym^n S^2", sphere == list(range(1, 12)))
    bad = []
    checked = 0
    for phi in betti_vectors():
        orb = orbifold_series(phi, order)
        if loop_series(phi, order) != orb:
            bad.append(f"loop {phi}")
        if euler_specialize(orb) != euler_specialize(equivariant_euler_series(phi.euler(), order)):
            bad.append(f"euler {phi}")
        for n in range(order + 1):
            checked += 1
            if direct_orbifold_coefficient(phi, n) != orb[n]:
                bad.append(f"{phi} q^{n}")
    yield Case("series", f"product formula vs partition sum, n <= {order}", not bad, f"{checked} coefficients, {len(bad)} failed")


def degree_cases(max_n: int = 6, d: int = 2) -> Iterator[Case]:
    from .ringmodel.products import excess_multiplicities

    for n in range(1, max_n + 1):
        group = symmetric_group(n)
        bad_ineq = bad_eq = bad_rank = 0
        for tau in group:
            for sigma in group:
                deg_e = excess_euler_degree(tau, sigma, d)
                gap = deg_e - 2 * chen_ruan_degree(tau, sigma, d)
                o_pair = orbit_count(tau, sigma)
                if gap < 0 or gap != d * (orbit_count(compose(tau, sigma)) - o_pair):
                    bad_ineq += 1
                if (gap == 0) != (orbit_count(compose(tau, sigma)) == o_pair):
                    bad_eq += 1
                if sum(excess_multiplicities(tau, sigma)) * d != deg_e:
                    bad_rank += 1
        pairs = len(group) ** 2
        yield Case("degrees", f"S_{n} deg_e - 2 deg_CR >= 0", bad_ineq == 0, f"{pairs} pairs")
        yield Case("degrees", f"S_{n} equality iff O(tau sigma) = O(tau, sigma)", bad_eq == 0)
        yield Case("degrees", f"S_{n} excess multiplicities sum to deg_e / d", bad_rank == 0)
    ok = all(
        sum(math.factorial(n) // centralizer_order(ct) for ct in partitions(n)) == math.factorial(n) for n in range(9)
    )
    yield Case("degrees", "class equation n <= 8", ok)
    for n in range(1, min(max_n, 5) + 1):
        group = symmetric_group(n)
        classes = {}
        for p in group:
            classes.setdefault(cycle_type(p), set()).add(p)
        ok = all({conjugate(h, p) for h in group} == classes[cycle_type(p)] for p in group)
        yield Case("degrees", f"S_{n} cycle type is a complete conjugacy invariant", ok)


def cocycle_cases(max_n: int = 6, samples: int = 100_000, seed: int = 0) -> Iterator[Case]:
    for n in range(1, min(max_n, 4) + 1):
        group = symmetric_group(n)
        bad = sum(1 for g, h, k in itertools.product(group, repeat=3) if len(set(rank_cocycle_sides(g, h, k))) > 1)
        yield Case("cocycle", f"S_{n} all {len(group) ** 3} triples", bad == 0, f"{bad} failed")
    rng = random.Random(seed)
    for n in range(5, max_n + 1):
        bad = 0
        points = list(range(n))
        for _ in range(samples):
            g, h, k = (_random_permutation(rng, points) for _ in range(3))
            left, right = rank_cocycle_sides(g, h, k)
            bad += left != right
        yield Case("cocycle", f"S_{n} {samples} random triples", bad == 0, f"{bad} failed")


def _random_permutation(rng: random.Random, points: list[int]):
    from .permgroup import Permutation

    images = points[:]
    rng.shuffle(images)
    return Permutation(tuple(images))


def ring_cases(max_n: int = 3) -> Iterator[Case]:
    from .ringmodel import builtin_model
    from .ringmodel.table import SectorAlgebra, invariant_counts, multiplication_table, table_diff, table_is_closed

    for kind, d in RING_MODELS:
        model = builtin_model(kind, d)
        for n in range(1, max_n + 1):
            tag = f"{model.label()} n={n}"
            vip = SectorAlgebra(model, n, "vip")
            cs = SectorAlgebra(model, n, "cs")
            yield Case("ring", f"{tag} vip = cs on all sector pairs", vip.table == cs.table, f"{len(vip.basis) ** 2} pairs")
            yield Case("ring", f"{tag} degree law", vip.degree_violations == 0 and cs.degree_violations == 0)
            bad = vip.associativity_failures()
            yield Case("ring", f"{tag} associativity", not bad, f"{len(vip.basis) ** 3} triples")
            yield Case("ring", f"{tag} S_{n}-equivariance", not vip.equivariance_failures())
            table_v = multiplication_table(model, n, "vip")
            table_c = multiplication_table(model, n, "cs")
            yield Case("ring", f"{tag} invariant tables agree", not table_diff(table_v, table_c))
            yield Case("ring", f"{tag} invariant table closed", table_is_closed(table_v))
            if d % 2 == 0:
                expected = orbifold_series(GradedDimension(model.betti()), n)[n]
                counts = invariant_counts(table_v.basis)
                got = tuple(counts.get(i, 0) for i in range(len(expected)))
                yield Case("ring", f"{tag} invariant count matches orbifold series", got == expected)


def run_suite(name: str, max_n: int | None = None) -> list[Case]:
    runners: dict[str, Callable[..., Iterator[Case]]] = {
        "macdonald": macdonald_cases,
        "series": series_cases,
        "degrees": degree_cases,
        "cocycle": cocycle_cases,
        "ring": ring_cases,
    }
    if name == "all":
        return [c for s in SUITES for c in run_suite(s, max_n)]
    if name not in runners:
        raise KeyError(name)
    return list(runners[name]() if max_n is None else runners[name](max_n))

"""The two inertia-orbifold products for the symmetric product [M^n/S_n].

A sector labelled by tau in S_n is the fixed locus (M^n)^tau, identified
with M^k where k is the number of orbits of <tau>; tensor factors follow the
canonical orbit order (increasing minimum point).

* ``vip_product`` restricts both classes to the common fixed locus of
  <tau, sigma>, multiplies by the excess intersection Euler class and pushes
  forward into the sector of tau*sigma.
* ``cs_product`` pushes both classes into H*(M^n), multiplies there
  (intersection of cycles read through Poincare duality) and pulls the
  result back through the injective Gysin map of the tau*sigma sector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from ..linalg import ColumnSolver, det
from ..permgroup import (
    DegreeMismatch,
    OrbitStructure,
    Permutation,
    compose,
    conjugate,
    orbit_structure,
    symmetric_group,
    tuple_sign,
)
from .model import CohomologyModel
from .tensor import TVec, Word, add_into, calculus


class GysinPreimageError(RuntimeError):
    """The ambient product is not in the image of the target sector's Gysin map."""


@lru_cache(maxsize=None)
def sector_orbits(tau: Permutation) -> OrbitStructure:
    return orbit_structure([tau])


@lru_cache(maxsize=None)
def pair_orbits(tau: Permutation, sigma: Permutation) -> OrbitStructure:
    return orbit_structure([tau, sigma])


@dataclass(frozen=True)
class OrbitVector:
    """A class on the fixed locus M^{orbit_count} of some subgroup, over its orbit factors."""

    orbits: OrbitStructure
    coeffs: Mapping[Word, Fraction]


@dataclass(frozen=True)
class SectorVector:
    label: Permutation
    coeffs: Mapping[Word, Fraction] = field(default_factory=dict)

    @property
    def orbits(self) -> OrbitStructure:
        return sector_orbits(self.label)

    @classmethod
    def basis(cls, label: Permutation, word: Word) -> SectorVector:
        return cls(label, {tuple(word): Fraction(1)})

    def degrees(self, model: CohomologyModel) -> set[int]:
        calc = calculus(model)
        return {calc.word_degree(w) for w, c in self.coeffs.items() if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())

    def as_orbit_vector(self) -> OrbitVector:
        return OrbitVector(self.orbits, self.coeffs)


class InertiaElement:
    """Finitely supported map label -> coefficients over that sector's word basis."""

    def __init__(self, sectors: Mapping[Permutation, Mapping[Word, Fraction]] | None = None):
        self.sectors: dict[Permutation, dict[Word, Fraction]] = {}
        for label, coeffs in (sectors or {}).items():
            self.add_sector(label, coeffs)

    @classmethod
    def from_vectors(cls, vectors: Iterable[SectorVector]) -> InertiaElement:
        out = cls()
        for v in vectors:
            out.add_sector(v.label, v.coeffs)
        return out

    def add_sector(self, label: Permutation, coeffs: Mapping[Word, Fraction], scale=1) -> None:
        cur = self.sectors.setdefault(label, {})
        add_into(cur, dict(coeffs), scale)
        if not cur:
            del self.sectors[label]

    def __iter__(self) -> Iterator[SectorVector]:
        for label in sorted(self.sectors, key=lambda p: p.images):
            yield SectorVector(label, self.sectors[label])

    def __add__(self, other: InertiaElement) -> InertiaElement:
        out = InertiaElement(self.sectors)
        for label, coeffs in other.sectors.items():
            out.add_sector(label, coeffs)
        return out

    def scale(self, c) -> InertiaElement:
        out = InertiaElement()
        for label, coeffs in self.sectors.items():
            out.add_sector(label, coeffs, c)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, InertiaElement):
            return NotImplemented
        return self.sectors == other.sectors

    def __repr__(self) -> str:
        return f"InertiaElement({ {p.word(): dict(c) for p, c in self.sectors.items()} })"

    def is_zero(self) -> bool:
        return not self.sectors


def restrict(v: SectorVector | OrbitVector, target: OrbitStructure, model: CohomologyModel) -> OrbitVector:
    """Pull back along the diagonal inclusion of the fixed locus of a larger subgroup.

    Each target factor receives the Koszul-signed cup product of the source
    factors merged into it.
    """
    src = v.orbits if isinstance(v, OrbitVector) else v.orbits
    f = target.coarsening_map(src)
    return OrbitVector(target, calculus(model).pullback(f, target.orbit_count, dict(v.coeffs)))


def pushforward(v: OrbitVector, target: OrbitStructure, model: CohomologyModel) -> OrbitVector:
    """Gysin map from the fixed locus of ``v.orbits`` into that of the finer ``target``."""
    f = v.orbits.coarsening_map(target)
    return OrbitVector(target, calculus(model).pushforward(f, v.orbits.orbit_count, dict(v.coeffs)))


def excess_multiplicities(tau: Permutation, sigma: Permutation) -> list[int]:
    """Per <tau,sigma>-orbit o: |o| + 1 - (#<tau>-orbits in o) - (#<sigma>-orbits in o)."""
    joint = orbit_structure([tau, sigma])
    tmap = joint.coarsening_map(orbit_structure([tau]))
    smap = joint.coarsening_map(orbit_structure([sigma]))
    mult = [size + 1 for size in joint.orbit_sizes]
    for o in tmap:
        mult[o] -= 1
    for o in smap:
        mult[o] -= 1
    return mult


def _indicators(orb: OrbitStructure) -> list[list[int]]:
    return [[int(o == j) for o in orb.orbit_assignment] for j in range(orb.orbit_count)]


def _oriented_complement(sub: OrbitStructure, sup: OrbitStructure) -> list[list[int]]:
    """Vectors a with (indicators of sub, a) a basis oriented like the indicators of sup.

    ``sub`` coarsens ``sup``; a consists of the indicators of all but the first
    ``sup``-orbit inside each ``sub``-orbit, with the first one negated if needed.
    """
    fmap = sub.coarsening_map(sup)
    seen: set[int] = set()
    picked = []
    for i, j in enumerate(fmap):
        if j in seen:
            picked.append(i)
        seen.add(j)
    # coordinates in the sup-indicator basis
    rows = [[int(fmap[i] == j) for i in range(sup.orbit_count)] for j in range(sub.orbit_count)]
    rows += [[int(i == c) for i in range(sup.orbit_count)] for c in picked]
    sup_ind = _indicators(sup)
    comp = [list(sup_ind[c]) for c in picked]
    if det(rows) < 0:
        comp[0] = [-x for x in comp[0]]
    return comp


@lru_cache(maxsize=None)
def transversal_orientation(tau: Permutation, sigma: Permutation) -> int:
    """Sign comparing the intersection orientation of Y^tau and Y^sigma with the canonical one.

    For a transversal intersection U, with oriented bases (w, a) of Y^tau and
    (w, b) of Y^sigma where w is the canonical basis of U, this is the sign of
    det(w, a, b) in M^n, computed on orbit-indicator vectors (one copy of the
    tangent space; the full sign is its d-th power).
    """
    joint = pair_orbits(tau, sigma)
    a = _oriented_complement(joint, sector_orbits(tau))
    b = _oriented_complement(joint, sector_orbits(sigma))
    rows = _indicators(joint) + a + b
    if len(rows) != tau.n:
        raise ValueError("fixed loci do not meet transversally")
    value = det(rows)
    if value == 0:
        raise ValueError("fixed loci do not meet transversally")
    return 1 if value > 0 else -1


def excess_class(tau: Permutation, sigma: Permutation, model: CohomologyModel) -> OrbitVector:
    """Euler class of the excess bundle of the fixed loci of tau and sigma, on their intersection.

    The bundle has rank d * m_o on the factor of each <tau,sigma>-orbit o.
    When it has rank zero and d is odd, its Euler class is the orientation sign
    of the transversal intersection; for even d that sign is always +1.
    """
    if tau.n != sigma.n:
        raise DegreeMismatch(f"degrees {tau.n} and {sigma.n}")
    calc = calculus(model)
    joint = pair_orbits(tau, sigma)
    k = joint.orbit_count
    mult = excess_multiplicities(tau, sigma)
    sign = transversal_orientation(tau, sigma) if model.d % 2 and not any(mult) else 1
    vec: TVec = {calc.unit_word(k): Fraction(sign)}
    for o, m in enumerate(mult):
        if m == 0:
            continue
        e_m = model.power(model.euler_class, m)
        placed: TVec = {}
        for a, c in e_m.items():
            w = list(calc.unit_word(k))
            w[o] = a
            placed[tuple(w)] = c
        vec = calc.mul(vec, placed)
    return OrbitVector(joint, vec)


def _check_labels(a: SectorVector, b: SectorVector) -> None:
    if a.label.n != b.label.n:
        raise DegreeMismatch(f"sector labels in S_{a.label.n} and S_{b.label.n}")


def vip_product(a: SectorVector, b: SectorVector, model: CohomologyModel) -> SectorVector:
    """Virtual intersection product: restrict, cup, multiply by excess class, push forward."""
    _check_labels(a, b)
    calc = calculus(model)
    tau, sigma = a.label, b.label
    joint = pair_orbits(tau, sigma)
    ra = restrict(a, joint, model).coeffs
    rb = restrict(b, joint, model).coeffs
    prod = calc.mul(calc.mul(ra, rb), excess_class(tau, sigma, model).coeffs)
    target = compose(tau, sigma)
    pushed = pushforward(OrbitVector(joint, prod), sector_orbits(target), model)
    return SectorVector(target, pushed.coeffs)


def _gysin_solver(label: Permutation, model: CohomologyModel) -> ColumnSolver:
    cache = model.__dict__.setdefault("_gysin_solvers", {})
    solver = cache.get(label)
    if solver is None:
        calc = calculus(model)
        orb = sector_orbits(label)
        f = orb.orbit_assignment
        columns = {u: calc.pushforward_word(f, orb.orbit_count, u) for u in calc.words(orb.orbit_count)}
        solver = cache[label] = ColumnSolver(columns)
        if not solver.independent:
            raise GysinPreimageError(f"Gysin map of sector {label.word()} is not injective")
    return solver


def to_ambient(v: SectorVector, model: CohomologyModel) -> TVec:
    """Gysin image of a sector class in H*(M^n)."""
    orb = v.orbits
    return calculus(model).pushforward(orb.orbit_assignment, orb.orbit_count, dict(v.coeffs))


def from_ambient(x: TVec, label: Permutation, model: CohomologyModel) -> SectorVector:
    """Unique sector class whose Gysin image is ``x``; raises if there is none."""
    coeffs = _gysin_solver(label, model).solve(x)
    if coeffs is None:
        raise GysinPreimageError(f"ambient class is not in the image of sector {label.word()}")
    return SectorVector(label, {w: c for w, c in coeffs.items() if c})


def cs_product(a: SectorVector, b: SectorVector, model: CohomologyModel) -> SectorVector:
    """Loop-homology product realized by intersecting Gysin images in M^n."""
    _check_labels(a, b)
    calc = calculus(model)
    # the right factor's Thom class (degree = codimension of its sector) is
    # moved in front of the left factor: Koszul sign (-1)^(|a| * codim)
    codim = model.d * (b.label.n - b.orbits.orbit_count)
    left = dict(a.coeffs)
    if codim % 2:
        left = {w: -c if calc.word_degree(w) % 2 else c for w, c in left.items()}
    x = calc.mul(to_ambient(SectorVector(a.label, left), model), to_ambient(b, model))
    return from_ambient(x, compose(a.label, b.label), model)


def act(h: Permutation, v: SectorVector, model: CohomologyModel) -> SectorVector:
    """Image of a sector class under h in S_n, landing in the sector of h^-1 tau h.

    Induced by the coordinate permutation of M^n moving factor i to position
    h(i), which carries the fixed locus of tau onto that of h^-1 tau h.  The
    class is pulled back along that map and multiplied by the orientation sign
    of h on the normal bundle, so that Gysin images into M^n transform by the
    plain Koszul action.  The sign is trivial for even d.
    """
    tau = v.label
    new = conjugate(h, tau)
    src, dst = sector_orbits(tau), sector_orbits(new)
    f = tuple(dst.orbit_assignment[h.images[orbit[0]]] for orbit in src.orbits())
    coeffs = calculus(model).pullback(f, dst.orbit_count, dict(v.coeffs))
    if model.d % 2 and h.sign() * tuple_sign(f) < 0:
        coeffs = {w: -c for w, c in coeffs.items()}
    return SectorVector(new, coeffs)


def act_element(h: Permutation, e: InertiaElement, model: CohomologyModel) -> InertiaElement:
    return InertiaElement.from_vectors(act(h, v, model) for v in e)


def sn_project(e: InertiaElement, model: CohomologyModel) -> InertiaElement:
    """Average over the conjugation action of S_n."""
    if e.is_zero():
        return InertiaElement()
    n = next(iter(e.sectors)).n
    group = symmetric_group(n)
    out = InertiaElement()
    scale = Fraction(1, len(group))
    for h in group:
        for v in e:
            w = act(h, v, model)
            out.add_sector(w.label, w.coeffs, scale)
    return out


def product_element(x: InertiaElement, y: InertiaElement, model: CohomologyModel, use: str = "vip") -> InertiaElement:
    mul = {"vip": vip_product, "cs": cs_product}[use]
    out = InertiaElement()
    for a in x:
        for b in y:
            r = mul(a, b, model)
            out.add_sector(r.label, r.coeffs)
    return out

"""Finite cohomology models of a closed oriented manifold M."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping

from ..linalg import rank

Vec = dict  # basis index -> Fraction


class ModelError(ValueError):
    """A cohomology model violates one of its axioms; ``axiom`` names which."""

    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(f"{axiom}: {detail}" if detail else axiom)


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"not an exact rational: {value!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class CohomologyModel:
    """Graded basis of H*(M) with cup structure constants, pairing and Euler class.

    ``cup[(a, b)]`` maps result basis indices to coefficients; missing pairs
    multiply to zero.  The pairing of ``a`` and ``b`` is the coefficient of
    the top class in ``a * b``.
    """

    def __init__(
        self,
        d: int,
        basis: list[tuple[str, int]],
        cup: Mapping[tuple[int, int], Mapping[int, Fraction]],
        pairing: list[list[Fraction]],
        euler_class: Mapping[int, Fraction],
        unit: int = 0,
        kind: str | None = None,
    ):
        self.d = d
        self.names = tuple(name for name, _ in basis)
        self.degrees = tuple(deg for _, deg in basis)
        self.cup = {
            (a, b): {c: Fraction(v) for c, v in res.items() if v} for (a, b), res in cup.items()
        }
        self.cup = {k: v for k, v in self.cup.items() if v}
        self.pairing = tuple(tuple(Fraction(x) for x in row) for row in pairing)
        self.euler_class = {i: Fraction(v) for i, v in euler_class.items() if v}
        self.unit = unit
        self.kind = kind
        self.validate()

    @property
    def dim(self) -> int:
        return len(self.names)

    @cached_property
    def top(self) -> int:
        return next(i for i, g in enumerate(self.degrees) if g == self.d)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ModelError("parse error", f"unknown basis element {name!r}") from None

    def mul(self, a: int, b: int) -> Vec:
        return self.cup.get((a, b), {})

    def mul_vec(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for a, u in x.items():
            for b, v in y.items():
                for c, w in self.mul(a, b).items():
                    out[c] = out.get(c, 0) + u * v * w
        return {k: v for k, v in out.items() if v}

    def power(self, x: Vec, m: int) -> Vec:
        out: Vec = {self.unit: Fraction(1)}
        for _ in range(m):
            out = self.mul_vec(out, x)
        return out

    def betti(self) -> tuple[int, ...]:
        out = [0] * (self.d + 1)
        for deg in self.degrees:
            out[deg] += 1
        return tuple(out)

    def euler_characteristic(self) -> int:
        return sum((-1) ** g for g in self.degrees)

    @cached_property
    def dual_basis(self) -> tuple[Vec, ...]:
        """``dual_basis[a]`` is the class x with <x, e_b> = delta_ab, meaning coefficient of top in x * e_b."""
        n = self.dim
        # solve Q P = 1 row by row: Q = P^-1
        aug = [list(self.pairing[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [v / p for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
        inv = [row[n:] for row in aug]
        return tuple({c: inv[a][c] for c in range(n) if inv[a][c]} for a in range(n))

    # validation ------------------------------------------------------------

    def validate(self) -> None:
        n, d = self.dim, self.d
        if d < 1:
            raise ModelError("dimension", f"manifold dimension must be positive, got {d}")
        if any(g < 0 or g > d for g in self.degrees):
            raise ModelError("grading", "basis degrees must lie in 0..d")
        if len(set(self.names)) != n:
            raise ModelError("parse error", "duplicate basis names")
        if self.degrees.count(0) != 1:
            raise ModelError("connected", "degree 0 must be one-dimensional")
        if self.degrees.count(d) != 1:
            raise ModelError("oriented", f"degree {d} must be one-dimensional")
        if not 0 <= self.unit < n or self.degrees[self.unit] != 0:
            raise ModelError("unit", "unit must be the degree-0 basis element")
        for (a, b), res in self.cup.items():
            for c in res:
                if self.degrees[c] != self.degrees[a] + self.degrees[b]:
                    raise ModelError(
                        "grading", f"{self.names[a]}*{self.names[b]} has a component {self.names[c]} of wrong degree"
                    )
        one = {self.unit: Fraction(1)}
        for a in range(n):
            e = {a: Fraction(1)}
            if self.mul_vec(one, e) != e or self.mul_vec(e, one) != e:
                raise ModelError("unit", f"unit does not act as identity on {self.names[a]}")
        for a in range(n):
            for b in range(n):
                ab = self.mul(a, b)
                for c in range(n):
                    left = self.mul_vec(ab, {c: Fraction(1)})
                    right = self.mul_vec({a: Fraction(1)}, self.mul(b, c))
                    if left != right:
                        raise ModelError(
                            "associativity",
                            f"({self.names[a]}*{self.names[b]})*{self.names[c]} != "
                            f"{self.names[a]}*({self.names[b]}*{self.names[c]})",
                        )
        for a in range(n):
            for b in range(n):
                sign = -1 if self.degrees[a] * self.degrees[b] % 2 else 1
                ab = self.mul(a, b)
                ba = self.mul(b, a)
                if {k: sign * v for k, v in ab.items()} != ba:
                    raise ModelError(
                        "graded commutativity", f"{self.names[a]}*{self.names[b]} vs {self.names[b]}*{self.names[a]}"
                    )
        if len(self.pairing) != n or any(len(r) != n for r in self.pairing):
            raise ModelError("parse error", f"pairing must be a {n}x{n} matrix")
        rows = [{j: v for j, v in enumerate(r) if v} for r in self.pairing]
        if rank(rows) != n:
            raise ModelError("pairing degenerate", "Poincare pairing matrix is singular")
        for a in range(n):
            for b in range(n):
                if self.pairing[a][b] and self.degrees[a] + self.degrees[b] != d:
                    raise ModelError("pairing degenerate", f"pairing of {self.names[a]}, {self.names[b]} is not in degree d")
                if self.mul(a, b).get(self.top, 0) != self.pairing[a][b]:
                    raise ModelError(
                        "pairing inconsistent", f"<{self.names[a]}, {self.names[b]}> differs from the cup product"
                    )
        for c in self.euler_class:
            if self.degrees[c] != d:
                raise ModelError("euler class", "Euler class must lie in degree d")
        chi = self.euler_characteristic()
        if self.euler_class.get(self.top, 0) != chi:
            raise ModelError("euler class", f"Euler class must integrate to the Euler characteristic {chi}")

    # serialization ------------------------------------------------------------

    def to_document(self) -> dict:
        cup = []
        for a in range(self.dim):
            for b in range(self.dim):
                res = self.mul(a, b)
                if res:
                    cup.append(
                        {
                            "a": self.names[a],
                            "b": self.names[b],
                            "result": [{"basis": self.names[c], "coeff": format_rational(v)} for c, v in sorted(res.items())],
                        }
                    )
        return {
            "dimension": self.d,
            "basis": [{"name": nm, "degree": g} for nm, g in zip(self.names, self.degrees)],
            "unit": self.names[self.unit],
            "cup": cup,
            "pairing": [[format_rational(x) for x in row] for row in self.pairing],
            "euler_class": [{"basis": self.names[c], "coeff": format_rational(v)} for c, v in sorted(self.euler_class.items())],
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomologyModel):
            return NotImplemented
        return self.to_document() == other.to_document()

    __hash__ = None  # type: ignore[assignment]

    def label(self) -> str:
        return self.kind or f"model(d={self.d}, dim={self.dim})"

    def __repr__(self) -> str:
        return f"CohomologyModel({self.label()})"


def builtin_model(kind: str, d: int) -> CohomologyModel:
    """``sphere`` (even d) or ``torus`` (exterior algebra on d degree-1 generators)."""
    if kind == "sphere":
        if d < 2 or d % 2:
            raise ModelError("dimension", f"built-in spheres need even d >= 2, got {d}")
        return CohomologyModel(
            d,
            [("1", 0), ("x", d)],
            {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
            [[0, 1], [1, 0]],
            {1: 2},
            kind=f"sphere({d})",
        )
    if kind == "torus":
        if d < 1:
            raise ModelError("dimension", "torus dimension must be positive")
        return _torus(d)
    raise ModelError("parse error", f"unknown built-in model {kind!r}")


def _torus(d: int) -> CohomologyModel:
    subsets = [s for k in range(d + 1) for s in combinations(range(d), k)]
    index = {s: i for i, s in enumerate(subsets)}

    def name(s):
        if not s:
            return "1"
        gens = ["theta"] if d == 1 else [f"t{i + 1}" for i in range(d)]
        return "*".join(gens[i] for i in s)

    cup: dict = {}
    for s in subsets:
        for t in subsets:
            if set(s) & set(t):
                continue
            merged = s + t
            # sign of the sort permutation of the concatenated generators
            inv = sum(1 for i in range(len(merged)) for j in range(i + 1, len(merged)) if merged[i] > merged[j])
            cup[(index[s], index[t])] = {index[tuple(sorted(merged))]: -1 if inv % 2 else 1}
    top = index[tuple(range(d))]
    pairing = [[cup.get((i, j), {}).get(top, 0) for j in range(len(subsets))] for i in range(len(subsets))]
    return CohomologyModel(
        d,
        [(name(s), len(s)) for s in subsets],
        cup,
        pairing,
        {},
        kind=f"torus({d})",
    )


def load_model(document) -> CohomologyModel:
    """Build and validate a model from a JSON document (dict, JSON text, or file path)."""
    if isinstance(document, str):
        try:
            if document.lstrip().startswith("{"):
                document = json.loads(document)
            else:
                with open(document) as fh:
                    document = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ModelError("parse error", str(exc)) from None
    try:
        d = int(document["dimension"])
        basis = [(str(b["name"]), int(b["degree"])) for b in document["basis"]]
        names = [b[0] for b in basis]
        idx = {nm: i for i, nm in enumerate(names)}

        def lookup(nm):
            if nm not in idx:
                raise ModelError("parse error", f"unknown basis element {nm!r}")
            return idx[nm]

        unit = lookup(document.get("unit", names[0] if names else ""))
        cup: dict = {}
        for entry in document.get("cup", []):
            key = (lookup(entry["a"]), lookup(entry["b"]))
            if key in cup:
                raise ModelError("parse error", f"duplicate cup entry {entry['a']}*{entry['b']}")
            res: dict = {}
            for term in entry["result"]:
                c = lookup(term["basis"])
                res[c] = res.get(c, 0) + parse_rational(term["coeff"])
            cup[key] = res
        pairing = [[parse_rational(x) for x in row] for row in document["pairing"]]
        euler: dict = {}
        for term in document.get("euler_class", []):
            c = lookup(term["basis"])
            euler[c] = euler.get(c, 0) + parse_rational(term["coeff"])
    except ModelError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ModelError("parse error", f"{type(exc).__name__}: {exc}") from None
    return CohomologyModel(d, basis, cup, pairing, euler, unit=unit)

"""Cohomology of M^k as the graded tensor power H*(M)^{(x)k}.

Vectors are sparse dicts from words (tuples of basis indices, one per
factor) to Fractions.  Products carry Koszul signs:

    (a1 (x) ... (x) ak)(b1 (x) ... (x) bk) = (-1)^{sum_{i>j} |ai||bj|} (a1 b1) (x) ... (x) (ak bk)

A coordinate map ``f`` of length K with values in ``range(k)`` stands for the
embedding M^k -> M^K, x -> (x[f[0]], ..., x[f[K-1]]).  Pullback along it
multiplies each factor into its image slot; pushforward is the pairing
adjoint, <f_! v, w> = <v, f^* w> with <u, w> the integral of u * w.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .model import CohomologyModel

Word = tuple[int, ...]
TVec = dict  # Word -> Fraction


def add_into(acc: TVec, vec: TVec, scale=1) -> None:
    for w, c in vec.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


class TensorCalculus:
    """Cached multilinear operations for one model."""

    def __init__(self, model: CohomologyModel):
        self.model = model
        self.deg = model.degrees
        self._pull: dict = {}
        self._push: dict = {}
        self._duals: dict = {}

    def words(self, k: int) -> list[Word]:
        return list(product(range(self.model.dim), repeat=k))

    def word_degree(self, w: Word) -> int:
        return sum(self.deg[a] for a in w)

    def unit_word(self, k: int) -> Word:
        return (self.model.unit,) * k

    def _mul_factor(self, vec: TVec, slot: int, a: int) -> TVec:
        """Right-multiply by the class ``a`` placed in factor ``slot``."""
        deg = self.deg
        da = deg[a]
        out: TVec = {}
        for w, c in vec.items():
            res = self.model.mul(w[slot], a)
            if not res:
                continue
            if da % 2 and sum(deg[x] for x in w[slot + 1 :]) % 2:
                c = -c
            for r, v in res.items():
                nw = w[:slot] + (r,) + w[slot + 1 :]
                nv = out.get(nw, 0) + c * v
                if nv:
                    out[nw] = nv
                else:
                    out.pop(nw)
        return out

    def mul_words(self, u: Word, w: Word) -> TVec:
        # sequential right multiplication by w's factors reproduces the Koszul sign
        vec: TVec = {u: Fraction(1)}
        for slot, a in enumerate(w):
            if a != self.model.unit:
                vec = self._mul_factor(vec, slot, a)
                if not vec:
                    break
        return vec

    def mul(self, x: TVec, y: TVec) -> TVec:
        out: TVec = {}
        for u, a in x.items():
            for w, b in y.items():
                add_into(out, self.mul_words(u, w), a * b)
        return out

    def integral(self, x: TVec) -> Fraction:
        top = self.model.top
        return sum((c for w, c in x.items() if all(a == top for a in w)), Fraction(0))

    def pairing(self, x: TVec, y: TVec) -> Fraction:
        return self.integral(self.mul(x, y))

    def pullback_word(self, f: tuple[int, ...], k: int, w: Word) -> TVec:
        """Pullback of the word ``w`` (length len(f)) to M^k along the coordinate map f."""
        key = (f, k, w)
        hit = self._pull.get(key)
        if hit is None:
            vec: TVec = {self.unit_word(k): Fraction(1)}
            for s, a in enumerate(w):
                if a != self.model.unit:
                    vec = self._mul_factor(vec, f[s], a)
                    if not vec:
                        break
            hit = self._pull[key] = vec
        return hit

    def pullback(self, f: tuple[int, ...], k: int, x: TVec) -> TVec:
        out: TVec = {}
        for w, c in x.items():
            add_into(out, self.pullback_word(f, k, w), c)
        return out

    def dual_word(self, w: Word) -> TVec:
        """The class w# with integral(w# * u) = [u == w] over basis words u."""
        hit = self._duals.get(w)
        if hit is None:
            d = self.model.d
            deg = self.deg
            sign = 1
            for i in range(len(w)):
                for j in range(i):
                    if (d - deg[w[i]]) * deg[w[j]] % 2:
                        sign = -sign
            duals = self.model.dual_basis
            hit = {}
            for combo in product(*(duals[a].items() for a in w)):
                coeff = Fraction(sign)
                for _, v in combo:
                    coeff *= v
                hit[tuple(c for c, _ in combo)] = coeff
            self._duals[w] = hit
        return hit

    def pushforward_word(self, f: tuple[int, ...], k: int, u: Word) -> TVec:
        """Gysin image in H*(M^len(f)) of the word ``u`` on M^k."""
        key = (f, k, u)
        hit = self._push.get(key)
        if hit is None:
            big = len(f)
            want = self.model.d * k - self.word_degree(u)
            hit = {}
            for w in self.words(big):
                if self.word_degree(w) != want:
                    continue
                r = self.integral(self.mul({u: Fraction(1)}, self.pullback_word(f, k, w)))
                if r:
                    add_into(hit, self.dual_word(w), r)
            self._push[key] = hit
        return hit

    def pushforward(self, f: tuple[int, ...], k: int, x: TVec) -> TVec:
        out: TVec = {}
        for u, c in x.items():
            add_into(out, self.pushforward_word(f, k, u), c)
        return out


def calculus(model: CohomologyModel) -> TensorCalculus:
    calc = model.__dict__.get("_calculus")
    if calc is None:
        calc = model.__dict__["_calculus"] = TensorCalculus(model)
    return calc

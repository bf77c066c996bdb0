"""Exact Riemann curvature data at a point in an orthonormal frame.

A tensor is a sparse map (i,j,k,l) -> Fraction (1-based indices) that is
required to satisfy the two pair antisymmetries, the pair-exchange
symmetry, and the first Bianchi identity.  Contractions follow the
convention ricci[a][b] = sum_p R[a][p][b][p], scalar = sum_a ricci[a][a].
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .clifford import FrameVector, inner


class RiemannTensor:
    """Curvature coefficients R_{ijkl} with the full algebraic symmetries."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: dict, validate: bool = True):
        if n < 2:
            raise ValueError("dimension must be >= 2")
        self.n = n
        self.entries = {k: v for k, v in entries.items() if v}
        if validate:
            self.validate()

    def get(self, i: int, j: int, k: int, l: int) -> Fraction:
        return self.entries.get((i, j, k, l), Fraction(0))

    def is_zero(self) -> bool:
        return not self.entries

    def _index_error(self, idx):
        raise ValueError(f"index tuple {idx} out of range 1..{self.n}")

    def validate(self) -> None:
        """Check index ranges and all four algebraic symmetries exactly.

        Raises ValueError naming the violated symmetry and the offending
        index tuple.
        """
        n = self.n
        for idx in self.entries:
            if len(idx) != 4 or any(not 1 <= a <= n for a in idx):
                self._index_error(idx)
        # each property is scanned on its own pass so the reported
        # violation names the most specific broken symmetry
        quads = [
            (i, j, k, l)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            for k in range(1, n + 1)
            for l in range(1, n + 1)
        ]
        for i, j, k, l in quads:
            if self.get(i, j, k, l) != -self.get(j, i, k, l):
                raise ValueError(
                    f"first-pair antisymmetry violated at {(i, j, k, l)}"
                )
        for i, j, k, l in quads:
            if self.get(i, j, k, l) != -self.get(i, j, l, k):
                raise ValueError(
                    f"second-pair antisymmetry violated at {(i, j, k, l)}"
                )
        for i, j, k, l in quads:
            if self.get(i, j, k, l) != self.get(k, l, i, j):
                raise ValueError(
                    f"pair-exchange symmetry violated at {(i, j, k, l)}"
                )
        for i, j, k, l in quads:
            if self.get(i, j, k, l) + self.get(i, k, l, j) + self.get(i, l, j, k) != 0:
                raise ValueError(
                    f"first Bianchi identity violated at {(i, j, k, l)}"
                )

    def to_json(self) -> dict:
        entries = [
            [i, j, k, l, v.numerator, v.denominator]
            for (i, j, k, l), v in sorted(self.entries.items())
        ]
        return {"n": self.n, "entries": entries}

    @classmethod
    def from_json(cls, data: dict) -> "RiemannTensor":
        n = int(data["n"])
        entries = {}
        for row in data["entries"]:
            i, j, k, l, num, den = row
            entries[(int(i), int(j), int(k), int(l))] = Fraction(int(num), int(den))
        return cls(n, entries, validate=True)

    def __repr__(self) -> str:
        return f"RiemannTensor(n={self.n}, nnz={len(self.entries)})"


def flat(n: int) -> RiemannTensor:
    return RiemannTensor(n, {}, validate=False)


def constant_curvature(n: int) -> RiemannTensor:
    """Round sphere normalization R_{ijkl} = d_ik d_jl - d_il d_jk."""
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                entries[(i, j, i, j)] = Fraction(1)
                entries[(i, j, j, i)] = Fraction(-1)
    return RiemannTensor(n, entries, validate=False)


def random_riemann(n: int, seed: int) -> RiemannTensor:
    """Deterministic random tensor with exact symmetries.

    Draws small rationals, antisymmetrizes both pairs, symmetrizes
    pair exchange, then removes the cyclic part.  The cyclic sum of a
    tensor with those three symmetries is totally antisymmetric, so the
    subtraction enforces the first Bianchi identity without breaking
    the others.
    """
    rng = random.Random(seed)
    r = range(1, n + 1)
    raw = {}
    for i in r:
        for j in r:
            for k in r:
                for l in r:
                    raw[(i, j, k, l)] = Fraction(
                        rng.randint(-9, 9), rng.randint(1, 4)
                    )

    def anti_first(t):
        return {
            (i, j, k, l): (t[(i, j, k, l)] - t[(j, i, k, l)]) / 2
            for (i, j, k, l) in t
        }

    def anti_second(t):
        return {
            (i, j, k, l): (t[(i, j, k, l)] - t[(i, j, l, k)]) / 2
            for (i, j, k, l) in t
        }

    def sym_pairs(t):
        return {
            (i, j, k, l): (t[(i, j, k, l)] + t[(k, l, i, j)]) / 2
            for (i, j, k, l) in t
        }

    t = sym_pairs(anti_second(anti_first(raw)))
    out = {}
    for (i, j, k, l), v in t.items():
        cyc = v + t[(i, k, l, j)] + t[(i, l, j, k)]
        out[(i, j, k, l)] = v - cyc / 3
    return RiemannTensor(n, out, validate=False)


@dataclass(frozen=True)
class CurvatureContractions:
    """Ricci matrix and scalar curvature derived from a Riemann tensor."""

    n: int
    ricci: tuple
    scalar: Fraction

    def ric(self, a: int, b: int) -> Fraction:
        return self.ricci[a - 1][b - 1]


def contract(t: RiemannTensor) -> CurvatureContractions:
    n = t.n
    ricci = tuple(
        tuple(
            sum((t.get(a, p, b, p) for p in range(1, n + 1)), Fraction(0))
            for b in range(1, n + 1)
        )
        for a in range(1, n + 1)
    )
    scalar = sum((ricci[a][a] for a in range(n)), Fraction(0))
    return CurvatureContractions(n, ricci, scalar)


def ricci_bilinear(contr: CurvatureContractions, u: FrameVector, v: FrameVector) -> Fraction:
    return sum(
        (
            u[a] * v[b] * contr.ric(a, b)
            for a in range(1, contr.n + 1)
            for b in range(1, contr.n + 1)
            if u[a] and v[b]
        ),
        Fraction(0),
    )


def einstein_bilinear(t: RiemannTensor, u: FrameVector, v: FrameVector) -> Fraction:
    """G(u, v) = Ric(u, v) - (1/2) s g(u, v) with g the frame pairing."""
    contr = contract(t)
    return ricci_bilinear(contr, u, v) - Fraction(1, 2) * contr.scalar * inner(u, v)


def random_vector(n: int, seed: int) -> FrameVector:
    """Deterministic random rational vector, redrawn while all components vanish."""
    rng = random.Random(seed)
    while True:
        comps = tuple(
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)
        )
        if any(comps):
            return FrameVector(n, comps)

"""Clifford actions on the exterior algebra of R^n, with exact matrix arithmetic.

Basis of Lambda* R^n: subsets of {1..n} encoded as bitmasks (bit j-1 set
means e_j* is a factor, factors ordered by increasing index).  Wedge and
contraction pick up the sign (-1)^{#{k in S : k < j}}.  All operators are
2^n x 2^n matrices over ScalarPoly; rows store only nonzero entries but
equality, addition, and multiplication have dense semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalars import GaussianRational, ScalarPoly

_ZERO = ScalarPoly.zero()
_F0 = Fraction(0)


@dataclass(frozen=True)
class Dimension:
    """Even dimension n = 2m of the underlying space."""

    n: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError(f"dimension must be even and >= 2, got {self.n}")

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def matrix_size(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class FrameVector:
    """Vector with exact rational components in the orthonormal frame."""

    n: int
    components: tuple

    def __post_init__(self):
        if len(self.components) != self.n:
            raise ValueError("component count does not match dimension")
        object.__setattr__(
            self, "components", tuple(Fraction(c) for c in self.components)
        )

    def __getitem__(self, a: int) -> Fraction:
        """Component for frame index a, 1-based."""
        return self.components[a - 1]

    @classmethod
    def basis(cls, n: int, j: int) -> "FrameVector":
        return cls(n, tuple(Fraction(int(a == j)) for a in range(1, n + 1)))

    def is_zero(self) -> bool:
        return not any(self.components)


def inner(u: FrameVector, v: FrameVector) -> Fraction:
    """Euclidean pairing sum_a u_a v_a in the orthonormal frame."""
    return sum((x * y for x, y in zip(u.components, v.components)), Fraction(0))


class CliffordOp:
    """Square matrix over ScalarPoly acting on the subset basis.

    rows[i] is a dict {column: ScalarPoly} holding the nonzero entries of
    row i.  The zero-purge invariant (no zero polynomials stored) makes
    dict comparison coincide with entrywise matrix equality.
    """

    __slots__ = ("n", "size", "rows")

    def __init__(self, n: int, rows: list | None = None):
        self.n = n
        self.size = 1 << n
        if rows is None:
            rows = [dict() for _ in range(self.size)]
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "CliffordOp":
        one = ScalarPoly.one()
        return cls(n, [{i: one} for i in range(1 << n)])

    @classmethod
    def zero(cls, n: int) -> "CliffordOp":
        return cls(n)

    def entry(self, i: int, j: int) -> ScalarPoly:
        return self.rows[i].get(j, _ZERO)

    def __add__(self, other: "CliffordOp") -> "CliffordOp":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        rows = []
        for ra, rb in zip(self.rows, other.rows):
            row = dict(ra)
            for j, v in rb.items():
                cur = row.get(j)
                s = v if cur is None else cur + v
                if s:
                    row[j] = s
                elif cur is not None:
                    del row[j]
            rows.append(row)
        return CliffordOp(self.n, rows)

    def __sub__(self, other: "CliffordOp") -> "CliffordOp":
        return self + (-other)

    def __neg__(self) -> "CliffordOp":
        return CliffordOp(self.n, [{j: -v for j, v in r.items()} for r in self.rows])

    def scale(self, c) -> "CliffordOp":
        if isinstance(c, ScalarPoly):
            if not c:
                return CliffordOp.zero(self.n)
            return CliffordOp(
                self.n, [{j: v * c for j, v in r.items()} for r in self.rows]
            )
        c = Fraction(c)
        if not c:
            return CliffordOp.zero(self.n)
        return CliffordOp(
            self.n, [{j: v.scale(c) for j, v in r.items()} for r in self.rows]
        )

    def __mul__(self, other: "CliffordOp") -> "CliffordOp":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        brows = other.rows
        rows = []
        for ra in self.rows:
            acc: dict = {}
            for k, a in ra.items():
                for j, b in brows[k].items():
                    p = a * b
                    cur = acc.get(j)
                    s = p if cur is None else cur + p
                    if s:
                        acc[j] = s
                    elif cur is not None:
                        del acc[j]
            rows.append(acc)
        return CliffordOp(self.n, rows)

    def __eq__(self, other) -> bool:
        if isinstance(other, CliffordOp):
            return self.n == other.n and self.rows == other.rows
        return NotImplemented

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def trace(self) -> ScalarPoly:
        acc = ScalarPoly.zero()
        for i, r in enumerate(self.rows):
            v = r.get(i)
            if v is not None:
                acc = acc + v
        return acc

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def evaluate_params(self, a0, b0) -> list:
        """Dense numeric matrix of GaussianRational at a parameter point."""
        out = []
        for r in self.rows:
            row = [GaussianRational(0)] * self.size
            for j, v in r.items():
                row[j] = v.evaluate(a0, b0)
            out.append(row)
        return out

    def __repr__(self) -> str:
        return f"CliffordOp(n={self.n}, nnz={self.nnz()})"


def op_trace(op: CliffordOp) -> ScalarPoly:
    return op.trace()


def op_mul(a: CliffordOp, b: CliffordOp) -> CliffordOp:
    return a * b


def trace_product(a: CliffordOp, b: CliffordOp) -> ScalarPoly:
    """tr(a*b) without materializing the product matrix.

    Coefficients are accumulated in mutable slots and turned into a
    polynomial once at the end; the entry loop is the innermost hot path
    of the whole engine.
    """
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    brows = b.rows
    acc: dict = {}
    for i, ra in enumerate(a.rows):
        for k, av in ra.items():
            bv = brows[k].get(i)
            if bv is None:
                continue
            for (da1, db1), ca in av.terms.items():
                for (db_key, cb) in bv.terms.items():
                    da2, db2 = db_key
                    if ca.im or cb.im:
                        re = ca.re * cb.re - ca.im * cb.im
                        im = ca.re * cb.im + ca.im * cb.re
                    else:
                        re = ca.re * cb.re
                        im = _F0
                    key = (da1 + da2, db1 + db2)
                    slot = acc.get(key)
                    if slot is None:
                        acc[key] = [re, im]
                    else:
                        slot[0] += re
                        slot[1] += im
    out = {}
    for key, (re, im) in acc.items():
        if re or im:
            out[key] = GaussianRational._make(re, im)
    res = ScalarPoly.__new__(ScalarPoly)
    res.terms = out
    return res


def anticommutator(a: CliffordOp, b: CliffordOp) -> CliffordOp:
    return a * b + b * a


def weighted_sum(n: int, pieces) -> CliffordOp:
    """Sum of coeff * op over (coeff, op) pairs, accumulated in place.

    Repeated immutable adds copy the growing accumulator on every step;
    this builds the row dicts once.  coeff may be a rational or a
    ScalarPoly.
    """
    rows: list = [dict() for _ in range(1 << n)]
    for coeff, op in pieces:
        poly = isinstance(coeff, ScalarPoly)
        if not poly:
            coeff = Fraction(coeff)
        if not coeff:
            continue
        for i, r in enumerate(op.rows):
            row = rows[i]
            for j, v in r.items():
                p = v * coeff if poly else v.scale(coeff)
                cur = row.get(j)
                s = p if cur is None else cur + p
                if s:
                    row[j] = s
                elif cur is not None:
                    del row[j]
    return CliffordOp(n, rows)


def _wedge_sign(mask: int, bit: int) -> int:
    # parity of the number of set factors below the inserted index
    return -1 if bin(mask & (bit - 1)).count("1") % 2 else 1


@lru_cache(maxsize=None)
def ext_op(n: int, j: int) -> CliffordOp:
    """Wedge by e_j* (indices 1-based)."""
    if not 1 <= j <= n:
        raise ValueError(f"frame index {j} out of range for n={n}")
    bit = 1 << (j - 1)
    rows = [dict() for _ in range(1 << n)]
    for s in range(1 << n):
        if not s & bit:
            rows[s | bit][s] = ScalarPoly.const(_wedge_sign(s, bit))
    return CliffordOp(n, rows)


@lru_cache(maxsize=None)
def int_op(n: int, j: int) -> CliffordOp:
    """Contraction by e_j (adjoint of ext_op for the induced inner product)."""
    if not 1 <= j <= n:
        raise ValueError(f"frame index {j} out of range for n={n}")
    bit = 1 << (j - 1)
    rows = [dict() for _ in range(1 << n)]
    for s in range(1 << n):
        if s & bit:
            rows[s ^ bit][s] = ScalarPoly.const(_wedge_sign(s, bit))
    return CliffordOp(n, rows)


@lru_cache(maxsize=None)
def c_op(n: int, j: int) -> CliffordOp:
    """c(e_j) = ext - int; generates the Clifford relations with minus sign."""
    return ext_op(n, j) - int_op(n, j)


@lru_cache(maxsize=None)
def hatc_op(n: int, j: int) -> CliffordOp:
    """chat(e_j) = ext + int; generates the Clifford relations with plus sign."""
    return ext_op(n, j) + int_op(n, j)


@lru_cache(maxsize=None)
def tildec_op(n: int, j: int) -> CliffordOp:
    """ctilde(e_j) = a0*ext - b0*int, the nonminimal deformation of c."""
    return ext_op(n, j).scale(ScalarPoly.a0()) - int_op(n, j).scale(ScalarPoly.b0())


_KINDS = {"ext": ext_op, "int": int_op, "c": c_op, "hatc": hatc_op, "tildec": tildec_op}


def vector_clifford(kind: str, u: FrameVector) -> CliffordOp:
    """Linear extension sum_j u_j * kind(e_j).

    kind is one of "ext", "int", "c", "hatc", "tildec".
    """
    gen = _KINDS[kind]
    return weighted_sum(
        u.n, ((u[j], gen(u.n, j)) for j in range(1, u.n + 1))
    )


@lru_cache(maxsize=None)
def pair_cc(n: int, s: int, t: int) -> CliffordOp:
    """Cached product c(e_s) c(e_t)."""
    return c_op(n, s) * c_op(n, t)


@lru_cache(maxsize=None)
def pair_hh(n: int, s: int, t: int) -> CliffordOp:
    """Cached product chat(e_s) chat(e_t)."""
    return hatc_op(n, s) * hatc_op(n, t)


@lru_cache(maxsize=None)
def quad_hhcc(n: int, i: int, j: int, k: int, l: int) -> CliffordOp:
    """Cached product chat(e_i) chat(e_j) c(e_k) c(e_l)."""
    return pair_hh(n, i, j) * pair_cc(n, k, l)


class ProductCache:
    """Memos for operator products, chain traces, and named builds.

    All keys use object identity; the cache holds references to the
    keyed operands so the ids stay valid for its lifetime.  Meant to
    live for one verification run.
    """

    __slots__ = ("_store", "_traces", "_named")

    def __init__(self):
        self._store: dict = {}
        self._traces: dict = {}
        self._named: dict = {}

    def mul(self, a: CliffordOp, b: CliffordOp) -> CliffordOp:
        key = (id(a), id(b))
        hit = self._store.get(key)
        if hit is not None:
            return hit[2]
        prod = a * b
        self._store[key] = (a, b, prod)
        return prod

    def chain_trace(self, ops: tuple, n: int) -> ScalarPoly:
        """Trace of the product of a chain, memoized on the chain identity.

        Composition reuses the same coefficient matrices across many
        terms (derivative branches, index sums, tag filters), so chain
        traces repeat heavily.
        """
        if not ops:
            return ScalarPoly.const(1 << n)
        key = tuple(map(id, ops))
        hit = self._traces.get(key)
        if hit is not None:
            return hit[1]
        seq = list(ops)
        while len(seq) > 2:
            seq[0:2] = [self.mul(seq[0], seq[1])]
        val = trace_product(seq[0], seq[1]) if len(seq) == 2 else seq[0].trace()
        self._traces[key] = (ops, val)
        return val

    def named(self, key: tuple, keep, build):
        """Memo for a named build; keep is retained so id keys stay valid."""
        hit = self._named.get(key)
        if hit is None:
            hit = (keep, build())
            self._named[key] = hit
        return hit[1]

"""Operator-valued pseudodifferential symbols at a point in normal coordinates.

A symbol is a finite sum of terms

    scalar * x^alpha xi^beta ||xi||^p (x) op_1 op_2 ... op_k

where scalar is a ScalarPoly, the monomials live on R^n, and the ops
chain multiplies out to one Clifford-algebra coefficient.  The chain is
kept unevaluated so that shared factors are materialized once through a
ProductCache.  Homogeneity order of a term is |beta| + p; composition
pairs xi-derivatives on the left factor with x-derivatives on the right
factor and evaluates everything at the base point x = 0.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .clifford import (
    CliffordOp,
    Dimension,
    FrameVector,
    ProductCache,
    pair_cc,
    pair_hh,
    quad_hhcc,
    tildec_op,
    vector_clifford,
    weighted_sum,
)
from .curvature import RiemannTensor, contract
from .scalars import GaussianRational, ScalarPoly

_ONE = ScalarPoly.one()


class SymbolTerm:
    """One additive term of an operator-valued symbol."""

    __slots__ = ("x_mono", "xi_mono", "norm_power", "scalar", "ops", "tag")

    def __init__(self, x_mono, xi_mono, norm_power, scalar, ops=(), tag=""):
        self.x_mono = x_mono
        self.xi_mono = xi_mono
        self.norm_power = norm_power
        self.scalar = scalar
        self.ops = ops
        self.tag = tag

    def order(self) -> int:
        return sum(self.xi_mono) + self.norm_power

    def materialize(self, cache: ProductCache | None = None) -> CliffordOp:
        """Coefficient matrix scalar * op_1 ... op_k, identity chain included."""
        n = len(self.x_mono)
        ops = self.ops
        if not ops:
            return CliffordOp.identity(n).scale(self.scalar)
        acc = ops[0]
        for nxt in ops[1:]:
            acc = cache.mul(acc, nxt) if cache is not None else acc * nxt
        return acc.scale(self.scalar)

    def __repr__(self) -> str:
        return (
            f"SymbolTerm(x={self.x_mono}, xi={self.xi_mono}, "
            f"norm={self.norm_power}, scalar={self.scalar.text()}, "
            f"ops={len(self.ops)}, tag={self.tag!r})"
        )


def _bump(mono: tuple, idx0: int, delta: int) -> tuple:
    return mono[:idx0] + (mono[idx0] + delta,) + mono[idx0 + 1 :]


def d_xi(term: SymbolTerm, j: int) -> list:
    """Derivative in xi_j; the norm factor contributes p xi_j ||xi||^{p-2}."""
    out = []
    e = term.xi_mono[j - 1]
    if e:
        out.append(
            SymbolTerm(
                term.x_mono,
                _bump(term.xi_mono, j - 1, -1),
                term.norm_power,
                term.scalar.scale(e),
                term.ops,
                term.tag,
            )
        )
    p = term.norm_power
    if p:
        out.append(
            SymbolTerm(
                term.x_mono,
                _bump(term.xi_mono, j - 1, +1),
                p - 2,
                term.scalar.scale(p),
                term.ops,
                term.tag,
            )
        )
    return out


def d_x(term: SymbolTerm, j: int) -> list:
    """Derivative in x_j; coefficients and xi data are x-independent."""
    e = term.x_mono[j - 1]
    if not e:
        return []
    return [
        SymbolTerm(
            _bump(term.x_mono, j - 1, -1),
            term.xi_mono,
            term.norm_power,
            term.scalar.scale(e),
            term.ops,
            term.tag,
        )
    ]


class SymbolExpansion:
    """Finite collection of symbol terms, bucketed by homogeneity order."""

    def __init__(self, n: int):
        self.n = n
        self._orders: dict = {}

    def add(self, term: SymbolTerm) -> None:
        if not term.scalar:
            return
        self._orders.setdefault(term.order(), []).append(term)

    def terms_at(self, order: int) -> list:
        return self._orders.get(order, [])

    def orders(self) -> list:
        return sorted(o for o, terms in self._orders.items() if terms)

    def merged(self, cache: ProductCache | None = None) -> dict:
        """Canonical form: (order, x, xi, norm) -> materialized coefficient.

        Entries whose coefficient sums to zero are removed, so two
        expansions are the same symbol iff their merged maps are equal.
        """
        out: dict = {}
        for order, terms in self._orders.items():
            for t in terms:
                key = (order, t.x_mono, t.xi_mono, t.norm_power)
                mat = t.materialize(cache)
                cur = out.get(key)
                out[key] = mat if cur is None else cur + mat
        return {k: v for k, v in out.items() if not v.is_zero()}

    def dump(self, cache: ProductCache | None = None) -> str:
        """Debug rendering with stable ordering and content-hashed matrices."""
        lines = []
        merged = self.merged(cache)
        for key in sorted(merged):
            order, x, xi, p = key
            mat = merged[key]
            digest = hashlib.sha256(
                repr(
                    [(i, j, mat.rows[i][j].text()) for i in range(mat.size) for j in sorted(mat.rows[i])]
                ).encode()
            ).hexdigest()[:12]
            lines.append(f"order={order} x^{x} xi^{xi} |xi|^{p} (x) [{digest}]")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# curvature-contraction coefficient matrices
# ---------------------------------------------------------------------------


def antisym_pair_matrix(n: int, weight, kind: str) -> CliffordOp:
    """sum_{s,t} w(s,t) k(e_s) k(e_t) for a weight antisymmetric in (s,t).

    Diagonal products collapse against the antisymmetry, so the sum is
    2 sum_{s<t} w(s,t) k(e_s) k(e_t).
    """
    pair = pair_cc if kind == "c" else pair_hh
    return weighted_sum(
        n,
        (
            (2 * weight(s, t), pair(n, s, t))
            for s in range(1, n + 1)
            for t in range(s + 1, n + 1)
        ),
    )


def _memo(cache: ProductCache | None, key: tuple, keep, build) -> CliffordOp:
    if cache is None:
        return build()
    return cache.named(key, keep, build)


def curv_cc(R: RiemannTensor, a: int, b: int, cache: ProductCache | None = None) -> CliffordOp:
    """sum_{s,t} R_{bats} c(e_s) c(e_t)."""
    return _memo(
        cache,
        ("curv_cc", id(R), a, b),
        R,
        lambda: antisym_pair_matrix(R.n, lambda s, t: R.get(b, a, t, s), "c"),
    )


def curv_hh(R: RiemannTensor, a: int, b: int, cache: ProductCache | None = None) -> CliffordOp:
    """sum_{s,t} R_{bats} chat(e_s) chat(e_t)."""
    return _memo(
        cache,
        ("curv_hh", id(R), a, b),
        R,
        lambda: antisym_pair_matrix(R.n, lambda s, t: R.get(b, a, t, s), "hatc"),
    )


def omega_cc(R: RiemannTensor, l: int, p: int, cache: ProductCache | None = None) -> CliffordOp:
    """sum_{s,t} (1/2) R_{lpst} c(e_s) c(e_t), the x_l Taylor slope of the
    connection-form contraction along e_p."""
    return _memo(
        cache,
        ("omega_cc", id(R), l, p),
        R,
        lambda: antisym_pair_matrix(
            R.n, lambda s, t: Fraction(1, 2) * R.get(l, p, s, t), "c"
        ),
    )


def omega_hh(R: RiemannTensor, l: int, p: int, cache: ProductCache | None = None) -> CliffordOp:
    return _memo(
        cache,
        ("omega_hh", id(R), l, p),
        R,
        lambda: antisym_pair_matrix(
            R.n, lambda s, t: Fraction(1, 2) * R.get(l, p, s, t), "hatc"
        ),
    )


def f_matrix(R: RiemannTensor, cache: ProductCache | None = None) -> CliffordOp:
    """sum_{ijkl} R_{ijkl} chat_i chat_j c_k c_l via the pair antisymmetries."""
    n = R.n
    return _memo(
        cache,
        ("f_matrix", id(R)),
        R,
        lambda: weighted_sum(
            n,
            (
                (4 * R.get(i, j, k, l), quad_hhcc(n, i, j, k, l))
                for i in range(1, n + 1)
                for j in range(i + 1, n + 1)
                for k in range(1, n + 1)
                for l in range(k + 1, n + 1)
            ),
        ),
    )


# ---------------------------------------------------------------------------
# connection data for the Lichnerowicz-type square
# ---------------------------------------------------------------------------


@dataclass
class ConnectionData:
    """Endomorphism slots (T_a, T_ab, E) of a generalized Laplacian."""

    n: int
    t_a: tuple
    t_ab: dict
    e: CliffordOp

    def t_aa(self, a: int) -> CliffordOp:
        return self.t_ab[(a, a)]


def standard_connection(
    dim: Dimension, R: RiemannTensor, cache: ProductCache | None = None
) -> ConnectionData:
    """Connection data of the square of the flat-coefficient Hodge operator.

    T_a = 0, T_ab = -(1/8) sum R_{bats} c_s c_t + (1/8) sum R_{bats}
    chat_s chat_t, E = (1/8) sum R_{ijkl} chat_i chat_j c_k c_l + s/4.
    """
    n = dim.n
    zero = CliffordOp.zero(n)
    t_a = tuple(zero for _ in range(n))
    t_ab = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            t_ab[(a, b)] = curv_cc(R, a, b, cache).scale(Fraction(-1, 8)) + curv_hh(
                R, a, b, cache
            ).scale(Fraction(1, 8))
    s = contract(R).scalar
    e = f_matrix(R, cache).scale(Fraction(1, 8)) + CliffordOp.identity(n).scale(
        ScalarPoly.const(Fraction(s, 4))
    )
    return ConnectionData(n, t_a, t_ab, e)


# ---------------------------------------------------------------------------
# symbol families
# ---------------------------------------------------------------------------


def _e(n: int, *idx: int) -> tuple:
    mono = [0] * n
    for j in idx:
        mono[j - 1] += 1
    return tuple(mono)


def _imag_const(q: Fraction) -> ScalarPoly:
    return ScalarPoly({(0, 0): GaussianRational(0, q)})


def lemma1_symbols(
    dim: Dimension,
    R: RiemannTensor,
    conn: ConnectionData,
    m_family: int | None = None,
) -> SymbolExpansion:
    """Generic negative-order symbols of the -M power of a Laplacian with
    connection slots (T_a, T_ab, E), through three orders at the base point.
    """
    n = dim.n
    M = dim.m if m_family is None else m_family
    contr = contract(R)
    zero_x = _e(n)
    exp = SymbolExpansion(n)

    # top order -2M
    for a in range(1, n + 1):
        exp.add(SymbolTerm(zero_x, _e(n, a, a), -2 * M - 2, _ONE, (), "delta"))
    mthird = Fraction(M, 3)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    r = R.get(a, j, b, k)
                    if r:
                        exp.add(
                            SymbolTerm(
                                _e(n, j, k),
                                _e(n, a, b),
                                -2 * M - 2,
                                ScalarPoly.const(-mthird * r),
                                (),
                                "rxx",
                            )
                        )

    # order -2M-1
    for a in range(1, n + 1):
        for k in range(1, n + 1):
            ric = contr.ric(a, k)
            if ric:
                exp.add(
                    SymbolTerm(
                        _e(n, k),
                        _e(n, a),
                        -2 * M - 2,
                        _imag_const(Fraction(-2 * M, 3) * ric),
                        (),
                        "ric",
                    )
                )
    minus_2mi = _imag_const(Fraction(-2 * M))
    for a in range(1, n + 1):
        if not conn.t_a[a - 1].is_zero():
            exp.add(
                SymbolTerm(
                    zero_x, _e(n, a), -2 * M - 2, minus_2mi, (conn.t_a[a - 1],), "ta"
                )
            )
        for b in range(1, n + 1):
            t = conn.t_ab[(a, b)]
            if not t.is_zero():
                exp.add(SymbolTerm(_e(n, b), _e(n, a), -2 * M - 2, minus_2mi, (t,), "tab"))

    # order -2M-2
    mm1_3 = Fraction(M * (M + 1), 3)
    mm1 = Fraction(M * (M + 1))
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            ric = contr.ric(a, b)
            if ric:
                exp.add(
                    SymbolTerm(
                        zero_x,
                        _e(n, a, b),
                        -2 * M - 4,
                        ScalarPoly.const(mm1_3 * ric),
                        (),
                        "ric",
                    )
                )
            ta, tb = conn.t_a[a - 1], conn.t_a[b - 1]
            if not ta.is_zero() and not tb.is_zero():
                exp.add(
                    SymbolTerm(
                        zero_x,
                        _e(n, a, b),
                        -2 * M - 4,
                        ScalarPoly.const(-2 * mm1),
                        (ta, tb),
                        "tata",
                    )
                )
            t = conn.t_ab[(a, b)]
            if not t.is_zero():
                exp.add(
                    SymbolTerm(
                        zero_x,
                        _e(n, a, b),
                        -2 * M - 4,
                        ScalarPoly.const(2 * mm1),
                        (t,),
                        "tab",
                    )
                )
    for a in range(1, n + 1):
        ta = conn.t_a[a - 1]
        if not ta.is_zero():
            exp.add(
                SymbolTerm(
                    zero_x, zero_x, -2 * M - 2, ScalarPoly.const(M), (ta, ta), "tata"
                )
            )
        taa = conn.t_aa(a)
        if not taa.is_zero():
            exp.add(
                SymbolTerm(
                    zero_x, zero_x, -2 * M - 2, ScalarPoly.const(-M), (taa,), "tab"
                )
            )
    if not conn.e.is_zero():
        exp.add(
            SymbolTerm(zero_x, zero_x, -2 * M - 2, ScalarPoly.const(-M), (conn.e,), "e")
        )
    return exp


def lemma2_symbols(
    dim: Dimension,
    R: RiemannTensor,
    m: int,
    exponent: int,
    cache: ProductCache | None = None,
) -> SymbolExpansion:
    """Concrete negative-order symbols of the Hodge Laplacian power.

    exponent selects the power: -2m for the full inverse used against the
    second-order product, -2m+2 for the reduced power multiplied by the
    zero-order factor.  The three stored orders are exponent, exponent-1,
    exponent-2.
    """
    n = dim.n
    if exponent == -2 * m:
        M = m
    elif exponent == -2 * m + 2:
        M = m - 1
    else:
        raise ValueError(f"unsupported symbol exponent {exponent} for m={m}")
    contr = contract(R)
    zero_x = _e(n)
    exp = SymbolExpansion(n)

    # top order -2M
    for a in range(1, n + 1):
        exp.add(SymbolTerm(zero_x, _e(n, a, a), -2 * M - 2, _ONE, (), "delta"))
    mthird = Fraction(M, 3)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    r = R.get(a, j, b, k)
                    if r:
                        exp.add(
                            SymbolTerm(
                                _e(n, j, k),
                                _e(n, a, b),
                                -2 * M - 2,
                                ScalarPoly.const(-mthird * r),
                                (),
                                "rxx",
                            )
                        )

    # order -2M-1: Ricci slope plus the curvature contractions coming from
    # the connection form, one c-family and one chat-family
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            ric = contr.ric(a, b)
            if ric:
                exp.add(
                    SymbolTerm(
                        _e(n, b),
                        _e(n, a),
                        -2 * M - 2,
                        _imag_const(Fraction(-2 * M, 3) * ric),
                        (),
                        "ric",
                    )
                )
            cc = curv_cc(R, a, b, cache)
            if not cc.is_zero():
                exp.add(
                    SymbolTerm(
                        _e(n, b),
                        _e(n, a),
                        -2 * M - 2,
                        _imag_const(Fraction(M, 4)),
                        (cc,),
                        "cc",
                    )
                )
            hh = curv_hh(R, a, b, cache)
            if not hh.is_zero():
                exp.add(
                    SymbolTerm(
                        _e(n, b),
                        _e(n, a),
                        -2 * M - 2,
                        _imag_const(Fraction(-M, 4)),
                        (hh,),
                        "hchc",
                    )
                )

    # order -2M-2
    mm1_3 = Fraction(M * (M + 1), 3)
    mm1_4 = Fraction(M * (M + 1), 4)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            ric = contr.ric(a, b)
            if ric:
                exp.add(
                    SymbolTerm(
                        zero_x,
                        _e(n, a, b),
                        -2 * M - 4,
                        ScalarPoly.const(mm1_3 * ric),
                        (),
                        "ric",
                    )
                )
            cc = curv_cc(R, a, b, cache)
            if not cc.is_zero():
                exp.add(
                    SymbolTerm(
                        zero_x,
                        _e(n, a, b),
                        -2 * M - 4,
                        ScalarPoly.const(-mm1_4),
                        (cc,),
                        "cc",
                    )
                )
            hh = curv_hh(R, a, b, cache)
            if not hh.is_zero():
                exp.add(
                    SymbolTerm(
                        zero_x,
                        _e(n, a, b),
                        -2 * M - 4,
                        ScalarPoly.const(mm1_4),
                        (hh,),
                        "hchc",
                    )
                )
    f = f_matrix(R, cache)
    if not f.is_zero():
        exp.add(
            SymbolTerm(
                zero_x, zero_x, -2 * M - 2, ScalarPoly.const(Fraction(-M, 8)), (f,), "f"
            )
        )
    if contr.scalar and M:
        exp.add(
            SymbolTerm(
                zero_x,
                zero_x,
                -2 * M - 2,
                ScalarPoly.const(Fraction(-M, 4) * contr.scalar),
                (),
                "s",
            )
        )
    return exp


def symbols_PQ(
    dim: Dimension,
    R: RiemannTensor,
    w: FrameVector,
    role: str = "P",
    cache: ProductCache | None = None,
) -> SymbolExpansion:
    """Symbols of one first-order factor ctilde(w) * (Hodge operator).

    Order 1 is i ctilde(w) ctilde(xi); order 0 carries the x-linear
    connection-form contributions, a c-family with weight -1/4 and a
    chat-family with weight +1/4.  The coefficient vector w is constant,
    so no other x-dependence appears.
    """
    if role not in ("P", "Q"):
        raise ValueError(f"role must be 'P' or 'Q', got {role!r}")
    n = dim.n
    cw = vector_clifford("tildec", w)
    w_p = []
    for p in range(1, n + 1):
        prod = (
            cache.mul(cw, tildec_op(n, p)) if cache is not None else cw * tildec_op(n, p)
        )
        w_p.append(prod)
    exp = SymbolExpansion(n)
    i_unit = ScalarPoly.imag_unit()
    zero_x = _e(n)
    for f in range(1, n + 1):
        exp.add(SymbolTerm(zero_x, _e(n, f), 0, i_unit, (w_p[f - 1],), ""))
    quarter = ScalarPoly.const(Fraction(1, 4))
    neg_quarter = ScalarPoly.const(Fraction(-1, 4))
    for l in range(1, n + 1):
        for p in range(1, n + 1):
            oc = omega_cc(R, l, p, cache)
            if not oc.is_zero():
                exp.add(
                    SymbolTerm(
                        _e(n, l), zero_x, 0, neg_quarter, (w_p[p - 1], oc), "cc"
                    )
                )
            oh = omega_hh(R, l, p, cache)
            if not oh.is_zero():
                exp.add(
                    SymbolTerm(
                        _e(n, l), zero_x, 0, quarter, (w_p[p - 1], oh), "hchc"
                    )
                )
    return exp


def uv_symbol(dim: Dimension, u: FrameVector, v: FrameVector, cache=None) -> SymbolExpansion:
    """Order-zero symbol of the endomorphism ctilde(u) ctilde(v)."""
    n = dim.n
    cu = vector_clifford("tildec", u)
    cv = vector_clifford("tildec", v)
    prod = cache.mul(cu, cv) if cache is not None else cu * cv
    exp = SymbolExpansion(n)
    exp.add(SymbolTerm(_e(n), _e(n), 0, _ONE, (prod,), ""))
    return exp


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

_MINUS_I_POW = (
    ScalarPoly.one(),
    ScalarPoly({(0, 0): GaussianRational(0, -1)}),
    ScalarPoly.const(-1),
)


def compose_block(
    A: SymbolExpansion, oa: int, B: SymbolExpansion, ob: int, k: int
) -> list:
    """Terms of (-i)^k/k! sum_alpha d_xi^alpha[A_oa] d_x^alpha[B_ob] at x=0.

    Only multi-indices alpha of weight k act; the base-point evaluation
    keeps exactly the B terms whose x monomial equals alpha, and their
    alpha! cancels the 1/alpha! of the composition formula, leaving the
    flat factor (-i)^k.
    """
    if k < 0:
        return []
    if k > 2:
        raise ValueError("stored symbol data only supports two derivatives")
    n = A.n
    aterms = [t for t in A.terms_at(oa) if not any(t.x_mono)]
    if not aterms:
        return []
    bterms = B.terms_at(ob)
    out = []
    if k == 0:
        for ta in aterms:
            for tb in bterms:
                if any(tb.x_mono):
                    continue
                out.append(_product_term(n, ta, tb, _ONE))
        return out
    bgroup: dict = {}
    for tb in bterms:
        if sum(tb.x_mono) == k:
            bgroup.setdefault(tb.x_mono, []).append(tb)
    if not bgroup:
        return []
    coeff = _MINUS_I_POW[k]
    for combo in combinations_with_replacement(range(1, n + 1), k):
        alpha = _e(n, *combo)
        blist = bgroup.get(alpha)
        if not blist:
            continue
        derived = aterms
        for j in combo:
            nxt = []
            for t in derived:
                nxt.extend(d_xi(t, j))
            derived = nxt
            if not derived:
                break
        for ta in derived:
            for tb in blist:
                out.append(_product_term(n, ta, tb, coeff))
    return out


def _product_term(n: int, ta: SymbolTerm, tb: SymbolTerm, coeff: ScalarPoly) -> SymbolTerm:
    xi = tuple(a + b for a, b in zip(ta.xi_mono, tb.xi_mono))
    scalar = ta.scalar * tb.scalar
    if coeff is not _ONE:
        scalar = scalar * coeff
    return SymbolTerm(
        _e(n),
        xi,
        ta.norm_power + tb.norm_power,
        scalar,
        ta.ops + tb.ops,
        ta.tag or tb.tag,
    )


def compose(A: SymbolExpansion, B: SymbolExpansion, target_order: int) -> SymbolExpansion:
    """All composition contributions of the given total order at x = 0."""
    exp = SymbolExpansion(A.n)
    for oa in A.orders():
        for ob in B.orders():
            k = oa + ob - target_order
            if k < 0:
                continue
            for term in compose_block(A, oa, B, ob, k):
                exp.add(term)
    return exp


def symbol_product_PQ(
    dim: Dimension,
    R: RiemannTensor,
    u: FrameVector,
    v: FrameVector,
    cache: ProductCache | None = None,
) -> SymbolExpansion:
    """Symbols of the product of the two first-order factors at the base
    point, through orders 2, 1, 0.  The order-1 bucket comes out empty:
    every candidate term carries a positive x power."""
    P = symbols_PQ(dim, R, u, "P", cache)
    Q = symbols_PQ(dim, R, v, "Q", cache)
    exp = SymbolExpansion(dim.n)
    for target in (2, 1, 0):
        for oa in (1, 0):
            for ob in (1, 0):
                k = oa + ob - target
                if k < 0:
                    continue
                for term in compose_block(P, oa, Q, ob, k):
                    exp.add(term)
    return exp

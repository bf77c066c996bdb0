"""Curvature tensors: symmetries, contractions, serialization, seeding."""

from fractions import Fraction

import pytest

from wres.clifford import FrameVector, inner
from wres.curvature import (
    RiemannTensor,
    constant_curvature,
    contract,
    einstein_bilinear,
    flat,
    random_riemann,
    random_vector,
    ricci_bilinear,
)


class TestValidation:
    def test_index_range(self):
        with pytest.raises(ValueError, match="out of range"):
            RiemannTensor(4, {(1, 2, 5, 1): Fraction(1)})

    def test_first_pair_antisymmetry(self):
        with pytest.raises(ValueError, match="first-pair antisymmetry"):
            RiemannTensor(2, {(1, 2, 1, 2): Fraction(1)})

    def test_second_pair_antisymmetry(self):
        with pytest.raises(ValueError, match="antisymmetry"):
            RiemannTensor(
                2,
                {
                    (1, 2, 1, 2): Fraction(1),
                    (2, 1, 1, 2): Fraction(-1),
                    (1, 2, 2, 1): Fraction(-1),
                    (2, 1, 2, 1): Fraction(1),
                    (1, 1, 1, 2): Fraction(3),
                },
            )

    def test_pair_exchange(self):
        # antisymmetries hold but (1,2,3,4) and (3,4,1,2) disagree
        entries = {}

        def put(i, j, k, l, v):
            entries[(i, j, k, l)] = v
            entries[(j, i, k, l)] = -v
            entries[(i, j, l, k)] = -v
            entries[(j, i, l, k)] = v

        put(1, 2, 3, 4, Fraction(1))
        put(3, 4, 1, 2, Fraction(2))
        with pytest.raises(ValueError, match="pair-exchange"):
            RiemannTensor(4, entries)

    def test_bianchi(self):
        entries = {}

        def put(i, j, k, l, v):
            for (a, b, c, d), w in (
                ((i, j, k, l), v),
                ((j, i, k, l), -v),
                ((i, j, l, k), -v),
                ((j, i, l, k), v),
            ):
                entries[(a, b, c, d)] = w
                entries[(c, d, a, b)] = w

        put(1, 2, 3, 4, Fraction(1))
        with pytest.raises(ValueError, match="Bianchi"):
            RiemannTensor(4, entries)

    def test_dimension_floor(self):
        with pytest.raises(ValueError):
            RiemannTensor(1, {})


class TestFixedTensors:
    def test_flat_is_zero(self):
        t = flat(4)
        assert t.is_zero()
        assert contract(t).scalar == 0

    def test_constant_curvature_contractions(self):
        # R_ijij = 1 for i != j gives Ric = (n-1) delta, s = n(n-1)
        t = constant_curvature(4)
        t.validate()
        contr = contract(t)
        for a in range(1, 5):
            for b in range(1, 5):
                assert contr.ric(a, b) == (3 if a == b else 0)
        assert contr.scalar == 12

    def test_constant_curvature_einstein_value(self):
        t = constant_curvature(4)
        e1 = FrameVector.basis(4, 1)
        # Ric(e1,e1) - s/2 = 3 - 6
        assert einstein_bilinear(t, e1, e1) == -3

    def test_einstein_bilinearity_and_symmetry(self):
        t = constant_curvature(6)
        u = random_vector(6, 11)
        v = random_vector(6, 12)
        w = random_vector(6, 13)
        assert einstein_bilinear(t, u, v) == einstein_bilinear(t, v, u)
        uv = FrameVector(6, tuple(a + b for a, b in zip(u.components, v.components)))
        assert einstein_bilinear(t, uv, w) == einstein_bilinear(
            t, u, w
        ) + einstein_bilinear(t, v, w)


class TestRandomTensors:
    @pytest.mark.parametrize("n", [4, 6])
    def test_symmetries_hold_for_random_seeds(self, n):
        for seed in range(4):
            t = random_riemann(n, seed)
            t.validate()
            assert not t.is_zero()

    def test_determinism(self):
        a = random_riemann(4, 7)
        b = random_riemann(4, 7)
        assert a.entries == b.entries
        c = random_riemann(4, 8)
        assert a.entries != c.entries

    def test_random_vector_determinism_and_nonzero(self):
        for seed in range(6):
            v = random_vector(4, seed)
            assert not v.is_zero()
            assert v.components == random_vector(4, seed).components

    def test_ricci_bilinear_agrees_with_direct_sum(self):
        t = random_riemann(4, 3)
        contr = contract(t)
        u = random_vector(4, 21)
        v = random_vector(4, 22)
        direct = sum(
            (
                u[a] * v[b] * contr.ric(a, b)
                for a in range(1, 5)
                for b in range(1, 5)
            ),
            Fraction(0),
        )
        assert ricci_bilinear(contr, u, v) == direct

    def test_ricci_is_symmetric(self):
        contr = contract(random_riemann(6, 5))
        for a in range(1, 7):
            for b in range(1, 7):
                assert contr.ric(a, b) == contr.ric(b, a)


class TestSerialization:
    def test_round_trip(self):
        t = random_riemann(4, 9)
        again = RiemannTensor.from_json(t.to_json())
        assert again.n == t.n and again.entries == t.entries

    def test_json_shape(self):
        t = constant_curvature(2)
        data = t.to_json()
        assert data["n"] == 2
        assert sorted(data["entries"]) == [
            [1, 2, 1, 2, 1, 1],
            [1, 2, 2, 1, -1, 1],
            [2, 1, 1, 2, -1, 1],
            [2, 1, 2, 1, 1, 1],
        ]

    def test_from_json_revalidates(self):
        with pytest.raises(ValueError):
            RiemannTensor.from_json({"n": 2, "entries": [[1, 2, 1, 2, 1, 1]]})


def test_flat_einstein_vanishes():
    t = flat(6)
    u = random_vector(6, 1)
    v = random_vector(6, 2)
    assert inner(u, v) != 0  # the pairing is nondegenerate, only R is flat
    assert einstein_bilinear(t, u, v) == 0

"""Tests for the bar-mode Fock modules."""

from fractions import Fraction

import numpy as np
import pytest

from data.sample_functions import EXPECTED_PBW_COUNTS
from src.errors import ZeroVector
from src.fock import (
    FockMonomial,
    FockSpace,
    apply_bar_mode,
    basis_count,
    derivation,
    enumerate_basis,
)

PLAIN = FockSpace()
SUPER = FockSpace(super_=True)


BASIS_SIZE_CASES = [(w, s) for w in range(9) for s in (False, True)]


def _partitions(n, largest, strict):
    """Partitions of n with parts <= largest, as decreasing tuples."""
    if n == 0:
        return [()]
    out = []
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part - 1 if strict else part, strict):
            out.append((part,) + rest)
    return out


def _partition_triples(weight, super_):
    out = set()
    for a in range(weight + 1):
        for b in range(weight - a + 1):
            for e in _partitions(a, a, super_):
                for f in _partitions(b, b, super_):
                    for psi in _partitions(weight - a - b, weight - a - b, False):
                        out.add(FockMonomial(e, f, psi))
    return out


@pytest.mark.parametrize("weight,super_", BASIS_SIZE_CASES)
def test_basis_sizes_match_partition_triples(weight, super_):
    oracle = _partition_triples(weight, super_)
    kind = "super" if super_ else "plain"
    assert set(enumerate_basis(weight, super_)) == oracle
    assert len(enumerate_basis(weight, super_)) == basis_count(weight, super_) == len(oracle)
    assert len(oracle) == EXPECTED_PBW_COUNTS[kind][weight]


def test_basis_is_valid_and_unique():
    for super_ in (False, True):
        monos = enumerate_basis(4, super_)
        assert len(set(monos)) == len(monos)
        assert all(m.is_valid(super_) and m.weight == 4 for m in monos)
    assert enumerate_basis(-1) == []
    assert enumerate_basis(0) == [FockMonomial.vacuum()]


def test_monomial_rendering():
    mono = FockMonomial.make(e=[1, 2], psi=[3])
    assert mono.e == (2, 1)
    assert str(mono) == "e(-2)e(-1)psi(-3)|0>"
    assert str(FockMonomial.vacuum()) == "|0>"


def test_nonnegative_modes_kill_the_vacuum():
    for gen in ("e", "f", "psi"):
        for m in range(3):
            assert apply_bar_mode(gen, m, PLAIN.vacuum()).is_zero()


def test_e_f_bracket():
    f = PLAIN.monomial_vector(f=[1])
    assert apply_bar_mode("e", 0, f) == PLAIN.monomial_vector(psi=[1])
    assert apply_bar_mode("e", 1, f).is_zero()
    e = PLAIN.monomial_vector(e=[1])
    assert apply_bar_mode("f", 0, e) == PLAIN.monomial_vector(psi=[1], c=-1)


def test_super_bracket_is_an_anticommutator():
    e = SUPER.monomial_vector(e=[1])
    assert apply_bar_mode("f", 0, e) == SUPER.monomial_vector(psi=[1])


def test_creation_order_and_signs():
    plain = apply_bar_mode("e", -1, PLAIN.monomial_vector(e=[2]))
    assert plain == PLAIN.monomial_vector(e=[2, 1])
    odd = apply_bar_mode("e", -1, SUPER.monomial_vector(e=[2]))
    assert odd == SUPER.monomial_vector(e=[2, 1], c=-1)
    assert apply_bar_mode("e", -1, SUPER.monomial_vector(e=[1])).is_zero()
    assert SUPER.monomial_vector(e=[1, 1]).is_zero()


def test_koszul_flag_drops_the_odd_sign():
    flipped = FockSpace(super_=True, koszul=False)
    out = apply_bar_mode("e", -1, flipped.monomial_vector(e=[2]))
    assert out.coeff(FockMonomial.make(e=[2, 1])) == 1


def test_psi_is_central():
    v = PLAIN.monomial_vector(e=[1], f=[2])
    assert apply_bar_mode("psi", -1, v) == PLAIN.monomial_vector(e=[1], f=[2], psi=[1])


def test_weight_and_zero_vector():
    v = PLAIN.monomial_vector(e=[3]) + PLAIN.monomial_vector(f=[1], c="1/2")
    assert v.weight() == 3
    assert v.coeff(FockMonomial.make(f=[1])) == Fraction(1, 2)
    with pytest.raises(ZeroVector):
        PLAIN.zero().weight()


def test_derivation_on_generators():
    assert derivation(PLAIN.vacuum()).is_zero()
    assert derivation(PLAIN.monomial_vector(e=[1])) == PLAIN.monomial_vector(e=[2])
    # d(e(-1)e(-1)|0>) = 2 e(-2)e(-1)|0>
    assert derivation(PLAIN.monomial_vector(e=[1, 1])) == PLAIN.monomial_vector(e=[2, 1], c=2)
    # e(-2)e(-2)|0> vanishes in the super space
    assert derivation(SUPER.monomial_vector(e=[2, 1])) == SUPER.monomial_vector(e=[3, 1], c=2)


def _random_vector(rng, space, max_weight=4, terms=2):
    v = space.zero()
    for _ in range(terms):
        basis = enumerate_basis(int(rng.integers(0, max_weight + 1)), space.super)
        mono = basis[int(rng.integers(len(basis)))]
        c = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))
        v = v + space.monomial_vector(mono.e, mono.f, mono.psi, c=c)
    return v


def _expected_bracket(a, m, b, n, v):
    """[a(m), b(n)] v, an anticommutator for e and f in the super space."""
    if (a, b) == ("e", "f"):
        return apply_bar_mode("psi", m + n, v)
    if (a, b) == ("f", "e"):
        return apply_bar_mode("psi", m + n, v).scale(1 if v.space.super else -1)
    return v.space.zero()


@pytest.mark.parametrize("space,seed", [(PLAIN, 3), (SUPER, 4)])
def test_random_brackets(space, seed):
    rng = np.random.default_rng(seed)
    gens = ("e", "f", "psi")
    for _ in range(40):
        a, b = gens[int(rng.integers(3))], gens[int(rng.integers(3))]
        m, n = int(rng.integers(-4, 5)), int(rng.integers(-4, 5))
        v = _random_vector(rng, space)
        odd = space.super and a != "psi" and b != "psi"
        ab = apply_bar_mode(a, m, apply_bar_mode(b, n, v))
        ba = apply_bar_mode(b, n, apply_bar_mode(a, m, v))
        lhs = ab + ba if odd else ab - ba
        assert lhs == _expected_bracket(a, m, b, n, v), (a, m, b, n, str(v))


@pytest.mark.parametrize("space", [PLAIN, SUPER])
def test_bar_modes_shift_weight_by_minus_m(space):
    for w in range(4):
        for mono in enumerate_basis(w, space.super):
            v = space.monomial_vector(mono.e, mono.f, mono.psi)
            for gen in ("e", "f", "psi"):
                for m in range(-3, w + 2):
                    out = apply_bar_mode(gen, m, v)
                    assert all(t.weight == w - m for t in out), (gen, m, str(mono))
                    if m > w:
                        assert out.is_zero()


@pytest.mark.parametrize("space,seed", [(PLAIN, 5), (SUPER, 6)])
def test_bar_modes_are_linear(space, seed):
    rng = np.random.default_rng(seed)
    for _ in range(20):
        u, v = _random_vector(rng, space), _random_vector(rng, space)
        a, b = Fraction(int(rng.integers(-3, 4)), 2), Fraction(int(rng.integers(-3, 4)), 3)
        gen = ("e", "f", "psi")[int(rng.integers(3))]
        m = int(rng.integers(-4, 5))
        combined = apply_bar_mode(gen, m, u.scale(a) + v.scale(b))
        assert combined == apply_bar_mode(gen, m, u).scale(a) + apply_bar_mode(gen, m, v).scale(b)

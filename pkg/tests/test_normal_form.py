import cmath
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from conftest import factor_lists
from hypothesis import given, settings
from hypothesis import strategies as st

from sympindex.core import NormalFormFactor, compose, is_symplectic, nu_omega, random_symplectic, unit_spectrum
from sympindex.normal_form import decompose, eigen1_block_counts, invariant_report, recompose
from sympindex.splitting import splitting_numbers

D, N1, R, N2 = NormalFormFactor.D, NormalFormFactor.N1, NormalFormFactor.R, NormalFormFactor.N2


def _conjugate(M, seed, scale=0.4):
    P = random_symplectic(M.shape[0] // 2, np.random.default_rng(seed), scale)
    return np.linalg.solve(P, M @ P)


# -- block counts at 1 --------------------------------------------------------

def test_counts_for_positive_shear():
    assert eigen1_block_counts(N1(1, 1).matrix()) == (1, 0, 0)


def test_counts_for_identity():
    assert eigen1_block_counts(np.eye(2)) == (0, 1, 0)


def test_counts_for_mixed_shears():
    assert eigen1_block_counts(compose([N1(1, 1), N1(1, -1)])) == (1, 0, 1)


def test_counts_without_eigenvalue_one():
    assert eigen1_block_counts(R(1.0).matrix()) == (0, 0, 0)


@given(st.lists(st.sampled_from([1, 0, -1]), min_size=1, max_size=4), st.integers(0, 2**31))
@settings(max_examples=10)
def test_counts_survive_conjugation(bs, seed):
    M = compose([N1(1, b) for b in bs])
    want = (bs.count(1), bs.count(0), bs.count(-1))
    assert eigen1_block_counts(_conjugate(M, seed)) == want


# -- examples -----------------------------------------------------------------

def test_hyperbolic_matrix_is_all_remainder():
    dec = decompose(D(2).matrix())
    assert dec.factors == []
    assert np.allclose(dec.remainder_G, np.diag([2.0, 0.5]))


def test_rotation_with_hyperbolic_part():
    dec = decompose(compose([R(Fraction(2, 5)), D(-2)]))
    assert dec.labels() == ["R(2/5π)"]
    assert np.allclose(dec.remainder_G, np.diag([-2.0, -0.5]))


def test_shears_at_one():
    dec = decompose(compose([N1(1, -1), np.eye(2)]))
    assert Counter(dec.labels()) == Counter(["N1(1,-1)", "N1(1,0)"])
    assert dec.remainder_G.size == 0


@pytest.mark.parametrize("facs", [
    [N2(Fraction(1, 3), sign=1)],
    [N2(Fraction(1, 3), sign=-1), R(Fraction(1, 3))],
    [N2(4.0, sign=1), D(2)],
    [N1(-1, 1), N1(-1, -1), N1(-1, 0)],
    [R(2.0), R(2 * math.pi - 2.0)],
])
def test_decomposition_recovers_factor_multiset(facs):
    M = compose(facs)
    dec = decompose(_conjugate(M, 7))
    got = Counter(_kind_key(f) for f in dec.factors)
    want = Counter(_kind_key(f) for f in facs if f.kind != "D")
    assert got == want


def _kind_key(f):
    if f.kind == "R":
        return ("R", round(f.angle % (2 * math.pi), 6))
    if f.kind == "N2":
        # N2(θ) and N2(2π - θ) can be conjugate; compare the reduced angle and the splitting there
        th = f.angle % (2 * math.pi)
        th = min(th, 2 * math.pi - th)
        return ("N2", round(th, 6), splitting_numbers(f.matrix(), cmath.exp(1j * th)).as_tuple())
    if f.kind == "N1":
        return ("N1", f.lam, f.b)
    return (f.kind, f.lam)


# -- round trip ---------------------------------------------------------------

@settings(max_examples=10)
@given(factor_lists, st.integers(0, 2**31))
def test_round_trip_preserves_invariants(facs, seed):
    M = _conjugate(compose(facs), seed)
    dec = decompose(M)
    Rm = recompose(dec)
    assert is_symplectic(Rm, 1e-8)
    assert invariant_report(M, dec)["ok"]
    assert unit_spectrum(M).elliptic_height == unit_spectrum(Rm).elliptic_height
    for u in unit_spectrum(M):
        assert nu_omega(Rm, u.omega) == nu_omega(M, u.omega)
        assert splitting_numbers(Rm, u.omega) == splitting_numbers(M, u.omega)


@settings(max_examples=10)
@given(factor_lists, st.floats(0, 2 * math.pi), st.integers(0, 2**31))
def test_round_trip_nullity_everywhere(facs, phi, seed):
    M = _conjugate(compose(facs), seed)
    w = cmath.exp(1j * phi)
    assert nu_omega(recompose(decompose(M)), w) == nu_omega(M, w)


def test_remainder_has_no_unit_spectrum(rng):
    M = _conjugate(compose([D(2), R(1.1), D(-2), N1(1, 1)]), 3)
    dec = decompose(M)
    G = dec.remainder_G
    assert G.shape == (4, 4) and is_symplectic(G, 1e-8)
    assert unit_spectrum(G).elliptic_height == 0
    assert np.allclose(sorted(np.abs(np.linalg.eigvals(G))), [0.5, 0.5, 2.0, 2.0])


def test_report_serialises():
    M = compose([R(Fraction(2, 5)), N1(1, 1)])
    d = decompose(M).to_dict()
    assert d["factors"] and set(d["provenance"]) == {"0π", "2/5π"}

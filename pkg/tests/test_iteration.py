import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import rotation_index

from sympindex.core import J
from sympindex.errors import ParameterError
from sympindex.iteration import (
    OmegaIndexProfile,
    direct_index,
    index_iterates,
    iteration_gap_check,
    mean_index,
    omega_profile,
)
from sympindex.paths import diamond_paths, from_generators, from_hamiltonian, index_omega, nullity, rotation_path, unit


def flipped_stretch():
    """Half turn to ``-I`` followed by a stretch: ends at ``D(-2)`` with ``i_1 = 1``."""
    return from_generators([(0.5, math.pi * J(1)), (0.5, math.log(2) * np.diag([1.0, -1.0]))])


def random_path(rng, n, pieces=3, scale=2.5):
    segs = []
    for _ in range(pieces):
        S = rng.normal(size=(2 * n, 2 * n))
        segs.append((1.0 / pieces, scale * (S + S.T) / 2))
    return from_hamiltonian(segs)


# -- profile ------------------------------------------------------------------

def test_hyperbolic_profile_is_constant():
    prof = omega_profile(flipped_stretch())
    assert len(prof.breakpoints) == 1 and prof.arc_values == (1,)
    assert prof.value_at(2.0) == prof.i1 == 1


def test_quarter_turn_profile():
    prof = omega_profile(rotation_path(math.pi / 2))
    assert [bp.angle_over_pi for bp in prof.breakpoints] == [0, Fraction(1, 2), Fraction(3, 2)]
    assert [bp.value for bp in prof.breakpoints] == [1, 0, 0]
    assert [bp.nullity for bp in prof.breakpoints] == [0, 1, 1]
    assert prof.arc_values == (1, 0, 1)


@pytest.mark.parametrize("phi", [0.3, 1.0, math.pi / 2, 2.5, math.pi, 4.0, 3 * math.pi / 2, 5.9])
def test_profile_matches_pointwise_index(phi):
    g = rotation_path(5.0)
    assert omega_profile(g).value_at(phi) == index_omega(g, unit(phi)) == rotation_index(5.0, phi)


def test_profile_of_diamond_is_pointwise_sum():
    a, b = rotation_path(2.0), rotation_path(4.5)
    pa, pb, pab = omega_profile(a), omega_profile(b), omega_profile(diamond_paths(a, b))
    for phi in np.linspace(0.05, 2 * math.pi - 0.05, 37):
        assert pab.value_at(phi) == pa.value_at(phi) + pb.value_at(phi)


def test_profile_round_trip():
    prof = omega_profile(rotation_path(4.0))
    assert OmegaIndexProfile.from_dict(prof.to_dict()) == prof


def test_profile_needs_zero_breakpoint():
    d = omega_profile(rotation_path(4.0)).to_dict()
    d["breakpoints"] = d["breakpoints"][1:]
    d["arc_values"] = d["arc_values"][1:]
    with pytest.raises(ParameterError):
        OmegaIndexProfile.from_dict(d)


# -- iterates -----------------------------------------------------------------

def test_first_row_is_index_and_nullity():
    g = rotation_path(2.6)
    (m, i, nu), = index_iterates(g, 1).rows
    assert (m, i, nu) == (1, index_omega(g, 1.0), nullity(g, 1.0))


def test_hyperbolic_iterates_are_linear():
    table = index_iterates(flipped_stretch(), 6)
    assert [(i, nu) for _, i, nu in table.rows] == [(m, 0) for m in range(1, 7)]


def test_third_iterate_is_sum_over_cube_roots():
    g = rotation_path(2 * math.pi / 3)
    i3, _ = direct_index(g, 3)
    w = unit(2 * math.pi / 3)
    assert i3 == index_omega(g, 1.0) + index_omega(g, w) + index_omega(g, w.conjugate())


def test_quarter_turn_iterates():
    table = index_iterates(rotation_path(math.pi / 2), 5)
    assert table.rows == ((1, 1, 0), (2, 1, 0), (3, 1, 0), (4, 1, 2), (5, 3, 0))


@pytest.mark.parametrize("theta", [0.7, 2.0, 3.9, 5.5, 8.0])
def test_rotation_iterates_match_closed_form(theta):
    table = index_iterates(rotation_path(theta), 6, cross_check=False)
    assert [i for _, i, _ in table.rows] == [rotation_index(m * theta, 0.0) for m in range(1, 7)]


@settings(max_examples=6)
@given(st.integers(0, 2**31), st.integers(1, 2))
def test_bott_sum_equals_direct_count(seed, n):
    g = random_path(np.random.default_rng(seed), n)
    index_iterates(g, 4)  # raises on any mismatch


def test_m_max_must_be_positive():
    with pytest.raises(ParameterError):
        index_iterates(rotation_path(1.0), 0)


# -- mean index ---------------------------------------------------------------

@pytest.mark.parametrize("theta,exact", [(2 * math.pi / 7, Fraction(2, 7)), (math.pi / 3, Fraction(1, 3)), (1.0, None)])
def test_rotation_mean_index(theta, exact):
    mi = mean_index(rotation_path(theta))
    if exact is None:
        assert not isinstance(mi, Fraction)
        assert mi == pytest.approx(theta / math.pi, abs=1e-9)
    else:
        assert mi == exact


def test_hyperbolic_mean_index_is_first_index():
    assert mean_index(flipped_stretch()) == 1


def test_mean_index_is_additive():
    a, b = rotation_path(2.0), rotation_path(4.5)
    assert mean_index(diamond_paths(a, b)) == pytest.approx(mean_index(a) + mean_index(b), abs=1e-9)


@settings(max_examples=6)
@given(st.integers(0, 2**31))
def test_iterates_stay_within_two_n_of_mean(seed):
    g = random_path(np.random.default_rng(seed), 2)
    prof = omega_profile(g)
    mi = float(prof.mean_index())
    for m in range(1, 65):
        assert abs(prof.bott_index(m) / m - mi) <= 2 * g.n / m + 1e-12


# -- iteration gap ------------------------------------------------------------

def test_gap_nonnegative_for_normal_form_paths():
    g = diamond_paths(rotation_path(4.0), flipped_stretch(), rotation_path(5.3))
    prof = omega_profile(g)
    assert prof.i1 >= prof.elliptic_height / 2
    assert iteration_gap_check(prof, 32).ok


def test_quarter_turn_gap_slacks():
    rep = iteration_gap_check(rotation_path(math.pi / 2), 8)
    assert rep.baseline == 0
    assert [s for _, s in rep.slacks] == [0] * 7


def test_hyperbolic_gap_slacks():
    rep = iteration_gap_check(flipped_stretch(), 6)
    assert rep.baseline == 1
    assert [s for _, s in rep.slacks] == [0] * 5


def test_gap_needs_two_iterates():
    with pytest.raises(ParameterError):
        iteration_gap_check(rotation_path(1.0), 1)

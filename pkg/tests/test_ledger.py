import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import window_by_enumeration

from sympindex.core import as_angle
from sympindex.errors import ParameterError
from sympindex.index_jump import JumpCertificate, find_jump
from sympindex.io import bundled, parse_ensemble
from sympindex.ledger import (
    GeodesicEnsemble,
    GeodesicModel,
    expected_window_count,
    hypothesis_check,
    kappa_sequence,
    rational_average_audit,
    sigma_ratio_check,
    visible_map,
    window_degrees,
)
from sympindex.paths import diamond_paths, from_generators, rotation_path


def _rotations(*fracs):
    paths = [rotation_path(as_angle(f)[0]) for f in fracs]
    return paths[0] if len(paths) == 1 else diamond_paths(*paths)


def _model(mid, path, length):
    return GeodesicModel(mid, length, length * length / 2, path)


class _LinearProfile:
    """Index data ``i(m) = a m + b`` with constant nullity, enough for the assignment logic."""

    def __init__(self, a, b, nu=0, mean=None):
        self.a, self.b, self.nu = a, b, nu
        self.mean = a if mean is None else mean

    def index(self, m):
        return self.a * m + self.b, self.nu

    def mean_index(self):
        return self.mean


def _stub(mid, a, b, nu=0, length=1.0):
    return GeodesicModel(mid, length, length * length / 2, profile=_LinearProfile(a, b, nu))


# -- hypotheses ---------------------------------------------------------------

def test_hypotheses_hold_at_threshold_index():
    # n = 3: two rotation factors give i = 2 = n - 1 and mean index 5/2 = n - 1/2
    ens = GeodesicEnsemble([_model("c", _rotations("5/4", "5/4"), 2.5)], n=3)
    rep = hypothesis_check(ens)
    assert rep["ok"], rep
    assert rep["models"][0]["i"] == 2 and rep["models"][0]["mean_index"] == "5/2"


def test_mean_index_at_threshold_fails():
    ens = GeodesicEnsemble([_model("c", _rotations("1", "1"), 2.0)], n=3)
    rep = hypothesis_check(ens)
    assert not rep["ok"]
    assert any("not > n-1" in v[1] for v in rep["violations"])


def test_bumpy_ensemble_with_degenerate_model_fails():
    shear = from_generators([(1.0, [[0.0, 0.5], [0.0, 0.0]])])
    ens = GeodesicEnsemble([_model("c", shear, 1.0)], n=2, pinched=False, bumpy=True)
    rep = hypothesis_check(ens)
    assert not rep["ok"]
    assert "degenerate" in rep["violations"][0][1]


def test_length_energy_mismatch_is_reported():
    ens = GeodesicEnsemble([GeodesicModel("c", 2.5, 1.0, _rotations("5/4", "5/4"))], n=3)
    assert any("√(2E)" in v[1] for v in hypothesis_check(ens)["violations"])


# -- windows ------------------------------------------------------------------

def test_window_non_bumpy_example():
    assert [q for _, q in window_degrees(100, 6, 7)] == [201, 203]


def test_window_bumpy_example():
    assert [q for _, q in window_degrees(100, 6, 7, bumpy=True)] == [197, 199, 201, 203]


@pytest.mark.parametrize("N", [2, 7, 500])
def test_window_four_sphere_has_one_degree(N):
    assert len(window_degrees(N, 4, 5)) == 1


def test_window_below_first_class_degree_is_short():
    # class degrees start at i = 1, so q = dim_z for the lowest one
    assert window_degrees(1, 4, 5) == []


@pytest.mark.parametrize("n", range(4, 13))
@pytest.mark.parametrize("bumpy", [False, True])
def test_window_against_enumeration(n, bumpy):
    for N in (5, 64, 1001):
        got = [q for _, q in window_degrees(N, n, n + 1, bumpy)]
        assert got == window_by_enumeration(N, n, n + 1, bumpy)
        if N > n:  # window sits above the lowest class degree
            assert len(got) == expected_window_count(n, bumpy)


@given(st.integers(1, 10**6), st.integers(2, 40), st.booleans())
def test_window_degree_formula(N, n, bumpy):
    degs = window_degrees(N, n, n + 1, bumpy)
    assert [q for _, q in degs] == window_by_enumeration(N, n, n + 1, bumpy)
    for i, q in degs:
        assert q == 2 * i + n - 1 and i >= 1


def test_window_rejects_bad_arguments():
    with pytest.raises(ParameterError):
        window_degrees(0, 6)


# -- visibility ---------------------------------------------------------------

@pytest.fixture(scope="module")
def bumpy4():
    ens = parse_ensemble(bundled("n4_bumpy"))
    certs = find_jump([m.path for m in ens.models], 1, n=ens.n, bumpy=True)
    return ens, certs[0]


def test_visible_map_is_injective(bumpy4):
    ens, cert = bumpy4
    vm = visible_map(ens, cert)
    assert vm.feasible
    owners = [v[0] for v in vm.assignment.values()]
    assert len(owners) == len(set(owners)) == len(vm.degrees)
    for q, (mid, m, _) in vm.assignment.items():
        assert mid in vm.candidates[q]
        i, nu = ens.model(mid).index(m)
        assert i <= q <= i + nu


def test_visible_map_uses_only_the_jump_iterate():
    # window {201, 203} at N = 100; each model also meets the other degree at a neighbouring iterate
    ens = GeodesicEnsemble([_stub("a", 2, 1), _stub("b", 2, 3)], n=6)
    cert = JumpCertificate(N=100, M_common=1, m=(50, 50), chi=(0, 0), eps_used=0.0)
    vm = visible_map(ens, cert, sweep=3)
    assert vm.candidates == {201: ["a"], 203: ["b"]}
    assert (203, "a", 101) in vm.rejected and (201, "b", 99) in vm.rejected
    assert {q: v[0] for q, v in vm.assignment.items()} == {201: "a", 203: "b"}


def test_too_few_models_give_a_witness():
    # n = 8 has three window degrees but only two models
    ens = GeodesicEnsemble([_stub("a", 2, 0, 6), _stub("b", 2, 0, 6, length=2.0)], n=8)
    cert = JumpCertificate(N=100, M_common=1, m=(50, 50), chi=(0, 0), eps_used=0.0)
    vm = visible_map(ens, cert, sweep=0)
    assert len(vm.degrees) == 3
    assert not vm.feasible and "cannot be carried" in vm.witness[0]


def test_certificate_must_match_ensemble():
    ens = GeodesicEnsemble([_stub("a", 2, 0)], n=6)
    with pytest.raises(ParameterError):
        visible_map(ens, JumpCertificate(N=1, M_common=1, m=(1, 1), chi=(0, 0), eps_used=0.0))


# -- common ratio -------------------------------------------------------------

def _ratio_ensemble(pairs):
    return GeodesicEnsemble([GeodesicModel(f"c{k}", L, L * L / 2, profile=_LinearProfile(mi, 0))
                             for k, (mi, L) in enumerate(pairs)], n=4)


def test_equal_ratios_pass():
    rep = sigma_ratio_check(_ratio_ensemble([(3, 1.5), (4, 2)]), ["c0", "c1"])
    assert rep["ok"] and rep["two_sigma"] == pytest.approx(2.0)


def test_unequal_ratios_fail():
    assert not sigma_ratio_check(_ratio_ensemble([(3, 1.5), (4, 1)]), ["c0", "c1"])["ok"]


def test_single_visible_model_passes():
    assert sigma_ratio_check(_ratio_ensemble([(3, 1.5), (4, 1)]), ["c1"])["ok"]


# -- rationality audit --------------------------------------------------------

def _audit(name, count=3):
    ens = parse_ensemble(bundled(name))
    certs = find_jump([m.path for m in ens.models], count, n=ens.n, bumpy=ens.bumpy)
    return ens, rational_average_audit(ens, certs)


def test_two_rational_visible_models_contradict():
    ens, rep = _audit("n6_two_rational")
    assert rep["contradiction_found"]
    row = rep["certificates"][0]
    pair = row["contradictions"][0]
    assert pair["jump_equality_holds"]
    assert pair["kappas"][0] == pytest.approx(pair["kappas"][1])
    assert not row["assignment_feasible"]


def test_irrational_visible_models_pass():
    ens, rep = _audit("n4_bumpy")
    assert not rep["contradiction_found"]
    assert rep["ok"] and rep["forced_irrational"] >= rep["bound"] == 1


def test_eight_sphere_forces_two_irrational():
    ens, rep = _audit("n8_pinched", count=1)
    assert rep["bound"] == 2
    assert rep["forced_irrational"] == 2
    assert len(rep["certificates"][0]["visible"]) == 3


def test_audit_needs_certificates():
    with pytest.raises(ParameterError):
        rational_average_audit(GeodesicEnsemble([_stub("a", 2, 0)], n=4), [])


# -- critical values ----------------------------------------------------------

def test_kappa_of_single_model():
    ens = GeodesicEnsemble([GeodesicModel("c", 2.0, 2.0, profile=_LinearProfile(1, 0))], n=4)
    assert [v[0] for v in kappa_sequence(ens, 3)["values"]] == [2.0, 8.0, 18.0]


def test_kappa_flags_coinciding_energies():
    ens = GeodesicEnsemble([GeodesicModel("a", 2.0, 2.0, profile=_LinearProfile(1, 0)),
                            GeodesicModel("b", 4.0, 8.0, profile=_LinearProfile(1, 0))], n=4)
    rep = kappa_sequence(ens, 2)
    assert rep["duplicates"] == [[["a", 2], ["b", 1], 8.0]]
    assert rep["verdict"] != "distinct"


def test_kappa_of_empty_ensemble():
    assert kappa_sequence(GeodesicEnsemble([], n=4), 5)["values"] == []


@settings(max_examples=20)
@given(st.lists(st.floats(0.1, 50.0), min_size=1, max_size=4), st.integers(1, 6))
def test_kappa_is_sorted_and_quadratic(energies, horizon):
    ens = GeodesicEnsemble([GeodesicModel(f"c{k}", math.sqrt(2 * e), e, profile=_LinearProfile(1, 0))
                            for k, e in enumerate(energies)], n=4)
    vals = kappa_sequence(ens, horizon)["values"]
    assert [v[0] for v in vals] == sorted(v[0] for v in vals)
    for e, mid, m in vals:
        assert e == pytest.approx(m * m * energies[int(mid[1:])])

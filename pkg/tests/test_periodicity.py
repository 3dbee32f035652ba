import pytest

from periodic_twist.periodicity import (
    PeriodicityWitness,
    check_periodic,
    check_strong_periodic_left,
    check_strong_periodic_right,
    find_bimodule_isomorphism,
    omega_sequence,
)
from periodic_twist.qalg import identity_automorphism


def test_omega_sequence_shape(s8):
    steps = omega_sequence(s8.modules["M"], 3)
    assert [sorted(v) for v, _ in steps] == [["3", "5"], ["3", "4"], ["2", "4"]]


def test_periodic_with_witness(s6):
    rep = check_periodic(s6.modules["M"], s6.automorphisms["sigma"], 2)
    assert rep.passed
    assert rep.witnesses["isomorphism"].is_isomorphism()


def test_wrong_twist_or_period_fails(s6):
    E = s6.algebras["E"]
    assert not check_periodic(s6.modules["M"], identity_automorphism(E), 2).passed
    assert not check_periodic(s6.modules["M"], s6.automorphisms["sigma"], 1).passed


def test_witness_verifies(s6, s8):
    assert s6.witnesses["W"].verify().passed
    assert s8.witnesses["W"].verify().passed


def test_witness_needs_period_plus_two_terms(s6):
    with pytest.raises(ValueError):
        PeriodicityWitness(s6.algebras["E"], s6.automorphisms["sigma"], 3, s6.sequences["Yseq"])


def test_strong_both_sides(s6):
    w = s6.witnesses["W"]
    assert check_strong_periodic_left(s6.modules["M"], w).passed
    assert check_strong_periodic_right(s6.modules["Mdual"], w).passed


def test_strong_projective_is_degenerate(s6):
    rep = check_strong_periodic_left(s6.modules["P1"], s6.witnesses["W"])
    assert rep.passed
    assert all(a.status == "N/A" for a in rep.assertions)


def test_strong_side_mismatch(s6):
    with pytest.raises(ValueError):
        check_strong_periodic_right(s6.modules["M"], s6.witnesses["W"])


def test_bimodule_iso_detects_twist(s6):
    assert find_bimodule_isomorphism(s6.bimodules["sE"], s6.bimodules["R"])[0] is False
    assert find_bimodule_isomorphism(s6.bimodules["R"], s6.bimodules["R"])[0]

import pytest

from periodic_twist.corpus import EXAMPLES, example_text, golden_check, load_text, round_trip, verify_example
from periodic_twist.textformat import ParseError


def test_examples_load(s6, s8, toys):
    assert s6.algebras["E"].dim == 36 and s6.algebras["A"].dim == 51
    assert s8.algebras["E"].dim == 30 and s8.algebras["A"].dim == 46
    assert "A21" in toys.algebras


def test_s6_module_dims(s6):
    assert s6.modules["M"].dim == 6
    assert s6.modules["P1"].dim == 9
    assert all(s6.modules[f"U{v}"].dim == 3 for v in "1245")


def test_s8_modules(s8):
    assert s8.modules["M"].dim == s8.modules["sM"].dim
    assert {"U24", "U35", "V3", "V4"} <= set(s8.modules)


def test_round_trip_is_stable():
    for name in EXAMPLES:
        once = round_trip(example_text(name))
        assert round_trip(once) == once


def test_s6_golden_passes(s6):
    assert golden_check(s6).passed


def test_s8_golden_fails_exactly_on_displayed_differentials(s8):
    failed = sorted(a.name for a in golden_check(s8).failures())
    assert failed == sorted(
        ["central d3 = yes", "well_defined d3 = yes", "complex Yseq = yes", "homology Yseq = 0 0 0 0 0"]
    )


def test_s8_broken_d3_is_recorded(s8):
    assert "d3" in s8.errors and "d3" not in s8.maps
    assert "Ycseq" in s8.sequences


def test_verify_s6():
    assert verify_example("s6").passed


def test_parse_error_has_location():
    with pytest.raises(ParseError):
        load_text("algebra X over GF(3) {\n  vertices 1 2\n  arrows a: 1 -> \n}\n")

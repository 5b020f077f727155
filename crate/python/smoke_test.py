"""Smoke test for the Python bindings; run with pytest after installing
crates/hopftwist-py."""

import pytest

import hopftwist_py as ht


def test_examples_listed():
    assert ht.examples() == [
        "heisenberg3",
        "u3",
        "jordan4-abelian",
        "jordan4-minimal",
        "u4-ex5",
        "u4-ex6",
    ]


def test_validate_and_present():
    s = ht.Session.example("jordan4-minimal")
    text, ok = s.validate()
    assert ok and "FAIL" not in text
    text, ok = s.present()
    assert "[W,X] = Y\n[W,V] = 1/2*Y^2 + X\n" in text


def test_inline_stratum():
    s = ht.Session.example("u4-ex5")
    text, ok = s.stratum("T", "F23=a")
    assert ok
    assert "structure: Weyl algebra A_2" in text


def test_export_round_trip():
    s = ht.Session.example("heisenberg3")
    again = ht.Session.parse(s.export())
    assert again.export() == s.export()
    assert again.present() == s.present()


def test_groebner_and_eliminate():
    assert ht.groebner(["x", "y", "z"], ["x - y^2", "y*z - 1"]) == ["y^2 - x", "z*x - y", "z*y - 1"]
    assert ht.eliminate(["x", "y", "s"], ["x - s^2", "y - s^3"], ["s"]) == ["x^3 - y^2"]


def test_errors_raise():
    with pytest.raises(ValueError, match="unknown example"):
        ht.Session.example("u5")
    with pytest.raises(ValueError, match="line"):
        ht.Session.parse("[group]\nname = p\ngenerators = X\n[coproduct]\nX = Y (x) 1\n")

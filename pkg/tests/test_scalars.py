"""Scalar normalization, parsing/formatting, and mode-based equality."""

from __future__ import annotations

from fractions import Fraction

import pytest

from ein2lie import Mode, as_scalar, format_scalar, parse_scalar

F = Fraction


def test_as_scalar_normalizes():
    assert as_scalar(3) == F(3) and isinstance(as_scalar(3), F)
    assert as_scalar(F(1, 2)) == F(1, 2)
    assert as_scalar("3/2") == F(3, 2)
    assert as_scalar("0.25") == F(1, 4)
    assert as_scalar(0.5) == 0.5 and isinstance(as_scalar(0.5), float)
    with pytest.raises(TypeError):
        as_scalar(True)
    with pytest.raises(TypeError):
        as_scalar(None)


def test_parse_scalar_rejects_junk():
    with pytest.raises(ValueError):
        parse_scalar("nope")
    with pytest.raises(ValueError):
        parse_scalar("1/0")


def test_format_scalar_roundtrip():
    assert format_scalar(F(3, 2)) == "3/2"
    assert format_scalar(F(-4)) == "-4"
    assert parse_scalar(format_scalar(F(-22, 7))) == F(-22, 7)
    assert format_scalar(0.1) == "0.10000000000000001"
    assert float(format_scalar(0.1)) == 0.1  # 17 significant digits round-trip


def test_mode_exact_vs_approx():
    exact = Mode.exact()
    assert exact.is_zero(F(0)) and not exact.is_zero(F(1, 10**9))
    approx = Mode.approx(1e-9)
    assert approx.is_zero(1e-10) and not approx.is_zero(1e-8)
    assert approx.eq(1.0, 1.0 + 1e-12)
    with pytest.raises(ValueError):
        Mode.approx(0.0)
    with pytest.raises(ValueError):
        Mode("weird")


def test_mode_inference():
    assert Mode.for_values([F(1), F(2)]).is_exact
    assert not Mode.for_values([F(1), 2.0]).is_exact
    assert Mode.for_values([F(1), 2.0]).tolerance == 1e-9

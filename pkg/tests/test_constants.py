"""Dimension-dependent constants: pinned values and cross-dimension identities."""

import math

import pytest

from loglap.constants import DimensionConstants, dimension_constants
from loglap.specfun import EULER_GAMMA
from oracles import digamma_ref, ln_gamma_ref


def test_dimension_one():
    c = dimension_constants(1)
    assert c.dim == 1
    assert c.sphere_measure == pytest.approx(2.0, rel=1e-14)
    assert c.kernel_constant == pytest.approx(1.0, rel=1e-14)
    assert c.zero_order_shift == pytest.approx(-2.0 * EULER_GAMMA, abs=1e-12)
    assert c.zero_order_shift == pytest.approx(-1.1544313298030453, abs=1e-10)
    assert c.volume_coefficient == pytest.approx(2.0 / math.pi, rel=1e-12)
    assert c.counting_coefficient == pytest.approx(2.0 * math.pi, rel=1e-12)


def test_dimension_two():
    c = dimension_constants(2)
    assert c.sphere_measure == pytest.approx(2.0 * math.pi, rel=1e-14)
    assert c.kernel_constant == pytest.approx(1.0 / math.pi, rel=1e-14)
    assert c.zero_order_shift == pytest.approx(
        2.0 * math.log(2.0) - 2.0 * EULER_GAMMA, abs=1e-12
    )
    assert c.volume_coefficient == pytest.approx(1.0 / (4.0 * math.pi), abs=1e-12)
    assert c.counting_coefficient == pytest.approx(8.0 * math.pi, rel=1e-12)


def test_product_identity_all_dimensions():
    # kernel constant times sphere measure is 2 in every dimension
    for n in range(1, 11):
        c = dimension_constants(n)
        assert abs(c.kernel_constant * c.sphere_measure - 2.0) <= 1e-12


def test_fields_against_independent_formulas():
    for n in range(1, 11):
        c = dimension_constants(n)
        omega = 2.0 * math.pi ** (n / 2.0) / math.exp(ln_gamma_ref(n / 2.0))
        assert c.sphere_measure == pytest.approx(omega, rel=1e-12)
        assert c.zero_order_shift == pytest.approx(
            2.0 * math.log(2.0) + digamma_ref(n / 2.0) - EULER_GAMMA, abs=1e-12
        )
        assert c.volume_coefficient == pytest.approx(
            2.0 * omega / (n**2 * (2.0 * math.pi) ** n), rel=1e-12
        )
        assert c.counting_coefficient == pytest.approx(
            2.0 * (2.0 * math.pi) ** n * n / omega, rel=1e-12
        )
        assert c.volume_coefficient > 0.0
        assert c.counting_coefficient > 0.0


def test_shift_increasing_in_dimension():
    shifts = [dimension_constants(n).zero_order_shift for n in range(1, 11)]
    assert all(b > a for a, b in zip(shifts, shifts[1:]))


def test_dimension_cap():
    for bad in (0, -1, 11, 100):
        with pytest.raises(ValueError):
            dimension_constants(bad)


def test_frozen_dataclass():
    c = dimension_constants(2)
    assert isinstance(c, DimensionConstants)
    with pytest.raises(Exception):
        c.dim = 3

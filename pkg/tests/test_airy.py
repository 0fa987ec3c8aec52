import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spikedtw.airy import airy_ai, airy_ai_tail_integral


def test_value_at_zero():
    ai, aip = airy_ai(0.0)
    assert abs(ai - 0.3550280538878172) < 1e-15
    assert abs(ai - 3 ** (-2 / 3) / math.gamma(2 / 3)) < 1e-15
    assert abs(aip + 3 ** (-1 / 3) / math.gamma(1 / 3)) < 1e-15


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-25.0, max_value=25.0))
def test_against_mpmath(x):
    ai, aip = airy_ai(x)
    ref = float(mpmath.airyai(x))
    dref = float(mpmath.airyai(x, derivative=1))
    if x >= 0:
        assert abs(ai - ref) <= 1e-12 * abs(ref)
        assert abs(aip - dref) <= 1e-12 * abs(dref)
    else:
        # oscillatory side: compare against the envelope
        env = abs(x) ** -0.25 / math.sqrt(math.pi) if x < -1 else 1.0
        assert abs(ai - ref) <= 1e-12 * env
        assert abs(aip - dref) <= 1e-12 * env * max(1.0, math.sqrt(abs(x)))


def test_airy_equation():
    x = np.linspace(-8.0, 8.0, 161)
    h = 1e-3
    d = lambda t: airy_ai(t)[1]
    dd = (-d(x + 2 * h) + 8 * d(x + h) - 8 * d(x - h) + d(x - 2 * h)) / (12 * h)
    assert np.max(np.abs(dd - x * airy_ai(x)[0])) < 1e-10


def test_positive_decreasing_on_right():
    x = np.linspace(0.0, 12.0, 1201)
    ai, aip = airy_ai(x)
    assert np.all(ai > 0)
    assert np.all(np.diff(ai) < 0)
    assert np.all(aip < 0)


def test_array_shape():
    ai, aip = airy_ai(np.zeros((3, 2)))
    assert ai.shape == (3, 2) and aip.shape == (3, 2)


def test_tail_integral():
    for b in (0.0, 1.5, 4.0):
        ref = float(mpmath.quad(mpmath.airyai, [b, mpmath.inf]))
        assert abs(airy_ai_tail_integral(b) - ref) < 1e-13
    with pytest.raises(ValueError):
        airy_ai_tail_integral(-1.0)

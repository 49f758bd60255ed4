import math

import pytest

import ndpo


def test_version():
    assert ndpo.__version__


def test_derived_and_regime():
    d = ndpo.derive_scaled(1e6, 0.5)
    assert d.a1 == pytest.approx(math.sqrt(2e6) * -0.5)
    assert ndpo.regime(d) == "below"
    assert ndpo.regime(ndpo.derive_scaled(1e6, 1.0)) == "near-threshold"


def test_below_rate_matches_table():
    assert ndpo.rate_below(2, 0.5, 0.0) == pytest.approx(2.0 / 3.0, rel=1e-12)
    assert ndpo.table1_rate(4, 0.5, 0.0) == pytest.approx(152.0 / 27.0, rel=1e-12)


def test_fringe_dict():
    out = ndpo.fringe(2, ndpo.derive_scaled(1e6, 1.0), points=181)
    assert out["regime"] == "near-threshold"
    assert out["method"] == "moments"
    assert len(out["phi"]) == 181
    assert 0.2 < out["visibility"] < 1.0 / 3.0
    above = ndpo.fringe(2, ndpo.derive_scaled(1e6, 1.03), points=181)
    assert above["regime"] == "above"
    assert above["visibility"] == pytest.approx(0.2, abs=0.01)


def test_opa_matches_closed_form():
    assert ndpo.opa_visibility(3, 1.0) == pytest.approx(ndpo.table2_visibility(3, math.tanh(1.0)), abs=1e-12)


def test_domain_error_is_value_error():
    with pytest.raises(ValueError):
        ndpo.rate_below(2, 1.5, 0.0)


def test_small_simulation():
    rows = ndpo.simulate_rate(1, ndpo.derive_scaled(1e4, 0.5), [0.0], trajectories=64, samples=4, seed=3)
    assert rows[0]["n_samples"] == 256
    assert rows[0]["mean"] > 0.0

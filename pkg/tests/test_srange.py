import math

import pytest
from scipy.special import ndtr
from scipy.stats import studentized_range

from quizbank import srange
from quizbank.errors import ConvergenceFailure
from quizbank.srange import srange_cdf, srange_quantile, srange_sf

SQRT2 = math.sqrt(2)


def test_two_groups_infinite_df_closed_form():
    assert srange_cdf(1.96 * SQRT2, 2) == pytest.approx(0.95, abs=1e-3)
    for q in (0.3, 1.0, 2.5, 4.0):
        assert srange_cdf(q, 2) == pytest.approx(2 * ndtr(q / SQRT2) - 1, abs=1e-10)


def test_zero_and_negative_q():
    assert srange_cdf(0, 4, 765) == 0
    assert srange_cdf(-1, 3) == 0
    assert srange_sf(0, 4, 765) == 1


@pytest.mark.parametrize("q,k,df", [
    (3.5, 4, 765), (2.0, 3, 10), (4.0, 10, 2), (1.0, 2, 1), (5.0, 6, 30),
    (3.0, 4, 5000), (0.5, 5, 20), (7.0, 20, 60),
])
def test_matches_reference_cdf(q, k, df):
    assert srange_cdf(q, k, df) == pytest.approx(studentized_range.cdf(q, k, df), abs=1e-8)


@pytest.mark.parametrize("p,k,df", [(0.95, 4, 765), (0.95, 3, 12), (0.99, 5, 40), (0.9, 2, 3)])
def test_quantile_matches_reference(p, k, df):
    assert srange_quantile(p, k, df) == pytest.approx(studentized_range.ppf(p, k, df), abs=1e-6)


def test_tabulated_critical_values():
    # classical Tukey table entries q(0.95; k, df)
    assert srange_quantile(0.95, 3, 10) == pytest.approx(3.877, abs=1e-3)
    assert srange_quantile(0.95, 4, 20) == pytest.approx(3.958, abs=1e-3)
    assert srange_quantile(0.95, 4, math.inf) == pytest.approx(3.633, abs=1e-3)


def test_critical_value_for_four_groups():
    assert srange_quantile(0.95, 4) / SQRT2 == pytest.approx(2.569, abs=5e-4)
    assert srange_quantile(0.95, 4, 765) / SQRT2 == pytest.approx(2.5747, abs=5e-4)


def test_large_df_switches_to_limit():
    assert srange_cdf(3.0, 4, 20000) == srange_cdf(3.0, 4, math.inf)
    assert srange_cdf(3.0, 4, 9000) != srange_cdf(3.0, 4, math.inf)
    assert srange_cdf(3.0, 4, 9000) == pytest.approx(srange_cdf(3.0, 4, math.inf), abs=1e-4)


def test_monotone_in_q_and_k():
    qs = [i / 4 for i in range(1, 30)]
    values = [srange_cdf(q, 4, 30) for q in qs]
    assert all(a < b for a, b in zip(values, values[1:]))
    by_k = [srange_cdf(3.0, k, 30) for k in range(2, 12)]
    assert all(a > b for a, b in zip(by_k, by_k[1:]))


@pytest.mark.parametrize("q,k,df", [(1.2, 3, 15), (3.3, 4, 765), (5.1, 8, 40), (2.0, 2, math.inf)])
def test_quantile_inverts_cdf(q, k, df):
    assert srange_quantile(srange_cdf(q, k, df), k, df) == pytest.approx(q, abs=1e-6)


def test_argument_validation():
    with pytest.raises(ValueError):
        srange_cdf(1.0, 1)
    with pytest.raises(ValueError):
        srange_cdf(1.0, 3, 0)
    with pytest.raises(ValueError):
        srange_quantile(1.0, 3, 10)


def test_unmet_tolerance_is_reported(monkeypatch):
    monkeypatch.setattr(srange, "MAX_PANELS", 8)
    monkeypatch.setattr(srange, "INNER_TOL", 0.0)
    with pytest.raises(ConvergenceFailure):
        srange_cdf(3.0, 4, 765)

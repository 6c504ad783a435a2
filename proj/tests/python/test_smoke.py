import math

import pytest

import rrb


def test_records_of_example1():
    r = rrb.extract_upper_records(rrb.example1_data())
    assert [f"{v:.8f}" for v in r["values"]][-1] == "9.51953091"
    assert r["times"][0] == 1
    assert [f"{v:.6f}" for v in r["ranges"]] == [
        "4.319232", "5.583854", "7.203468", "9.350972", "9.456790"]


def test_table1_last_row():
    row = rrb.reproduce_table1(rrb.example1_data())[-1]
    assert row["n"] == 6
    assert f"{row['bayes_squared']:.6g}" == "2.06526"
    assert f"{row['mle_urr']:.6g}" == "1.89136"


def test_posterior_and_intervals():
    s, A = rrb.posterior_from(3.0, 5.0, 2, 4.319232)
    assert s == 4.0
    assert A == pytest.approx(9.319232)
    et = rrb.credible_interval("equal_tails", s, A, 0.10)
    hpd = rrb.credible_interval("hpd_exact", s, A, 0.10)
    assert hpd["length"] <= et["length"]
    assert rrb.posterior_cdf(hpd["upper"], s, A) - rrb.posterior_cdf(hpd["lower"], s, A) == \
        pytest.approx(0.90, abs=1e-9)


def test_unreachable_closed_form_level_raises():
    with pytest.raises(rrb.BracketError):
        rrb.credible_interval("hpd_hpm", 4.0, 9.319232, 0.10)
    assert issubclass(rrb.BracketError, rrb.Error)


def test_estimate_and_insufficient_records():
    data = rrb.example1_data()
    rep = rrb.estimate("bayes_squared", data, 6, 3.0, 5.0, delta_ref=2.0)
    assert rep["analytic"]["mse"] > 0
    with pytest.raises(rrb.InsufficientRecordsError):
        rrb.estimate("mle_urr", data, 10)


def test_risk_family():
    assert rrb.risk_linear(0.0, 2.0, 2.0, 4) == 0.0
    assert 1e4 * rrb.r1_r2_gap(1e4) == pytest.approx(-1 / 64, rel=1e-6)
    assert rrb.classify_admissible(0.25, 1.0, 4) == "admissible_boundary"
    assert rrb.classify_admissible(0.0, 1.0, 4) == "admissible_interior"


def test_simulation_is_thread_independent():
    args = dict(delta=2.0, n=[3, 4], reps=5000, seed=11, a=3.0, b=5.0)
    one = rrb.run_point_sim(**args, threads=1)
    three = rrb.run_point_sim(**args, threads=3)
    assert one == three
    cov = rrb.run_interval_sim([3], 4000, 5, 3.0, 4.0, alpha=[0.5], kinds=["equal_tails"])
    assert math.isclose(cov["interval"][0]["empirical_coverage"], 0.5, abs_tol=0.03)

"""Preset scenario definitions and the sweep driver."""

from fractions import Fraction

import pytest

from alphavote.analytic import approx_single_group, exact_increments
from alphavote.model import TotalPositive
from alphavote.montecarlo import McConfig
from alphavote.scenarios import (SCENARIO_NAMES, Scenario, build_scenario,
                                 run_sweep)


def test_preset_parameters():
    fig1 = build_scenario("fig1")
    assert (fig1.n, fig1.env.mu, fig1.env.sigma) == (1000, -0.8, 30.0)
    assert fig1.rule.alpha == Fraction(1, 2)
    assert fig1.sweep_values == range(0, 1001)
    assert fig1.group_slots == 1

    fig2 = build_scenario("fig2")
    assert fig2.group1 == 50
    assert fig2.sweep_values == range(0, 951)

    fig3 = build_scenario("fig3")
    assert fig3.offset == 50
    assert fig3.sweep_values == range(0, 476)

    fig4 = build_scenario("fig4")
    assert fig4.offset == 5
    assert fig4.sweep_values == range(0, 498)

    fig5 = build_scenario("fig5")
    assert (fig5.n, fig5.egoists, fig5.paired_total) == (1500, 500, 1000)
    assert fig5.env.sigma == 100.0
    assert fig5.rule.alpha == Fraction(2, 3)
    assert fig5.rule.min_votes(fig5.n) == 1001
    assert fig5.sweep_values == range(0, 1001)


def test_unknown_scenario():
    with pytest.raises(ValueError):
        build_scenario("fig9")


def test_compositions_along_the_sweep():
    fig1 = build_scenario("fig1")
    assert fig1.composition_at(0).group_sizes == (0,)
    assert fig1.composition_at(0).egoists == 1000
    assert fig1.composition_at(1000).egoists == 0
    fig2 = build_scenario("fig2")
    comp = fig2.composition_at(96)
    assert comp.group_sizes == (50, 96)
    assert comp.egoists == 854
    assert comp.group_criteria == (TotalPositive(), TotalPositive())
    fig3 = build_scenario("fig3")
    assert fig3.composition_at(10).group_sizes == (60, 10)
    fig5 = build_scenario("fig5")
    assert fig5.composition_at(250).group_sizes == (250, 750)
    assert fig5.composition_at(0).group_sizes == (0, 1000)
    with pytest.raises(ValueError):
        fig1.composition_at(1001)
    with pytest.raises(ValueError):
        fig1.composition_at(-1)


def test_overrides():
    sc = build_scenario("fig1", mu=-1.0, sigma=10.0, alpha=Fraction(2, 3),
                        n=100)
    assert (sc.env.mu, sc.env.sigma) == (-1.0, 10.0)
    assert sc.rule.alpha == Fraction(2, 3)
    assert sc.sweep_values == range(0, 101)
    assert build_scenario("fig2", group1=80).composition_at(5).group_sizes \
        == (80, 5)
    assert build_scenario("fig3", offset=10).composition_at(0).group_sizes \
        == (10, 0)
    fig5 = build_scenario("fig5", egoists=100, paired_total=60)
    assert fig5.n == 160
    assert fig5.composition_at(60).group_sizes == (60, 0)


def test_inapplicable_overrides_are_rejected():
    with pytest.raises(ValueError):
        build_scenario("fig1", group1=10)
    with pytest.raises(ValueError):
        build_scenario("fig2", offset=10)
    with pytest.raises(ValueError):
        build_scenario("fig5", n=1200)
    with pytest.raises(ValueError):
        build_scenario("fig1", offset=3)


def test_scenario_validation():
    with pytest.raises(ValueError):
        build_scenario("fig2", group1=0)
    with pytest.raises(ValueError):
        build_scenario("fig1", n=0)


def test_exact_sweep_matches_pointwise_engine():
    sc = build_scenario("fig1", n=30)
    results = run_sweep(sc, method="exact")
    assert [r.x for r in results] == list(range(31))
    for r in (results[0], results[13], results[30]):
        want = exact_increments(sc.composition_at(r.x), sc.env, sc.rule)
        assert r.increments == want


def test_approx_sweep_falls_back_to_exact_at_degenerate_ends():
    sc = build_scenario("fig1", n=40)
    results = run_sweep(sc, method="approx")
    ends = {0: results[0], 40: results[-1]}
    for x, res in ends.items():
        want = exact_increments(sc.composition_at(x), sc.env, sc.rule)
        assert res.increments == want
    mid = results[20]
    want_mid = approx_single_group(sc.composition_at(20), sc.env, sc.rule)
    assert mid.increments == want_mid


def test_method_validation():
    sc = build_scenario("fig1", n=10)
    with pytest.raises(ValueError):
        run_sweep(sc, method="wild-guess")
    with pytest.raises(ValueError):
        run_sweep(sc, method="mc")
    with pytest.raises(ValueError):
        run_sweep(build_scenario("fig5"), method="approx")


def test_mc_sweep_shares_randomness_across_positions():
    sc = build_scenario("fig1", n=12)
    mc = McConfig(trials=400, seed=5)
    results = run_sweep(sc, method="mc", mc=mc)
    assert len(results) == 13
    for r in results:
        assert 0.0 <= r.increments.accept_rate <= 1.0
    again = run_sweep(sc, method="mc", mc=mc)
    assert results == again

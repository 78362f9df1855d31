from fractions import Fraction

import pytest

from graphlim.canonical import restrict, underlying_class
from graphlim.coloring import build_bundle
from graphlim.errors import ValidationError
from graphlim.generators import cycle, path, random_regular, torus_grid
from graphlim.stats import (
    TypeDistribution,
    aggregate,
    analyze_sequence,
    distribution,
    tv_distance,
)


def test_cycle_is_a_point_mass():
    dist = distribution(cycle(10), 1)
    assert len(dist.counts) == 1
    ((t, c),) = dist.counts.items()
    assert c == 10
    assert dist.frequency(t) == 1


def test_path_frequencies_exact():
    dist = distribution(path(10), 1)
    freqs = sorted(dist.frequency(t) for t in dist.support())
    assert freqs == [Fraction(1, 5), Fraction(4, 5)]
    assert sum(freqs) == 1


def test_counts_sum_to_n():
    for g in (cycle(9), path(7), torus_grid(3, 4), random_regular(20, 3, seed=8)):
        for r in (1, 2):
            dist = distribution(g, r)
            assert sum(dist.counts.values()) == g.n
            assert sum(dist.frequency(t) for t in dist.support()) == 1


def test_unknown_type_has_zero_frequency():
    d_c = distribution(cycle(10), 1)
    d_p = distribution(path(10), 1)
    endpoint = next(
        t for t in d_p.support() if d_p.frequency(t) == Fraction(1, 5)
    )
    assert d_c.frequency(endpoint) == 0


def test_tv_cycle_vs_path():
    a = distribution(cycle(10), 1)
    b = distribution(path(10), 1)
    assert tv_distance(a, b) == Fraction(1, 5)
    assert tv_distance(a, a) == 0
    assert tv_distance(b, a) == Fraction(1, 5)


def test_tv_cycles_agree_until_radius_wraps():
    for r in (1, 2, 3, 4):
        assert tv_distance(distribution(cycle(10), r), distribution(cycle(12), r)) == 0
    assert tv_distance(distribution(cycle(10), 5), distribution(cycle(12), 5)) == 1


def test_tv_paths_doubling_formula():
    for n in (10, 20, 30):
        for r in (1, 2, 3):
            a = distribution(path(n), r)
            b = distribution(path(2 * n), r)
            assert tv_distance(a, b) == Fraction(r, n)


def test_tv_rejects_mismatched_distributions():
    with pytest.raises(ValidationError):
        tv_distance(distribution(cycle(8), 1), distribution(cycle(8), 2))
    g = cycle(8)
    colored = distribution(g, 1, bundle=build_bundle(g, 1))
    with pytest.raises(ValidationError):
        tv_distance(distribution(g, 1), colored)
    d3 = distribution(random_regular(10, 3, seed=0), 1)
    with pytest.raises(ValidationError):
        tv_distance(distribution(cycle(8), 1), d3)


def test_colored_distribution_refines_uncolored():
    g = path(10)
    bundle = build_bundle(g, 2)
    plain = distribution(g, 2)
    colored = distribution(g, 2, bundle=bundle)
    assert colored.colored and not plain.colored
    pushed = aggregate(colored, underlying_class)
    assert pushed == {t: plain.frequency(t) for t in plain.support()}


def test_restriction_pushforward_is_lower_radius_distribution():
    g = cycle(12)
    bundle = build_bundle(g, 2)
    d2 = distribution(g, 2, bundle=bundle)
    d1 = distribution(g, 1, bundle=bundle)
    pushed = aggregate(d2, restrict)
    assert pushed == {t: d1.frequency(t) for t in d1.support()}


def test_distribution_requires_deep_enough_bundle():
    g = cycle(8)
    with pytest.raises(ValidationError):
        distribution(g, 2, bundle=build_bundle(g, 1))


def test_distribution_type_metadata():
    g = torus_grid(3, 3)
    dist = distribution(g, 2)
    for t in dist.support():
        assert t.radius == 2
        assert t.d == g.d
    doc = dist.to_json_dict()
    assert doc["n"] == g.n and doc["r"] == 2
    assert sum(e["count"] for e in doc["entries"]) == g.n
    codes = [e["code"] for e in doc["entries"]]
    assert codes == sorted(codes)


def test_distribution_rejects_invalid_counts():
    dist = distribution(cycle(6), 1)
    ((t, _),) = dist.counts.items()
    with pytest.raises(ValidationError):
        TypeDistribution(r=1, d=2, n=6, colored=False, counts={t: 5})
    with pytest.raises(ValidationError):
        TypeDistribution(r=1, d=2, n=6, colored=False, counts={t: 6, "x": 0})


def test_converged_cycle_sequence():
    report = analyze_sequence([cycle(n) for n in (8, 10, 12, 14)], 1, 1e-3)
    assert report.tv == {1: (0, 0, 0)}
    assert report.verdicts == {1: True}
    doc = report.to_json_dict()
    assert doc["verdicts"]["1"] is True
    assert doc["tv"]["1"] == ["0", "0", "0"]


def test_path_doubling_converges_at_loose_epsilon():
    report = analyze_sequence([path(10), path(20), path(40)], 1, 0.05)
    assert report.tv == {1: (Fraction(1, 10), Fraction(1, 20))}
    assert report.verdicts == {1: True}


def test_path_doubling_fails_tight_epsilon():
    report = analyze_sequence([path(10), path(20), path(40)], 1, 1e-3)
    assert report.verdicts == {1: False}


def test_mixed_pair_does_not_converge():
    report = analyze_sequence([cycle(10), path(10)], 1, 1e-3)
    assert report.tv == {1: (Fraction(1, 5),)}
    assert report.verdicts == {1: False}


def test_multi_radius_verdicts():
    graphs = [path(n) for n in (10, 20, 40, 80)]
    report = analyze_sequence(graphs, 3, 0.15)
    assert report.R == 3
    for r in (1, 2, 3):
        assert report.tv[r] == (
            Fraction(r, 10),
            Fraction(r, 20),
            Fraction(r, 40),
        )
    assert report.verdicts == {1: True, 2: True, 3: True}


def test_epsilon_decimal_conversion_is_exact():
    # 0.05 the float is not 1/20, but the text "0.05" must mean exactly 1/20
    graphs = [path(10), path(20), path(40)]
    ok = analyze_sequence(graphs, 1, 0.05)
    assert ok.verdicts == {1: True}
    assert ok.epsilon == Fraction(1, 20)
    barely = analyze_sequence(graphs, 1, 0.04999)
    assert barely.verdicts == {1: False}


def test_analyze_validates_inputs():
    with pytest.raises(ValidationError):
        analyze_sequence([cycle(8)], 1, 1e-3)
    with pytest.raises(ValidationError):
        analyze_sequence([cycle(8), random_regular(10, 3, seed=0)], 1, 1e-3)
    with pytest.raises(ValidationError):
        analyze_sequence([cycle(8), cycle(10)], 1, -0.5)


def test_colored_sequence_analysis():
    graphs = [cycle(8), cycle(10), cycle(12)]
    bundles = [build_bundle(g, 1) for g in graphs]
    report = analyze_sequence(graphs, 1, 1e-3, bundles=bundles)
    assert report.colored
    # colored types refine uncolored classes, so colored TV dominates
    plain = analyze_sequence(graphs, 1, 1e-3)
    for a, b in zip(report.tv[1], plain.tv[1]):
        assert a >= b
    with pytest.raises(ValidationError):
        analyze_sequence(graphs, 1, 1e-3, bundles=bundles[:2])

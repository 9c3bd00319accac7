import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import MARK_COUNTS, mark_counts
from quizbank.errors import DegenerateInput, EmptyGroup
from quizbank.model import GradeRecord
from quizbank.reports import render_anova, render_summary, render_tukey, to_json
from quizbank.stats import (expand_mark_distribution, group_summary,
                            one_way_anova, split_by_group, tukey_hsd)


def published_groups():
    return [(g, [r.points for r in expand_mark_distribution(mark_counts(g), g)])
            for g in MARK_COUNTS]


def test_expand_cg():
    records = expand_mark_distribution(mark_counts("CG"), "CG")
    assert len(records) == 222
    assert records[0].student == "CG-0001" and records[0].points == 4
    assert records[-1].points == 0
    assert len({r.student for r in records}) == 222


def test_expand_mg_i_points():
    records = expand_mark_distribution(mark_counts("MG-I"), "MG-I")
    assert len(records) == 225
    assert sum(r.points for r in records) == 362 == 18 * 4 + 45 * 3 + 49 * 2 + 57


def test_expand_zero_and_letter_keys():
    assert expand_mark_distribution({"A+": 0, "E/F": 0}, "X") == []
    records = expand_mark_distribution({"B": 1, "C": 2, "F": 1}, "X")
    assert [r.points for r in records] == [2, 2, 2, 0]
    with pytest.raises(ValueError):
        expand_mark_distribution({"A": -1}, "X")


@pytest.mark.parametrize("group,mean,std", [
    ("CG", 0.77, 0.90), ("TG", 0.96, 1.06), ("MG-P", 1.37, 1.20), ("MG-I", 1.61, 1.27),
])
def test_group_summaries(group, mean, std):
    s = group_summary(expand_mark_distribution(mark_counts(group), group))
    assert s.mean == pytest.approx(mean, abs=0.005)
    # TG's printed 1.06 sits 0.0051 above the population value 1.0549
    assert s.std == pytest.approx(std, abs=0.01)


def test_population_std_by_hand():
    s = group_summary(expand_mark_distribution(mark_counts("TG"), "TG"))
    mean = 202 / 210
    assert s.mean == pytest.approx(mean, abs=1e-12)
    assert s.std == pytest.approx(math.sqrt(428 / 210 - mean ** 2), abs=1e-12)


def test_summary_single_and_empty():
    s = group_summary([GradeRecord.from_points("a", "G", 3)])
    assert (s.n, s.mean, s.std) == (1, 3, 0)
    with pytest.raises(EmptyGroup):
        group_summary([])
    with pytest.raises(ValueError):
        group_summary([GradeRecord.from_points("a", "G", 3), GradeRecord.from_points("b", "H", 3)])


def test_split_by_group_keeps_first_appearance_order():
    rs = [GradeRecord.from_points(str(i), g, 1) for i, g in enumerate("BABC")]
    assert list(split_by_group(rs)) == ["B", "A", "C"]


def test_anova_hand_example():
    r = one_way_anova([[0, 2], [1, 3]])
    assert (r.ss_between, r.ss_within, r.df_between, r.df_within) == (1, 4, 1, 2)
    assert r.f == pytest.approx(0.5)


def test_anova_identical_groups():
    r = one_way_anova([[0, 1], [0, 1]])
    assert r.ss_between == 0 and r.f == 0


def test_anova_pooled_mse():
    r = one_way_anova([v for _, v in published_groups()])
    assert r.ms_within == pytest.approx(1.224, abs=0.002)
    assert r.df_within == 765 and r.df_between == 3


@pytest.mark.parametrize("groups", [[[1, 2, 3]], [[1, 2], []], [[1], [2]], [[2, 2], [3, 3]]])
def test_anova_degenerate(groups):
    with pytest.raises(DegenerateInput):
        one_way_anova(groups)


group_data = st.lists(st.lists(st.floats(-100, 100), min_size=2, max_size=8), min_size=2, max_size=5)


@settings(deadline=None)
@given(group_data)
def test_ss_decomposition(groups):
    try:
        r = one_way_anova(groups)
    except DegenerateInput:
        return
    xs = [x for g in groups for x in g]
    grand = math.fsum(xs) / len(xs)
    sst = math.fsum((x - grand) ** 2 for x in xs)
    assert r.ss_between + r.ss_within == pytest.approx(sst, rel=1e-9, abs=1e-9)
    assert r.ss_total == pytest.approx(sst, rel=1e-9, abs=1e-9)


def test_f_affine_invariance():
    rng = random.Random(7)
    for _ in range(50):
        groups = [[rng.gauss(i, 1) for _ in range(rng.randint(2, 9))] for i in range(rng.randint(2, 5))]
        a = rng.choice([-1, 1]) * rng.uniform(0.1, 10)
        b = rng.uniform(-50, 50)
        moved = [[a * x + b for x in g] for g in groups]
        assert one_way_anova(moved).f == pytest.approx(one_way_anova(groups).f, rel=1e-9)


def test_tukey_order_and_pattern():
    contrasts = tukey_hsd(published_groups())
    assert [c.pair for c in contrasts] == [
        ("MG-I", "CG"), ("MG-I", "TG"), ("MG-I", "MG-P"),
        ("MG-P", "CG"), ("MG-P", "TG"), ("TG", "CG")]
    assert [c.significant for c in contrasts] == [True, True, False, True, True, False]


def test_tukey_non_cg_contrasts():
    by_pair = {c.pair: c for c in tukey_hsd(published_groups())}
    c = by_pair[("MG-I", "TG")]
    assert c.difference == pytest.approx(0.647, abs=0.005)
    assert c.standardized == pytest.approx(6.092, abs=0.05)
    c = by_pair[("MG-I", "MG-P")]
    assert c.difference == pytest.approx(0.234, abs=0.005)
    assert c.standardized == pytest.approx(1.827, abs=0.05)
    assert c.p == pytest.approx(0.260, abs=0.02)
    c = by_pair[("MG-P", "TG")]
    assert c.difference == pytest.approx(0.413, abs=0.005)
    assert c.standardized == pytest.approx(3.19, abs=0.05)
    assert c.p == pytest.approx(0.008, abs=0.002)


def test_tukey_cg_contrasts_recomputed_from_counts():
    by_pair = {c.pair: c for c in tukey_hsd(published_groups())}
    assert by_pair[("MG-I", "CG")].difference == pytest.approx(0.834, abs=0.001)
    assert by_pair[("MG-P", "CG")].difference == pytest.approx(0.600, abs=0.001)
    assert by_pair[("TG", "CG")].difference == pytest.approx(0.187, abs=0.001)


def test_tukey_identical_groups():
    [c] = tukey_hsd([("a", [1, 2, 3]), ("b", [1, 2, 3])])
    assert c.difference == 0 and c.p == 1 and not c.significant


def test_tukey_flag_matches_threshold():
    rng = random.Random(3)
    for _ in range(10):
        groups = [(f"g{i}", [rng.gauss(rng.uniform(0, 1), 1) for _ in range(12)]) for i in range(4)]
        for c in tukey_hsd(groups):
            assert c.significant == (c.standardized > c.critical)
            assert 0 <= c.p <= 1


def test_tukey_p_decreases_with_difference():
    rng = random.Random(11)
    base = [rng.gauss(0, 1) for _ in range(15)]
    other = [rng.gauss(0, 1) for _ in range(15)]
    offset = sum(base) / len(base) - sum(other) / len(other)
    ps = []
    for shift in (0.05, 0.2, 0.4, 0.6, 0.8, 1.0, 1.5):
        [c] = tukey_hsd([("a", base), ("b", [x + offset + shift for x in other])])
        assert c.difference == pytest.approx(shift)
        ps.append(c.p)
    assert all(a > b for a, b in zip(ps, ps[1:]))


def test_tukey_matches_reference_implementation():
    multicomp = pytest.importorskip("statsmodels.stats.multicomp")
    groups = published_groups()
    values = [x for _, v in groups for x in v]
    labels = [g for g, v in groups for _ in v]
    ref = multicomp.pairwise_tukeyhsd(values, labels, alpha=0.05)
    ref_p = {}
    for row in ref.summary().data[1:]:
        ref_p[frozenset(row[:2])] = float(row[3])
    for c in tukey_hsd(groups):
        assert c.p == pytest.approx(ref_p[frozenset(c.pair)], abs=1e-3)


def test_tukey_validation():
    with pytest.raises(ValueError):
        tukey_hsd([("a", [1, 2]), ("a", [3, 4])])
    with pytest.raises(ValueError):
        tukey_hsd([("a", [1, 2]), ("b", [3, 4])], alpha=1.5)


def test_reports_render():
    records = [r for g in MARK_COUNTS for r in expand_mark_distribution(mark_counts(g), g)]
    summary = render_summary(records).splitlines()
    assert summary[0].split() == ["CG", "TG", "MG-P", "MG-I"]
    assert summary[6].split() == ["Means", "0.77", "0.96", "1.38", "1.61"]
    assert summary[7].split()[-4:] == ["0.90", "1.05", "1.20", "1.27"]
    assert "765" in render_anova(one_way_anova([v for _, v in published_groups()]))
    tukey = render_tukey(tukey_hsd(published_groups())).splitlines()
    assert [line.split()[-1] for line in tukey[1:]] == ["Yes", "Yes", "No", "Yes", "Yes", "No"]
    assert "< 0.0001" in tukey[1]
    assert '"pair": [' in to_json(tukey_hsd(published_groups()))

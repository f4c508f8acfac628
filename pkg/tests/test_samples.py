from extreme_ball.samples import GOLDEN, run_demo


def test_golden_problems_match_expected_verdicts():
    summary = run_demo()

    assert len(summary) == len(GOLDEN)
    assert summary["agrees"].all(), summary[~summary["agrees"]].to_string()

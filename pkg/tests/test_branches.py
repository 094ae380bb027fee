"""Branch catalog, samplers, the branch verifier and its errata machinery."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from ein2lie import (
    ANCHORS,
    BRANCHES,
    BRANCHES_BY_LABEL,
    ConstraintViolation,
    EmptyBranch,
    FamilyParams,
    build_family,
    classify,
    is_ein2,
    sample_branch,
    sample_off_branch,
    validate_params,
    verify_anchor,
    verify_branch,
)
from ein2lie.branches import BranchSpec, ExpectedLambdas

F = Fraction


def test_catalog_has_thirty_branches():
    assert len(BRANCHES) == 30
    assert len({spec.label for spec in BRANCHES}) == 30
    by_theorem = {}
    for spec in BRANCHES:
        by_theorem.setdefault(spec.theorem, []).append(spec)
    assert {t: len(v) for t, v in by_theorem.items()} == {
        "2.3": 1, "2.5": 1, "2.7": 8, "2.9": 3, "3.2": 4, "3.4": 9, "3.6": 4,
    }


def test_samples_satisfy_membership_and_family_constraints():
    for spec in BRANCHES:
        for params in sample_branch(spec, 5, seed=11):
            validate_params(params)
            assert spec.member(params, params.mode()), (spec.label, params)


def test_sample_branch_deterministic():
    spec = BRANCHES_BY_LABEL["3.2(iv)"]
    assert sample_branch(spec, 5, seed=3) == sample_branch(spec, 5, seed=3)
    assert sample_branch(spec, 5, seed=3) != sample_branch(spec, 5, seed=4)


def test_sample_branch_quartic_constraint_holds():
    spec = BRANCHES_BY_LABEL["3.2(iv)"]
    for p in sample_branch(spec, 5, seed=1):
        a, b, g = p.alpha, p.beta, p.gamma
        k = (b**2 - g**2) ** 2 + (b + g) ** 4
        quartic = (
            float(g * (3 * b**2 + 3 * g**2 - 2 * g * b)) * a**4
            + float(b * k) / 2 * a**2
            + float(b**3 * k) / 4
        )
        assert abs(quartic) < 1e-9
        assert p.delta == pytest.approx(float(-a * g / b))


def test_quartic_root_example_g5():
    # At beta = -1, gamma = 2 the branch quartic reduces to
    # 76 x^2 - 10 x - 5 = 0 in x = alpha^2, with positive root (5 + sqrt(405))/76.
    from ein2lie.branches import _positive_quadratic_roots

    k = (F(1) - F(4)) ** 2 + F(1) ** 4  # 10
    qa = F(2) * (3 * F(1) + 3 * F(4) - 2 * F(-1) * F(2))  # 38
    qb = F(-1, 2) * k  # -5
    qc = F(-1, 4) * k  # -5/2
    roots = _positive_quadratic_roots(qa, qb, qc)
    assert len(roots) == 1
    assert roots[0] == pytest.approx((5 + math.sqrt(405)) / 76, abs=1e-15)


def test_quartic_root_example_g6():
    # At beta = 1, gamma = 2 the positive root is (-2 + sqrt(10))/6.
    from ein2lie.branches import _positive_quadratic_roots

    roots = _positive_quadratic_roots(F(3), F(2), F(-1, 2))
    assert len(roots) == 1
    assert roots[0] == pytest.approx((-2 + math.sqrt(10)) / 6, abs=1e-15)


def test_sample_branch_2_3_values():
    spec = BRANCHES_BY_LABEL["2.3"]
    for p in sample_branch(spec, 10, seed=5):
        assert p.beta == 0 and p.alpha != 0


def test_empty_branch_raises():
    dead = BranchSpec(
        label="dead",
        family="G1",
        constraints="unsatisfiable",
        member=lambda p, m: False,
        draw=lambda rng: None,
        expected=lambda p: ExpectedLambdas.point(F(0), F(0)),
    )
    with pytest.raises(EmptyBranch):
        sample_branch(dead, 1, seed=0)


def test_verify_branch_2_3_all_zero_lambdas():
    report = verify_branch(BRANCHES_BY_LABEL["2.3"], count=50, seed=7)
    assert report.verdict == "verified"
    assert report.passed == 50
    for params in sample_branch(BRANCHES_BY_LABEL["2.3"], 5, seed=7):
        solution = is_ein2(build_family(params))
        assert solution.kind == "point" and solution.point == (0, 0)


def test_verify_branch_3_4_v_is_errata():
    report = verify_branch(BRANCHES_BY_LABEL["3.4(v)"], count=20, seed=7)
    assert report.verdict == "errata"
    assert report.passed == 0
    assert "beta^4/2" in report.correction
    for failure in report.failures:
        assert failure.solution_kind == "point"
        assert failure.residual_at_expected > 0
        assert failure.recomputed is not None
        assert failure.recomputed_ok
        # The recomputed lambda1 is the stated one with beta^4 -> beta^4/2.
        p = failure.params
        corrected = (p.alpha**4 - p.alpha**2 * p.beta**2 + p.beta**4 / 2) / p.alpha**2
        assert failure.recomputed.lambda1 == corrected
        assert failure.recomputed.lambda2 == failure.expected.lambda2


def test_verify_branch_is_deterministic():
    a = verify_branch(BRANCHES_BY_LABEL["3.2(iv)"], count=10, seed=7)
    b = verify_branch(BRANCHES_BY_LABEL["3.2(iv)"], count=10, seed=7)
    assert [f.params for f in a.failures] == [f.params for f in b.failures]
    assert (a.verdict, a.passed) == (b.verdict, b.passed)
    samples_a = sample_branch(BRANCHES_BY_LABEL["3.2(iv)"], 10, seed=7)
    samples_b = sample_branch(BRANCHES_BY_LABEL["3.2(iv)"], 10, seed=7)
    assert samples_a == samples_b


def test_classify_line_branch():
    result = classify(FamilyParams("G7", alpha=1, gamma=0, delta=1, beta=5))
    assert result.branches == ("3.6(iii)",)
    assert result.solution.kind == "line"
    assert result.solution.lambda2_zero_line()
    assert result.status == "ein2"


def test_classify_point_branch():
    result = classify(FamilyParams("G5", alpha=1, beta=0, gamma=0, delta=1))
    assert "3.2(i)" in result.branches
    assert result.solution.kind == "point"
    assert result.solution.point == (-2, 0)
    assert result.status == "ein2"


def test_classify_not_ein2():
    result = classify(FamilyParams("G6", alpha=4, beta=2, gamma=1, delta=2))
    assert result.branches == ()
    assert result.solution.kind == "none"
    assert result.status == "not_ein2"
    assert result.solution.residual > 0


def test_classify_rejects_invalid_params():
    # alpha*gamma - beta*delta = -3 != 0: not a valid G6 parameter point.
    with pytest.raises(ConstraintViolation):
        classify(FamilyParams("G6", alpha=1, beta=2, gamma=1, delta=2))


def test_classify_overlapping_branches():
    # alpha = 0, gamma = -beta is a rational point of the square-root locus
    # gamma^2 = alpha^2 + beta^2, so two branch constraint sets hold at once;
    # classify returns the full match set.
    result = classify(FamilyParams("G3", alpha=0, beta=1, gamma=-1))
    assert set(result.branches) == {"2.7(vi)", "2.7(viii)"}
    assert result.status == "ein2"
    assert result.solution.kind == "point"
    assert result.solution.point == (-2, 0)  # both stated lambda pairs agree here


def test_off_branch_points_are_not_ein2():
    for family in ("G1", "G3", "G6", "G7"):
        for params in sample_off_branch(family, 25, seed=7):
            assert is_ein2(build_family(params)).kind == "none", params


def test_anchor_g5_reproduces_closed_forms():
    anchor = ANCHORS[0]
    assert anchor.theorem == "3.2"
    result = verify_anchor(anchor)
    assert result.ok
    assert result.solution.point[0] == pytest.approx(-(45 + 9 * math.sqrt(405)) / 76, abs=1e-12)
    alpha_sq = (5 + math.sqrt(405)) / 76
    assert result.solution.point[1] == pytest.approx(
        18 * alpha_sq**2 - 4.5 * alpha_sq - 2.25, abs=1e-12
    )


def test_anchor_g6_reproduces_closed_forms():
    anchor = ANCHORS[1]
    assert anchor.theorem == "3.4"
    result = verify_anchor(anchor)
    assert result.ok
    assert result.solution.point[0] == pytest.approx((4 * math.sqrt(10) - 5) / 3, abs=1e-12)
    assert result.solution.point[1] == pytest.approx((37 - 8 * math.sqrt(10)) / 12, abs=1e-12)


def test_line_branches_are_exactly_the_flat_ones():
    line_labels = set()
    for spec in BRANCHES:
        for params in sample_branch(spec, 3, seed=13):
            solution = is_ein2(build_family(params, params.mode()), mode=params.mode())
            if solution.kind == "line":
                line_labels.add(spec.label)
    assert line_labels == {
        "2.7(i)", "2.7(iii)", "2.7(iv)", "2.9(i)", "3.6(i)", "3.6(ii)", "3.6(iii)",
    }

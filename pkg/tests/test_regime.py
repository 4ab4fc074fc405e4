from fractions import Fraction as F

import pytest

from intervalgames.errors import RegimePreconditionError
from intervalgames.regime import (
    REGIME_ALICE_TRIVIAL,
    REGIME_BOB_TRIVIAL,
    REGIME_NONDETERMINACY,
    REGIME_OUT_OF_RANGE,
    classify,
    classification_row,
    mcmullen_param_ok,
    verify_chain,
)


def oracle_regime(alpha: F, beta: F) -> str:
    """Independent integer-arithmetic reimplementation of the classifier."""
    a, b = alpha.numerator, alpha.denominator
    c, d = beta.numerator, beta.denominator
    if a <= 0 or a >= b or c <= 0 or c >= d:
        return REGIME_OUT_OF_RANGE
    if c * a <= d * (2 * a - b):  # beta <= 2 - 1/alpha
        return REGIME_BOB_TRIVIAL
    if a * c <= b * (2 * c - d):  # alpha <= 2 - 1/beta
        return REGIME_ALICE_TRIVIAL
    return REGIME_NONDETERMINACY


class TestClassify:
    def test_bob_trivial_example(self):
        verdict = classify(F(4, 5), F(1, 2))
        assert verdict.regime == REGIME_BOB_TRIVIAL
        assert verdict.margins["bob-pin-margin"] == F(1, 2) - F(3, 4)

    def test_nondeterminacy_four_fifths(self):
        verdict = classify(F(4, 5), F(4, 5))
        assert verdict.regime == REGIME_NONDETERMINACY
        assert verdict.margins["bob-pin-margin"] == F(1, 20)
        assert verdict.margins["alice-pin-margin"] == F(1, 20)

    def test_nondeterminacy_three_fifths(self):
        verdict = classify(F(3, 5), F(3, 5))
        assert verdict.regime == REGIME_NONDETERMINACY
        assert verdict.margins["bob-pin-margin"] == F(3, 5) - F(1, 3)

    def test_out_of_range(self):
        assert classify(F(0), F(1, 2)).regime == REGIME_OUT_OF_RANGE
        assert classify(F(1, 2), F(1)).regime == REGIME_OUT_OF_RANGE
        assert classify(F(-1, 2), F(1, 2)).regime == REGIME_OUT_OF_RANGE

    def test_boundary_margin_exactly_zero(self):
        # beta exactly on the curve beta = 2 - 1/alpha
        for alpha in (F(4, 5), F(2, 3), F(16, 31), F(9, 10)):
            beta = 2 - 1 / alpha
            verdict = classify(alpha, beta)
            assert verdict.regime == REGIME_BOB_TRIVIAL
            assert verdict.margins["bob-pin-margin"] == 0
        for beta in (F(4, 5), F(5, 7)):
            alpha = 2 - 1 / beta
            verdict = classify(alpha, beta)
            assert verdict.regime == REGIME_ALICE_TRIVIAL
            assert verdict.margins["alice-pin-margin"] == 0

    def test_trivial_regimes_are_mutually_exclusive_on_grid(self):
        # (1-alpha)(1-beta) > 0 forbids both pin conditions at once
        for p in range(1, 32):
            for q in range(1, 32):
                alpha, beta = F(p, 32), F(q, 32)
                both = (
                    classify(alpha, beta).margins["bob-pin-margin"] <= 0
                    and classify(alpha, beta).margins["alice-pin-margin"] <= 0
                )
                assert not both

    def test_agreement_with_integer_oracle_on_dense_grid(self):
        disagreements = 0
        for p in range(0, 65):
            for q in range(0, 65):
                alpha, beta = F(p, 64), F(q, 64)
                if classify(alpha, beta).regime != oracle_regime(alpha, beta):
                    disagreements += 1
        assert disagreements == 0

    def test_row_export(self):
        row = classification_row(F(4, 5), F(4, 5))
        assert row["regime"] == REGIME_NONDETERMINACY
        assert row["bob-pin-margin"] == "1/20"


class TestVerifyChain:
    def test_four_fifths_margin(self):
        report = verify_chain(F(4, 5), F(4, 5))
        assert report.conclusion_margin == F(13, 90)
        assert report.values["closed-form"] == F(4, 9)
        assert all(step.holds for step in report.steps)

    def test_nine_tenths(self):
        report = verify_chain(F(9, 10), F(9, 10))
        closed = F(1, 10) * F(9, 10) / (1 - F(81, 100))
        assert report.values["closed-form"] == closed
        assert report.conclusion_margin == closed - F(2, 5)

    def test_precondition(self):
        with pytest.raises(RegimePreconditionError):
            verify_chain(F(4, 5), F(1, 2))

    def test_never_fails_on_region_grid(self):
        pairs = 0
        for p in range(1, 64):
            for q in range(1, 64):
                alpha, beta = F(p, 64), F(q, 64)
                if classify(alpha, beta).regime != REGIME_NONDETERMINACY:
                    continue
                report = verify_chain(alpha, beta)
                assert report.conclusion_margin > 0
                pairs += 1
        assert pairs >= 200

    def test_rows_are_exact_strings(self):
        rows = verify_chain(F(4, 5), F(4, 5)).as_rows()
        assert rows[-1]["margin"] == "13/90"


class TestMcMullenParam:
    @pytest.mark.parametrize(
        "beta,ok",
        [
            (F(1, 4), True),
            (F(1, 3), False),
            (F(0), False),
            (F(33, 100), True),
            (F(34, 100), False),
            (F(-1, 5), False),
        ],
    )
    def test_gate(self, beta, ok):
        assert mcmullen_param_ok(beta) is ok

"""Exact classification of Schmidt parameter pairs and the escape-bound chain.

The parameter square (0,1)^2 splits along the curves beta = 2 - 1/alpha and
alpha = 2 - 1/beta. On or below the first curve Bob can pin any single
point; on or below the second Alice can pin into any dense set; strictly
above both, the endpoint strategy's displacement bound
(1-beta)*alpha/(1-alpha*beta) > beta - 1/2 holds and neither trivial pin
applies. Boundary pairs (margin exactly 0) classify with the trivial
regimes; the two trivial conditions can never hold together on (0,1)^2
since summing them forces (1-alpha)(1-beta) <= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import as_rational, format_rational
from .errors import ChainStepError, RegimePreconditionError
from .strategies import displacement_closed_form

REGIME_BOB_TRIVIAL = "bob-trivial"
REGIME_ALICE_TRIVIAL = "alice-trivial"
REGIME_NONDETERMINACY = "nondeterminacy"
REGIME_OUT_OF_RANGE = "out-of-range"

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RegimeVerdict:
    regime: str
    margins: dict[str, Fraction]

    def margins_as_strings(self) -> dict[str, str]:
        return {k: format_rational(v) for k, v in self.margins.items()}


def classify(alpha: Fraction, beta: Fraction) -> RegimeVerdict:
    """Exact regime of (alpha, beta), with the signed margins that decide it.

    bob-pin-margin    = beta  - (2 - 1/alpha)   (<= 0 means bob-trivial)
    alice-pin-margin  = alpha - (2 - 1/beta)    (<= 0 means alice-trivial)
    escape-margin     = (1-beta)*alpha/(1-alpha*beta) - (beta - 1/2)
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    if not (0 < alpha < 1 and 0 < beta < 1):
        return RegimeVerdict(REGIME_OUT_OF_RANGE, {})
    margins = {
        "bob-pin-margin": beta - (2 - 1 / alpha),
        "alice-pin-margin": alpha - (2 - 1 / beta),
        "escape-margin": displacement_closed_form(alpha, beta) - (beta - _HALF),
    }
    if margins["bob-pin-margin"] <= 0:
        return RegimeVerdict(REGIME_BOB_TRIVIAL, margins)
    if margins["alice-pin-margin"] <= 0:
        return RegimeVerdict(REGIME_ALICE_TRIVIAL, margins)
    return RegimeVerdict(REGIME_NONDETERMINACY, margins)


def mcmullen_param_ok(beta: Fraction) -> bool:
    beta = as_rational(beta)
    return 0 < beta < Fraction(1, 3)


@dataclass(frozen=True)
class ChainStep:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str  # ">" or "<"

    @property
    def holds(self) -> bool:
        return self.lhs > self.rhs if self.relation == ">" else self.lhs < self.rhs

    @property
    def margin(self) -> Fraction:
        return self.lhs - self.rhs if self.relation == ">" else self.rhs - self.lhs

    def as_row(self) -> dict[str, str]:
        return {
            "step": self.name,
            "lhs": format_rational(self.lhs),
            "relation": self.relation,
            "rhs": format_rational(self.rhs),
            "margin": format_rational(self.margin),
        }


@dataclass(frozen=True)
class ChainReport:
    """Machine-checked inequality chain for one nondeterminacy pair.

    Every intermediate value is exact, so the report doubles as a proof
    certificate for the pair.
    """

    alpha: Fraction
    beta: Fraction
    steps: tuple[ChainStep, ...]
    values: dict[str, Fraction]

    @property
    def conclusion_margin(self) -> Fraction:
        return self.steps[-1].margin

    def as_rows(self) -> list[dict[str, str]]:
        return [s.as_row() for s in self.steps]


def verify_chain(alpha: Fraction, beta: Fraction) -> ChainReport:
    """Check each step of the escape-bound derivation exactly.

    Requires the pair to classify as nondeterminacy; inside that regime a
    failing step is unreachable, and reaching one falsifies this
    implementation rather than the bound.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    verdict = classify(alpha, beta)
    if verdict.regime != REGIME_NONDETERMINACY:
        raise RegimePreconditionError(
            f"verify_chain needs the nondeterminacy regime, got {verdict.regime} "
            f"for alpha={format_rational(alpha)}, beta={format_rational(beta)}"
        )
    ab = alpha * beta
    closed = displacement_closed_form(alpha, beta)
    steps = (
        ChainStep("alpha*beta > 2*beta - 1", ab, 2 * beta - 1, ">"),
        ChainStep("1 - alpha*beta < 2 - 2*beta", 1 - ab, 2 - 2 * beta, "<"),
        ChainStep("closed form > alpha*beta/2", closed, ab / 2, ">"),
        ChainStep("alpha*beta/2 > beta - 1/2", ab / 2, beta - _HALF, ">"),
        ChainStep("closed form > beta - 1/2", closed, beta - _HALF, ">"),
    )
    for step in steps:
        if not step.holds:
            raise ChainStepError(
                f"step failed at alpha={format_rational(alpha)}, "
                f"beta={format_rational(beta)}: {step.name}"
            )
    values = {
        "alpha*beta": ab,
        "1-alpha*beta": 1 - ab,
        "2-2*beta": 2 - 2 * beta,
        "closed-form": closed,
        "alpha*beta/2": ab / 2,
        "beta-1/2": beta - _HALF,
    }
    return ChainReport(alpha=alpha, beta=beta, steps=steps, values=values)


def classification_row(alpha: Fraction, beta: Fraction) -> dict[str, str]:
    verdict = classify(alpha, beta)
    row = {
        "alpha": format_rational(as_rational(alpha)),
        "beta": format_rational(as_rational(beta)),
        "regime": verdict.regime,
    }
    row.update(verdict.margins_as_strings())
    return row

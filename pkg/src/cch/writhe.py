"""Winding and writhe bound arithmetic for braided curve ends.

Bounds are returned as values rather than asserted on stored braids: the
package has no analytic curves, only the integer consequences their ends
would have to satisfy.  The breaking-exclusion certificate combines the
index identity of a degenerate two-level limit with the writhe inequality
chain and records why the two can never hold together.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import PreconditionError
from .orbits import OrbitRef, cz_index, floor_multiple


class EndSide(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


def wind_bound(orbit: OrbitRef, side: EndSide) -> int:
    """Extremal winding number of a braided end at this orbit.

    Positive ends are bounded above by floor(cz/2); negative ends are
    bounded below by ceil(cz/2).
    """
    cz = cz_index(orbit)
    if side is EndSide.POSITIVE:
        return cz // 2
    return -((-cz) // 2)


def writhe_bound(orbit: OrbitRef, side: EndSide, use_improved: bool = False) -> int:
    """Extremal writhe of a degree-d braided end, d = orbit.multiplicity.

    Basic form: (d-1) * extremal winding.  The improved form subtracts
    gcd(d, floor(cz/2)) - 1 and is available for positive ends only.
    """
    d = orbit.multiplicity
    if use_improved:
        if side is not EndSide.POSITIVE:
            raise PreconditionError("improved writhe bound applies to positive ends only")
        half = cz_index(orbit) // 2
        return (d - 1) * half - gcd(d, half) + 1
    return (d - 1) * wind_bound(orbit, side)


@dataclass(frozen=True)
class BraidEndData:
    """A hypothetical braided end with optional observed winding and writhe.

    Construction validates the observed values against the extremal bounds,
    so the type doubles as a checker for scenario replay.
    """

    orbit: OrbitRef
    side: EndSide
    wind: Optional[int] = None
    writhe: Optional[int] = None

    def __post_init__(self):
        d = self.orbit.multiplicity
        if self.wind is not None:
            bound = wind_bound(self.orbit, self.side)
            if self.side is EndSide.POSITIVE and self.wind > bound:
                raise PreconditionError(
                    f"positive-end winding {self.wind} exceeds bound {bound}"
                )
            if self.side is EndSide.NEGATIVE and self.wind < bound:
                raise PreconditionError(
                    f"negative-end winding {self.wind} below bound {bound}"
                )
        if self.writhe is not None and self.wind is not None:
            edge = (d - 1) * self.wind
            if self.side is EndSide.POSITIVE and self.writhe > edge:
                raise PreconditionError(
                    f"positive-end writhe {self.writhe} exceeds (d-1)*wind = {edge}"
                )
            if self.side is EndSide.NEGATIVE and self.writhe < edge:
                raise PreconditionError(
                    f"negative-end writhe {self.writhe} below (d-1)*wind = {edge}"
                )


@dataclass(frozen=True)
class TransversalityQuery:
    """Inputs of the automatic-transversality criterion."""

    genus: int
    h_plus: int
    index: int
    end_count: Optional[int] = None

    def __post_init__(self):
        if self.genus < 0 or self.h_plus < 0:
            raise PreconditionError("genus and h_plus must be nonnegative")
        if self.end_count is not None and self.h_plus > self.end_count:
            raise PreconditionError("h_plus cannot exceed the number of ends")


def automatic_transversality(q: TransversalityQuery) -> bool:
    """True when 2*genus - 2 + h_plus < index."""
    return 2 * q.genus - 2 + q.h_plus < q.index


def adjunction_combine(chi: int, writhe_plus: int, writhe_minus: int) -> int:
    """Twice the singularity count: chi + writhe(top) - writhe(bottom)."""
    return chi + writhe_plus - writhe_minus


class BreakingVerdict(Enum):
    BREAKING_EXCLUDED = "breaking-excluded"
    INDEX_HYPOTHESIS_NOT_MET = "index-hypothesis-not-met"
    COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class BreakingCertificate:
    """Record of the two incompatible conditions for a bad two-level limit.

    Condition A is the floor identity equivalent to the top branched cover
    having index zero; condition B is the combined winding/writhe slack
    being nonnegative.  The witness line records the strict inequality
    floor(d*theta) < d*(floor(theta)+1) that makes A and B jointly
    unsatisfiable.
    """

    theta: Fraction
    degree: int
    floor_theta: int
    floor_d_theta: int
    floor_d1_theta: int
    index_zero_identity: bool
    writhe_slack: int

    @property
    def writhe_chain_holds(self) -> bool:
        return self.writhe_slack >= 0

    @property
    def verdict(self) -> BreakingVerdict:
        if not self.index_zero_identity:
            return BreakingVerdict.INDEX_HYPOTHESIS_NOT_MET
        if self.writhe_chain_holds:
            return BreakingVerdict.COUNTEREXAMPLE
        return BreakingVerdict.BREAKING_EXCLUDED

    def lines(self):
        d = self.degree
        a_state = "holds" if self.index_zero_identity else "fails"
        b_state = "holds" if self.writhe_chain_holds else "fails"
        return [
            "certificate: no-bad-break",
            f"theta: {self.theta}",
            f"degree: {d}",
            f"floor(theta) = {self.floor_theta}",
            f"floor(d*theta) = {self.floor_d_theta}",
            f"floor((d+1)*theta) = {self.floor_d1_theta}",
            f"A (index-zero identity): floor((d+1)*theta) == floor(d*theta) + floor(theta):"
            f" {self.floor_d1_theta} vs {self.floor_d_theta + self.floor_theta}: {a_state}",
            f"B (writhe slack >= 0): d*(floor((d+1)*theta) - 2*floor(theta) - 1)"
            f" - (d-1)*floor(d*theta) = {self.writhe_slack}: {b_state}",
            f"witness: floor(d*theta) = {self.floor_d_theta} <= d*theta = {self.theta * d}"
            f" < d*(floor(theta)+1) = {d * (self.floor_theta + 1)}",
            f"verdict: {self.verdict.value}",
        ]

    def render(self) -> str:
        return "\n".join(self.lines()) + "\n"


def no_bad_break_certificate(theta: Fraction, d: int) -> BreakingCertificate:
    """Certify that an index-zero splitting off a degree-1 plane is impossible.

    theta must model an elliptic orbit (not an integer or half-integer).
    """
    theta = Fraction(theta)
    if theta.denominator <= 2:
        raise PreconditionError(
            f"theta={theta} is hyperbolic; the certificate needs an elliptic rotation"
        )
    if d < 1:
        raise PreconditionError("degree must be >= 1")
    ft = floor_multiple(theta, 1)
    fdt = floor_multiple(theta, d)
    fd1t = floor_multiple(theta, d + 1)
    slack = d * (fd1t - 2 * ft - 1) - (d - 1) * fdt
    return BreakingCertificate(
        theta=theta,
        degree=d,
        floor_theta=ft,
        floor_d_theta=fdt,
        floor_d1_theta=fd1t,
        index_zero_identity=(fd1t == fdt + ft),
        writhe_slack=slack,
    )


@dataclass(frozen=True)
class BreakingSweepResult:
    certificates_checked: int
    counterexamples: tuple

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def sweep_no_bad_break(
    max_degree: int, max_denominator: int, theta_upper: int
) -> BreakingSweepResult:
    """Run the certificate over all reduced elliptic rationals in range.

    Covers every theta = p/q with q <= max_denominator, 0 < theta <
    theta_upper, theta not an integer or half-integer, and every degree up
    to max_degree.  Integer arithmetic throughout.
    """
    checked = 0
    bad = []
    for q in range(3, max_denominator + 1):
        for p in range(1, theta_upper * q):
            if gcd(p, q) != 1:
                continue
            ft = p // q
            for d in range(1, max_degree + 1):
                fdt = (d * p) // q
                fd1t = ((d + 1) * p) // q
                checked += 1
                if fd1t == fdt + ft and d * (fd1t - 2 * ft - 1) - (d - 1) * fdt >= 0:
                    bad.append((Fraction(p, q), d))
    return BreakingSweepResult(checked, tuple(bad))


class ConjectureStatus(Enum):
    UNPROVEN = "unproven"


@dataclass(frozen=True)
class ConjecturalValue:
    value: int
    status: ConjectureStatus


def conjecture_improved_equality(orbit: OrbitRef) -> ConjecturalValue:
    """The improved positive-end writhe bound, flagged as unproven equality.

    Nothing in this package uses the returned value as ground truth.
    """
    if cz_index(orbit) % 2 == 0:
        raise PreconditionError("the conjectural equality needs an odd cz index")
    return ConjecturalValue(
        writhe_bound(orbit, EndSide.POSITIVE, use_improved=True),
        ConjectureStatus.UNPROVEN,
    )

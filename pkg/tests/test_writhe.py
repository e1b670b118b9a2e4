from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cch.errors import PreconditionError
from cch.orbits import OrbitRef, RotationData
from cch.writhe import (
    BraidEndData,
    BreakingVerdict,
    ConjectureStatus,
    EndSide,
    TransversalityQuery,
    adjunction_combine,
    automatic_transversality,
    conjecture_improved_equality,
    no_bad_break_certificate,
    sweep_no_bad_break,
    wind_bound,
    writhe_bound,
)

F = Fraction


def ref(theta, m, bound=None):
    theta = F(theta)
    if bound is None:
        bound = 100 if theta.denominator <= 2 else theta.denominator - 1
    return OrbitRef(RotationData("g", theta, bound), m)


# ---------------------------------------------------------------- wind_bound


def test_wind_bound_positive_end():
    assert wind_bound(ref(F(6, 5), 1), EndSide.POSITIVE) == 1


def test_wind_bound_negative_end():
    assert wind_bound(ref(F(6, 5), 1), EndSide.NEGATIVE) == 2


def test_wind_bound_even_cz_agrees_on_both_sides():
    r = ref(2, 1)
    assert wind_bound(r, EndSide.POSITIVE) == 2
    assert wind_bound(r, EndSide.NEGATIVE) == 2


# ---------------------------------------------------------------- writhe_bound


def test_writhe_bound_basic():
    assert writhe_bound(ref(F(6, 5), 3), EndSide.POSITIVE) == 6


def test_writhe_bound_improved():
    assert writhe_bound(ref(F(6, 5), 3), EndSide.POSITIVE, use_improved=True) == 4


def test_writhe_bound_degree_one_is_zero():
    for side in EndSide:
        assert writhe_bound(ref(F(6, 5), 1), side) == 0
    assert writhe_bound(ref(F(6, 5), 1), EndSide.POSITIVE, use_improved=True) == 0


def test_improved_unsupported_on_negative_end():
    with pytest.raises(PreconditionError):
        writhe_bound(ref(F(6, 5), 2), EndSide.NEGATIVE, use_improved=True)


@given(
    st.tuples(st.integers(1, 200), st.integers(3, 30)).filter(
        lambda pq: F(pq[0], pq[1]).denominator > 2
    ),
    st.integers(1, 12),
)
def test_improved_never_exceeds_basic(pq, d):
    theta = F(pq[0], pq[1])
    r = ref(theta, min(d, theta.denominator - 1))
    basic = writhe_bound(r, EndSide.POSITIVE)
    improved = writhe_bound(r, EndSide.POSITIVE, use_improved=True)
    assert improved <= basic


# ------------------------------------------------------- BraidEndData checks


def test_braid_end_accepts_extremal_values():
    r = ref(F(6, 5), 3)
    BraidEndData(r, EndSide.POSITIVE, wind=3, writhe=6)
    BraidEndData(r, EndSide.NEGATIVE, wind=4, writhe=8)


def test_braid_end_rejects_overwound_positive_end():
    with pytest.raises(PreconditionError):
        BraidEndData(ref(F(6, 5), 3), EndSide.POSITIVE, wind=4)


def test_braid_end_rejects_excess_writhe():
    with pytest.raises(PreconditionError):
        BraidEndData(ref(F(6, 5), 3), EndSide.POSITIVE, wind=3, writhe=7)


# ------------------------------------------------- automatic transversality


def test_transversality_index_one_cylinder():
    assert automatic_transversality(TransversalityQuery(0, 2, 1, end_count=2))


def test_transversality_fails_for_index_zero():
    assert not automatic_transversality(TransversalityQuery(0, 2, 0))


def test_transversality_genus_one():
    assert automatic_transversality(TransversalityQuery(1, 0, 1))


def test_transversality_monotone():
    for g in range(0, 4):
        for h in range(0, 7):
            for ind in range(-3, 7):
                here = automatic_transversality(TransversalityQuery(g, h, ind))
                up = automatic_transversality(TransversalityQuery(g, h, ind + 1))
                more_h = automatic_transversality(TransversalityQuery(g, h + 1, ind))
                assert up or not here
                assert here or not more_h


def test_transversality_validates_end_count():
    with pytest.raises(PreconditionError):
        TransversalityQuery(0, 3, 1, end_count=2)


# ---------------------------------------------------------------- adjunction


def test_adjunction_examples():
    assert adjunction_combine(-1, 6, 5) == 0
    assert adjunction_combine(0, 4, 4) == 0


@given(
    st.tuples(st.integers(1, 400), st.integers(3, 40)).filter(
        lambda pq: F(pq[0], pq[1]).denominator > 2
    ),
    st.integers(1, 30),
)
def test_step_chain_specializes_to_certificate_slack(pq, d):
    # With the extremal writhe and winding values of a split limit, the
    # combined adjunction quantity equals the certificate's slack exactly.
    theta = F(pq[0], pq[1])
    ft = theta.__floor__()
    fdt = (theta * d).__floor__()
    fd1t = (theta * (d + 1)).__floor__()
    w_plus = d * fd1t
    wind_mid = ft
    w_minus = (d - 1) * (fdt + 1)
    combined = adjunction_combine(-1, w_plus, 2 * d * wind_mid + w_minus)
    cert = no_bad_break_certificate(theta, d)
    assert combined == cert.writhe_slack


# ---------------------------------------------------------------- certificate


def test_certificate_breaking_excluded():
    cert = no_bad_break_certificate(F(3, 10), 2)
    assert cert.index_zero_identity
    assert cert.writhe_slack == -2
    assert cert.verdict is BreakingVerdict.BREAKING_EXCLUDED


def test_certificate_hypothesis_not_met():
    cert = no_bad_break_certificate(F(5, 7), 2)
    assert not cert.index_zero_identity
    assert cert.verdict is BreakingVerdict.INDEX_HYPOTHESIS_NOT_MET


@given(
    st.tuples(st.integers(1, 100), st.integers(3, 25)).filter(
        lambda pq: F(pq[0], pq[1]).denominator > 2
    )
)
def test_certificate_degree_one_never_counterexample(pq):
    cert = no_bad_break_certificate(F(pq[0], pq[1]), 1)
    assert cert.verdict is not BreakingVerdict.COUNTEREXAMPLE
    if cert.index_zero_identity:
        assert not cert.writhe_chain_holds


def test_certificate_rejects_hyperbolic_theta():
    with pytest.raises(PreconditionError):
        no_bad_break_certificate(F(3, 2), 2)


def test_certificate_render_is_deterministic():
    a = no_bad_break_certificate(F(3, 10), 2).render()
    b = no_bad_break_certificate(F(3, 10), 2).render()
    assert a == b
    assert "verdict: breaking-excluded" in a


def test_small_sweep_is_clean():
    result = sweep_no_bad_break(max_degree=25, max_denominator=12, theta_upper=4)
    assert result.ok
    assert result.certificates_checked > 1000


# ---------------------------------------------------------------- conjecture


def test_conjecture_value_and_status():
    out = conjecture_improved_equality(ref(F(6, 5), 3))
    assert out.value == 4
    assert out.status is ConjectureStatus.UNPROVEN


def test_conjecture_degree_one():
    assert conjecture_improved_equality(ref(F(6, 5), 1)).value == 0


def test_conjecture_golden_cover():
    r = ref(F(233, 144), 2, bound=100)
    # cz = 7, so the improved bound is (2-1)*3 - gcd(2,3) + 1 = 3.
    assert conjecture_improved_equality(r).value == 3


def test_conjecture_rejects_even_cz():
    with pytest.raises(PreconditionError):
        conjecture_improved_equality(ref(2, 1))

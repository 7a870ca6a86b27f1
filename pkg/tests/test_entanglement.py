from math import factorial

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmsvortex.entanglement import (
    PAPER_RAW,
    RATIO_CONVENTION,
    CoefficientSource,
    EntanglementCurve,
    MeasureKind,
    auto_cutoff,
    coefficients,
    ef_paper,
    entanglement_entropy,
    log_negativity,
    negativity_ratio,
    ratio_closed_form,
    refine_argmax,
    scan,
    tmsv_coefficients,
    tmsv_entropy_closed_form,
)
from tmsvortex.errors import ConvergenceError, CutoffError
from tmsvortex.fock import SchmidtState, SqueezeParams

OPERATOR = CoefficientSource("operator_derived", True)
LITERAL = CoefficientSource("paper_literal", True)


# --- coefficients -----------------------------------------------------------------


def test_source_validation():
    with pytest.raises(ValueError):
        CoefficientSource("guess", True)
    with pytest.raises(ValueError):
        CoefficientSource("paper_literal", "half")
    assert set(MeasureKind) == {
        MeasureKind.LOG_NEGATIVITY,
        MeasureKind.LOG_NEGATIVITY_PAPER_LITERAL,
        MeasureKind.NEGATIVITY_RATIO,
        MeasureKind.EF_PAPER,
        MeasureKind.ENTROPY_NORMALIZED,
    }


@pytest.mark.parametrize("r", [0.2, 0.9, 1.7])
def test_k1_sources_coincide(r):
    p = SqueezeParams(r)
    a = coefficients(p, 1, LITERAL).coefficients
    b = coefficients(p, 1, OPERATOR).coefficients
    np.testing.assert_allclose(a, b, atol=1e-15)


@pytest.mark.parametrize("k", [0, 1, 3])
@pytest.mark.parametrize("src", [OPERATOR, LITERAL])
def test_r0_single_coefficient(k, src):
    s = coefficients(SqueezeParams(0.0), k, src)
    assert s.coefficients[0] == 1.0 and np.all(s.coefficients[1:] == 0)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("r", [0.3, 0.8, 1.2])
def test_operator_normalization_constant(k, r):
    raw = coefficients(SqueezeParams(r), k, CoefficientSource("operator_derived", False), tol=1e-16)
    # raw c_m = tanh^m r sqrt((m+k)!/m!) / cosh r
    t2 = np.tanh(r) ** 2
    series = np.sum((raw.coefficients * np.cosh(r)) ** 2)
    assert series == pytest.approx(factorial(k) / (1 - t2) ** (k + 1), rel=1e-10)


def test_paper_literal_raw_values():
    r, k = 0.7, 3
    s = coefficients(SqueezeParams(r), k, PAPER_RAW)
    p = np.arange(5)
    np.testing.assert_allclose(s.coefficients[:5], np.tanh(r) ** p * np.sqrt(p + k) / np.cosh(r) ** 2, rtol=1e-13)
    assert not s.normalized


def test_operator_norm_convention():
    r, k = 0.9, 2
    s = coefficients(SqueezeParams(r), k, RATIO_CONVENTION)
    p = np.arange(4)
    expected = np.tanh(r) ** p * np.sqrt(p + k) / (np.sqrt(factorial(k)) * np.cosh(r) ** (k + 1))
    np.testing.assert_allclose(s.coefficients[:4], expected, rtol=1e-13)


def test_insufficient_cutoff():
    with pytest.raises(CutoffError):
        coefficients(SqueezeParams(1.0), 2, OPERATOR, cutoff=10)
    N = auto_cutoff(1.0, 2, power=1)
    assert len(coefficients(SqueezeParams(1.0), 2, OPERATOR, cutoff=N).coefficients) == N + 1


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        coefficients(SqueezeParams(0.5), -1)


# --- log negativity ----------------------------------------------------------------------


def test_log_negativity_trivial_cases():
    one = SchmidtState(0, [1.0], True)
    assert log_negativity(one) == 0.0
    assert log_negativity(one, "paper_literal") == 0.0
    bell = SchmidtState(0, [1 / np.sqrt(2), 1 / np.sqrt(2)], True)
    assert log_negativity(bell) == pytest.approx(1.0, abs=1e-15)


def test_log_negativity_tmsv_r1():
    assert log_negativity(tmsv_coefficients(SqueezeParams(1.0))) == pytest.approx(2.8853900817779268, abs=1e-9)


def test_log_negativity_requires_normalized():
    with pytest.raises(ValueError):
        log_negativity(SchmidtState(0, [1.0, 1.0]))
    with pytest.raises(ValueError):
        log_negativity(SchmidtState(0, [1.0], True), "other")


@pytest.mark.parametrize("r", np.linspace(0.1, 2.0, 6))
def test_tmsv_baseline_and_printed_degeneracy(r):
    s = tmsv_coefficients(SqueezeParams(r))
    assert log_negativity(s) == pytest.approx(2 * r / np.log(2), abs=1e-9)
    assert log_negativity(s, "paper_literal") == pytest.approx(0.0, abs=1e-12)


@given(st.lists(st.floats(0, 1), min_size=1, max_size=12).filter(lambda c: sum(x * x for x in c) > 1e-6))
def test_log_negativity_nonnegative_and_zero_iff_product(c):
    c = np.array(c) / np.sqrt(np.sum(np.square(c)))
    s = SchmidtState(0, c, True)
    eps = log_negativity(s)
    assert eps >= 0
    if np.count_nonzero(c > 1e-12) == 1:
        assert eps == pytest.approx(0.0, abs=1e-12)
    else:
        assert eps > 0


@given(st.lists(st.floats(0.01, 1), min_size=1, max_size=10), st.floats(-3, 3))
def test_measures_ignore_phases(c, slope):
    c = np.array(c) / np.sqrt(np.sum(np.square(c)))
    a = SchmidtState(1, c, True)
    b = SchmidtState(1, c, True, slope * np.arange(len(c)))
    assert log_negativity(a) == log_negativity(b)
    assert entanglement_entropy(a) == entanglement_entropy(b)


# --- entropy -----------------------------------------------------------------------------


def test_entropy_trivial_cases():
    assert entanglement_entropy(SchmidtState(0, [1.0], True)) == 0.0
    assert entanglement_entropy(SchmidtState(0, [1 / np.sqrt(2)] * 2, True)) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        entanglement_entropy(SchmidtState(0, [1.0, 1.0]))


def test_entropy_tmsv_closed_form():
    s = tmsv_coefficients(SqueezeParams(0.8), tol=1e-15)
    assert entanglement_entropy(s) == pytest.approx(tmsv_entropy_closed_form(0.8), abs=1e-9)


@given(st.lists(st.floats(0, 1), min_size=1, max_size=12).filter(lambda c: sum(x * x for x in c) > 1e-6))
def test_entropy_bounded_by_support(c):
    c = np.array(c) / np.sqrt(np.sum(np.square(c)))
    n = np.count_nonzero(c)
    assert entanglement_entropy(SchmidtState(0, c, True)) <= np.log2(n) + 1e-12


def test_entropy_maximal_for_flat():
    c = np.full(5, 1 / np.sqrt(5))
    assert entanglement_entropy(SchmidtState(0, c, True)) == pytest.approx(np.log2(5), abs=1e-14)


@pytest.mark.parametrize("k", [2, 3])
def test_k1_source_equivalence_of_measures(k):
    # k = 1: identical; k > 1: the two conventions are genuinely different states
    p = SqueezeParams(0.9)
    a = log_negativity(coefficients(p, 1, LITERAL))
    b = log_negativity(coefficients(p, 1, OPERATOR))
    assert a == pytest.approx(b, abs=1e-12)
    assert log_negativity(coefficients(p, k, LITERAL)) != pytest.approx(log_negativity(coefficients(p, k, OPERATOR)))


# --- ratio ------------------------------------------------------------------------------------


def test_ratio_k0_is_one():
    for r in (0.1, 0.7, 2.0):
        p = SqueezeParams(r)
        assert negativity_ratio(p, 0) == pytest.approx(1.0, abs=1e-12)
        # squared sum with a 1e-12 relative truncation
        assert ratio_closed_form(p, 0) == pytest.approx(1.0, abs=3e-12)


def test_ratio_rejects_r0():
    with pytest.raises(ValueError):
        negativity_ratio(SqueezeParams(0.0), 2)
    with pytest.raises(ValueError):
        ratio_closed_form(SqueezeParams(0.0), 2)


def test_ratio_frozen_values():
    p = SqueezeParams(0.05)
    assert ratio_closed_form(p, 3) == pytest.approx(0.5043224904380089, rel=1e-9)
    assert ratio_closed_form(p, 4) == pytest.approx(0.16705346184172773, rel=1e-9)
    assert negativity_ratio(p, 3, formula="closed_form") == ratio_closed_form(p, 3)
    # the summed-amplitude ratio grows with k instead
    assert negativity_ratio(p, 3) == pytest.approx(1.9585049392945, rel=1e-9)


# --- E_f as printed -----------------------------------------------------------------------------


def test_ef_vanishes_at_r0_for_k1():
    assert ef_paper(SqueezeParams(0.0), 1) == 0.0


def test_ef_frozen_values():
    # converged sums of the unnormalized printed coefficients
    assert ef_paper(SqueezeParams(1.0), 1) == pytest.approx(34.16818483572292, rel=1e-9)
    assert ef_paper(SqueezeParams(2.2), 1, terms=100) == pytest.approx(540.408054934333, rel=1e-9)


def test_ef_cutoff_checked():
    with pytest.raises(CutoffError):
        ef_paper(SqueezeParams(2.0), 1, cutoff=50)


def test_ef_truncation_converges_to_full_sum():
    p = SqueezeParams(1.3)
    full = ef_paper(p, 2)
    assert ef_paper(p, 2, terms=auto_cutoff(1.3, 2, "paper_literal", 1e-14, power=1)) == pytest.approx(full, rel=1e-10)


# --- scans -----------------------------------------------------------------------------------------


def test_scan_tmsv_log_negativity_increasing():
    rs = np.linspace(0.05, 2.5, 30)
    curve = scan(MeasureKind.LOG_NEGATIVITY, SqueezeParams(1.0), 0, rs)
    assert len(curve.values) == len(rs)
    assert np.all(np.diff(curve.values) > 0)


def test_scan_validation_and_error_context():
    with pytest.raises(ValueError):
        scan(MeasureKind.LOG_NEGATIVITY, SqueezeParams(1.0), 1, [0.5, 0.4])
    with pytest.raises(ValueError):
        scan(MeasureKind.LOG_NEGATIVITY, SqueezeParams(1.0), 1, [0.0, 0.4])
    with pytest.raises(ConvergenceError, match="r=0.5"):
        scan(MeasureKind.EF_PAPER, SqueezeParams(1.0), 1, [0.5], cutoff=2)


def test_scan_deterministic():
    rs = np.linspace(0.1, 1.5, 8)
    a = scan(MeasureKind.NEGATIVITY_RATIO, SqueezeParams(0.3), 2, rs)
    b = scan(MeasureKind.NEGATIVITY_RATIO, SqueezeParams(0.3), 2, rs)
    assert np.array_equal(a.values, b.values)


def test_curve_validation():
    with pytest.raises(ValueError):
        EntanglementCurve([1.0, 0.5], [0.0, 0.0], 1, "ef_paper")
    with pytest.raises(ValueError):
        EntanglementCurve([1.0, 2.0], [0.0], 1, "ef_paper")


def test_refined_argmax_within_one_step():
    rs = np.round(np.arange(0.5, 4.0001, 0.01), 10)
    curve = scan(MeasureKind.EF_PAPER, SqueezeParams(1.0), 1, rs, PAPER_RAW, terms=100)
    coarse, _ = curve.argmax()
    fine, _ = refine_argmax(lambda r: ef_paper(SqueezeParams(r), 1, terms=100), curve)
    assert abs(fine - coarse) <= 0.01 + 1e-12
    assert fine == pytest.approx(2.221, abs=0.002)

"""Tests for superoscillatory sequences and their evolved supershift."""

import math
import warnings

import numpy as np
import pytest

from barrierwaves.evolve import PlaneWave, QuadratureSpec, eval_datum, psi_fresnel
from barrierwaves.geometry import PolarPoint
from barrierwaves.greens import BoundaryKind
from barrierwaves.operator import TruncationInsufficient
from barrierwaves.summation import CompensatedSum
from barrierwaves.superosc import (
    SQRT2,
    CoefficientOverflow,
    SuperoscParams,
    SupershiftRow,
    a1_distance,
    closed_form_fn,
    reliable_order,
    superosc_coefficients,
    superosc_sequence,
    supershift_experiment,
)

X = PolarPoint(1.0, math.pi / 2)


# ----------------------------------------------------------------------------
# Coefficients
# ----------------------------------------------------------------------------


def test_first_order_atoms():
    seq = superosc_sequence(SuperoscParams(2.0, 1, 1, 1))
    assert np.allclose(seq.weights, [1.5, -0.5])
    assert np.allclose(seq.wavevectors, [[1.0, 1.0], [-1.0, -1.0]])
    assert seq.k0 == SQRT2


def test_coefficients_sum_to_one():
    for a in (1.5, 2.0, 3.0):
        for n in (1, 5, 20, 24):
            c = superosc_coefficients(n, a)
            acc = CompensatedSum()
            for v in c:
                acc.add(v)
            assert abs(acc.value - 1.0) <= 1e-12


def test_frequency_moment_recovers_target():
    # sum_j C_j k_j = a: the sequence's first moment already sits at the
    # out-of-band frequency.
    for n in (2, 8):
        c = superosc_coefficients(n, 3.0)
        k = 1.0 - 2.0 * np.arange(n + 1) / n
        assert float(np.sum(c * k)) == pytest.approx(3.0, rel=1e-12)


def test_coefficient_magnitudes_grow_with_order():
    small = np.abs(superosc_coefficients(5, 2.0)).max()
    large = np.abs(superosc_coefficients(25, 2.0)).max()
    assert large > 1e3 * small


def test_coefficient_overflow_guard():
    with pytest.raises(CoefficientOverflow):
        superosc_coefficients(1200, 2.0)


def test_order_validation():
    with pytest.raises(ValueError):
        superosc_coefficients(0, 2.0)


def test_params_validation():
    with pytest.raises(ValueError):
        SuperoscParams(1.0, 1, 1, 4)
    with pytest.raises(ValueError):
        SuperoscParams(2.0, 0, 1, 4)
    with pytest.raises(ValueError):
        SuperoscParams(2.0, 1, 1, 0)
    p = SuperoscParams(2.0, 1, 2, 4)
    assert p.a_vec == pytest.approx((2.0, 4.0))


# ----------------------------------------------------------------------------
# Closed form
# ----------------------------------------------------------------------------


def test_closed_form_matches_sum_at_point():
    p = SuperoscParams(2.0, 1, 1, 10)
    direct = eval_datum(superosc_sequence(p), 0.3, -0.1)
    assert abs(closed_form_fn(p, 0.3, -0.1) - direct) <= 1e-9


def test_closed_form_at_origin_is_one():
    assert closed_form_fn(SuperoscParams(2.0, 1, 1, 7), 0.0, 0.0) == pytest.approx(1.0, abs=1e-14)


def test_closed_form_sweep():
    rng = np.random.default_rng(3)
    for n in range(1, 17):
        p = SuperoscParams(2.0, 1, 1, n)
        seq = superosc_sequence(p)
        for _ in range(6):
            z1 = complex(rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4))
            z2 = complex(rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4))
            assert abs(closed_form_fn(p, z1, z2) - eval_datum(seq, z1, z2)) <= 1e-8


def test_closed_form_rejects_mixed_powers():
    with pytest.raises(ValueError):
        closed_form_fn(SuperoscParams(2.0, 1, 2, 4), 0.1, 0.1)


def test_pointwise_limit_toward_target_wave():
    # F_n(z) -> exp(1j a (z1 + z2)); the closed form survives orders where
    # the explicit coefficient sum has long overflowed.
    target = np.exp(2j)
    errs = [
        abs(closed_form_fn(SuperoscParams(2.0, 1, 1, n), 1.0, 0.0) - target)
        for n in (10, 100, 1000)
    ]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 2e-3


# ----------------------------------------------------------------------------
# Precision budget
# ----------------------------------------------------------------------------


def test_reliable_order_reference_values():
    assert reliable_order(2.0) == 42
    assert reliable_order(1.5) == 73
    assert reliable_order(3.0) == 26


def test_reliable_order_is_self_validating():
    for a in (2.0, 3.0):
        n = reliable_order(a)
        assert math.log10(float(np.abs(superosc_coefficients(n, a)).max())) <= 12.0
        assert math.log10(float(np.abs(superosc_coefficients(n + 1, a)).max())) > 12.0


def test_reliable_order_validation():
    with pytest.raises(ValueError):
        reliable_order(1.0)


# ----------------------------------------------------------------------------
# Distance estimator
# ----------------------------------------------------------------------------


def test_a1_distance_decreases_with_order():
    d = [a1_distance(SuperoscParams(2.0, 1, 1, n), 2.0, 3.0) for n in (4, 8, 16)]
    assert d[0] > d[1] > d[2]


def test_a1_distance_doubling_growth_cannot_increase():
    p = SuperoscParams(2.0, 1, 1, 8)
    assert a1_distance(p, 2.0, 6.0) <= a1_distance(p, 2.0, 3.0)


def test_a1_distance_growth_guard():
    # The weight must decay faster than both exponential types grow.
    with pytest.raises(ValueError):
        a1_distance(SuperoscParams(2.0, 1, 1, 8), 2.0, 1.0)
    with pytest.raises(ValueError):
        a1_distance(SuperoscParams(2.0, 1, 1, 8), -1.0, 3.0)


# ----------------------------------------------------------------------------
# Evolved supershift
# ----------------------------------------------------------------------------


@pytest.fixture(scope="module")
def neumann_rows():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rows = supershift_experiment(
            BoundaryKind.NEUMANN, 1.0, X, n_list=(1, 4, 8)
        )
    return rows, caught


def test_experiment_row_structure(neumann_rows):
    rows, _ = neumann_rows
    assert [r.n for r in rows] == [1, 4, 8]
    for r in rows:
        assert isinstance(r, SupershiftRow)
        assert r.error == pytest.approx(abs(r.psi_n - r.psi_target), rel=1e-12)
        assert 0 < r.a1_dist
        assert math.isfinite(r.log_bound)


def test_experiment_warns_once_when_tail_uncertified(neumann_rows):
    _, caught = neumann_rows
    trunc = [w for w in caught if issubclass(w.category, TruncationInsufficient)]
    assert len(trunc) == 1


def test_experiment_error_within_log_bound(neumann_rows):
    rows, _ = neumann_rows
    for r in rows:
        assert r.error <= r.bound  # bound saturates to inf when C overflows
        assert math.log(r.error) <= r.log_bound


def test_first_order_supershift_is_two_wave_combination(neumann_rows):
    rows, _ = neumann_rows
    spec = QuadratureSpec()
    plus = psi_fresnel(BoundaryKind.NEUMANN, 1.0, X, PlaneWave(1.0, 1.0), spec).value
    minus = psi_fresnel(BoundaryKind.NEUMANN, 1.0, X, PlaneWave(-1.0, -1.0), spec).value
    assert abs(rows[0].psi_n - (1.5 * plus - 0.5 * minus)) <= 1e-9


def test_experiment_target_is_out_of_band_wave(neumann_rows):
    rows, _ = neumann_rows
    # every row shares the same evolved target
    assert rows[0].psi_target == rows[1].psi_target == rows[2].psi_target

"""SNR composition, Shannon capacity, cascading, and the two sweeps."""

import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from owpan.capacity import (
    CSV_HEADER,
    CapacityCurve,
    SnrBudget,
    SweepSpec,
    SweepVariable,
    cascade_capacity,
    electrical_snr,
    end_to_end_capacity,
    indoor_link_capacity,
    link_capacity,
    outdoor_link_capacity,
    sweep_capacity,
    write_curves_csv,
)
from owpan.params import LinkBudgetParams


class TestElectricalSnr:
    def test_zero_gain_zero_snr(self):
        b = SnrBudget(pr_over_n0_db=30.0, responsivity=0.8, channel_gain=0.0)
        assert electrical_snr(b) == 0.0

    def test_identity_composition(self):
        b = SnrBudget(pr_over_n0_db=0.0, responsivity=1.0, channel_gain=1.0, bandwidth=1.0)
        assert electrical_snr(b) == 1.0

    def test_ten_db_is_a_factor_of_ten(self):
        lo = SnrBudget(pr_over_n0_db=20.0, responsivity=0.8, channel_gain=0.3)
        hi = SnrBudget(pr_over_n0_db=30.0, responsivity=0.8, channel_gain=0.3)
        assert electrical_snr(hi) / electrical_snr(lo) == pytest.approx(10.0, rel=1e-12)

    def test_responsivity_gain_product_squared(self):
        a = SnrBudget(pr_over_n0_db=10.0, responsivity=0.5, channel_gain=0.8)
        b = SnrBudget(pr_over_n0_db=10.0, responsivity=0.8, channel_gain=0.5)
        assert electrical_snr(a) == pytest.approx(electrical_snr(b), rel=1e-12)

    @given(
        st.floats(min_value=-20.0, max_value=40.0),
        st.floats(min_value=1e-6, max_value=1.0),
    )
    def test_strictly_increasing_in_db_and_gain(self, db, gain):
        base = SnrBudget(pr_over_n0_db=db, responsivity=0.8, channel_gain=gain)
        more_db = SnrBudget(pr_over_n0_db=db + 1.0, responsivity=0.8, channel_gain=gain)
        assert electrical_snr(more_db) > electrical_snr(base)
        if gain < 0.99:
            more_gain = SnrBudget(
                pr_over_n0_db=db, responsivity=0.8, channel_gain=gain * 1.01
            )
            assert electrical_snr(more_gain) > electrical_snr(base)

    def test_rejects_gain_outside_unit_interval(self):
        with pytest.raises(ValueError):
            SnrBudget(pr_over_n0_db=0.0, responsivity=1.0, channel_gain=1.5)

    def test_rejects_nonpositive_bandwidth(self):
        with pytest.raises(ValueError):
            SnrBudget(pr_over_n0_db=0.0, responsivity=1.0, channel_gain=0.5, bandwidth=0.0)


class TestLinkCapacity:
    def test_zero_snr_zero_capacity(self):
        assert link_capacity(0.0, 10e6) == 0.0

    def test_unity_snr_equals_bandwidth(self):
        assert link_capacity(1.0, 10e6) == pytest.approx(10e6, rel=1e-12)

    def test_snr_three_gives_two_bits(self):
        assert link_capacity(3.0, 1.0) == pytest.approx(2.0, rel=1e-12)

    def test_deeply_attenuated_links_stay_positive(self):
        # log1p keeps capacities above zero far below double-precision 1+x
        assert link_capacity(1e-40, 10e6) > 0.0

    def test_concave_increasing(self):
        caps = [link_capacity(s, 1e6) for s in (1.0, 2.0, 3.0, 4.0)]
        assert all(a < b for a, b in zip(caps, caps[1:]))
        # concavity: equal snr steps give diminishing capacity gains
        diffs = [b - a for a, b in zip(caps, caps[1:])]
        assert all(d2 < d1 for d1, d2 in zip(diffs, diffs[1:]))

    def test_rejects_negative_snr(self):
        with pytest.raises(ValueError):
            link_capacity(-0.5, 1e6)


class TestCascade:
    def test_min_rule(self):
        assert cascade_capacity([3.0, 5.0, 2.0]) == 2.0

    def test_singleton(self):
        assert cascade_capacity([7.5]) == 7.5

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            cascade_capacity([])

    @given(st.lists(st.floats(min_value=0.0, max_value=1e9), min_size=1, max_size=8))
    def test_permutation_invariant_and_bounded(self, caps):
        c = cascade_capacity(caps)
        assert c == cascade_capacity(sorted(caps))
        assert all(c <= x for x in caps)


class TestLinkCapacities:
    def test_outdoor_matches_manual_composition(self):
        p = LinkBudgetParams()
        from owpan.channels import (
            beers_lambert_transmittance,
            fso_capture_fraction,
            gaussian_beam_radius,
        )

        gain = beers_lambert_transmittance(5.0, p.span) * fso_capture_fraction(
            p.detector_area, gaussian_beam_radius(p.beam_waist, p.wavelength, p.span)
        )
        snr = (p.laser_responsivity * gain) ** 2 * 10 ** (p.pr_over_n0 / 10) / p.bandwidth
        expected = p.bandwidth * math.log1p(snr) / math.log(2)
        assert outdoor_link_capacity(p, 5.0) == pytest.approx(expected, rel=1e-12)

    def test_outdoor_accepts_zero_span(self):
        p = LinkBudgetParams()
        c0 = outdoor_link_capacity(p, 80.0, span=0.0)
        assert c0 > outdoor_link_capacity(p, 80.0, span=1.0)

    def test_indoor_independent_of_attenuation(self):
        p = LinkBudgetParams()
        assert indoor_link_capacity(p) > 0.0

    def test_end_to_end_is_min_of_links(self):
        p = LinkBudgetParams()
        e2e = end_to_end_capacity(p, 5.0)
        assert e2e <= outdoor_link_capacity(p, 5.0)
        assert e2e <= indoor_link_capacity(p)
        assert e2e <= p.rf_capacity

    def test_scaling_responsivity_against_gain_cancels(self):
        # capacity depends only on the responsivity * gain product
        a = SnrBudget(pr_over_n0_db=12.0, responsivity=0.4, channel_gain=0.6)
        b = SnrBudget(pr_over_n0_db=12.0, responsivity=0.8, channel_gain=0.3)
        assert link_capacity(electrical_snr(a), 1e7) == pytest.approx(
            link_capacity(electrical_snr(b), 1e7), rel=1e-12
        )


class TestSweeps:
    def test_one_curve_per_attenuation(self):
        p = LinkBudgetParams()
        spec = SweepSpec(SweepVariable.PR_OVER_N0_DB, 0.0, 30.0, points=16)
        curves = sweep_capacity(p, spec)
        assert [c.alpha_db_per_km for c in curves] == [5.0, 20.0, 50.0, 80.0]
        for c in curves:
            assert len(c.x) == 16
            assert c.x[0] == 0.0 and c.x[-1] == 30.0

    def test_snr_sweep_monotone_non_decreasing(self):
        p = LinkBudgetParams()
        spec = SweepSpec(SweepVariable.PR_OVER_N0_DB, 0.0, 30.0, points=50)
        for c in sweep_capacity(p, spec):
            assert (np.diff(c.capacity_bps) >= 0).all()

    def test_span_sweep_monotone_non_increasing(self):
        p = LinkBudgetParams()
        spec = SweepSpec(SweepVariable.SPAN_M, 0.0, 2000.0, points=50)
        for c in sweep_capacity(p, spec):
            assert (np.diff(c.capacity_bps) <= 0).all()

    def test_span_sweep_value_ordering_by_attenuation(self):
        p = LinkBudgetParams()
        spec = SweepSpec(SweepVariable.SPAN_M, 0.0, 2000.0, points=50)
        caps = [np.asarray(c.capacity_bps) for c in sweep_capacity(p, spec)]
        for lo, hi in zip(caps, caps[1:]):
            assert (lo[1:] >= hi[1:]).all()

    def test_span_sweep_relative_decay_ordered_by_attenuation(self):
        # higher attenuation decays proportionally faster at every step
        p = LinkBudgetParams()
        spec = SweepSpec(SweepVariable.SPAN_M, 0.0, 2000.0, points=50)
        caps = [np.asarray(c.capacity_bps) for c in sweep_capacity(p, spec)]
        ratios = [c[1:] / c[:-1] for c in caps]
        for gentle, steep in zip(ratios, ratios[1:]):
            assert (steep < gentle).all()

    def test_all_points_finite_nonnegative(self):
        p = LinkBudgetParams()
        for var, lo, hi in (
            (SweepVariable.PR_OVER_N0_DB, 0.0, 30.0),
            (SweepVariable.SPAN_M, 0.0, 2000.0),
        ):
            for c in sweep_capacity(p, SweepSpec(var, lo, hi, points=40)):
                arr = np.asarray(c.capacity_bps)
                assert np.isfinite(arr).all()
                assert (arr >= 0).all()

    def test_zero_width_sweep(self):
        p = LinkBudgetParams()
        spec = SweepSpec(SweepVariable.SPAN_M, 160.0, 160.0, points=2)
        for c in sweep_capacity(p, spec):
            assert c.capacity_bps[0] == c.capacity_bps[1]

    def test_end_to_end_caps_at_led_floor(self):
        p = LinkBudgetParams()
        spec = SweepSpec(SweepVariable.PR_OVER_N0_DB, 0.0, 30.0, points=8)
        led = indoor_link_capacity(p)
        for c in sweep_capacity(p, spec, end_to_end=True):
            assert (np.asarray(c.capacity_bps) <= led + 1e-12).all()

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            SweepSpec(SweepVariable.SPAN_M, 100.0, 50.0, points=10)
        with pytest.raises(ValueError):
            SweepSpec(SweepVariable.SPAN_M, 0.0, 100.0, points=1)


class TestCsvExport:
    def test_header_and_shape(self):
        p = LinkBudgetParams()
        spec = SweepSpec(SweepVariable.SPAN_M, 0.0, 100.0, points=3)
        curves = sweep_capacity(p, spec)
        buf = io.StringIO()
        write_curves_csv(curves, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == CSV_HEADER == "x,alpha_dBkm,capacity_bps"
        assert len(lines) == 1 + 4 * 3
        first = lines[1].split(",")
        assert float(first[0]) == 0.0
        assert float(first[1]) == 5.0
        assert float(first[2]) > 0.0

    def test_round_trips_through_float(self):
        p = LinkBudgetParams()
        spec = SweepSpec(SweepVariable.SPAN_M, 0.0, 500.0, points=4)
        curves = sweep_capacity(p, spec)
        buf = io.StringIO()
        write_curves_csv(curves, buf)
        rows = [line.split(",") for line in buf.getvalue().splitlines()[1:]]
        flat = [
            (x, c)
            for curve in curves
            for x, c in zip(curve.x, curve.capacity_bps)
        ]
        for (x, c), row in zip(flat, rows):
            assert float(row[0]) == x
            assert float(row[2]) == c


class TestCurveValidation:
    def test_rejects_non_monotone_x(self):
        with pytest.raises(ValueError):
            CapacityCurve(
                variable=SweepVariable.SPAN_M,
                alpha_db_per_km=5.0,
                x=(1.0, 0.5),
                capacity_bps=(1.0, 2.0),
                fixed_params=LinkBudgetParams(),
            )

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            CapacityCurve(
                variable=SweepVariable.SPAN_M,
                alpha_db_per_km=5.0,
                x=(0.0, 1.0),
                capacity_bps=(1.0,),
                fixed_params=LinkBudgetParams(),
            )

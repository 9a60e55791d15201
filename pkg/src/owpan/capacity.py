"""Electrical SNR, Shannon capacity, and the attenuation-family sweeps.

The chain is: optical channel gain -> photocurrent (gain times
responsivity) -> electrical SNR (squared, since detection converts optical
power to current) -> Shannon capacity.  Cascaded links are limited by their
worst member.  Sweeps produce one curve per configured attenuation
coefficient, over either the received-power budget or the backbone span.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .channels import (
    beers_lambert_transmittance,
    diffuse_gain,
    fso_capture_fraction,
    gaussian_beam_radius,
    los_gain,
)
from .params import LinkBudgetParams

__all__ = [
    "SnrBudget",
    "SweepVariable",
    "SweepSpec",
    "CapacityCurve",
    "electrical_snr",
    "link_capacity",
    "cascade_capacity",
    "indoor_link_capacity",
    "outdoor_link_capacity",
    "end_to_end_capacity",
    "sweep_capacity",
    "write_curves_csv",
]

CSV_HEADER = "x,alpha_dBkm,capacity_bps"
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class SnrBudget:
    """Inputs of the SNR composition for one link.

    ``pr_over_n0_db`` is the received-power to noise-density ratio in dB
    (so its linear form has units of Hz), ``bandwidth`` in Hz.
    """

    pr_over_n0_db: float
    responsivity: float
    channel_gain: float
    bandwidth: float = 10e6

    def __post_init__(self) -> None:
        if self.bandwidth <= 0.0:
            raise ValueError(f"bandwidth must be > 0, got {self.bandwidth!r}")
        if not 0.0 <= self.channel_gain <= 1.0:
            raise ValueError(f"channel_gain must lie in [0, 1], got {self.channel_gain!r}")
        if self.responsivity < 0.0:
            raise ValueError(f"responsivity must be >= 0, got {self.responsivity!r}")


class SweepVariable(enum.Enum):
    """What the x axis of a capacity sweep ranges over."""

    PR_OVER_N0_DB = "pr_over_n0_db"
    SPAN_M = "span_m"


@dataclass(frozen=True)
class SweepSpec:
    """Uniform sweep grid: ``points`` samples from ``start`` to ``stop``."""

    variable: SweepVariable
    start: float
    stop: float
    points: int = 200

    def __post_init__(self) -> None:
        if self.points < 2:
            raise ValueError(f"need at least 2 grid points, got {self.points!r}")
        if self.stop < self.start:
            raise ValueError(
                f"sweep range must not be reversed, got [{self.start!r}, {self.stop!r}]"
            )

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class CapacityCurve:
    """One sweep result: capacity (bit/s) over the grid, at one attenuation."""

    variable: SweepVariable
    alpha_db_per_km: float
    x: tuple[float, ...]
    capacity_bps: tuple[float, ...]
    fixed_params: LinkBudgetParams

    def __post_init__(self) -> None:
        if len(self.x) != len(self.capacity_bps):
            raise ValueError("x and capacity_bps must have equal length")
        if any(b < a for a, b in zip(self.x, self.x[1:])):
            raise ValueError("sweep grid must be non-decreasing")
        if any(c < 0.0 or not math.isfinite(c) for c in self.capacity_bps):
            raise ValueError("capacities must be finite and non-negative")


def electrical_snr(budget: SnrBudget) -> float:
    """Post-detection SNR of an intensity-modulated link.

    SNR = (responsivity * gain)^2 * 10^(pr_over_n0/10) / bandwidth.  The
    square is the optical-to-electrical conversion; dividing by bandwidth
    turns the noise density into in-band noise power.
    """
    photo = budget.responsivity * budget.channel_gain
    return photo * photo * 10.0 ** (budget.pr_over_n0_db / 10.0) / budget.bandwidth


def link_capacity(snr: float, bandwidth: float) -> float:
    """Shannon capacity B*log2(1 + SNR) in bit/s.

    Computed via log1p so deeply attenuated links keep a positive
    capacity instead of rounding to zero; the sweeps' ordering
    properties rely on that.
    """
    if snr < 0.0:
        raise ValueError(f"snr must be >= 0, got {snr!r}")
    if bandwidth <= 0.0:
        raise ValueError(f"bandwidth must be > 0, got {bandwidth!r}")
    return bandwidth * math.log1p(snr) / _LN2


def cascade_capacity(capacities: Sequence[float]) -> float:
    """Capacity of links in series: the worst link dictates."""
    if len(capacities) == 0:
        raise ValueError("cascade of zero links has no capacity")
    if any(c < 0.0 for c in capacities):
        raise ValueError("capacities must be >= 0")
    return min(capacities)


def indoor_link_capacity(params: LinkBudgetParams) -> float:
    """Capacity of the LED downlink at the DC channel gain."""
    indoor = params.indoor()
    gain = float(los_gain(indoor)) + float(diffuse_gain(indoor))
    snr = electrical_snr(
        SnrBudget(
            pr_over_n0_db=params.pr_over_n0,
            responsivity=params.pd_responsivity,
            channel_gain=gain,
            bandwidth=params.bandwidth,
        )
    )
    return link_capacity(snr, params.bandwidth)


def outdoor_link_capacity(
    params: LinkBudgetParams,
    alpha_db_per_km: float,
    span: float | None = None,
    pr_over_n0_db: float | None = None,
) -> float:
    """Capacity of the laser backbone at one attenuation coefficient.

    Built from the gain factors directly (not OutdoorChannelParams) so a
    span of exactly zero, the natural left edge of a distance sweep, is
    representable.
    """
    span_m = params.span if span is None else span
    if span_m < 0.0:
        raise ValueError(f"span must be >= 0, got {span_m!r}")
    radius = gaussian_beam_radius(params.beam_waist, params.wavelength, span_m)
    gain = beers_lambert_transmittance(alpha_db_per_km, span_m) * fso_capture_fraction(
        params.detector_area, radius
    )
    snr = electrical_snr(
        SnrBudget(
            pr_over_n0_db=params.pr_over_n0 if pr_over_n0_db is None else pr_over_n0_db,
            responsivity=params.laser_responsivity,
            channel_gain=gain,
            bandwidth=params.bandwidth,
        )
    )
    return link_capacity(snr, params.bandwidth)


def end_to_end_capacity(params: LinkBudgetParams, alpha_db_per_km: float) -> float:
    """Worst-link capacity of the full RF / laser / LED cascade."""
    return cascade_capacity(
        [
            params.rf_capacity,
            outdoor_link_capacity(params, alpha_db_per_km),
            indoor_link_capacity(params),
        ]
    )


def sweep_capacity(
    params: LinkBudgetParams,
    spec: SweepSpec,
    end_to_end: bool = False,
) -> list[CapacityCurve]:
    """Sweep the backbone capacity over the grid, one curve per attenuation.

    By default the curves show the laser link alone, which is the part the
    swept variables act on.  With ``end_to_end=True`` each point is instead
    min'ed against the (constant) RF and LED link capacities; note the LED
    link is so much weaker under the default parameters that it flattens
    every curve to the same floor.
    """
    grid = spec.grid()
    curves = []
    for alpha in params.attenuation_coeffs:
        caps = []
        for x in grid:
            if spec.variable is SweepVariable.PR_OVER_N0_DB:
                c = outdoor_link_capacity(params, alpha, pr_over_n0_db=float(x))
            else:
                c = outdoor_link_capacity(params, alpha, span=float(x))
            if end_to_end:
                c = cascade_capacity(
                    [params.rf_capacity, c, indoor_link_capacity(params)]
                )
            caps.append(c)
        curves.append(
            CapacityCurve(
                variable=spec.variable,
                alpha_db_per_km=alpha,
                x=tuple(float(x) for x in grid),
                capacity_bps=tuple(caps),
                fixed_params=params,
            )
        )
    return curves


def write_curves_csv(curves: Iterable[CapacityCurve], stream: IO[str]) -> None:
    """Write curves as ``x,alpha_dBkm,capacity_bps`` rows, curve by curve."""
    stream.write(CSV_HEADER + "\n")
    for curve in curves:
        for x, c in zip(curve.x, curve.capacity_bps):
            stream.write(f"{x!r},{curve.alpha_db_per_km!r},{c!r}\n")

"""Deterministic channel gains for the two optical hops of a W-OWPAN.

The indoor hop is a generalized-Lambertian LED downlink with a line-of-sight
component and a single-bounce diffuse component; the outdoor hop is a narrow
laser beam attenuated by the Beers-Lambert law and truncated by the finite
receiver aperture.  Everything here is a pure function over immutable
parameter sets, so concurrent use needs no locking.

Internally all quantities are SI (m, m^2, s, Hz, rad); attenuation
coefficients are the lone exception and stay in dB/km, matching how they are
normally quoted.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

__all__ = [
    "ChannelGain",
    "IndoorChannelParams",
    "OutdoorChannelParams",
    "BeamConsistencyWarning",
    "lambertian_order",
    "los_gain",
    "diffuse_gain",
    "indoor_frequency_response",
    "beers_lambert_transmittance",
    "gaussian_beam_radius",
    "fso_capture_fraction",
    "fso_link_gain",
]


class BeamConsistencyWarning(UserWarning):
    """Configured beam divergence disagrees with the diffraction limit."""


class ChannelGain(float):
    """Dimensionless optical power gain, constrained to [0, 1]."""

    def __new__(cls, value: float) -> "ChannelGain":
        value = float(value)
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"channel gain {value!r} outside [0, 1]")
        return super().__new__(cls, value)


@dataclass(frozen=True)
class IndoorChannelParams:
    """Geometry and receiver parameters of the LED-to-photodetector link.

    Angles are in radians, areas in m^2, distances in m, delays in s.
    ``los_delay``/``nlos_delay`` are the arrival times of the direct and the
    wall-reflected path, ``cutoff_frequency`` the 3 dB corner of the diffuse
    path's low-pass response.
    """

    half_intensity_angle: float
    incidence_angle: float
    irradiance_angle: float
    pd_area: float
    room_area: float
    wall_reflectivity: float
    distance: float
    los_delay: float
    nlos_delay: float
    cutoff_frequency: float
    responsivity: float

    def __post_init__(self) -> None:
        positive = {
            "pd_area": self.pd_area,
            "room_area": self.room_area,
            "distance": self.distance,
            "los_delay": self.los_delay,
            "nlos_delay": self.nlos_delay,
            "cutoff_frequency": self.cutoff_frequency,
            "responsivity": self.responsivity,
        }
        for name, value in positive.items():
            if not value > 0.0:
                raise ValueError(f"{name} must be strictly positive, got {value!r}")
        if not 0.0 <= self.wall_reflectivity < 1.0:
            # the diffuse gain diverges at reflectivity 1
            raise ValueError(
                f"wall_reflectivity must lie in [0, 1), got {self.wall_reflectivity!r}"
            )
        if not 0.0 < self.half_intensity_angle < math.pi / 2:
            raise ValueError(
                f"half_intensity_angle must lie in (0, pi/2), got {self.half_intensity_angle!r}"
            )


@dataclass(frozen=True)
class OutdoorChannelParams:
    """Laser link parameters: atmosphere, beam geometry and detector.

    ``attenuation_coeff`` is in dB/km, ``span`` in m, ``detector_area`` in
    m^2, ``beam_waist`` and ``wavelength`` in m, ``divergence`` in rad.
    A waist/divergence pair that disagrees with the diffraction relation
    theta = lambda / (pi * w0) by more than 5% triggers a
    :class:`BeamConsistencyWarning` (not an error: quoted datasheet values
    are occasionally inconsistent and both readings remain usable).
    """

    attenuation_coeff: float
    span: float
    detector_area: float
    beam_waist: float
    wavelength: float
    divergence: float
    responsivity: float

    def __post_init__(self) -> None:
        if self.attenuation_coeff < 0.0:
            raise ValueError(
                f"attenuation_coeff must be >= 0, got {self.attenuation_coeff!r}"
            )
        positive = {
            "span": self.span,
            "detector_area": self.detector_area,
            "beam_waist": self.beam_waist,
            "wavelength": self.wavelength,
            "divergence": self.divergence,
            "responsivity": self.responsivity,
        }
        for name, value in positive.items():
            if not value > 0.0:
                raise ValueError(f"{name} must be strictly positive, got {value!r}")
        natural = self.wavelength / (math.pi * self.beam_waist)
        if abs(self.divergence - natural) / self.divergence > 0.05:
            warnings.warn(
                f"divergence {self.divergence:.4g} rad differs from the "
                f"diffraction-limited value {natural:.4g} rad implied by the "
                f"beam waist; check waist/divergence units",
                BeamConsistencyWarning,
                stacklevel=2,
            )


def lambertian_order(half_intensity_angle: float) -> float:
    """Lambertian mode number m = -ln 2 / ln(cos(phi_half)).

    m = 1 for the ideal 60 degree half-intensity source and grows without
    bound as the beam narrows.
    """
    if not 0.0 < half_intensity_angle < math.pi / 2:
        raise ValueError(
            f"half-intensity angle must lie in (0, pi/2), got {half_intensity_angle!r}"
        )
    return -math.log(2.0) / math.log(math.cos(half_intensity_angle))


def los_gain(p: IndoorChannelParams) -> ChannelGain:
    """Line-of-sight gain of the generalized-Lambertian LED link.

    gain = (m+1) A / (2 pi d^2) * cos^m(irradiance) * cos(incidence),
    clamped to zero once either angle reaches 90 degrees.
    """
    if abs(p.irradiance_angle) >= math.pi / 2 or abs(p.incidence_angle) >= math.pi / 2:
        return ChannelGain(0.0)
    m = lambertian_order(p.half_intensity_angle)
    gain = (
        (m + 1.0)
        * p.pd_area
        / (2.0 * math.pi * p.distance**2)
        * math.cos(p.irradiance_angle) ** m
        * math.cos(p.incidence_angle)
    )
    return ChannelGain(gain)


def diffuse_gain(p: IndoorChannelParams) -> ChannelGain:
    """Single-bounce diffuse gain (A_pd / A_room) * rho / (1 - rho)."""
    rho = p.wall_reflectivity
    return ChannelGain(p.pd_area / p.room_area * rho / (1.0 - rho))


def indoor_frequency_response(f: float, p: IndoorChannelParams) -> complex:
    """Two-path response: delayed LOS ray plus low-pass filtered diffuse ray.

    H(f) = g_los e^{-j 2 pi f t1} + g_dif e^{-j 2 pi f t2} / (1 + j f/f0)
    so |H(0)| = g_los + g_dif.
    """
    if f < 0.0:
        raise ValueError(f"frequency must be >= 0, got {f!r}")
    g_los = los_gain(p)
    g_dif = diffuse_gain(p)
    direct = g_los * cmath.exp(-2j * math.pi * f * p.los_delay)
    diffuse = (
        g_dif
        * cmath.exp(-2j * math.pi * f * p.nlos_delay)
        / (1.0 + 1j * f / p.cutoff_frequency)
    )
    return direct + diffuse


def beers_lambert_transmittance(attenuation_db_per_km: float, span_m: float) -> ChannelGain:
    """Atmospheric power transmittance 10^(-alpha L / 10) with L in km."""
    if attenuation_db_per_km < 0.0:
        raise ValueError(f"attenuation must be >= 0, got {attenuation_db_per_km!r}")
    if span_m < 0.0:
        raise ValueError(f"span must be >= 0, got {span_m!r}")
    return ChannelGain(10.0 ** (-attenuation_db_per_km * (span_m / 1000.0) / 10.0))


def gaussian_beam_radius(beam_waist: float, wavelength: float, span_m: float) -> float:
    """1/e^2 beam radius after propagating span_m from the waist.

    w(L) = w0 sqrt(1 + (L / zR)^2) with Rayleigh range zR = pi w0^2 / lambda,
    asymptotically w(L) -> theta L with theta = lambda / (pi w0).
    """
    if beam_waist <= 0.0 or wavelength <= 0.0:
        raise ValueError("beam waist and wavelength must be strictly positive")
    if span_m < 0.0:
        raise ValueError(f"span must be >= 0, got {span_m!r}")
    rayleigh = math.pi * beam_waist**2 / wavelength
    return beam_waist * math.hypot(1.0, span_m / rayleigh)


def fso_capture_fraction(detector_area: float, beam_radius: float) -> ChannelGain:
    """Fraction of a centered Gaussian beam collected by the detector.

    1 - exp(-2 A / (pi w^2)): the on-axis encircled power of a Gaussian
    profile over an aperture of area A, assuming no pointing error.
    """
    if detector_area <= 0.0 or beam_radius <= 0.0:
        raise ValueError("detector area and beam radius must be strictly positive")
    return ChannelGain(-math.expm1(-2.0 * detector_area / (math.pi * beam_radius**2)))


def fso_link_gain(p: OutdoorChannelParams) -> ChannelGain:
    """End-to-end laser link gain: transmittance times capture fraction."""
    radius = gaussian_beam_radius(p.beam_waist, p.wavelength, p.span)
    return ChannelGain(
        beers_lambert_transmittance(p.attenuation_coeff, p.span)
        * fso_capture_fraction(p.detector_area, radius)
    )

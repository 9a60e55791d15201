"""OOK and VPPM waveform mapping at four samples per optical clock.

Waveforms are real, non-negative float64 arrays (intensity modulation
cannot go dark-er than zero).  The sample rate is fixed at
``SAMPLES_PER_CHIP`` per chip period so golden waveform dumps stay
deterministic.

VPPM carries each bit in the pulse position within its chip period: bit 1
is a leading pulse, bit 0 a trailing pulse, and the pulse width equals the
dimming duty cycle.  Pulse edges that fall inside a sample are represented
by that sample taking the covered fraction as its amplitude, which keeps
the per-symbol mean exactly equal to the duty cycle at any dimming value.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "SAMPLES_PER_CHIP",
    "ModulationError",
    "ook_modulate",
    "ook_demodulate",
    "vppm_modulate",
    "vppm_demodulate",
]

SAMPLES_PER_CHIP = 4


class ModulationError(ValueError):
    """Demodulation met an ambiguous or malformed waveform."""


def _as_chips(chips) -> np.ndarray:
    arr = np.asarray(chips, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("chips must contain only 0s and 1s")
    return arr


def ook_modulate(chips, high: float = 1.0) -> np.ndarray:
    """Chip 1 -> ``high`` level, chip 0 -> dark, four samples each."""
    chips = _as_chips(chips)
    if high <= 0.0:
        raise ValueError(f"high level must be > 0, got {high!r}")
    return np.repeat(chips.astype(np.float64) * high, SAMPLES_PER_CHIP)


def ook_demodulate(samples, high: float = 1.0) -> np.ndarray:
    """Threshold each chip period's mean at half the high level."""
    samples = np.asarray(samples, dtype=np.float64).ravel()
    if samples.size % SAMPLES_PER_CHIP:
        raise ModulationError(
            f"sample count {samples.size} is not a whole number of chips"
        )
    means = samples.reshape(-1, SAMPLES_PER_CHIP).mean(axis=1)
    return (means > high / 2.0).astype(np.uint8)


def _vppm_symbols(dimming: float) -> tuple[np.ndarray, np.ndarray]:
    # fraction of each quarter-chip sample covered by a width-`dimming`
    # pulse anchored at the start (bit 1) or the end (bit 0) of the chip
    edges = np.arange(SAMPLES_PER_CHIP + 1) / SAMPLES_PER_CHIP
    lo, hi = edges[:-1], edges[1:]
    leading = np.clip(dimming - lo, 0.0, hi - lo) * SAMPLES_PER_CHIP
    trailing = leading[::-1].copy()
    return leading, trailing


def vppm_modulate(bits, dimming: float) -> np.ndarray:
    """Map bits to pulse-position symbols with duty cycle ``dimming``."""
    bits = _as_chips(bits)
    if not 0.0 < dimming < 1.0:
        raise ValueError(f"dimming must lie in (0, 1), got {dimming!r}")
    leading, trailing = _vppm_symbols(dimming)
    out = np.where(bits[:, None].astype(bool), leading[None, :], trailing[None, :])
    return out.ravel()


def vppm_demodulate(samples, dimming: float | None = None) -> np.ndarray:
    """Recover bits by comparing the energy of each chip period's halves.

    A leading pulse concentrates energy in the first half.  Symbols whose
    halves tie exactly are ambiguous and rejected (at any dimming < 1 a
    clean symbol always leans one way).
    """
    samples = np.asarray(samples, dtype=np.float64).ravel()
    if samples.size % SAMPLES_PER_CHIP:
        raise ModulationError(
            f"sample count {samples.size} is not a whole number of chips"
        )
    per = samples.reshape(-1, SAMPLES_PER_CHIP)
    half = SAMPLES_PER_CHIP // 2
    e_first = per[:, :half].sum(axis=1)
    e_second = per[:, half:].sum(axis=1)
    ties = e_first == e_second
    if ties.any():
        raise ModulationError(
            f"ambiguous VPPM symbol at index {int(np.argmax(ties))}: equal half energies"
        )
    return (e_first > e_second).astype(np.uint8)

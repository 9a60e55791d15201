"""Relay elements: amplify-and-forward and decode-and-forward.

AF suits the optical downlink chain where the relayed signal is a
strictly positive intensity: the relay scales it, noise included.  DF
suits technology changes (radio in, laser out): the payload is fully
decoded, then re-framed for the outgoing hop, so per-hop noise does not
accumulate across the relay.
"""

from __future__ import annotations

import numpy as np

from ..phy.frames import Frame, FrameDecodeError, decode_frame, encode_frame
from ..phy.modes import PhyMode

__all__ = ["af_relay", "df_relay", "RelayDecodeError"]


class RelayDecodeError(FrameDecodeError):
    """The decode-and-forward input could not be decoded."""


def af_relay(signal, gain: float = 1.0):
    """Amplify-and-forward: scale an intensity signal by a fixed gain.

    Linear and memoryless, so whatever noise rides on the input is
    amplified along with it.  Accepts scalars or arrays; intensities
    must be non-negative.
    """
    if gain < 0:
        raise ValueError(f"amplification coefficient must be non-negative, got {gain}")
    arr = np.asarray(signal, dtype=float)
    if np.any(arr < 0):
        raise ValueError("intensity signal must be non-negative")
    out = gain * arr
    if np.isscalar(signal) or arr.ndim == 0:
        return float(out)
    return out


def df_relay(
    frame: Frame,
    in_mode: PhyMode | None = None,
    out_mode: PhyMode | None = None,
    in_dimming: float = 0.5,
    out_dimming: float = 0.5,
) -> Frame:
    """Decode-and-forward: recover the payload and re-frame it.

    The incoming waveform is decoded with ``in_mode`` (defaulting to the
    frame's own mode) and the payload re-encoded with ``out_mode``, byte
    for byte.  A decode failure raises :class:`RelayDecodeError` so the
    caller can count the packet as dropped.
    """
    if in_mode is None:
        in_mode = frame.mode
    if out_mode is None:
        out_mode = in_mode
    try:
        payload = decode_frame(frame.waveform, in_mode, dimming=in_dimming)
    except FrameDecodeError as exc:
        raise RelayDecodeError(f"relay input undecodable: {exc}") from exc
    return encode_frame(payload, out_mode, dimming=out_dimming)

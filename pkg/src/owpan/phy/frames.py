"""End-to-end frame encoding for the bound PHY I/II modes.

The transmit chain is: payload -> 2-byte big-endian length prefix ->
GF(16) symbols -> RS outer code (whole blocks, zero-padded) ->
convolutional inner code (OOK/Manchester modes only) -> line code ->
intensity waveform.  The receive chain inverts it and uses the length
prefix to discard block padding, so any payload from 0 to 65535 bytes
round-trips through any mode.

The 8b/10b modes keep RS symbol padding aligned to whole bytes: RS(14,7)
blocks are 7 bytes long by construction, and RS(15,12) data is padded to
an even block count so the coded stream always packs into bytes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import line_codes, modulation
from .fec import RsDecodeError, cc_encode, rs_decode, rs_encode, viterbi_decode
from .line_codes import LineCodeError
from .modes import LineCode, Modulation, PhyMode
from .modulation import ModulationError

__all__ = [
    "Frame",
    "FrameDecodeError",
    "encode_frame",
    "decode_frame",
    "encode_to_chips",
    "decode_from_chips",
    "chips_to_hex",
    "chips_from_hex",
    "MAX_PAYLOAD",
]

MAX_PAYLOAD = 0xFFFF
_LENGTH_BYTES = 2


class FrameDecodeError(ValueError):
    """The receive chain could not reconstruct a frame."""


@dataclass(frozen=True)
class Frame:
    """An encoded frame: payload, the mode that framed it, and both the
    channel-symbol (chip) and waveform views of the encoding."""

    payload: bytes
    mode: PhyMode
    chips: np.ndarray
    waveform: np.ndarray


def _require_bound(mode: PhyMode) -> None:
    if not mode.bound:
        raise ValueError(
            f"{mode.name} is a catalog-only mode; only PHY I/II modes have codecs"
        )


def _bytes_to_nibbles(data: np.ndarray) -> np.ndarray:
    out = np.empty(data.size * 2, dtype=np.uint8)
    out[0::2] = data >> 4
    out[1::2] = data & 0xF
    return out


def _nibbles_to_bytes(nibbles: np.ndarray) -> np.ndarray:
    if nibbles.size % 2:
        nibbles = np.concatenate([nibbles, np.zeros(1, np.uint8)])
    return ((nibbles[0::2] << 4) | nibbles[1::2]).astype(np.uint8)


_NIBBLE_BITS = ((np.arange(16, dtype=np.uint8)[:, None] >> np.arange(3, -1, -1)) & 1).astype(
    np.uint8
)


def _nibbles_to_bits(nibbles: np.ndarray) -> np.ndarray:
    return _NIBBLE_BITS[nibbles].ravel()


def _bits_to_nibbles(bits: np.ndarray) -> np.ndarray:
    if bits.size % 4:
        raise FrameDecodeError(f"bit stream length {bits.size} is not nibble-aligned")
    groups = bits.reshape(-1, 4).astype(np.int64)
    return ((groups[:, 0] << 3) | (groups[:, 1] << 2) | (groups[:, 2] << 1) | groups[:, 3]).astype(
        np.uint8
    )


def _rs_block_pad(nibbles: np.ndarray, k: int, even_blocks: bool) -> np.ndarray:
    blocks = -(-nibbles.size // k) if nibbles.size else 1
    if even_blocks and blocks % 2:
        blocks += 1
    padded = np.zeros(blocks * k, dtype=np.uint8)
    padded[: nibbles.size] = nibbles
    return padded.reshape(blocks, k)


def encode_to_chips(payload: bytes, mode: PhyMode) -> np.ndarray:
    """Run the digital half of the transmit chain, yielding 0/1 chips."""
    _require_bound(mode)
    if len(payload) > MAX_PAYLOAD:
        raise ValueError(f"payload of {len(payload)} bytes exceeds {MAX_PAYLOAD}")
    wire = np.frombuffer(
        len(payload).to_bytes(_LENGTH_BYTES, "big") + bytes(payload), dtype=np.uint8
    )

    if mode.line_code is LineCode.EIGHT_B_TEN_B:
        if mode.outer_code is None:
            coded_bytes = wire
        else:
            rs = mode.outer_code
            even_blocks = rs.n % 2 == 1  # odd-length blocks must pair up
            blocks = _rs_block_pad(_bytes_to_nibbles(wire), rs.k, even_blocks)
            coded_bytes = _nibbles_to_bytes(rs_encode(blocks, rs).ravel())
        chips, _ = line_codes.encode_8b10b(coded_bytes)
        return chips

    nibbles = _bytes_to_nibbles(wire)
    if mode.outer_code is not None:
        rs = mode.outer_code
        coded = rs_encode(_rs_block_pad(nibbles, rs.k, False), rs).ravel()
    else:
        coded = nibbles

    if mode.line_code is LineCode.FOUR_B_SIX_B:
        return line_codes.encode_4b6b(coded)

    bits = _nibbles_to_bits(coded)
    if mode.inner_code is not None:
        bits = cc_encode(bits, mode.inner_code)
    return line_codes.manchester_encode(bits)


def decode_from_chips(chips: np.ndarray, mode: PhyMode) -> bytes:
    """Invert :func:`encode_to_chips`; raises FrameDecodeError on any defect."""
    _require_bound(mode)
    try:
        if mode.line_code is LineCode.EIGHT_B_TEN_B:
            coded_bytes, _ = line_codes.decode_8b10b(chips)
            if mode.outer_code is None:
                wire = coded_bytes
            else:
                rs = mode.outer_code
                symbols = _bytes_to_nibbles(coded_bytes)
                if symbols.size == 0 or symbols.size % rs.n:
                    raise FrameDecodeError(
                        f"{symbols.size} symbols do not form whole RS({rs.n},{rs.k}) blocks"
                    )
                wire = _nibbles_to_bytes(rs_decode(symbols.reshape(-1, rs.n), rs).ravel())
        elif mode.line_code is LineCode.FOUR_B_SIX_B:
            coded = line_codes.decode_4b6b(chips)
            wire = _strip_rs(coded, mode)
        else:
            bits = line_codes.manchester_decode(chips)
            if mode.inner_code is not None:
                bits = viterbi_decode(bits, mode.inner_code)
            wire = _strip_rs(_bits_to_nibbles(bits), mode)
    except (LineCodeError, RsDecodeError, ModulationError) as exc:
        raise FrameDecodeError(str(exc)) from exc

    data = bytes(wire.tobytes())
    if len(data) < _LENGTH_BYTES:
        raise FrameDecodeError("frame shorter than its length prefix")
    plen = int.from_bytes(data[:_LENGTH_BYTES], "big")
    body = data[_LENGTH_BYTES:]
    if plen > len(body):
        raise FrameDecodeError(
            f"length prefix claims {plen} bytes but only {len(body)} present"
        )
    return body[:plen]


def _strip_rs(symbols: np.ndarray, mode: PhyMode) -> np.ndarray:
    if mode.outer_code is None:
        return _nibbles_to_bytes(symbols)
    rs = mode.outer_code
    if symbols.size == 0 or symbols.size % rs.n:
        raise FrameDecodeError(
            f"{symbols.size} symbols do not form whole RS({rs.n},{rs.k}) blocks"
        )
    return _nibbles_to_bytes(rs_decode(symbols.reshape(-1, rs.n), rs).ravel())


def encode_frame(payload: bytes, mode: PhyMode, dimming: float = 0.5) -> Frame:
    """Encode payload bytes to a fully modulated frame."""
    chips = encode_to_chips(payload, mode)
    if mode.modulation is Modulation.VPPM:
        waveform = modulation.vppm_modulate(chips, dimming)
    else:
        waveform = modulation.ook_modulate(chips)
    return Frame(payload=bytes(payload), mode=mode, chips=chips, waveform=waveform)


def decode_frame(waveform: np.ndarray, mode: PhyMode, dimming: float = 0.5) -> bytes:
    """Demodulate and decode a waveform back to the payload bytes."""
    _require_bound(mode)
    try:
        if mode.modulation is Modulation.VPPM:
            chips = modulation.vppm_demodulate(waveform, dimming)
        else:
            chips = modulation.ook_demodulate(waveform)
    except ModulationError as exc:
        raise FrameDecodeError(str(exc)) from exc
    return decode_from_chips(chips, mode)


def chips_to_hex(chips: np.ndarray) -> str:
    """Render chips as hex, 64 chips (16 digits) per line, MSB first.

    The final nibble is zero-padded when the chip count is not a multiple
    of four; consumers that need the exact count must carry it separately.
    """
    chips = np.asarray(chips, dtype=np.uint8).ravel()
    pad = (-chips.size) % 4
    if pad:
        chips = np.concatenate([chips, np.zeros(pad, np.uint8)])
    groups = chips.reshape(-1, 4).astype(np.int64)
    digits = (groups[:, 0] << 3) | (groups[:, 1] << 2) | (groups[:, 2] << 1) | groups[:, 3]
    text = "".join(np.char.mod("%x", digits))
    lines = [text[i : i + 16] for i in range(0, len(text), 16)]
    return "\n".join(lines) + "\n"


def chips_from_hex(text: str) -> np.ndarray:
    """Parse a :func:`chips_to_hex` dump back to chips (nibble-padded)."""
    digits = [int(c, 16) for c in "".join(text.split())]
    arr = np.asarray(digits, dtype=np.uint8)
    return ((arr[:, None] >> np.arange(3, -1, -1)) & 1).astype(np.uint8).ravel()

"""Manchester, 4B6B, and 8b/10b line codes over 0/1 chip arrays.

All three codecs are table-driven and vectorized; inputs and outputs are
numpy uint8 arrays of bits/chips (or nibble/byte values where stated).
Decoders validate every symbol and report the index of the first offending
one.  Chip order within a codeword is MSB first throughout.

The 8b/10b here is the IBM data-character code (5b/6b + 3b/4b with running
disparity and the alternate D.x.A7 encoding); control (K) characters are
not needed by any PHY mode and are treated as invalid.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "LineCodeError",
    "manchester_encode",
    "manchester_decode",
    "encode_4b6b",
    "decode_4b6b",
    "encode_8b10b",
    "decode_8b10b",
    "TABLE_4B6B",
]


class LineCodeError(ValueError):
    """A decoder met an invalid symbol; ``index`` is the symbol position."""

    def __init__(self, message: str, index: int) -> None:
        super().__init__(f"{message} (symbol index {index})")
        self.index = index


def _as_bits(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError(f"{name} must contain only 0s and 1s")
    return arr


# Manchester: bit 0 -> chips 01, bit 1 -> chips 10 (IEEE convention:
# the chip pair carries the bit in its leading half).

def manchester_encode(bits) -> np.ndarray:
    """Expand each bit to its two-chip Manchester symbol."""
    bits = _as_bits(bits, "bits")
    chips = np.empty(bits.size * 2, dtype=np.uint8)
    chips[0::2] = bits
    chips[1::2] = bits ^ 1
    return chips


def manchester_decode(chips) -> np.ndarray:
    """Collapse chip pairs back to bits; 00 and 11 pairs are invalid."""
    chips = _as_bits(chips, "chips")
    if chips.size % 2:
        raise LineCodeError("chip stream length must be even", chips.size // 2)
    first = chips[0::2]
    second = chips[1::2]
    bad = first == second
    if bad.any():
        idx = int(np.argmax(bad))
        pair = f"{first[idx]}{second[idx]}"
        raise LineCodeError(f"invalid Manchester chip pair {pair}", idx)
    return first.copy()


# 4B6B: each nibble maps to a six-chip word of Hamming weight 3, so the
# output is DC balanced word by word.  Table as standardized for VPPM.
TABLE_4B6B = np.array(
    [
        0b001110, 0b001101, 0b010011, 0b010110,
        0b010101, 0b100011, 0b100110, 0b100101,
        0b011001, 0b011010, 0b011100, 0b110001,
        0b110010, 0b101001, 0b101010, 0b101100,
    ],
    dtype=np.uint8,
)

_REV_4B6B = np.full(64, -1, dtype=np.int16)
_REV_4B6B[TABLE_4B6B] = np.arange(16)

_BIT_COLS_6 = np.arange(5, -1, -1)


def encode_4b6b(nibbles) -> np.ndarray:
    """Map nibble values (0..15) to their 6-chip codewords, MSB first."""
    nibbles = np.asarray(nibbles, dtype=np.uint8).ravel()
    if nibbles.size and nibbles.max() > 15:
        raise ValueError("nibbles must lie in 0..15")
    words = TABLE_4B6B[nibbles]
    return ((words[:, None] >> _BIT_COLS_6) & 1).astype(np.uint8).ravel()


def decode_4b6b(chips) -> np.ndarray:
    """Map 6-chip groups back to nibbles; any word off the table is invalid."""
    chips = _as_bits(chips, "chips")
    if chips.size % 6:
        raise LineCodeError("chip stream length must be a multiple of 6", chips.size // 6)
    groups = chips.reshape(-1, 6)
    words = (groups << _BIT_COLS_6).sum(axis=1)
    nibbles = _REV_4B6B[words]
    bad = nibbles < 0
    if bad.any():
        idx = int(np.argmax(bad))
        raise LineCodeError(f"invalid 4B6B codeword {words[idx]:06b}", idx)
    return nibbles.astype(np.uint8)


# 8b/10b tables.  The stored 6b/4b words are the encodings used at
# positive running disparity; entries flagged in *_FLIP are complemented
# at negative disparity.  *_UNBAL marks words that flip the disparity.
_T5B6B = np.array(
    [
        0b011000, 0b100010, 0b010010, 0b110001, 0b001010, 0b101001,
        0b011001, 0b000111, 0b000110, 0b100101, 0b010101, 0b110100,
        0b001101, 0b101100, 0b011100, 0b101000, 0b100100, 0b100011,
        0b010011, 0b110010, 0b001011, 0b101010, 0b011010, 0b000101,
        0b001100, 0b100110, 0b010110, 0b001001, 0b001110, 0b010001,
        0b100001, 0b010100,
    ],
    dtype=np.uint8,
)
_T3B4B = np.array(
    [0b0100, 0b1001, 0b0101, 0b0011, 0b0010, 0b1010, 0b0110, 0b0001],
    dtype=np.uint8,
)


def _popcount(values: np.ndarray, nbits: int) -> np.ndarray:
    return sum((values >> i) & 1 for i in range(nbits))


_UNBAL6 = _popcount(_T5B6B, 6) != 3
_FLIP6 = _UNBAL6.copy()
_FLIP6[7] = True  # D.x7's balanced word still alternates (000111/111000)
_UNBAL4 = _popcount(_T3B4B, 4) != 2
_FLIP4 = _UNBAL4.copy()
_FLIP4[3] = True  # D.3.x likewise (0011/1100)

# alternate D.x.A7: replaces the primary 4b word to avoid five-chip runs
_A7_AT_NEG = np.zeros(32, dtype=bool)
_A7_AT_NEG[[17, 18, 20]] = True
_A7_AT_POS = np.zeros(32, dtype=bool)
_A7_AT_POS[[11, 13, 14]] = True

_REV6 = np.full(64, -1, dtype=np.int16)
_REV6[_T5B6B] = np.arange(32)
_REV6[(~_T5B6B & 0x3F)[_FLIP6]] = np.arange(32)[_FLIP6]
_REV4 = np.full(16, -1, dtype=np.int16)
_REV4[_T3B4B] = np.arange(8)
_REV4[(~_T3B4B & 0xF)[_FLIP4]] = np.arange(8)[_FLIP4]
_REV4[0b0111] = 7  # A7 at negative disparity
_REV4[0b1000] = 7  # A7 at positive disparity

_DISP6 = (2 * _popcount(np.arange(64, dtype=np.uint8), 6) - 6).astype(np.int8)
_DISP4 = (2 * _popcount(np.arange(16, dtype=np.uint8), 4) - 4).astype(np.int8)

_BIT_COLS_10 = np.arange(9, -1, -1)


def _check_disparity(rd: int) -> int:
    if rd not in (-1, 1):
        raise ValueError(f"running disparity must be -1 or +1, got {rd!r}")
    return rd


def encode_8b10b(data, disparity: int = -1) -> tuple[np.ndarray, int]:
    """Encode bytes to 10-chip words; returns (chips, disparity out).

    ``disparity`` is the running-disparity state at the block boundary,
    -1 or +1 (the conventional start is -1).  Chips leave abcdei-fghj,
    MSB of the 6b sub-block first.
    """
    rd0 = _check_disparity(disparity)
    data = np.asarray(data, dtype=np.uint8).ravel()
    if data.size == 0:
        return np.empty(0, dtype=np.uint8), rd0
    x5 = data & 31
    x3 = data >> 5

    # Each byte flips the running disparity iff its 6b and 4b halves
    # disagree on balance, independent of the state itself, so the whole
    # disparity trajectory is a prefix xor.
    flips = _UNBAL6[x5] ^ _UNBAL4[x3]
    neg_in = np.zeros(data.size, dtype=bool)  # True: RD -1 before the byte
    np.bitwise_xor.accumulate(flips[:-1], out=neg_in[1:])
    neg_in ^= rd0 < 0
    word6 = np.where(neg_in & _FLIP6[x5], ~_T5B6B[x5] & 0x3F, _T5B6B[x5])
    neg_mid = neg_in ^ _UNBAL6[x5]  # disparity between the sub-blocks

    alt7 = (x3 == 7) & ((neg_mid & _A7_AT_NEG[x5]) | (~neg_mid & _A7_AT_POS[x5]))
    word4 = np.where(neg_mid & _FLIP4[x3], ~_T3B4B[x3] & 0xF, _T3B4B[x3])
    word4 = np.where(alt7, np.where(neg_mid, 0b0111, 0b1000), word4)

    words = (word6.astype(np.uint16) << 4) | word4
    chips = ((words[:, None] >> _BIT_COLS_10) & 1).astype(np.uint8).ravel()
    rd_out = -1 if bool(neg_in[-1] ^ flips[-1]) else 1
    return chips, rd_out


def decode_8b10b(chips, disparity: int = -1) -> tuple[np.ndarray, int]:
    """Decode 10-chip words back to bytes; returns (bytes, disparity out).

    Rejects words outside the code and words whose imbalance runs in the
    same direction as the current disparity (a disparity violation),
    reporting the first offending word index.
    """
    rd0 = _check_disparity(disparity)
    chips = _as_bits(chips, "chips")
    if chips.size % 10:
        raise LineCodeError("chip stream length must be a multiple of 10", chips.size // 10)
    if chips.size == 0:
        return np.empty(0, dtype=np.uint8), rd0
    groups = chips.reshape(-1, 10)
    words = (groups << _BIT_COLS_10).sum(axis=1)
    w6 = (words >> 4).astype(np.int64)
    w4 = (words & 0xF).astype(np.int64)

    x5 = _REV6[w6]
    x3 = _REV4[w4]
    d6 = _DISP6[w6].astype(np.int64)
    d4 = _DISP4[w4].astype(np.int64)

    flips = (d6 != 0) ^ (d4 != 0)
    neg_in = np.zeros(words.size, dtype=bool)
    np.bitwise_xor.accumulate(flips[:-1], out=neg_in[1:])
    neg_in ^= rd0 < 0
    rd_in = np.where(neg_in, -1, 1)
    rd_mid = rd_in + d6

    bad_code = (x5 < 0) | (x3 < 0)
    # sub-block disparity must move against the running state and the
    # running state must stay in {-1, +1}
    bad_disp = (d6 != 0) & (np.sign(d6) != -rd_in)
    bad_disp |= (d4 != 0) & (np.sign(d4) != -np.sign(rd_mid))
    bad = bad_code | bad_disp
    if bad.any():
        idx = int(np.argmax(bad))
        if bad_code[idx]:
            raise LineCodeError(f"invalid 8b10b codeword {words[idx]:010b}", idx)
        raise LineCodeError(f"8b10b disparity violation in word {words[idx]:010b}", idx)

    data = ((x3.astype(np.uint16) << 5) | x5.astype(np.uint16)).astype(np.uint8)
    rd_out = -1 if bool(neg_in[-1] ^ flips[-1]) else 1
    return data, rd_out

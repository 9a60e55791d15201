"""Line-code round trips, DC balance, and decoder error reporting."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from owpan.phy.line_codes import (
    TABLE_4B6B,
    LineCodeError,
    decode_4b6b,
    decode_8b10b,
    encode_4b6b,
    encode_8b10b,
    manchester_decode,
    manchester_encode,
)

bit_lists = st.lists(st.integers(0, 1), max_size=200)
nibble_lists = st.lists(st.integers(0, 15), max_size=200)
byte_lists = st.lists(st.integers(0, 255), max_size=200)
disparities = st.sampled_from([-1, 1])


# ---------------------------------------------------------------- Manchester

def test_manchester_bit_mapping():
    chips = manchester_encode([0, 1, 1, 0])
    assert chips.tolist() == [0, 1, 1, 0, 1, 0, 0, 1]


def test_manchester_empty():
    assert manchester_encode([]).size == 0
    assert manchester_decode([]).size == 0


@given(bit_lists)
def test_manchester_round_trip(bits):
    chips = manchester_encode(bits)
    assert manchester_decode(chips).tolist() == bits


@given(st.lists(st.integers(0, 1), min_size=1, max_size=200))
def test_manchester_dc_balance(bits):
    chips = manchester_encode(bits)
    assert int(chips.sum()) * 2 == chips.size


def test_manchester_rejects_odd_length():
    with pytest.raises(LineCodeError):
        manchester_decode([0, 1, 0])


def test_manchester_invalid_pair_index():
    chips = manchester_encode([1, 0, 1, 1]).tolist()
    chips[5] = 1  # third pair becomes 11
    with pytest.raises(LineCodeError) as exc:
        manchester_decode(chips)
    assert exc.value.index == 2
    assert "11" in str(exc.value)


def test_manchester_rejects_non_binary():
    with pytest.raises(ValueError):
        manchester_decode([0, 2])


# ---------------------------------------------------------------------- 4B6B

def test_4b6b_table_shape():
    assert TABLE_4B6B.size == 16
    assert len(set(TABLE_4B6B.tolist())) == 16
    weights = [bin(int(w)).count("1") for w in TABLE_4B6B]
    assert weights == [3] * 16


def test_4b6b_known_word():
    # nibble 0 -> 001110, MSB first
    assert encode_4b6b([0]).tolist() == [0, 0, 1, 1, 1, 0]


@given(nibble_lists)
def test_4b6b_round_trip(nibbles):
    chips = encode_4b6b(nibbles)
    assert chips.size == 6 * len(nibbles)
    assert decode_4b6b(chips).tolist() == nibbles


@given(st.lists(st.integers(0, 15), min_size=1, max_size=200))
def test_4b6b_per_word_balance(nibbles):
    chips = encode_4b6b(nibbles).reshape(-1, 6)
    assert (chips.sum(axis=1) == 3).all()


def test_4b6b_rejects_bad_length():
    with pytest.raises(LineCodeError):
        decode_4b6b([0, 0, 1, 1, 1, 0, 1])


def test_4b6b_invalid_word_index():
    chips = encode_4b6b([5, 9]).tolist()
    chips[6:12] = [1, 1, 1, 0, 0, 0]  # weight 3 but not on the table
    with pytest.raises(LineCodeError) as exc:
        decode_4b6b(chips)
    assert exc.value.index == 1
    assert "111000" in str(exc.value)


def test_4b6b_rejects_nibble_out_of_range():
    with pytest.raises(ValueError):
        encode_4b6b([16])


# -------------------------------------------------------------------- 8b/10b

def test_8b10b_d00_both_disparities():
    # D.0.0 is the textbook pair: 100111 0100 at RD-, 011000 1011 at RD+.
    chips, rd = encode_8b10b([0x00], disparity=-1)
    assert chips.tolist() == [1, 0, 0, 1, 1, 1, 0, 1, 0, 0]
    assert rd == -1
    chips, rd = encode_8b10b([0x00], disparity=+1)
    assert chips.tolist() == [0, 1, 1, 0, 0, 0, 1, 0, 1, 1]
    assert rd == 1


def test_8b10b_d21_5_alternates():
    # D.21.5 is balanced in both halves and insensitive to disparity.
    for rd0 in (-1, 1):
        chips, rd = encode_8b10b([0xB5], disparity=rd0)
        assert chips.tolist() == [1, 0, 1, 0, 1, 0, 1, 0, 1, 0]
        assert rd == rd0


def test_8b10b_empty():
    chips, rd = encode_8b10b([], disparity=1)
    assert chips.size == 0 and rd == 1
    data, rd = decode_8b10b([], disparity=-1)
    assert data.size == 0 and rd == -1


def test_8b10b_rejects_bad_disparity_argument():
    with pytest.raises(ValueError):
        encode_8b10b([0], disparity=0)
    with pytest.raises(ValueError):
        decode_8b10b([], disparity=2)


def test_8b10b_all_bytes_round_trip():
    data = np.arange(256, dtype=np.uint8)
    for rd0 in (-1, 1):
        chips, rd_enc = encode_8b10b(data, disparity=rd0)
        out, rd_dec = decode_8b10b(chips, disparity=rd0)
        assert out.tolist() == data.tolist()
        assert rd_dec == rd_enc
        # every codeword is balanced to within one chip pair
        counts = chips.reshape(-1, 10).sum(axis=1)
        assert set(counts.tolist()) <= {4, 5, 6}


def test_8b10b_single_words_round_trip():
    for value in range(256):
        for rd0 in (-1, 1):
            chips, rd = encode_8b10b([value], disparity=rd0)
            out, rd2 = decode_8b10b(chips, disparity=rd0)
            assert out.tolist() == [value]
            assert rd2 == rd


@given(byte_lists, disparities)
def test_8b10b_round_trip(data, rd0):
    chips, rd_enc = encode_8b10b(data, disparity=rd0)
    out, rd_dec = decode_8b10b(chips, disparity=rd0)
    assert out.tolist() == data
    assert rd_dec == rd_enc
    assert rd_enc in (-1, 1)


@given(byte_lists, byte_lists, disparities)
def test_8b10b_chaining(head, tail, rd0):
    """Encoding in two chunks with the carried disparity matches one call."""
    chips_a, rd_mid = encode_8b10b(head, disparity=rd0)
    chips_b, rd_end = encode_8b10b(tail, disparity=rd_mid)
    chips_all, rd_all = encode_8b10b(head + tail, disparity=rd0)
    assert np.concatenate([chips_a, chips_b]).tolist() == chips_all.tolist()
    assert rd_all == rd_end


@settings(max_examples=50)
@given(st.lists(st.integers(0, 255), min_size=1, max_size=500), disparities)
def test_8b10b_running_balance_bounded(data, rd0):
    """The chip-stream imbalance at word boundaries never exceeds one pair."""
    chips, _ = encode_8b10b(data, disparity=rd0)
    word_disp = chips.reshape(-1, 10).sum(axis=1).astype(np.int64) * 2 - 10
    running = np.cumsum(word_disp)
    assert set(np.abs(running).tolist()) <= {0, 2}


def test_8b10b_invalid_codeword_index():
    chips, _ = encode_8b10b([0x4A], disparity=-1)
    bad = chips.tolist() + [0] * 10  # 0000000000 is not a codeword
    with pytest.raises(LineCodeError) as exc:
        decode_8b10b(bad, disparity=-1)
    assert exc.value.index == 1
    assert "invalid" in str(exc.value)


def test_8b10b_disparity_violation_detected():
    # the RD- form of D.0.0 presented at RD+ runs the imbalance the wrong way
    chips, _ = encode_8b10b([0x00], disparity=-1)
    with pytest.raises(LineCodeError) as exc:
        decode_8b10b(chips, disparity=+1)
    assert "disparity" in str(exc.value)
    assert exc.value.index == 0


def test_8b10b_rejects_bad_length():
    with pytest.raises(LineCodeError):
        decode_8b10b([0, 1] * 7)

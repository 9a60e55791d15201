"""Pure-numpy implementations of the decoder hot loops.

These are the fallback for :mod:`owpan._kernels._native` and the reference
the native kernels are tested against.  Both backends expose the same three
callables:

* ``rs_encode_blocks(data, k)``   -- systematic RS(15, k) over GF(16)
* ``rs_decode_blocks(code, k)``   -- batched bounded-distance decoding
* ``viterbi_decode(obs, table)``  -- hard-decision Viterbi with erasures

The RS routines are vectorized across the block axis, the Viterbi routine
across the 64 trellis states, so the Python-level loop count stays small
(symbols per block, or trellis steps) independent of batch size.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

# GF(16) generated by x^4 + x + 1; EXP is doubled so products of two logs
# (each < 15) index without a modulo.
_PRIM = 0x13
_EXP = np.zeros(30, dtype=np.uint8)
_LOG = np.zeros(16, dtype=np.int16)
_x = 1
for _i in range(15):
    _EXP[_i] = _EXP[_i + 15] = _x
    _LOG[_x] = _i
    _x <<= 1
    if _x & 0x10:
        _x ^= _PRIM
_LOG[0] = 0  # masked out by callers; never a valid exponent source

_N = 15

# full 16x16 product and inverse tables: one gather per multiply beats
# log/exp arithmetic plus zero masking, for tiny and huge batches alike
_MUL = np.zeros((16, 16), dtype=np.uint8)
for _a in range(1, 16):
    for _b in range(1, 16):
        _MUL[_a, _b] = _EXP[_LOG[_a] + _LOG[_b]]
_INV = np.ones(16, dtype=np.uint8)  # _INV[0] is a dummy; callers mask zeros
_INV[1:] = _EXP[15 - _LOG[np.arange(1, 16)]]


def _gf_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise GF(16) product; zero factors give zero."""
    return _MUL[a, b]


def _generator_poly(nroots: int) -> np.ndarray:
    """Coefficients (ascending, monic) of prod_{i=1..nroots} (x - alpha^i)."""
    g = np.zeros(nroots + 1, dtype=np.uint8)
    g[0] = 1
    for i in range(1, nroots + 1):
        root = _EXP[i]
        shifted = np.concatenate(([0], g[:-1]))
        g = shifted ^ _gf_mul(g, np.uint8(root))
    return g


def rs_encode_blocks(data: np.ndarray, k: int) -> np.ndarray:
    """Encode rows of ``data`` (shape (N, k), symbols 0..15) into RS(15, k).

    Systematic: the codeword row is the data followed by 15-k parity
    symbols (descending powers left to right).
    """
    data = np.ascontiguousarray(data, dtype=np.uint8)
    if data.ndim != 2 or data.shape[1] != k:
        raise ValueError(f"data must have shape (N, {k})")
    if data.size and data.max() > 15:
        raise ValueError("RS symbols must lie in 0..15")
    nroots = _N - k
    g = _generator_poly(nroots)[:-1]  # drop the monic leading 1
    gdesc = g[::-1].copy()  # x^(nroots-1) coefficient first
    nblk = data.shape[0]
    par = np.zeros((nblk, nroots), dtype=np.uint8)
    for j in range(k):
        fb = data[:, j] ^ par[:, 0]
        par = np.concatenate([par[:, 1:], np.zeros((nblk, 1), np.uint8)], axis=1)
        par ^= _gf_mul(fb[:, None], gdesc[None, :])
    return np.concatenate([data, par], axis=1)


def _syndromes(code: np.ndarray, nroots: int) -> np.ndarray:
    # S_i = sum_j c_j alpha^(i*j); column 0 holds the x^14 coefficient
    powers = (14 - np.arange(_N))[None, :] * np.arange(1, nroots + 1)[:, None]
    alpha = _EXP[powers % 15]
    prod = _gf_mul(code[:, None, :], alpha[None, :, :])
    return np.bitwise_xor.reduce(prod, axis=2)


def rs_decode_blocks(code: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Decode rows of ``code`` (shape (N, 15)); returns (data, failed).

    Corrects up to floor((15-k)/2) symbol errors per row; rows beyond
    that either raise the ``failed`` flag or, unavoidably for any
    bounded-distance decoder, miscorrect to a nearby codeword.
    """
    code = np.ascontiguousarray(code, dtype=np.uint8)
    if code.ndim != 2 or code.shape[1] != _N:
        raise ValueError(f"code must have shape (N, {_N})")
    if code.size and code.max() > 15:
        raise ValueError("RS symbols must lie in 0..15")
    nroots = _N - k
    t = nroots // 2
    nblk = code.shape[0]
    synd = _syndromes(code, nroots)  # (N, nroots)
    clean = ~synd.any(axis=1)

    # Berlekamp-Massey, branchless across the batch.  err/old are the
    # locator and its shifted companion, coefficients ascending.
    width = nroots + 2
    err = np.zeros((nblk, width), dtype=np.uint8)
    old = np.zeros((nblk, width), dtype=np.uint8)
    err[:, 0] = 1
    old[:, 0] = 1
    elen = np.ones(nblk, dtype=np.int64)
    olen = np.ones(nblk, dtype=np.int64)
    for i in range(nroots):
        m = min(i, width - 1)
        if m:
            prod = _MUL[err[:, 1 : m + 1], synd[:, i - 1 :: -1][:, :m]]
            delta = synd[:, i] ^ np.bitwise_xor.reduce(prod, axis=1)
        else:
            delta = synd[:, i].copy()
        old = np.concatenate([np.zeros((nblk, 1), np.uint8), old[:, :-1]], axis=1)
        olen = olen + 1
        upd = delta != 0
        swap = upd & (olen > elen)
        err_prev = err
        err = err ^ np.where(upd[:, None], _MUL[delta[:, None], old], 0)
        old = np.where(swap[:, None], _MUL[_INV[delta][:, None], err_prev], old)
        elen_new = np.where(swap, olen, elen)
        olen = np.where(swap, elen, olen)
        elen = elen_new
    nerr = elen - 1

    # Chien search: evaluate the locator at alpha^j for j = 0..14; a root
    # at alpha^j marks an error at position power (15 - j) % 15.
    degs = np.arange(width)
    chien = _EXP[(np.arange(15)[:, None] * degs[None, :]) % 15]  # (15, width)
    evals = np.bitwise_xor.reduce(_MUL[err[:, None, :], chien[None, :, :]], axis=2)
    is_root = evals == 0  # (N, 15)
    nroots_found = is_root.sum(axis=1)
    failed = (~clean) & ((nerr > t) | (nroots_found != nerr))

    # Forney: omega = S(x) * locator mod x^nroots, magnitudes from the
    # formal derivative (odd-degree terms only in characteristic 2).
    conv = _MUL[synd[:, :, None], err[:, None, :]]  # (N, nroots, width)
    omega = np.zeros((nblk, nroots), dtype=np.uint8)
    for l in range(nroots):
        j = np.arange(l + 1)
        omega[:, l] = np.bitwise_xor.reduce(conv[:, j, l - j], axis=1)
    xpow = _EXP[(np.arange(15)[:, None] * np.arange(nroots)[None, :]) % 15]
    om_at = np.bitwise_xor.reduce(_MUL[omega[:, None, :], xpow[None, :, :]], axis=2)
    # x * d/dx of the locator keeps odd-degree terms only; zeroing the even
    # columns of the power table bakes that in (GF product with 0 is 0)
    dpow = _EXP[(np.arange(15)[:, None] * (degs[None, :] - 1)) % 15]
    dpow[:, degs % 2 == 0] = 0
    der_at = np.bitwise_xor.reduce(_MUL[err[:, None, :], dpow[None, :, :]], axis=2)
    bad_deriv = is_root & (der_at == 0)
    failed |= bad_deriv.any(axis=1)
    mag = _MUL[om_at, _INV[der_at]]  # _INV[0] rows are masked via failed

    corr = np.zeros((nblk, _N), dtype=np.uint8)
    cols = (14 - (15 - np.arange(15)) % 15) % 15  # root index j -> column
    apply = is_root & ~failed[:, None]
    rows_idx, j_idx = np.nonzero(apply)
    corr[rows_idx, cols[j_idx]] = mag[rows_idx, j_idx]
    fixed = code ^ corr

    # A bounded-distance result must be a codeword; anything else is a
    # decoder fault, so re-checking syndromes here costs little and turns
    # silent corruption into a failure flag.
    recheck = _syndromes(fixed, nroots).any(axis=1)
    failed |= recheck
    out = np.where(failed[:, None], code, fixed)
    return out[:, :k].copy(), failed


def viterbi_decode(obs: np.ndarray, out_table: np.ndarray) -> np.ndarray:
    """Hard-decision Viterbi over the 64-state rate-1/R trellis.

    ``obs`` holds R chips per trellis step, values 0/1 or 2 for an erased
    (punctured) position; ``out_table`` has shape (128, R), row index
    ``(bit << 6) | state``.  Returns one decoded bit per step, including
    whatever tail the encoder appended.
    """
    obs = np.ascontiguousarray(obs, dtype=np.uint8)
    out_table = np.ascontiguousarray(out_table, dtype=np.uint8)
    nout = out_table.shape[1]
    if obs.size % nout:
        raise ValueError(f"observation length {obs.size} not a multiple of {nout}")
    steps = obs.size // nout
    obs2 = obs.reshape(steps, nout)
    known = obs2 != 2

    # branch metrics for every (step, word) pair up front; erased chips
    # contribute no distance
    bm_all = ((out_table[None, :, :] != obs2[:, None, :]) & known[:, None, :]).sum(
        axis=2, dtype=np.int32
    )  # (steps, 128)

    # transition w = (bit<<6)|state maps to next state w>>1, so the two
    # predecessors of state ns are words 2*ns and 2*ns+1.  ext[w] below is
    # pm[w & 63] + bm[w]; pairing consecutive words gives both candidates
    # for each next state without any gather.
    w0 = np.arange(0, 128, 2, dtype=np.uint8)

    big = np.int32(1 << 20)
    pm = np.full(64, big, dtype=np.int32)
    pm[0] = 0
    ext = np.empty(128, dtype=np.int32)
    back = np.empty((steps, 64), dtype=np.uint8)
    for tstep in range(steps):
        ext[:64] = pm
        ext[64:] = pm
        ext += bm_all[tstep]
        pair = ext.reshape(64, 2)
        take1 = pair[:, 1] < pair[:, 0]
        pm = pair.min(axis=1)
        back[tstep] = w0 + take1

    bits = np.empty(steps, dtype=np.uint8)
    state = 0  # zero tail always drives the encoder back to state 0
    for tstep in range(steps - 1, -1, -1):
        w = back[tstep, state]
        bits[tstep] = w >> 6
        state = w & 63
    return bits

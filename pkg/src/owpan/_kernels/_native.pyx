# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled decoder hot loops; drop-in replacement for ``_pure``.

Same contracts as owpan._kernels._pure: RS(15, k) over GF(16) batched by
block, and a 64-state hard-decision Viterbi with erasures.  Kept
intentionally loop-based C code so the pure-numpy module remains the
readable reference.
"""

import numpy as np

cimport numpy as cnp
from libc.string cimport memset

cnp.import_array()

BACKEND = "native"

cdef int _N = 15

# GF(16), primitive polynomial x^4 + x + 1
cdef unsigned char _EXP[30]
cdef unsigned char _LOG[16]

cdef void _init_tables() noexcept:
    cdef int i, x = 1
    for i in range(15):
        _EXP[i] = <unsigned char> x
        _EXP[i + 15] = <unsigned char> x
        _LOG[x] = <unsigned char> i
        x <<= 1
        if x & 0x10:
            x ^= 0x13
    _LOG[0] = 0

_init_tables()


cdef inline unsigned char _mul(unsigned char a, unsigned char b) noexcept:
    if a == 0 or b == 0:
        return 0
    return _EXP[_LOG[a] + _LOG[b]]


cdef inline unsigned char _inv(unsigned char a) noexcept:
    return _EXP[15 - _LOG[a]]


cdef void _genpoly(int nroots, unsigned char *g) noexcept:
    # ascending coefficients of prod_{i=1..nroots} (x - alpha^i), monic
    cdef int i, j
    cdef unsigned char root
    memset(g, 0, 16)
    g[0] = 1
    for i in range(1, nroots + 1):
        root = _EXP[i]
        for j in range(i, 0, -1):
            g[j] = g[j - 1] ^ _mul(g[j], root)
        g[0] = _mul(g[0], root)


def rs_encode_blocks(data, int k):
    """Encode rows of (N, k) GF(16) symbols into systematic RS(15, k)."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=2, mode="c"] d = np.ascontiguousarray(
        data, dtype=np.uint8
    )
    if d.ndim != 2 or d.shape[1] != k:
        raise ValueError(f"data must have shape (N, {k})")
    if d.size and int(np.asarray(d).max()) > 15:
        raise ValueError("RS symbols must lie in 0..15")
    cdef int nroots = _N - k
    cdef unsigned char g[16]
    _genpoly(nroots, g)
    cdef Py_ssize_t nblk = d.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=2, mode="c"] out = np.zeros(
        (nblk, _N), dtype=np.uint8
    )
    cdef Py_ssize_t row
    cdef int i, j
    cdef unsigned char fb
    cdef unsigned char par[16]
    for row in range(nblk):
        memset(par, 0, 16)
        for j in range(k):
            fb = d[row, j] ^ par[0]
            for i in range(nroots - 1):
                # g stored ascending; parity kept descending, so index flips
                par[i] = par[i + 1] ^ _mul(fb, g[nroots - 1 - i])
            par[nroots - 1] = _mul(fb, g[0])
            out[row, j] = d[row, j]
        for i in range(nroots):
            out[row, k + i] = par[i]
    return out


def rs_decode_blocks(code, int k):
    """Decode rows of (N, 15) symbols; returns (data rows, failed mask)."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=2, mode="c"] c = np.ascontiguousarray(
        code, dtype=np.uint8
    )
    if c.ndim != 2 or c.shape[1] != _N:
        raise ValueError(f"code must have shape (N, {_N})")
    if c.size and int(np.asarray(c).max()) > 15:
        raise ValueError("RS symbols must lie in 0..15")
    cdef int nroots = _N - k
    cdef int t = nroots // 2
    cdef Py_ssize_t nblk = c.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=2, mode="c"] out = np.zeros(
        (nblk, k), dtype=np.uint8
    )
    cdef cnp.ndarray[cnp.uint8_t, ndim=1, mode="c"] failed = np.zeros(
        nblk, dtype=np.uint8
    )
    cdef Py_ssize_t row
    cdef int i, j, l, deg, nfound, nerr, elen, olen, any_synd, bad, i_swap, jmax
    cdef unsigned char acc, delta, dinv, val, der, om
    cdef unsigned char cw[15]
    cdef unsigned char synd[13]
    cdef unsigned char err[15]
    cdef unsigned char old[15]
    cdef unsigned char prev[15]
    cdef unsigned char omega[13]
    cdef unsigned char mag[15]
    cdef int rootj[15]

    for row in range(nblk):
        for i in range(_N):
            cw[i] = c[row, i]
        any_synd = 0
        for i in range(nroots):
            acc = 0
            for j in range(_N):
                acc = acc ^ _mul(cw[j], _EXP[((i + 1) * (14 - j)) % 15])
            synd[i] = acc
            if acc:
                any_synd = 1
        if not any_synd:
            for j in range(k):
                out[row, j] = cw[j]
            continue

        # Berlekamp-Massey (reedsolo-style shift-every-step formulation)
        memset(err, 0, 15)
        memset(old, 0, 15)
        err[0] = 1
        old[0] = 1
        elen = 1
        olen = 1
        for i in range(nroots):
            delta = synd[i]
            jmax = elen if elen <= i + 1 else i + 1
            for j in range(1, jmax):
                delta = delta ^ _mul(err[j], synd[i - j])
            for j in range(14, 0, -1):
                old[j] = old[j - 1]
            old[0] = 0
            olen += 1
            if delta:
                for j in range(15):
                    prev[j] = err[j]
                for j in range(15):
                    err[j] = err[j] ^ _mul(delta, old[j])
                if olen > elen:
                    dinv = _inv(delta)
                    for j in range(15):
                        old[j] = _mul(dinv, prev[j])
                    i_swap = elen
                    elen = olen
                    olen = i_swap
        nerr = elen - 1

        bad = 1 if nerr > t else 0

        # Chien search over alpha^j, j = 0..14
        nfound = 0
        for j in range(15):
            val = 0
            for deg in range(elen):
                val = val ^ _mul(err[deg], _EXP[(j * deg) % 15])
            if val == 0:
                if nfound < 15:
                    rootj[nfound] = j
                nfound += 1
        if nfound != nerr:
            bad = 1

        if not bad:
            # Forney: omega = S * err mod x^nroots, then magnitudes
            for l in range(nroots):
                acc = 0
                for j in range(l + 1):
                    if l - j < elen:
                        acc = acc ^ _mul(synd[j], err[l - j])
                omega[l] = acc
            for i in range(nfound):
                j = rootj[i]
                om = 0
                for deg in range(nroots):
                    om = om ^ _mul(omega[deg], _EXP[(j * deg) % 15])
                der = 0
                for deg in range(1, elen, 2):
                    der = der ^ _mul(err[deg], _EXP[(j * (deg - 1)) % 15])
                if der == 0:
                    bad = 1
                    break
                mag[i] = _mul(om, _inv(der))
            if not bad:
                for i in range(nfound):
                    j = rootj[i]
                    cw[(14 - (15 - j) % 15) % 15] ^= mag[i]
                for i in range(nroots):
                    acc = 0
                    for j in range(_N):
                        acc = acc ^ _mul(cw[j], _EXP[((i + 1) * (14 - j)) % 15])
                    if acc:
                        bad = 1
                        break

        if bad:
            failed[row] = 1
            for j in range(k):
                out[row, j] = c[row, j]
        else:
            for j in range(k):
                out[row, j] = cw[j]
    return out, failed.view(bool)


def viterbi_decode(obs, out_table):
    """Hard-decision Viterbi, 64 states; see the pure backend for the contract."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=1, mode="c"] o = np.ascontiguousarray(
        obs, dtype=np.uint8
    )
    cdef cnp.ndarray[cnp.uint8_t, ndim=2, mode="c"] tab = np.ascontiguousarray(
        out_table, dtype=np.uint8
    )
    cdef int nout = tab.shape[1]
    if o.size % nout:
        raise ValueError(f"observation length {o.size} not a multiple of {nout}")
    cdef Py_ssize_t steps = o.size // nout
    cdef cnp.ndarray[cnp.uint8_t, ndim=2, mode="c"] back = np.empty(
        (steps if steps else 1, 64), dtype=np.uint8
    )
    cdef cnp.ndarray[cnp.uint8_t, ndim=1, mode="c"] bits = np.empty(
        steps, dtype=np.uint8
    )
    cdef int pm[64]
    cdef int npm[64]
    cdef int big = 1 << 20
    cdef Py_ssize_t tstep
    cdef int s, j, w0, w1, c0, c1, bm0, bm1
    cdef unsigned char ov, w
    for s in range(64):
        pm[s] = big
    pm[0] = 0
    for tstep in range(steps):
        for s in range(64):
            w0 = 2 * s
            w1 = w0 + 1
            bm0 = 0
            bm1 = 0
            for j in range(nout):
                ov = o[tstep * nout + j]
                if ov != 2:
                    if tab[w0, j] != ov:
                        bm0 += 1
                    if tab[w1, j] != ov:
                        bm1 += 1
            c0 = pm[w0 & 63] + bm0
            c1 = pm[w1 & 63] + bm1
            if c1 < c0:
                npm[s] = c1
                back[tstep, s] = <unsigned char> w1
            else:
                npm[s] = c0
                back[tstep, s] = <unsigned char> w0
        for s in range(64):
            pm[s] = npm[s]
    s = 0
    for tstep in range(steps - 1, -1, -1):
        w = back[tstep, s]
        bits[tstep] = w >> 6
        s = w & 63
    return bits

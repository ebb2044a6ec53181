# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops over 0/1 symbol arrays.

Every function here has a numpy twin in ``_fallback`` with the same
signature and results; ``hmchaos.kernels`` picks one at import.
"""
import numpy as np

from libc.stdint cimport uint64_t


cdef inline uint64_t _pack(const unsigned char[::1] block, Py_ssize_t m):
    cdef uint64_t v = 0
    cdef Py_ssize_t j
    for j in range(m):
        v = (v << 1) | (block[j] != 0)
    return v


def match_mask(const unsigned char[::1] word, const unsigned char[::1] block):
    """uint8 mask, one entry per start position, 1 where ``block`` occurs."""
    cdef Py_ssize_t n = word.shape[0], m = block.shape[0]
    cdef Py_ssize_t i, j, positions = n - m + 1
    if m == 0 or positions <= 0:
        return np.zeros(max(positions, 0), dtype=np.uint8)
    out = np.zeros(positions, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    cdef uint64_t acc = 0, target, keep
    if m <= 63:
        # rolling window of the last m symbols packed into one word
        target = _pack(block, m)
        keep = ((<uint64_t>1) << m) - 1
        for i in range(n):
            acc = ((acc << 1) | (word[i] != 0)) & keep
            if i >= m - 1:
                res[i - m + 1] = acc == target
        return out
    for i in range(positions):
        j = 0
        while j < m and word[i + j] == block[j]:
            j += 1
        if j == m:
            res[i] = 1
    return out


def block_count(const unsigned char[::1] word, const unsigned char[::1] block):
    """Overlapping occurrence count of ``block`` in ``word``."""
    cdef Py_ssize_t n = word.shape[0], m = block.shape[0]
    cdef Py_ssize_t i, j, total = 0
    cdef uint64_t acc = 0, target, keep
    if m == 0 or m > n:
        return 0
    if m <= 63:
        target = _pack(block, m)
        keep = ((<uint64_t>1) << m) - 1
        for i in range(m - 1):
            acc = (acc << 1) | (word[i] != 0)
        for i in range(m - 1, n):
            acc = ((acc << 1) | (word[i] != 0)) & keep
            total += acc == target
        return total
    for i in range(n - m + 1):
        j = 0
        while j < m and word[i + j] == block[j]:
            j += 1
        if j == m:
            total += 1
    return total


def shift_distance_numerators(const unsigned char[::1] x,
                              const unsigned char[::1] y,
                              Py_ssize_t count, int depth):
    """Truncated shift-space distances along two orbits.

    ``out[i] = sum_{j<depth} [x[i+j] != y[i+j]] * 2**(depth-1-j)``, so the
    truncated metric between ``sigma^i x`` and ``sigma^i y`` is
    ``out[i] / 2**(depth-1)``.  Needs ``count + depth - 1`` symbols of each.
    """
    if depth < 1 or depth > 63:
        raise ValueError("depth must lie in [1, 63]")
    if count <= 0:
        return np.zeros(0, dtype=np.uint64)
    cdef Py_ssize_t need = count + depth - 1
    if x.shape[0] < need or y.shape[0] < need:
        raise ValueError("orbits too short for requested count and depth")
    out = np.empty(count, dtype=np.uint64)
    cdef uint64_t[::1] res = out
    cdef uint64_t acc = 0
    cdef uint64_t top = (<uint64_t>1) << (depth - 1)
    cdef Py_ssize_t i, j
    for j in range(depth):
        if x[count - 1 + j] != y[count - 1 + j]:
            acc |= (<uint64_t>1) << (depth - 1 - j)
    res[count - 1] = acc
    i = count - 2
    while i >= 0:
        acc >>= 1
        if x[i] != y[i]:
            acc |= top
        res[i] = acc
        i -= 1
    return out

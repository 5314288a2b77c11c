# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled smallest-prime-factor sieve (hot kernel).

Identical contract to submult._spfsieve_py.spf_sieve; see there.
"""

import numpy as np

BACKEND = "compiled"


def spf_sieve(long long limit):
    out = np.zeros(limit + 1, dtype=np.int64)
    cdef long long[::1] spf = out
    cdef long long i, j, p
    if limit >= 1:
        spf[1] = 1
    p = 2
    while p * p <= limit:
        if spf[p] == 0:
            j = p * p
            while j <= limit:
                if spf[j] == 0:
                    spf[j] = p
                j += p
        p += 1
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
    return out

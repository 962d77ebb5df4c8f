# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled walk over digit-tuple products.

Bit-identical twin of _fallback.walk_product; see that module for the
table layout.  The loop releases the GIL so chunked ranges of one row
can run on real threads.
"""


def walk_product(
    const int[::1] steps,
    int n,
    int n_states,
    int b,
    int start_state,
    long long begin,
    long long end,
    long long[::1] counts,
):
    """Accumulate final-state counts for tuple indices in [begin, end)."""
    cdef int digits[64]
    cdef int stack[65]
    cdef long long idx, rem
    cdef int k, j
    if begin >= end:
        return
    if not 0 < n <= 64:
        raise ValueError("tuple length out of range for the compiled walk")
    with nogil:
        rem = begin
        for k in range(n - 1, -1, -1):
            digits[k] = <int> (rem % b)
            rem = rem // b
        stack[0] = start_state
        for k in range(n):
            stack[k + 1] = steps[(k * n_states + stack[k]) * b + digits[k]]
        idx = begin
        while True:
            counts[stack[n]] += 1
            idx += 1
            if idx >= end:
                break
            k = n - 1
            while digits[k] == b - 1:
                digits[k] = 0
                k -= 1
            digits[k] += 1
            for j in range(k, n):
                stack[j + 1] = steps[(j * n_states + stack[j]) * b + digits[j]]

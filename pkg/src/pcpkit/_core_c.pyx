# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for dense tensor evaluation.

Same contract as pcpkit._core_numpy: batched application of an order-m
coefficient tensor (flattened, C order) and its Jacobian. Plain C loops over
an odometer of the trailing index tuple; no numpy API calls inside the loop.

Supports order <= 12 (stack-allocated digit and scan buffers).
"""

NAME = "compiled"

MAX_ORDER = 12


def apply_batch(const double[::1] coeffs, Py_ssize_t n, Py_ssize_t m,
                const double[:, ::1] X, double[:, ::1] out):
    """out[b, i] = sum_t coeffs[i, t] * prod(x over trailing digits of t)."""
    cdef Py_ssize_t B = X.shape[0]
    cdef Py_ssize_t d = m - 1
    cdef Py_ssize_t trail = 1
    cdef Py_ssize_t b, i, j, t
    cdef Py_ssize_t[12] dig
    cdef double w
    for j in range(d):
        trail *= n
    with nogil:
        for b in range(B):
            for i in range(n):
                out[b, i] = 0.0
            for j in range(d):
                dig[j] = 0
            for t in range(trail):
                w = 1.0
                for j in range(d):
                    w *= X[b, dig[j]]
                for i in range(n):
                    out[b, i] += coeffs[i * trail + t] * w
                j = d - 1
                while j >= 0:
                    dig[j] += 1
                    if dig[j] < n:
                        break
                    dig[j] = 0
                    j -= 1


def jacobian_batch(const double[::1] coeffs, Py_ssize_t n, Py_ssize_t m,
                   const double[:, ::1] X, double[:, :, ::1] out):
    """out[b] = d/dx of the tensor application at X[b], via the product rule:
    each trailing position contributes the product of x over the others."""
    cdef Py_ssize_t B = X.shape[0]
    cdef Py_ssize_t d = m - 1
    cdef Py_ssize_t trail = 1
    cdef Py_ssize_t b, i, j, t, p
    cdef Py_ssize_t[12] dig
    cdef double[13] pre
    cdef double[13] suf
    cdef double w
    for j in range(d):
        trail *= n
    with nogil:
        for b in range(B):
            for i in range(n):
                for j in range(n):
                    out[b, i, j] = 0.0
            for j in range(d):
                dig[j] = 0
            for t in range(trail):
                pre[0] = 1.0
                for j in range(d):
                    pre[j + 1] = pre[j] * X[b, dig[j]]
                suf[d] = 1.0
                for j in range(d - 1, -1, -1):
                    suf[j] = suf[j + 1] * X[b, dig[j]]
                for p in range(d):
                    w = pre[p] * suf[p + 1]
                    for i in range(n):
                        out[b, i, dig[p]] += coeffs[i * trail + t] * w
                j = d - 1
                while j >= 0:
                    dig[j] += 1
                    if dig[j] < n:
                        break
                    dig[j] = 0
                    j -= 1

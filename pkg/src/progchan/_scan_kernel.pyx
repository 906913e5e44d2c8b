# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop of the minimax scan.

Evaluates, for a fixed device, the best-program fidelity at a batch of Bloch
points.  The device enters through the four 2x2 part matrices K_mu with
S(n) = sum_mu n_mu K_mu; the fidelity is the top eigenvalue of S^dag S over 4,
available in closed form at this size.
"""

from libc.math cimport sqrt


def fidelity_batch(const double complex[:, :, ::1] parts,
                   const double[:, ::1] ns,
                   double[::1] out):
    """Fill out[i] with the best-program fidelity at Bloch point ns[i]."""
    cdef Py_ssize_t n = ns.shape[0]
    cdef Py_ssize_t i
    cdef double n0, n1, n2, n3
    cdef double complex s00, s01, s10, s11, h01
    cdef double h00, h11, mean, diff, off2
    if parts.shape[0] != 4 or parts.shape[1] != 2 or parts.shape[2] != 2:
        raise ValueError("parts must have shape (4, 2, 2)")
    if ns.shape[1] != 4 or out.shape[0] != n:
        raise ValueError("ns must be (n, 4) and out must be (n,)")
    with nogil:
        for i in range(n):
            n0 = ns[i, 0]
            n1 = ns[i, 1]
            n2 = ns[i, 2]
            n3 = ns[i, 3]
            s00 = n0 * parts[0, 0, 0] + n1 * parts[1, 0, 0] + n2 * parts[2, 0, 0] + n3 * parts[3, 0, 0]
            s01 = n0 * parts[0, 0, 1] + n1 * parts[1, 0, 1] + n2 * parts[2, 0, 1] + n3 * parts[3, 0, 1]
            s10 = n0 * parts[0, 1, 0] + n1 * parts[1, 1, 0] + n2 * parts[2, 1, 0] + n3 * parts[3, 1, 0]
            s11 = n0 * parts[0, 1, 1] + n1 * parts[1, 1, 1] + n2 * parts[2, 1, 1] + n3 * parts[3, 1, 1]
            # H = S^dag S, Hermitian 2x2
            h00 = s00.real * s00.real + s00.imag * s00.imag + s10.real * s10.real + s10.imag * s10.imag
            h11 = s01.real * s01.real + s01.imag * s01.imag + s11.real * s11.real + s11.imag * s11.imag
            h01 = s00.conjugate() * s01 + s10.conjugate() * s11
            mean = 0.5 * (h00 + h11)
            diff = 0.5 * (h00 - h11)
            off2 = h01.real * h01.real + h01.imag * h01.imag
            out[i] = 0.25 * (mean + sqrt(diff * diff + off2))

# cython: language_level=3
"""Compiled pair-sum kernels; same contracts as numpy_backend."""

import numpy as np

from libc.math cimport pow

NAME = "compiled"

DEF MAX_N = 64


def power_pair_sums(double[:, ::1] lams, double[::1] alphas,
                    double complex[:, :, ::1] a, double complex[:, :, ::1] b):
    cdef Py_ssize_t T = lams.shape[0]
    cdef Py_ssize_t n = lams.shape[1]
    cdef Py_ssize_t G = alphas.shape[0]
    if n > MAX_N:
        raise ValueError("dimension exceeds kernel limit")
    if a.shape[0] != T or b.shape[0] != T or a.shape[1] != n or b.shape[1] != n:
        raise ValueError("shape mismatch between eigenvalues and matrices")

    ia_arr = np.empty((G, T), dtype=np.float64)
    sa_arr = np.empty((G, T), dtype=np.float64)
    ib_arr = np.empty((G, T), dtype=np.float64)
    sb_arr = np.empty((G, T), dtype=np.float64)
    cross_arr = np.empty((G, T), dtype=np.complex128)
    cdef double[:, ::1] ia = ia_arr
    cdef double[:, ::1] sa = sa_arr
    cdef double[:, ::1] ib = ib_arr
    cdef double[:, ::1] sb = sb_arr
    cdef double complex[:, ::1] cross = cross_arr

    cdef double p[MAX_N]
    cdef double q[MAX_N]
    cdef Py_ssize_t t, g, j, k
    cdef double al, w, dw, aa, bb, s_ia, s_sa, s_ib, s_sb
    cdef double complex s_cr, av, bv

    with nogil:
        for t in range(T):
            for g in range(G):
                al = alphas[g]
                for j in range(n):
                    p[j] = pow(lams[t, j], al)
                    q[j] = pow(lams[t, j], 1.0 - al)
                s_ia = 0.0
                s_sa = 0.0
                s_ib = 0.0
                s_sb = 0.0
                s_cr = 0.0
                for j in range(n):
                    for k in range(n):
                        w = p[j] * q[k]
                        av = a[t, j, k]
                        bv = b[t, j, k]
                        aa = av.real * av.real + av.imag * av.imag
                        bb = bv.real * bv.real + bv.imag * bv.imag
                        s_sa += w * aa
                        s_sb += w * bb
                        s_cr += w * av * b[t, k, j]
                    for k in range(j + 1, n):
                        dw = (p[j] - p[k]) * (q[j] - q[k])
                        av = a[t, j, k]
                        bv = b[t, j, k]
                        s_ia += dw * (av.real * av.real + av.imag * av.imag)
                        s_ib += dw * (bv.real * bv.real + bv.imag * bv.imag)
                ia[g, t] = s_ia
                sa[g, t] = s_sa
                ib[g, t] = s_ib
                sb[g, t] = s_sb
                cross[g, t] = s_cr
    return ia_arr, sa_arr, ib_arr, sb_arr, cross_arr


def weighted_pair_sums(double[:, :, :, ::1] w,
                       double complex[:, :, ::1] a, double complex[:, :, ::1] b):
    cdef Py_ssize_t F = w.shape[0]
    cdef Py_ssize_t T = w.shape[1]
    cdef Py_ssize_t n = w.shape[2]
    if a.shape[0] != T or b.shape[0] != T or a.shape[1] != n or b.shape[1] != n:
        raise ValueError("shape mismatch between weights and matrices")

    wa_arr = np.empty((F, T), dtype=np.float64)
    wb_arr = np.empty((F, T), dtype=np.float64)
    wab_arr = np.empty((F, T), dtype=np.complex128)
    cdef double[:, ::1] wa = wa_arr
    cdef double[:, ::1] wb = wb_arr
    cdef double complex[:, ::1] wab = wab_arr

    cdef Py_ssize_t f, t, j, k
    cdef double wv, s_wa, s_wb
    cdef double complex s_ab, av, bv

    with nogil:
        for f in range(F):
            for t in range(T):
                s_wa = 0.0
                s_wb = 0.0
                s_ab = 0.0
                for j in range(n):
                    for k in range(n):
                        wv = w[f, t, j, k]
                        av = a[t, j, k]
                        bv = b[t, j, k]
                        s_wa += wv * (av.real * av.real + av.imag * av.imag)
                        s_wb += wv * (bv.real * bv.real + bv.imag * bv.imag)
                        s_ab += wv * av * b[t, k, j]
                wa[f, t] = s_wa
                wb[f, t] = s_wb
                wab[f, t] = s_ab
    return wa_arr, wb_arr, wab_arr

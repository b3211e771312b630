# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled q-series kernel: same two functions, same summation order, and
the same stopping rule as the pure-Python reference in ``_series_py``."""

from .errors import NonConvergenceError

cdef extern from "complex.h" nogil:
    double complex cexp(double complex z)
    double cabs(double complex z)

DEF MAX_ORDER = 32

BACKEND = "compiled"

cdef double PI = 3.141592653589793238462643383279502884


def theta_sums(int alpha, int beta, a_lin, b_lin, m_scale, c_shift, tau,
               int nz, int order, double abs_floor, int consecutive,
               int max_terms):
    if alpha not in (0, 1) or beta not in (0, 1):
        raise ValueError("characteristics must be reduced to {0,1}")
    if order >= MAX_ORDER:
        raise ValueError("jet order beyond the compiled kernel's buffer")
    cdef double complex a = a_lin
    cdef double complex b = b_lin
    cdef double complex m = m_scale
    cdef double complex cs = c_shift
    cdef double complex t = tau
    cdef double complex mod_ = m * t + cs
    cdef double complex arg = a * t + b + 0.5 * beta
    cdef double complex sums[MAX_ORDER]
    cdef double run_max[MAX_ORDER]
    cdef double group_mag[MAX_ORDER]
    cdef int nsum = order + 1
    cdef int j, k, i, npair
    cdef int ks[2]
    cdef int negligible_run = 0
    cdef int terms_used = 0
    cdef int rho = 0
    cdef double complex term, slope, dz
    cdef double kh, mm
    cdef bint small
    for j in range(nsum):
        sums[j] = 0
        run_max[j] = 0.0
    while True:
        if rho == 0 and alpha == 0:
            npair = 1
            ks[0] = 0
        else:
            npair = 2
            ks[0] = rho
            ks[1] = -rho - alpha
        for j in range(nsum):
            group_mag[j] = 0.0
        for i in range(npair):
            k = ks[i]
            kh = k + 0.5 * alpha
            term = cexp((PI * 1j * kh * kh) * mod_ + (2j * PI * kh) * arg)
            if nz:
                dz = 2j * PI * kh
                for j in range(nz):
                    term = term * dz
            slope = (PI * 1j * kh * kh) * m + (2j * PI * kh) * a
            for j in range(nsum):
                sums[j] = sums[j] + term
                mm = cabs(sums[j])
                if mm > run_max[j]:
                    run_max[j] = mm
                group_mag[j] += cabs(term)
                term = term * slope
        terms_used += npair
        small = True
        for j in range(nsum):
            if group_mag[j] > abs_floor * run_max[j]:
                small = False
                break
        if small:
            negligible_run += 1
            if negligible_run >= consecutive:
                return [sums[j] for j in range(nsum)]
        else:
            negligible_run = 0
        if terms_used >= max_terms:
            raise NonConvergenceError(
                f"theta series did not settle within {max_terms} terms",
                partial=[sums[j] for j in range(nsum)])
        rho += 1


def dedekind_sums(tau, int order, double abs_floor, int consecutive,
                  int max_terms):
    if order >= MAX_ORDER:
        raise ValueError("jet order beyond the compiled kernel's buffer")
    cdef double complex t = tau
    cdef double complex sums[MAX_ORDER]
    cdef double run_max[MAX_ORDER]
    cdef double group_mag[MAX_ORDER]
    cdef int nsum = order + 1
    cdef int j, k, i, npair
    cdef int ks[2]
    cdef int negligible_run = 0
    cdef int terms_used = 0
    cdef int rho = 0
    cdef double complex term, slope
    cdef double e, mm
    cdef bint small
    for j in range(nsum):
        sums[j] = 0
        run_max[j] = 0.0
    while True:
        if rho == 0:
            npair = 1
            ks[0] = 0
        else:
            npair = 2
            ks[0] = rho
            ks[1] = -rho
        for j in range(nsum):
            group_mag[j] = 0.0
        for i in range(npair):
            k = ks[i]
            e = 3.0 * k * k + k + 1.0 / 12.0
            term = cexp((PI * 1j * e) * t)
            if k & 1:
                term = -term
            slope = PI * 1j * e
            for j in range(nsum):
                sums[j] = sums[j] + term
                mm = cabs(sums[j])
                if mm > run_max[j]:
                    run_max[j] = mm
                group_mag[j] += cabs(term)
                term = term * slope
        terms_used += npair
        small = True
        for j in range(nsum):
            if group_mag[j] > abs_floor * run_max[j]:
                small = False
                break
        if small:
            negligible_run += 1
            if negligible_run >= consecutive:
                return [sums[j] for j in range(nsum)]
        else:
            negligible_run = 0
        if terms_used >= max_terms:
            raise NonConvergenceError(
                f"pentagonal series did not settle within {max_terms} terms",
                partial=[sums[j] for j in range(nsum)])
        rho += 1

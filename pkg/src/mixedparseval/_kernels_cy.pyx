# cython: language_level=3
"""Compiled implementations of the numeric kernels.

Mirrors _kernels_py exactly — same functions, same IEEE semantics (overflow
and domain errors yield inf/nan, never exceptions).  _backend picks whichever
of the two imports cleanly.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport (cos, cosh, exp, fabs, fmod, log, pow, sin, sinh,
                        sqrt, tan, tanh)

cnp.import_array()

BACKEND_NAME = "cython"

FAM_SECH = 0
FAM_GAUSSIAN = 1
FAM_LOGISTIC = 2
FAM_COSH_PLUS_COS = 3
FAM_COSH_MINUS_COS = 4
FAM_LOG_COS_SQUARED = 5

cdef enum:
    C_CONST = 0
    C_X = 1
    C_NEG = 2
    C_ADD = 3
    C_SUB = 4
    C_MUL = 5
    C_DIV = 6
    C_POW = 7
    C_SIN = 8
    C_COS = 9
    C_TAN = 10
    C_SINH = 11
    C_COSH = 12
    C_TANH = 13
    C_SECH = 14
    C_EXP = 15
    C_LOG = 16
    C_ABS = 17
    C_SQRT = 18

OP_CONST = C_CONST
OP_X = C_X
OP_NEG = C_NEG
OP_ADD = C_ADD
OP_SUB = C_SUB
OP_MUL = C_MUL
OP_DIV = C_DIV
OP_POW = C_POW
OP_SIN = C_SIN
OP_COS = C_COS
OP_TAN = C_TAN
OP_SINH = C_SINH
OP_COSH = C_COSH
OP_TANH = C_TANH
OP_SECH = C_SECH
OP_EXP = C_EXP
OP_LOG = C_LOG
OP_ABS = C_ABS
OP_SQRT = C_SQRT


cdef void _family_into(int tag, double param, const double[::1] xs,
                       double[::1] out) noexcept nogil:
    cdef Py_ssize_t i, n = xs.shape[0]
    cdef double x, c
    if tag == 0:  # sech
        for i in range(n):
            out[i] = 1.0 / cosh(param * xs[i])
    elif tag == 1:  # gaussian
        for i in range(n):
            x = xs[i]
            out[i] = exp(-x * x / (4.0 * param))
    elif tag == 2:  # logistic tail
        for i in range(n):
            out[i] = 1.0 / (1.0 + exp(2.0 * fabs(xs[i])))
    elif tag == 3:  # cosh(a) + cos(x)
        c = cosh(param)
        for i in range(n):
            out[i] = 1.0 / (c + cos(xs[i]))
    elif tag == 4:  # cosh(a) - cos(x)
        c = cosh(param)
        for i in range(n):
            out[i] = 1.0 / (c - cos(xs[i]))
    else:  # log(cos(x)^2)
        for i in range(n):
            c = cos(xs[i])
            out[i] = log(c * c)


def eval_family(int tag, double param, xs):
    """Evaluate a built-in family pointwise on the float64 array `xs`."""
    if tag < 0 or tag > 5:
        raise ValueError(f"unknown family tag {tag}")
    cdef cnp.ndarray[double, ndim=1] arr = np.ascontiguousarray(xs, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] out = np.empty(arr.shape[0], dtype=np.float64)
    _family_into(tag, param, arr, out)
    return out


def eval_program(codes, consts, xs):
    """Run a compiled expression program over `xs` with a value stack."""
    cdef const int[::1] cd = np.ascontiguousarray(codes, dtype=np.int32)
    cdef const double[::1] cs = np.ascontiguousarray(consts, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] arr = np.ascontiguousarray(xs, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] out = np.empty(arr.shape[0], dtype=np.float64)
    cdef const double[::1] xv = arr
    cdef double[::1] ov = out
    cdef Py_ssize_t ncode = cd.shape[0], npts = xv.shape[0]
    cdef Py_ssize_t i, j
    cdef int op, arg, sp, maxsp = 0, depth = 0
    cdef double stack[256]
    cdef double a, b

    # static stack-depth check so the per-point loop can skip bounds tests
    for j in range(0, ncode, 2):
        op = cd[j]
        if op == C_CONST or op == C_X:
            depth += 1
        elif op >= C_ADD and op <= C_POW:
            depth -= 1
        if depth > maxsp:
            maxsp = depth
    if maxsp > 255 or depth != 1:
        raise ValueError("malformed program")

    with nogil:
        for i in range(npts):
            sp = 0
            for j in range(0, ncode, 2):
                op = cd[j]
                arg = cd[j + 1]
                if op == C_CONST:
                    stack[sp] = cs[arg]
                    sp += 1
                elif op == C_X:
                    stack[sp] = xv[i]
                    sp += 1
                elif op == C_NEG:
                    stack[sp - 1] = -stack[sp - 1]
                elif op == C_ADD:
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] + stack[sp]
                elif op == C_SUB:
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] - stack[sp]
                elif op == C_MUL:
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] * stack[sp]
                elif op == C_DIV:
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] / stack[sp]
                elif op == C_POW:
                    sp -= 1
                    stack[sp - 1] = pow(stack[sp - 1], stack[sp])
                elif op == C_SIN:
                    stack[sp - 1] = sin(stack[sp - 1])
                elif op == C_COS:
                    stack[sp - 1] = cos(stack[sp - 1])
                elif op == C_TAN:
                    stack[sp - 1] = tan(stack[sp - 1])
                elif op == C_SINH:
                    stack[sp - 1] = sinh(stack[sp - 1])
                elif op == C_COSH:
                    stack[sp - 1] = cosh(stack[sp - 1])
                elif op == C_TANH:
                    stack[sp - 1] = tanh(stack[sp - 1])
                elif op == C_SECH:
                    stack[sp - 1] = 1.0 / cosh(stack[sp - 1])
                elif op == C_EXP:
                    stack[sp - 1] = exp(stack[sp - 1])
                elif op == C_LOG:
                    stack[sp - 1] = log(stack[sp - 1])
                elif op == C_ABS:
                    stack[sp - 1] = fabs(stack[sp - 1])
                else:  # C_SQRT
                    stack[sp - 1] = sqrt(stack[sp - 1])
            ov[i] = stack[0]
    return out


def eval_integrand(desc, xs):
    """Evaluate a nested integrand descriptor (see functions.py) on `xs`."""
    arr = np.ascontiguousarray(xs, dtype=np.float64)
    kind = desc[0]
    if kind == "family":
        return eval_family(desc[1], desc[2], arr)
    if kind == "expr":
        return eval_program(desc[1], desc[2], arr)
    if kind == "wrap":
        return eval_integrand(desc[1], _positive_mod(arr, desc[2]))
    if kind == "product":
        return eval_integrand(desc[1], arr) * eval_integrand(desc[2], arr)
    if kind == "cosmod":
        return eval_integrand(desc[1], arr) * np.cos(desc[2] * arr)
    if kind == "negsinmod":
        return eval_integrand(desc[1], arr) * (-np.sin(desc[2] * arr))
    if kind == "square":
        v = eval_integrand(desc[1], arr)
        return v * v
    if kind == "shiftsum":
        _, sub, period, nshift = desc
        acc = np.zeros_like(arr)
        for k in range(-nshift, nshift + 1):
            acc += eval_integrand(sub, arr + k * period)
        return acc
    raise ValueError(f"unknown descriptor kind {kind!r}")


def _positive_mod(cnp.ndarray[double, ndim=1] xs, double period):
    # match np.mod: result carries the sign of the divisor
    cdef cnp.ndarray[double, ndim=1] out = np.empty(xs.shape[0], dtype=np.float64)
    cdef Py_ssize_t i
    cdef double r
    for i in range(xs.shape[0]):
        r = fmod(xs[i], period)
        if r < 0.0:
            r += period
        out[i] = r
    return out


def logistic_direct(double omega, long kstop):
    """Partial sum of sum_k (-1)^(k-1) * 4k / (4k^2 + omega^2), k = 1..kstop."""
    cdef double s = 0.0, k, sign = 1.0
    cdef long i
    with nogil:
        for i in range(1, kstop + 1):
            k = <double> i
            s += sign * 4.0 * k / (4.0 * k * k + omega * omega)
            sign = -sign
    return s


def logistic_series(double omega, long k0, int navg):
    """Accelerated evaluation of the alternating logistic-transform series.

    Sums the first k0 terms directly, then applies `navg` pairwise-averaging
    passes to the tail partial sums.  Returns (value, error_estimate).
    """
    cdef double base = logistic_direct(omega, k0)
    cdef int m = navg + 1
    cdef cnp.ndarray[double, ndim=1] buf = np.empty(m, dtype=np.float64)
    cdef double[::1] partial = buf
    cdef double s = base, k
    cdef double sign = -1.0 if (k0 % 2 == 1) else 1.0
    cdef int i, j
    cdef double prev, value, err
    with nogil:
        for j in range(m):
            k = <double> (k0 + 1 + j)
            s += sign * 4.0 * k / (4.0 * k * k + omega * omega)
            sign = -sign
            partial[j] = s
        prev = partial[0]
        for i in range(navg):
            prev = partial[0]
            for j in range(m - 1 - i):
                partial[j] = 0.5 * (partial[j] + partial[j + 1])
        value = partial[0]
    err = fabs(value - prev)
    if err < fabs(value) * 2e-16:
        err = fabs(value) * 2e-16
    if err < 1e-300:
        err = 1e-300
    return value, err

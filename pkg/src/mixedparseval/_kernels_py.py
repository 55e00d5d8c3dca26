"""NumPy reference implementations of the numeric kernels.

The compiled extension (`_kernels_cy`) mirrors this module exactly; one of
the two is chosen at import time by `_backend`.  Everything here works on
float64 arrays and follows IEEE semantics: overflow and domain errors
produce inf/nan rather than raising.
"""

import numpy as np

BACKEND_NAME = "pure-python"

# family tags (shared with the compiled backend and with functions.py)
FAM_SECH = 0
FAM_GAUSSIAN = 1
FAM_LOGISTIC = 2
FAM_COSH_PLUS_COS = 3
FAM_COSH_MINUS_COS = 4
FAM_LOG_COS_SQUARED = 5

# program opcodes (two int32 slots per instruction: [op, arg])
OP_CONST = 0
OP_X = 1
OP_NEG = 2
OP_ADD = 3
OP_SUB = 4
OP_MUL = 5
OP_DIV = 6
OP_POW = 7
OP_SIN = 8
OP_COS = 9
OP_TAN = 10
OP_SINH = 11
OP_COSH = 12
OP_TANH = 13
OP_SECH = 14
OP_EXP = 15
OP_LOG = 16
OP_ABS = 17
OP_SQRT = 18


def eval_family(tag, param, xs):
    """Evaluate a built-in family pointwise on the float64 array `xs`."""
    with np.errstate(all="ignore"):
        if tag == FAM_SECH:
            return 1.0 / np.cosh(param * xs)
        if tag == FAM_GAUSSIAN:
            return np.exp(-xs * xs / (4.0 * param))
        if tag == FAM_LOGISTIC:
            return 1.0 / (1.0 + np.exp(2.0 * np.abs(xs)))
        if tag == FAM_COSH_PLUS_COS:
            return 1.0 / (np.cosh(param) + np.cos(xs))
        if tag == FAM_COSH_MINUS_COS:
            return 1.0 / (np.cosh(param) - np.cos(xs))
        if tag == FAM_LOG_COS_SQUARED:
            c = np.cos(xs)
            return np.log(c * c)
    raise ValueError(f"unknown family tag {tag}")


_UNARY = {
    OP_NEG: np.negative,
    OP_SIN: np.sin,
    OP_COS: np.cos,
    OP_TAN: np.tan,
    OP_SINH: np.sinh,
    OP_COSH: np.cosh,
    OP_TANH: np.tanh,
    OP_EXP: np.exp,
    OP_LOG: np.log,
    OP_ABS: np.abs,
    OP_SQRT: np.sqrt,
}

_BINARY = {
    OP_ADD: np.add,
    OP_SUB: np.subtract,
    OP_MUL: np.multiply,
    OP_DIV: np.divide,
    OP_POW: np.power,
}


def eval_program(codes, consts, xs):
    """Run a compiled expression program over `xs` with a value stack."""
    stack = []
    with np.errstate(all="ignore"):
        for i in range(0, len(codes), 2):
            op = int(codes[i])
            arg = int(codes[i + 1])
            if op == OP_CONST:
                stack.append(np.full_like(xs, consts[arg]))
            elif op == OP_X:
                stack.append(xs.copy())
            elif op == OP_SECH:
                stack.append(1.0 / np.cosh(stack.pop()))
            elif op in _UNARY:
                stack.append(_UNARY[op](stack.pop()))
            elif op in _BINARY:
                b = stack.pop()
                a = stack.pop()
                stack.append(_BINARY[op](a, b))
            else:
                raise ValueError(f"bad opcode {op}")
    if len(stack) != 1:
        raise ValueError("malformed program")
    return stack[0]


def eval_integrand(desc, xs):
    """Evaluate a nested integrand descriptor (see functions.py) on `xs`."""
    kind = desc[0]
    if kind == "family":
        return eval_family(desc[1], desc[2], xs)
    if kind == "expr":
        return eval_program(desc[1], desc[2], xs)
    if kind == "wrap":
        return eval_integrand(desc[1], np.mod(xs, desc[2]))
    if kind == "product":
        return eval_integrand(desc[1], xs) * eval_integrand(desc[2], xs)
    if kind == "cosmod":
        return eval_integrand(desc[1], xs) * np.cos(desc[2] * xs)
    if kind == "negsinmod":
        return eval_integrand(desc[1], xs) * (-np.sin(desc[2] * xs))
    if kind == "square":
        v = eval_integrand(desc[1], xs)
        return v * v
    if kind == "shiftsum":
        _, sub, period, nshift = desc
        acc = np.zeros_like(xs)
        for k in range(-nshift, nshift + 1):
            acc += eval_integrand(sub, xs + k * period)
        return acc
    raise ValueError(f"unknown descriptor kind {kind!r}")


def logistic_direct(omega, kstop):
    """Partial sum of sum_k (-1)^(k-1) * 4k / (4k^2 + omega^2), k = 1..kstop."""
    k = np.arange(1, kstop + 1, dtype=np.float64)
    terms = 4.0 * k / (4.0 * k * k + omega * omega)
    terms[1::2] *= -1.0
    # ascending-k summation keeps the result deterministic across runs
    return float(np.sum(terms))


def logistic_series(omega, k0, navg):
    """Accelerated evaluation of the alternating logistic-transform series.

    Sums the first k0 terms directly, then applies `navg` pairwise-averaging
    passes to the tail partial sums.  Returns (value, error_estimate).
    """
    base = logistic_direct(omega, k0)
    m = navg + 1
    partial = np.empty(m, dtype=np.float64)
    s = base
    sign = -1.0 if (k0 % 2 == 1) else 1.0
    for j in range(m):
        k = float(k0 + 1 + j)
        s += sign * 4.0 * k / (4.0 * k * k + omega * omega)
        sign = -sign
        partial[j] = s
    prev = float(partial[0])
    for _ in range(navg):
        prev = float(partial[0])
        partial = 0.5 * (partial[:-1] + partial[1:])
    value = float(partial[0])
    # successive averaging stages agree to ~eps once converged
    err = max(abs(value - prev), abs(value) * 2e-16, 1e-300)
    return value, err

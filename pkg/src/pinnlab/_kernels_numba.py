"""Numba-compiled tape interpreter: the default backend for the hot loops.

Mirrors ``_kernels_numpy`` node for node; the inner loops run over the
batch axis of the (n_nodes, batch) value array so they vectorize.
"""

import math

import numpy as np
from numba import njit

from ._opcodes import (
    INPUT, ADD, SUB, MUL, DIV, NEG, EXP, LN, SIN, COS, TANH, ERF,
    ABS, MAX0, POWI, STEP, SIGN, MULADD, BSUM,
)

_INV_SQRT_PI_2 = 2.0 / math.sqrt(math.pi)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@njit(cache=True)
def replay(ops, a, b, c, aux, val, start, stop):
    B = val.shape[1]
    for i in range(start, stop):
        op = ops[i]
        if op <= INPUT:
            continue
        ai = a[i]
        if op == MULADD:
            bi = b[i]
            ci = c[i]
            for j in range(B):
                val[i, j] = val[ai, j] * val[bi, j] + val[ci, j]
        elif op == ADD:
            bi = b[i]
            for j in range(B):
                val[i, j] = val[ai, j] + val[bi, j]
        elif op == MUL:
            bi = b[i]
            for j in range(B):
                val[i, j] = val[ai, j] * val[bi, j]
        elif op == SUB:
            bi = b[i]
            for j in range(B):
                val[i, j] = val[ai, j] - val[bi, j]
        elif op == DIV:
            bi = b[i]
            for j in range(B):
                val[i, j] = val[ai, j] / val[bi, j]
        elif op == NEG:
            for j in range(B):
                val[i, j] = -val[ai, j]
        elif op == EXP:
            for j in range(B):
                val[i, j] = math.exp(val[ai, j])
        elif op == LN:
            for j in range(B):
                val[i, j] = math.log(val[ai, j])
        elif op == SIN:
            for j in range(B):
                val[i, j] = math.sin(val[ai, j])
        elif op == COS:
            for j in range(B):
                val[i, j] = math.cos(val[ai, j])
        elif op == TANH:
            for j in range(B):
                val[i, j] = math.tanh(val[ai, j])
        elif op == ERF:
            for j in range(B):
                val[i, j] = math.erf(val[ai, j])
        elif op == ABS:
            for j in range(B):
                val[i, j] = abs(val[ai, j])
        elif op == MAX0:
            for j in range(B):
                v = val[ai, j]
                val[i, j] = v if v > 0.0 else 0.0
        elif op == POWI:
            k = aux[i]
            for j in range(B):
                val[i, j] = val[ai, j] ** k
        elif op == STEP:
            for j in range(B):
                val[i, j] = 1.0 if val[ai, j] > 0.0 else 0.0
        elif op == SIGN:
            for j in range(B):
                v = val[ai, j]
                val[i, j] = 1.0 if v > 0.0 else (-1.0 if v < 0.0 else 0.0)
        elif op == BSUM:
            s = 0.0
            for j in range(B):
                s += val[ai, j]
            for j in range(B):
                val[i, j] = s


@njit(cache=True)
def backward(ops, a, b, c, aux, val, adj, stop):
    B = val.shape[1]
    for i in range(stop - 1, -1, -1):
        op = ops[i]
        if op <= INPUT:
            continue
        ai = a[i]
        if op == MULADD:
            bi = b[i]
            ci = c[i]
            for j in range(B):
                g = adj[i, j]
                adj[ai, j] += g * val[bi, j]
                adj[bi, j] += g * val[ai, j]
                adj[ci, j] += g
        elif op == ADD:
            bi = b[i]
            for j in range(B):
                g = adj[i, j]
                adj[ai, j] += g
                adj[bi, j] += g
        elif op == MUL:
            bi = b[i]
            for j in range(B):
                g = adj[i, j]
                adj[ai, j] += g * val[bi, j]
                adj[bi, j] += g * val[ai, j]
        elif op == SUB:
            bi = b[i]
            for j in range(B):
                g = adj[i, j]
                adj[ai, j] += g
                adj[bi, j] -= g
        elif op == DIV:
            bi = b[i]
            for j in range(B):
                g = adj[i, j] / val[bi, j]
                adj[ai, j] += g
                adj[bi, j] -= g * val[i, j]
        elif op == NEG:
            for j in range(B):
                adj[ai, j] -= adj[i, j]
        elif op == EXP:
            for j in range(B):
                adj[ai, j] += adj[i, j] * val[i, j]
        elif op == LN:
            for j in range(B):
                adj[ai, j] += adj[i, j] / val[ai, j]
        elif op == SIN:
            for j in range(B):
                adj[ai, j] += adj[i, j] * math.cos(val[ai, j])
        elif op == COS:
            for j in range(B):
                adj[ai, j] -= adj[i, j] * math.sin(val[ai, j])
        elif op == TANH:
            for j in range(B):
                t = val[i, j]
                adj[ai, j] += adj[i, j] * (1.0 - t * t)
        elif op == ERF:
            for j in range(B):
                x = val[ai, j]
                adj[ai, j] += adj[i, j] * _INV_SQRT_PI_2 * math.exp(-x * x)
        elif op == ABS:
            for j in range(B):
                v = val[ai, j]
                s = 1.0 if v > 0.0 else (-1.0 if v < 0.0 else 0.0)
                adj[ai, j] += adj[i, j] * s
        elif op == MAX0:
            for j in range(B):
                if val[ai, j] > 0.0:
                    adj[ai, j] += adj[i, j]
        elif op == POWI:
            k = aux[i]
            for j in range(B):
                adj[ai, j] += adj[i, j] * k * val[ai, j] ** (k - 1)
        elif op == STEP or op == SIGN:
            pass  # piecewise constant: zero derivative everywhere
        elif op == BSUM:
            s = 0.0
            for j in range(B):
                s += adj[i, j]
            for j in range(B):
                adj[ai, j] += s


@njit(cache=True)
def _act_value(act_id, x):
    if act_id == 0:  # tanh
        return math.tanh(x)
    elif act_id == 1:  # gelu
        return 0.5 * x * (1.0 + math.erf(x * _INV_SQRT2))
    elif act_id == 2:  # softplus
        return max(x, 0.0) + math.log1p(math.exp(-abs(x)))
    elif act_id == 3:  # logsigmoid
        return min(x, 0.0) - math.log1p(math.exp(-abs(x)))
    elif act_id == 4:  # sigmoid
        return 0.5 * (1.0 + math.tanh(0.5 * x))
    elif act_id == 5:  # tanhshrink
        return x - math.tanh(x)
    elif act_id == 6:  # celu (alpha=1)
        return max(x, 0.0) + math.expm1(min(x, 0.0))
    elif act_id == 7:  # softsign
        return x / (1.0 + abs(x))
    else:  # relu
        return max(x, 0.0)


@njit(cache=True)
def mlp_forward(flat, n_inputs, n_outputs, hidden_layers, width, act_id, X):
    n = X.shape[0]
    out = np.empty((n, n_outputs))
    h = np.empty(width)
    z = np.empty(width)
    for p in range(n):
        off = 0
        fan_in = n_inputs
        for layer in range(hidden_layers):
            w_off = off
            b_off = off + fan_in * width
            for j in range(width):
                acc = flat[b_off + j]
                if layer == 0:
                    for i in range(fan_in):
                        acc += flat[w_off + i * width + j] * X[p, i]
                else:
                    for i in range(fan_in):
                        acc += flat[w_off + i * width + j] * h[i]
                z[j] = _act_value(act_id, acc)
            h, z = z, h
            off = b_off + width
            fan_in = width
        w_off = off
        b_off = off + fan_in * n_outputs
        for j in range(n_outputs):
            acc = flat[b_off + j]
            for i in range(fan_in):
                acc += flat[w_off + i * n_outputs + j] * h[i]
            out[p, j] = acc
    return out

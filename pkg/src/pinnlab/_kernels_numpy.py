"""Pure-numpy tape interpreter: the fallback backend and the semantic reference.

Node values live in a dense (n_nodes, batch) float64 array; every node
occupies one row, scalars are broadcast across the row.  The numba backend
in ``_kernels_numba`` implements the same contract and is checked against
this module in the test suite.
"""

import numpy as np
from scipy.special import erf as _erf

from . import _opcodes as oc


def replay(ops, a, b, c, aux, val, start, stop):
    """Recompute primal rows ``start:stop`` in order. Leaf rows are kept."""
    for i in range(start, stop):
        op = ops[i]
        if op <= oc.INPUT:
            continue
        ai = a[i]
        if op == oc.MULADD:
            np.multiply(val[ai], val[b[i]], out=val[i])
            np.add(val[i], val[c[i]], out=val[i])
        elif op == oc.ADD:
            np.add(val[ai], val[b[i]], out=val[i])
        elif op == oc.MUL:
            np.multiply(val[ai], val[b[i]], out=val[i])
        elif op == oc.SUB:
            np.subtract(val[ai], val[b[i]], out=val[i])
        elif op == oc.DIV:
            np.divide(val[ai], val[b[i]], out=val[i])
        elif op == oc.NEG:
            np.negative(val[ai], out=val[i])
        elif op == oc.EXP:
            np.exp(val[ai], out=val[i])
        elif op == oc.LN:
            np.log(val[ai], out=val[i])
        elif op == oc.SIN:
            np.sin(val[ai], out=val[i])
        elif op == oc.COS:
            np.cos(val[ai], out=val[i])
        elif op == oc.TANH:
            np.tanh(val[ai], out=val[i])
        elif op == oc.ERF:
            val[i] = _erf(val[ai])
        elif op == oc.ABS:
            np.abs(val[ai], out=val[i])
        elif op == oc.MAX0:
            np.maximum(val[ai], 0.0, out=val[i])
        elif op == oc.POWI:
            np.power(val[ai], aux[i], out=val[i])
        elif op == oc.STEP:
            np.greater(val[ai], 0.0, out=val[i])
        elif op == oc.SIGN:
            np.sign(val[ai], out=val[i])
        elif op == oc.BSUM:
            val[i] = val[ai].sum()
        else:
            raise ValueError(f"unknown opcode {op}")


def backward(ops, a, b, c, aux, val, adj, stop):
    """Reverse sweep over nodes ``stop-1 .. 0``; ``adj`` must be pre-seeded."""
    tmp = np.empty(val.shape[1])
    inv_sqrt_pi_2 = 2.0 / np.sqrt(np.pi)
    for i in range(stop - 1, -1, -1):
        op = ops[i]
        if op <= oc.INPUT:
            continue
        ai = a[i]
        gi = adj[i]
        if op == oc.MULADD:
            np.multiply(gi, val[b[i]], out=tmp)
            adj[ai] += tmp
            np.multiply(gi, val[ai], out=tmp)
            adj[b[i]] += tmp
            adj[c[i]] += gi
        elif op == oc.ADD:
            adj[ai] += gi
            adj[b[i]] += gi
        elif op == oc.MUL:
            np.multiply(gi, val[b[i]], out=tmp)
            adj[ai] += tmp
            np.multiply(gi, val[ai], out=tmp)
            adj[b[i]] += tmp
        elif op == oc.SUB:
            adj[ai] += gi
            adj[b[i]] -= gi
        elif op == oc.DIV:
            np.divide(gi, val[b[i]], out=tmp)
            adj[ai] += tmp
            np.multiply(tmp, val[i], out=tmp)
            adj[b[i]] -= tmp
        elif op == oc.NEG:
            adj[ai] -= gi
        elif op == oc.EXP:
            np.multiply(gi, val[i], out=tmp)
            adj[ai] += tmp
        elif op == oc.LN:
            np.divide(gi, val[ai], out=tmp)
            adj[ai] += tmp
        elif op == oc.SIN:
            np.cos(val[ai], out=tmp)
            tmp *= gi
            adj[ai] += tmp
        elif op == oc.COS:
            np.sin(val[ai], out=tmp)
            tmp *= gi
            adj[ai] -= tmp
        elif op == oc.TANH:
            np.multiply(val[i], val[i], out=tmp)
            np.subtract(1.0, tmp, out=tmp)
            tmp *= gi
            adj[ai] += tmp
        elif op == oc.ERF:
            np.multiply(val[ai], val[ai], out=tmp)
            np.negative(tmp, out=tmp)
            np.exp(tmp, out=tmp)
            tmp *= inv_sqrt_pi_2
            tmp *= gi
            adj[ai] += tmp
        elif op == oc.ABS:
            np.sign(val[ai], out=tmp)
            tmp *= gi
            adj[ai] += tmp
        elif op == oc.MAX0:
            np.greater(val[ai], 0.0, out=tmp)
            tmp *= gi
            adj[ai] += tmp
        elif op == oc.POWI:
            k = aux[i]
            np.power(val[ai], k - 1, out=tmp)
            tmp *= float(k)
            tmp *= gi
            adj[ai] += tmp
        elif op in (oc.STEP, oc.SIGN):
            pass  # piecewise constant: zero derivative everywhere
        elif op == oc.BSUM:
            adj[ai] += gi.sum()
        else:
            raise ValueError(f"unknown opcode {op}")


def mlp_forward(flat, n_inputs, n_outputs, hidden_layers, width, act_id, X, act_fn):
    """Dense MLP inference over a batch of points via matmuls.

    ``act_fn`` maps a pre-activation array to activation values; layer
    weights are read from ``flat`` in (fan_in x fan_out, bias) order.
    """
    h = X
    off = 0
    fan_in = n_inputs
    for _ in range(hidden_layers):
        w = flat[off:off + fan_in * width].reshape(fan_in, width)
        off += fan_in * width
        bias = flat[off:off + width]
        off += width
        h = act_fn(h @ w + bias)
        fan_in = width
    w = flat[off:off + fan_in * n_outputs].reshape(fan_in, n_outputs)
    off += fan_in * n_outputs
    bias = flat[off:off + n_outputs]
    return h @ w + bias

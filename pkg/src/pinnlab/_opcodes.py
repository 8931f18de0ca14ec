"""Opcode table shared by the tape and both interpreter backends.

Plain module-level ints so the numba kernels can treat them as
compile-time constants.
"""

CONST = 0
INPUT = 1
ADD = 2
SUB = 3
MUL = 4
DIV = 5
NEG = 6
EXP = 7
LN = 8
SIN = 9
COS = 10
TANH = 11
ERF = 12
ABS = 13
MAX0 = 14
POWI = 15
# Extensions past the basic scalar set:
#   STEP/SIGN  piecewise-constant gates (derivative 0 everywhere, including
#              at the kink) so max0/abs jets survive tape replay,
#   MULADD     fused a*b + c, the workhorse of affine layers,
#   BSUM       sum over the batch axis, producing a broadcast scalar row.
STEP = 16
SIGN = 17
MULADD = 18
BSUM = 19

N_OPCODES = 20

OP_NAMES = {
    CONST: "const",
    INPUT: "input",
    ADD: "add",
    SUB: "sub",
    MUL: "mul",
    DIV: "div",
    NEG: "neg",
    EXP: "exp",
    LN: "ln",
    SIN: "sin",
    COS: "cos",
    TANH: "tanh",
    ERF: "erf",
    ABS: "abs",
    MAX0: "max0",
    POWI: "pow-int",
    STEP: "step",
    SIGN: "sign",
    MULADD: "muladd",
    BSUM: "bsum",
}

# opcode -> number of operands
ARITY = {
    CONST: 0,
    INPUT: 0,
    ADD: 2,
    SUB: 2,
    MUL: 2,
    DIV: 2,
    NEG: 1,
    EXP: 1,
    LN: 1,
    SIN: 1,
    COS: 1,
    TANH: 1,
    ERF: 1,
    ABS: 1,
    MAX0: 1,
    POWI: 1,
    STEP: 1,
    SIGN: 1,
    MULADD: 3,
    BSUM: 1,
}

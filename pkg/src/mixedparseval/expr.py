"""A small expression language for defining functions of one variable.

Grammar (whitespace-insensitive)::

    sum     := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          # right-associative
    atom    := NUMBER | 'x' | 'pi' | 'e' | NAME '(' sum ')' | '(' sum ')'

'^' binds tightest (so -x^2 is -(x^2)), then unary minus, then '*'/'/' and
finally '+'/'-'.  NUMBER accepts integer, decimal and scientific forms.
Available functions: sin cos tan sinh cosh tanh sech exp log abs sqrt.
Evaluation follows IEEE semantics — log(-1) is nan, 1/0 is inf — so that
singular expressions can still be sampled.
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from . import _backend as _bk
from ._kernels_py import (OP_ABS, OP_ADD, OP_CONST, OP_COS, OP_COSH, OP_DIV,
                          OP_EXP, OP_LOG, OP_MUL, OP_NEG, OP_POW, OP_SECH,
                          OP_SIN, OP_SINH, OP_SQRT, OP_SUB, OP_TAN, OP_TANH,
                          OP_X)

FUNCTIONS = {
    "sin": OP_SIN,
    "cos": OP_COS,
    "tan": OP_TAN,
    "sinh": OP_SINH,
    "cosh": OP_COSH,
    "tanh": OP_TANH,
    "sech": OP_SECH,
    "exp": OP_EXP,
    "log": OP_LOG,
    "abs": OP_ABS,
    "sqrt": OP_SQRT,
}

CONSTANTS = {"pi": math.pi, "e": math.e}

_BINOPS = {"+": OP_ADD, "-": OP_SUB, "*": OP_MUL, "/": OP_DIV, "^": OP_POW}

# each grammar level costs several interpreter frames, so keep this well
# under sys.getrecursionlimit() / frames-per-level
_MAX_DEPTH = 100


class ParseError(ValueError):
    """Syntax error in an expression; `position` is the byte offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownIdentifierError(ParseError):
    """An identifier that is not a function, constant, or the variable x."""

    def __init__(self, name: str, position: int):
        super().__init__(f"unknown identifier {name!r}", position)
        self.name = name


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Num | Var | Neg | BinOp | Call


@dataclass(frozen=True)
class Program:
    """Flat postfix form of an expression: [op, arg] int32 pairs + constants."""

    codes: np.ndarray
    consts: np.ndarray


@dataclass(frozen=True)
class ExprAst:
    root: Node
    source: str


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# recursive-descent parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.depth = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}", pos)
        self.advance()

    def _enter(self, pos: int):
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise ParseError("expression too deeply nested", pos)

    def parse(self) -> Node:
        node = self.sum()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", pos)
        return node

    def sum(self) -> Node:
        _, _, pos = self.peek()
        self._enter(pos)
        try:
            node = self.term()
            while True:
                kind, text, _ = self.peek()
                if kind == "op" and text in "+-":
                    self.advance()
                    node = BinOp(text, node, self.term())
                else:
                    return node
        finally:
            self.depth -= 1

    def term(self) -> Node:
        node = self.unary()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                node = BinOp(text, node, self.unary())
            else:
                return node

    def unary(self) -> Node:
        kind, text, pos = self.peek()
        if kind == "op" and text == "-":
            self._enter(pos)
            try:
                self.advance()
                return Neg(self.unary())
            finally:
                self.depth -= 1
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            return BinOp("^", node, self.unary())
        return node

    def atom(self) -> Node:
        kind, text, pos = self.advance()
        if kind == "number":
            return Num(float(text))
        if kind == "name":
            nkind, ntext, npos = self.peek()
            follows_paren = nkind == "op" and ntext == "("
            if text in FUNCTIONS:
                if not follows_paren:
                    raise ParseError(f"function {text!r} needs an argument list", npos)
                self.advance()
                arg = self.sum()
                self.expect_op(")")
                return Call(text, arg)
            if follows_paren:
                if text == "x" or text in CONSTANTS:
                    raise ParseError(f"{text!r} is not a function", pos)
                raise UnknownIdentifierError(text, pos)
            if text == "x":
                return Var()
            if text in CONSTANTS:
                return Num(CONSTANTS[text])
            raise UnknownIdentifierError(text, pos)
        if kind == "op" and text == "(":
            node = self.sum()
            self.expect_op(")")
            return node
        shown = text if text else "end of input"
        raise ParseError(f"unexpected {shown!r}", pos)


def parse(text: str) -> ExprAst:
    """Parse `text` into an AST; raises ParseError with a byte offset."""
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    return ExprAst(_Parser(text).parse(), text)


# ---------------------------------------------------------------------------
# compilation and evaluation


def compile_ast(ast: ExprAst) -> Program:
    """Flatten an AST into the postfix program the kernels execute."""
    codes: list[int] = []
    consts: list[float] = []
    index: dict[float, int] = {}

    def const_idx(v: float) -> int:
        if v not in index:
            index[v] = len(consts)
            consts.append(v)
        return index[v]

    def walk(node: Node):
        if isinstance(node, Num):
            codes.extend((OP_CONST, const_idx(node.value)))
        elif isinstance(node, Var):
            codes.extend((OP_X, 0))
        elif isinstance(node, Neg):
            walk(node.operand)
            codes.extend((OP_NEG, 0))
        elif isinstance(node, BinOp):
            walk(node.left)
            walk(node.right)
            codes.extend((_BINOPS[node.op], 0))
        elif isinstance(node, Call):
            walk(node.arg)
            codes.extend((FUNCTIONS[node.func], 0))
        else:  # pragma: no cover
            raise TypeError(f"bad AST node {node!r}")

    walk(ast.root)
    return Program(
        codes=np.asarray(codes, dtype=np.int32),
        consts=np.asarray(consts, dtype=np.float64),
    )


def evaluate(ast: ExprAst, x):
    """Evaluate a parsed expression at a scalar or array of points."""
    program = compile_ast(ast)
    xs = np.asarray(x, dtype=np.float64)
    out = _bk.eval_program(program.codes, program.consts, np.atleast_1d(xs).ravel())
    if xs.ndim == 0:
        return float(out[0])
    return out.reshape(xs.shape)

"""Expression AST for structural function bodies.

Bodies are arithmetic over exact rationals with conditionals:

    expr  := literal | variable | expr (+|-|*) expr
           | min(expr, expr) | max(expr, expr)
           | if cond then expr else expr
    cond  := expr (=|!=|<|<=|>|>=) expr | cond and cond
           | cond or cond | not cond

Nodes are frozen dataclasses so models built from them hash and compare
structurally.  Evaluation takes any mapping from variable name to
Fraction and is total for total bodies; an unbound variable raises
KeyError, which validation turns into a diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

BIN_OPS = ("+", "-", "*")
CMP_OPS = ("=", "!=", "<", "<=", ">", ">=")
CALL_FNS = ("min", "max")


@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Expr"
    right: "Expr"

    def __post_init__(self):
        if self.op not in BIN_OPS:
            raise ValueError(f"bad arithmetic operator {self.op!r}")


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple

    def __post_init__(self):
        if self.fn not in CALL_FNS:
            raise ValueError(f"bad function {self.fn!r}")
        if len(self.args) != 2:
            raise ValueError(f"{self.fn} takes exactly two arguments")


@dataclass(frozen=True)
class If:
    test: "Cond"
    then: "Expr"
    orelse: "Expr"


@dataclass(frozen=True)
class Comparison:
    op: str
    left: "Expr"
    right: "Expr"

    def __post_init__(self):
        if self.op not in CMP_OPS:
            raise ValueError(f"bad comparison operator {self.op!r}")


@dataclass(frozen=True)
class And:
    left: "Cond"
    right: "Cond"


@dataclass(frozen=True)
class Or:
    left: "Cond"
    right: "Cond"


@dataclass(frozen=True)
class Not:
    operand: "Cond"


Expr = Lit | Var | Bin | Call | If
Cond = Comparison | And | Or | Not


def evaluate_expr(expr, env) -> Fraction:
    """Evaluate ``expr`` under ``env``, a mapping name -> Fraction."""
    if isinstance(expr, Lit):
        return expr.value
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, Bin):
        a = evaluate_expr(expr.left, env)
        b = evaluate_expr(expr.right, env)
        if expr.op == "+":
            return a + b
        if expr.op == "-":
            return a - b
        return a * b
    if isinstance(expr, Call):
        a = evaluate_expr(expr.args[0], env)
        b = evaluate_expr(expr.args[1], env)
        return min(a, b) if expr.fn == "min" else max(a, b)
    if isinstance(expr, If):
        branch = expr.then if evaluate_cond(expr.test, env) else expr.orelse
        return evaluate_expr(branch, env)
    raise TypeError(f"not an expression: {expr!r}")


def evaluate_cond(cond, env) -> bool:
    if isinstance(cond, Comparison):
        a = evaluate_expr(cond.left, env)
        b = evaluate_expr(cond.right, env)
        return {
            "=": a == b,
            "!=": a != b,
            "<": a < b,
            "<=": a <= b,
            ">": a > b,
            ">=": a >= b,
        }[cond.op]
    if isinstance(cond, And):
        return evaluate_cond(cond.left, env) and evaluate_cond(cond.right, env)
    if isinstance(cond, Or):
        return evaluate_cond(cond.left, env) or evaluate_cond(cond.right, env)
    if isinstance(cond, Not):
        return not evaluate_cond(cond.operand, env)
    raise TypeError(f"not a condition: {cond!r}")


def expr_variables(node) -> set[str]:
    """Every variable name occurring syntactically in an expr or cond."""
    out: set[str] = set()
    _collect(node, out)
    return out


def _collect(node, out):
    if isinstance(node, Lit):
        return
    if isinstance(node, Var):
        out.add(node.name)
    elif isinstance(node, Bin):
        _collect(node.left, out)
        _collect(node.right, out)
    elif isinstance(node, Call):
        for arg in node.args:
            _collect(arg, out)
    elif isinstance(node, If):
        _collect(node.test, out)
        _collect(node.then, out)
        _collect(node.orelse, out)
    elif isinstance(node, Comparison):
        _collect(node.left, out)
        _collect(node.right, out)
    elif isinstance(node, (And, Or)):
        _collect(node.left, out)
        _collect(node.right, out)
    elif isinstance(node, Not):
        _collect(node.operand, out)
    else:
        raise TypeError(f"not an AST node: {node!r}")

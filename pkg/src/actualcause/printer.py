"""Canonical text for models, expressions and formulas.

``format_model`` is the inverse of ``parse_model``: parsing its output
reproduces the model exactly, and the output of parsing a file and
printing it again is the file's canonical form.  Parentheses are
emitted only where the grammar needs them.
"""

from __future__ import annotations

from . import expressions as E
from . import formulas as F
from .rationals import format_rational

format_value = format_rational

# precedence levels; higher binds tighter
_ADD = 1
_MUL = 2
_PRIMARY = 3


def format_expr(expr, level: int = 0) -> str:
    if isinstance(expr, E.Lit):
        return format_rational(expr.value)
    if isinstance(expr, E.Var):
        return expr.name
    if isinstance(expr, E.Bin):
        mine = _MUL if expr.op == "*" else _ADD
        text = (
            f"{format_expr(expr.left, mine)} {expr.op} "
            f"{format_expr(expr.right, mine + 1)}"
        )
        return f"({text})" if level > mine else text
    if isinstance(expr, E.Call):
        args = ", ".join(format_expr(a, 0) for a in expr.args)
        return f"{expr.fn}({args})"
    if isinstance(expr, E.If):
        text = (
            f"if {format_cond(expr.test)} then {format_expr(expr.then)} "
            f"else {format_expr(expr.orelse)}"
        )
        return f"({text})" if level > 0 else text
    raise TypeError(f"not an expression: {expr!r}")


_OR = 1
_AND = 2
_NOT = 3
_CMP = 4


def format_cond(cond, level: int = 0) -> str:
    if isinstance(cond, E.Comparison):
        return (
            f"{format_expr(cond.left, _ADD)} {cond.op} "
            f"{format_expr(cond.right, _ADD)}"
        )
    if isinstance(cond, E.Or):
        text = f"{format_cond(cond.left, _OR)} or {format_cond(cond.right, _OR + 1)}"
        return f"({text})" if level > _OR else text
    if isinstance(cond, E.And):
        text = (
            f"{format_cond(cond.left, _AND)} and "
            f"{format_cond(cond.right, _AND + 1)}"
        )
        return f"({text})" if level > _AND else text
    if isinstance(cond, E.Not):
        return f"not {format_cond(cond.operand, _NOT)}"
    raise TypeError(f"not a condition: {cond!r}")


def format_matrix(matrix, level: int = 0) -> str:
    if isinstance(matrix, F.Atom):
        return f"({matrix.var} = {format_rational(matrix.value)})"
    if isinstance(matrix, F.Not):
        return f"!{format_matrix(matrix.operand, _NOT)}"
    if isinstance(matrix, F.Or):
        text = (
            f"{format_matrix(matrix.left, _OR)} | "
            f"{format_matrix(matrix.right, _OR + 1)}"
        )
        return f"({text})" if level > _OR else text
    if isinstance(matrix, F.And):
        text = (
            f"{format_matrix(matrix.left, _AND)} & "
            f"{format_matrix(matrix.right, _AND + 1)}"
        )
        return f"({text})" if level > _AND else text
    raise TypeError(f"not a matrix: {matrix!r}")


def format_formula(formula) -> str:
    if isinstance(formula, F.Formula):
        prefix = ""
        if formula.intervention:
            inside = ", ".join(
                f"{n} := {format_rational(v)}" for n, v in formula.intervention
            )
            prefix = f"[{inside}]"
        return prefix + format_matrix(formula.matrix)
    return format_matrix(formula)


def _format_range(values) -> str:
    return "{" + ", ".join(format_rational(v) for v in values) + "}"


def format_model(model) -> str:
    lines = [f"model {model.name}"]
    for name, values in model.signature.exogenous:
        lines.append(f"exo {name} in {_format_range(values)}")
    bodies = {f.target: f.body for f in model.functions}
    for name, values in model.signature.endogenous:
        line = f"var {name} in {_format_range(values)}"
        if name in bodies:
            line += f" := {format_expr(bodies[name])}"
        if name in model.frozen:
            line += " # frozen"
        lines.append(line)
    if model.context:
        lines.append(
            "context "
            + ", ".join(
                f"{n} = {format_rational(v)}" for n, v in model.context
            )
        )
    return "\n".join(lines) + "\n"

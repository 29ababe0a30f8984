"""Safe evaluation of the polynomial expressions used in the embedded tables.

Accepts things like ``-2(4414w + 43089)x^6 + 31bx^5``: integers, single-letter
symbols, ``+ - * / ^``, parentheses and implicit multiplication.  Nothing is
ever passed to ``eval``; the expression is walked as a Python AST.
"""

from __future__ import annotations

import ast
import re

from . import poly

_IMPLICIT = re.compile(r"(?<=[0-9a-z)])\s*(?=[a-z(])")


class ExpressionError(ValueError):
    pass


def _normalize(text: str) -> str:
    s = " ".join(text.replace("^", "**").replace("−", "-").split())
    return _IMPLICIT.sub("*", s)


def evaluate_poly(text: str, symbols: dict, one) -> list:
    """Evaluate ``text`` to a polynomial (coefficient list, low to high).

    ``symbols`` maps single letters to polynomials; ``one`` is the unit of the
    coefficient ring, used to lift integer literals.
    """
    try:
        tree = ast.parse(_normalize(text), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}") from exc

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return poly.trim([one * node.value])
        if isinstance(node, ast.Name):
            if node.id not in symbols:
                raise ExpressionError(f"unknown symbol {node.id!r} in {text!r}")
            return list(symbols[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return poly.neg(v) if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return poly.add(left, right)
            if isinstance(node.op, ast.Sub):
                return poly.sub(left, right)
            if isinstance(node.op, ast.Mult):
                return poly.mul(left, right)
            if isinstance(node.op, ast.Div):
                if len(right) != 1:
                    raise ExpressionError(f"division by a non-constant in {text!r}")
                return poly.scale(left, one / right[0])
            if isinstance(node.op, ast.Pow):
                if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                    raise ExpressionError(f"exponent must be an integer literal in {text!r}")
                return poly.power(left, node.right.value)
        raise ExpressionError(f"unsupported syntax in {text!r}")

    return walk(tree)


def evaluate_constant(text: str, symbols: dict, one):
    """Evaluate an expression that must come out constant."""
    p = evaluate_poly(text, symbols, one)
    if len(p) > 1:
        raise ExpressionError(f"{text!r} is not a constant")
    return p[0] if p else one * 0


def evaluate_expression(text: str, symbols: dict, lift):
    """Evaluate ``text`` with the operators of whatever objects ``symbols`` holds.

    Integer literals pass through ``lift``; division and powers are delegated
    to the objects, so the result type is up to the caller.
    """
    try:
        tree = ast.parse(_normalize(text), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}") from exc
    ops = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
           ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b}

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return lift(node.value)
        if isinstance(node, ast.Name):
            if node.id not in symbols:
                raise ExpressionError(f"unknown symbol {node.id!r} in {text!r}")
            return symbols[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                    raise ExpressionError(f"exponent must be an integer literal in {text!r}")
                return walk(node.left) ** node.right.value
            op = ops.get(type(node.op))
            if op is not None:
                return op(walk(node.left), walk(node.right))
        raise ExpressionError(f"unsupported syntax in {text!r}")

    return walk(tree)

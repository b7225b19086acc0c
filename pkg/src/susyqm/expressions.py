"""Parsing and compilation of superpotential expression strings.

The accepted grammar is deliberately small: +, -, *, /, ^ (or **), the
functions exp, ln, sin, cos, tanh, sech, numeric literals, the coordinate
``x``, and named real parameters.  Everything parsed here has an exact
analytic derivative, which is what lets the shape-invariance residual test
run at its tight tolerance tier.
"""

from __future__ import annotations

from tokenize import TokenError
from typing import Callable, Iterable

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                        standard_transformations)

from .errors import EvaluationError, ExpressionError

X = sympy.Symbol("x", real=True)

ALLOWED_FUNCTIONS = {
    "exp": sympy.exp,
    "ln": sympy.log,
    "log": sympy.log,
    "sin": sympy.sin,
    "cos": sympy.cos,
    "tanh": sympy.tanh,
    "sech": sympy.sech,
}

_ALLOWED_FUNC_TYPES = tuple({sympy.exp, sympy.log, sympy.sin, sympy.cos,
                             sympy.tanh, sympy.sech})

_TRANSFORMS = standard_transformations + (convert_xor,)

_NUMPY_EXTRAS = {"sech": lambda z: 1.0 / np.cosh(z)}


def parse_expression(text: str, extra_symbols: Iterable[str] = ()) -> sympy.Expr:
    """Parse an expression string into a validated sympy expression.

    Unknown names become real parameter symbols.  Raises ExpressionError
    when the text does not parse or uses functions outside the grammar.
    """
    local = {"x": X}
    local.update(ALLOWED_FUNCTIONS)
    for name in extra_symbols:
        local[name] = sympy.Symbol(name, real=True)
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TokenError, TypeError, ValueError, AttributeError,
            sympy.SympifyError) as exc:
        raise ExpressionError(f"cannot parse expression {text!r}: {exc}") from exc
    _validate(expr, text)
    return expr


def _validate(expr: sympy.Expr, text: str):
    if not isinstance(expr, sympy.Expr):
        raise ExpressionError(f"{text!r} is not a scalar expression")
    bad = sorted({type(f).__name__ for f in expr.atoms(sympy.Function)
                  if not isinstance(f, _ALLOWED_FUNC_TYPES)})
    if bad:
        raise ExpressionError(
            f"functions {bad} not in the supported set "
            f"{sorted(set(ALLOWED_FUNCTIONS) - {'log'})} in {text!r}")
    if expr.atoms(sympy.I):
        raise ExpressionError(f"complex constants are not supported in {text!r}")
    for sym in expr.free_symbols:
        if not sym.name.isidentifier():
            raise ExpressionError(f"invalid symbol {sym.name!r} in {text!r}")


def parameter_names(expr: sympy.Expr) -> list[str]:
    """Free symbols other than x, sorted for deterministic signatures."""
    return sorted(s.name for s in expr.free_symbols if s != X)


def differentiate(expr: sympy.Expr) -> sympy.Expr:
    return sympy.diff(expr, X)


def compile_on_grid(expr: sympy.Expr,
                    params: list[str]) -> Callable[[np.ndarray, dict], np.ndarray]:
    """Compile expr(x, params) into a numpy-vectorized callable.

    The returned function takes the grid array and a parameter dict and
    returns a float array of the same shape; constant expressions are
    broadcast.  Non-finite results raise EvaluationError (singularity or
    overflow inside the evaluation window).
    """
    syms = [X] + [sympy.Symbol(p, real=True) for p in params]
    fn = sympy.lambdify(syms, expr, modules=[_NUMPY_EXTRAS, "numpy"])

    def evaluate(x: np.ndarray, values: dict) -> np.ndarray:
        missing = [p for p in params if p not in values]
        if missing:
            raise EvaluationError(f"missing parameter values for {missing}")
        args = [float(values[p]) for p in params]
        with np.errstate(all="ignore"):
            out = fn(x, *args)
        out = np.asarray(out, dtype=float)
        if out.ndim == 0:
            out = np.full(np.shape(x), float(out))
        if not np.all(np.isfinite(out)):
            n_bad = int(np.count_nonzero(~np.isfinite(out)))
            raise EvaluationError(
                f"expression {sympy.sstr(expr)!r} is non-finite at {n_bad} grid node(s); "
                "check for singularities inside the domain")
        return out

    return evaluate


def compile_scalar(expr: sympy.Expr, params: list[str]) -> Callable[[dict], float]:
    """Compile a parameter-only expression (no x) into params -> float."""
    if X in expr.free_symbols:
        raise ExpressionError(f"expression {sympy.sstr(expr)!r} must not depend on x")
    syms = [sympy.Symbol(p, real=True) for p in params]
    fn = sympy.lambdify(syms, expr, modules=[_NUMPY_EXTRAS, "numpy"])

    def evaluate(values: dict) -> float:
        missing = [p for p in params if p not in values]
        if missing:
            raise EvaluationError(f"missing parameter values for {missing}")
        out = float(fn(*[float(values[p]) for p in params]))
        if not np.isfinite(out):
            raise EvaluationError(f"expression {sympy.sstr(expr)!r} evaluated non-finite")
        return out

    return evaluate

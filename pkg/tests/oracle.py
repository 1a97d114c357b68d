"""Conversions to sympy, used as an independent reference."""

import sympy

from cleft.polynomial import Poly


def sym_name(v):
    return v.replace("|", "__").replace("'", "_prime")


def to_sympy(f: Poly):
    syms = {v: sympy.Symbol(sym_name(v)) for v in f.vars}
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Integer(c)
        for v, k in zip(f.vars, e):
            if k:
                term *= syms[v] ** k
        expr += term
    return expr


def sympy_poly(expr, variables, p):
    gens = [sympy.Symbol(sym_name(v)) for v in variables]
    return sympy.Poly(expr, *gens, modulus=p) if gens else sympy.Poly(expr, sympy.Symbol("_z"), modulus=p)


def same_mod_p(f: Poly, expr, p) -> bool:
    variables = f.vars
    diff = sympy.expand(to_sympy(f) - expr)
    return sympy_poly(diff, variables, p).is_zero


def sympy_det_mod_p(matrix, p):
    m = sympy.Matrix([[to_sympy(x) for x in row] for row in matrix])
    return sympy.expand(m.det(method="berkowitz"))

"""Independent reference computations built on sympy, for cross-checking."""

from itertools import product

import sympy
from sympy.matrices.normalforms import hermite_normal_form

WEIGHTS = {"b1": 1, "b2": 2, "g": 1, "h": 1, "l1": 1, "l2": 2, "c1": 1, "c2": 2,
           "r1": 1, "r2": 1, "h1": 1, "h2": 1}
SYMS = {name: sympy.Symbol(name) for name in WEIGHTS}


def to_sympy(p):
    return sympy.expand(sympy.sympify(str(p).replace("^", "**"), locals=SYMS))


def weighted_degree(term, names):
    return sum(WEIGHTS[n] * e for n, e in zip(names, term))


def monomials(d, names):
    ranges = [range(d // WEIGHTS[n] + 1) for n in names]
    out = []
    for exps in product(*ranges):
        if weighted_degree(exps, names) == d:
            out.append(sympy.Mul(*(SYMS[n] ** e for n, e in zip(names, exps))))
    return out


def _column(expr, basis, names):
    poly = sympy.Poly(expr, *[SYMS[n] for n in names]) if expr != 0 else None
    col = [0] * len(basis)
    if poly is None:
        return col
    index = {sympy.Poly(m, *[SYMS[n] for n in names]).monoms()[0]: k for k, m in enumerate(basis)}
    for mono, c in poly.terms():
        col[index[mono]] = int(c)
    return col


def member(p, gens):
    """Homogeneous ideal membership by comparing Hermite forms of column lattices."""
    target = to_sympy(p)
    if target == 0:
        return True
    gens = [to_sympy(x) for x in gens]
    names = sorted({str(s) for e in [target, *gens] for s in e.free_symbols})
    d = sympy.Poly(target, *[SYMS[n] for n in names]).monoms()[0]
    d = weighted_degree(d, names)
    basis = monomials(d, names)
    cols = []
    for gen in gens:
        if gen == 0:
            continue
        gd = weighted_degree(sympy.Poly(gen, *[SYMS[n] for n in names]).monoms()[0], names)
        if gd > d:
            continue
        for m in monomials(d - gd, names):
            cols.append(_column(sympy.expand(m * gen), basis, names))
    t = _column(target, basis, names)
    if not cols:
        return False
    A = sympy.Matrix(cols).T
    return hermite_normal_form(A) == hermite_normal_form(A.row_join(sympy.Matrix(t)))


def symmetrize(expr, e1, e2):
    """Write a symmetric polynomial in r1, r2 in terms of e1 = r1 + r2, e2 = r1 r2."""
    r1, r2 = SYMS["r1"], SYMS["r2"]
    sym, rest, defs = sympy.polys.polyfuncs.symmetrize(expr, r1, r2, formal=True)
    assert rest == 0
    out = sym
    for s, v in defs:
        out = out.subs(s, e1 if v == r1 + r2 else e2)
    return sympy.expand(out)


def s_basis(r, j):
    """s_r^j in h, b1, b2 (E = V^dual) from the defining recursion."""
    h, b1, b2 = SYMS["h"], SYMS["b1"], SYMS["b2"]
    c1, c2 = -b1, b2
    prev, cur = 0, sympy.Integer(1)
    for k in range(j):
        prev, cur = cur, sympy.expand((h + k * c1) * cur + k * (r + 1 - k) * c2 * prev)
    return cur


def torus_subset_class(r, exponents):
    """Class of the torus-fixed monomials X^i Y^(r-i), i in ``exponents``, on P(Sym^r V^dual).

    Restricting to the maximal torus kills g; a fixed point with weight w_i has
    class prod_{j != i} (h + w_j).  Returns the s_r-basis coefficients (in b1, b2).
    """
    r1, r2, h = SYMS["r1"], SYMS["r2"], SYMS["h"]
    weights = [-(i * r1 + (r - i) * r2) for i in range(r + 1)]
    total = sum(sympy.Mul(*(h + w for j, w in enumerate(weights) if j != i)) for i in exponents)
    poly = sympy.Poly(sympy.expand(total), h)
    rest = sympy.expand(total)
    coeffs = [0] * (r + 1)
    for k in range(r, -1, -1):
        a = sympy.Poly(rest, h).coeff_monomial(h ** k)
        a = symmetrize(sympy.expand(a), SYMS["b1"], SYMS["b2"]) if a != 0 else 0
        coeffs[k] = a
        rest = sympy.expand(rest - expand_roots(a * s_basis(r, k)))
    assert rest == 0 and poly.degree() <= r
    return coeffs


def expand_roots(expr):
    return sympy.expand(expr.subs({SYMS["b1"]: SYMS["r1"] + SYMS["r2"], SYMS["b2"]: SYMS["r1"] * SYMS["r2"]}))

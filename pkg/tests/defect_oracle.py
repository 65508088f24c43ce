"""Independent sympy evaluation of the formal-solution defect F' + F (E/z + Q') - B F at z = 0."""

import sympy as sp

from conftest import Z, sym_matrix, sym_scalar


def laurent_sym(s):
    return sum((sym_scalar(s[k]) * Z**k for k in range(s.valuation, s.order + 1)), sp.Integer(0))


def valuation(expr):
    expr = sp.cancel(expr)
    if expr == 0:
        return sp.oo
    num, den = sp.fraction(expr)
    low = lambda e: min(m[0] for m in sp.Poly(e, Z).monoms())
    return low(num) - low(den)


def defect_order(S, fd):
    """Smallest valuation over the entries of the defect of the truncated formal solution."""
    p = S.p
    B = sym_matrix(S.B)
    F = sp.Matrix([[laurent_sym(fd.F[i][j]) for j in range(p)] for i in range(p)])
    worst = sp.oo
    for l in range(p):
        q = sum(sym_scalar(c) * Z**(-m) for m, c in enumerate(fd.q[l].c))
        col = F[:, l]
        res = col.diff(Z) + col * (sym_scalar(fd.E[l][l]) / Z + sp.diff(q, Z)) - B * col
        worst = min([worst] + [valuation(e) for e in res])
    return worst

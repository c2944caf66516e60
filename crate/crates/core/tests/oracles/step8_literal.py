# The closed form with the per-root term taken literally (no 1/Phi(e_i)
# normalization): sum over x1 | g_ell and roots e_i of psi of
#   -A_i * (F0(e_i) - 2 x1 F1(e_i)),  A_i = 1/psi'(e_i),
# scaled by ell^3 Delta' / deg g_{ell^2}.
import sympy as sp
from numfield_oracle import fpoly, cubic_trace, X, E


def literal(a, b, ell):
    fl = fpoly(ell, a, b).as_expr().subs(X, E)
    fm = fpoly(ell - 1, a, b).as_expr().subs(X, E)
    fp = fpoly(ell + 1, a, b).as_expr().subs(X, E)
    psi = sp.Poly(E**3 + a * E + b, E)
    F0 = sp.expand(fl**2 + 2 * E * fl * sp.diff(fl, E) - fm * fp * (3 * E**2 + a))
    F1 = sp.expand(fl * sp.diff(fl, E))
    g = fpoly(ell, a, b)
    d1 = g.degree()
    p1 = -sp.Rational(g.nth(d1 - 1), g.LC())
    dpsi = sp.diff(psi.as_expr(), E)
    t0 = cubic_trace(sp.rem(sp.Poly(F0, E), psi).as_expr(), dpsi, psi)
    t1 = cubic_trace(sp.rem(sp.Poly(F1, E), psi).as_expr(), dpsi, psi)
    raw = d1 * t0 - 2 * p1 * t1
    dp = 4 * a**3 + 27 * b**2
    return -sp.Rational(ell**3 * dp) * raw / (d1 * ell**2)


if __name__ == "__main__":
    for a, b in [(1, 1), (4, 4)]:
        print(a, b, literal(a, b, 5))

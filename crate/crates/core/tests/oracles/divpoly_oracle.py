# Division polynomials from the bivariate recursion over Q[A,B,X,Y],
# reducing Y^2 -> X^3 + A X + B only at the end.
import sympy as sp

A, B, X, Y = sp.symbols("A B X Y")
curve = X**3 + A * X + B
psi = {0: 0, 1: 1, 2: 2 * Y,
       3: 3 * X**4 + 6 * A * X**2 + 12 * B * X - A**2,
       4: 4 * Y * (X**6 + 5 * A * X**4 + 20 * B * X**3 - 5 * A**2 * X**2 - 4 * A * B * X - 8 * B**2 - A**3)}


def red(e):
    e = sp.expand(e)
    p = sp.Poly(e, Y)
    out = 0
    for (k,), c in p.terms():
        out += c * curve ** (k // 2) * Y ** (k % 2)
    return sp.expand(out)


def get(n):
    if n in psi:
        return psi[n]
    m = n // 2
    if n % 2:
        r = get(m + 2) * get(m) ** 3 - get(m - 1) * get(m + 1) ** 3
    else:
        r = sp.cancel(get(m) * (get(m + 2) * get(m - 1) ** 2 - get(m - 2) * get(m + 1) ** 2) / (2 * Y))
    psi[n] = red(r)
    return psi[n]


if __name__ == "__main__":
    f5 = sp.Poly(get(5), X)
    print(f5.as_expr())
    for n in range(5, 9):
        f = get(n) if n % 2 else sp.expand(get(n) / Y)
        print(n, sp.Poly(f, X).degree(), sp.Poly(f, X).LC())

"""Regenerates the cutoff-2 Lindbladian fixture in tests/test_fock.cpp.

Symbolic expansion of
  L[rho] = -i[H, rho] + kE (a rho a^dag - {a^dag a, rho}/2) + kA (a^dag rho a - {a a^dag, rho}/2)
with H = h a^dag a + f a^dag + conj(f) a on the truncated basis {|0>, |1>, |2>}.
"""
import sympy as sp

a = sp.Matrix([[0, 1, 0], [0, 0, sp.sqrt(2)], [0, 0, 0]])
ad = a.H
h = sp.Rational(7, 10)
f = sp.Rational(1, 5) - sp.I / 10
ke = sp.Rational(3, 10)
ka = sp.Rational(1, 10)
rho = sp.Matrix([
    [sp.Rational(1, 2), sp.Rational(1, 10) + sp.I / 20, sp.Rational(-1, 25)],
    [sp.Rational(1, 10) - sp.I / 20, sp.Rational(3, 10), sp.I / 50],
    [sp.Rational(-1, 25), -sp.I / 50, sp.Rational(1, 5)],
])
H = h * ad * a + f * ad + sp.conjugate(f) * a


def anti(x, y):
    return x * y + y * x


out = (-sp.I * (H * rho - rho * H)
       + ke * (a * rho * ad - anti(ad * a, rho) / 2)
       + ka * (ad * rho * a - anti(a * ad, rho) / 2))
out = out.applyfunc(sp.nsimplify).applyfunc(sp.expand)
for i in range(3):
    row = []
    for j in range(3):
        z = sp.N(out[i, j], 20)
        row.append("{%s, %s}" % (sp.re(z), sp.im(z)))
    print("    " + ", ".join(row) + ",")

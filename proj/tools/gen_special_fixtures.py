"""Regenerates the frozen special-function tables in tests/test_special.cpp."""
import mpmath as mp

mp.mp.dps = 30

EI_POINTS = [1e-6, 0.01, 0.3, 1.0, 2.5, 6.0, 15.0, 40.0, 120.0, 700.0]
ZETA_POINTS = [(1.0, 0.0), (1.5, 0.0), (0.3, 0.2), (1.333, 0.05), (1.05, 3.0),
               (2.0, -7.5), (11.0, 40.0), (4.0, 0.001), (1.01, 150.0), (60.0, -2.0)]


def fmt(x):
    return repr(float(x))


print("// x, Ei(x), e^{-x} Ei(x)")
for x in EI_POINTS:
    x = mp.mpf(x)
    ei = mp.ei(x)
    print("    {%s, %s, %s}," % (fmt(x), mp.nstr(ei, 20), mp.nstr(ei * mp.exp(-x), 20)))
print("// Re q, Im q, Re zeta(2, q), Im zeta(2, q)")
for re, im in ZETA_POINTS:
    z = mp.zeta(2, mp.mpc(re, im))
    print("    {%s, %s, %s, %s}," % (fmt(mp.mpf(re)), fmt(mp.mpf(im)), mp.nstr(z.real, 20),
                                     mp.nstr(z.imag, 20)))

"""Univariate steepest descent: endpoints beat oscillation.

The oscillatory integral int_0^1 f(x) exp(i w g(x)) dx reduces to two
endpoint contributions evaluated along complex descent paths, on which the
integrand decays like exp(-w p).  A handful of Gauss-Laguerre points then
buys an error of order w^-(2m+1): the MORE oscillatory the integral, the
better the method does.
"""

import cmath

import numpy as np

from nsdq import nsd_interval
from nsdq.specfun import cos_int, sin_int


def closed_form(omega):
    # int_0^1 exp(i w x)/(1+x) dx via cosine/sine integrals
    return cmath.exp(-1j * omega) * complex(
        cos_int(2 * omega) - cos_int(omega), sin_int(2 * omega) - sin_int(omega)
    )


f = lambda z: 1.0 / (1.0 + z)
g = lambda z: z
dg = lambda z: 1.0

print("int_0^1 exp(i w x)/(1+x) dx, descent rule vs closed form")
print(f"{'omega':>8} " + " ".join(f"{f'm={m}':>12}" for m in (1, 2, 3, 4)))
for omega in (50.0, 100.0, 200.0, 400.0, 800.0):
    errs = []
    exact = closed_form(omega)
    for m in (1, 2, 3, 4):
        got = nsd_interval(f, g, 0.0, 1.0, omega, m, dg=dg)
        errs.append(abs(got - exact))
    print(f"{omega:8.0f} " + " ".join(f"{e:12.2e}" for e in errs))

print()
print("Quadratic phase needs the p -> q^2 substitution (alpha = 2 endpoint):")
omega = 50.0
got = nsd_interval(lambda z: 1.0, lambda z: z * z, 0.0, 1.0, omega, 8,
                   dg=lambda z: 2.0 * z, alpha_a=2)
# reference from a dense direct quadrature of the short interval
xs = np.linspace(0.0, 1.0, 200001)
ref = np.trapezoid(np.exp(1j * omega * xs**2), xs)
print(f"  w={omega}: |descent - dense trapezoid| = {abs(got - ref):.2e}")

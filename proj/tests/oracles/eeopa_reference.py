# SPDX-License-Identifier: Apache-2.0
# Copyright (C) 2026 The eeopa Authors
"""Reference thresholds, effective capacities and energy efficiencies in
30-digit arithmetic (mpmath tanh-sinh quadrature on the exact marginals from
wishart_marginals.py, threshold by bisection on log(Lambda)). Independent of
the C++ quadrature and solver; its output is frozen into the unit tests."""
import os
import sys

import mpmath as mp

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from wishart_marginals import marginal  # noqa: E402

mp.mp.dps = 30
T_F = mp.mpf('1e-3')
BANDWIDTH = mp.mpf('1e6')


def density(M, Q, n):
    terms = [(k, a, mp.mpf(c.numerator) / c.denominator) for (k, a), c in marginal(M, Q, n - 1).items()]
    return lambda x: mp.fsum(c * x ** k * mp.exp(-a * x) for k, a, c in terms)


def gain_integral(f, lo, hi):
    """int_lo^hi f, decades below 1 in the log variable."""
    cuts = [lo]
    if lo < 1:
        d = mp.mpf(10) ** mp.ceil(mp.log10(lo))
        while d < 1:
            if d > lo:
                cuts.append(d)
            d *= 10
    cuts += [p for p in [1, 2, 5, 10, 20, 40, 80] if lo < p < hi] + [hi]
    total = mp.mpf(0)
    for a, b in zip(cuts, cuts[1:]):
        if b <= 1:
            total += mp.quad(lambda u: f(mp.exp(u)) * mp.exp(u), [mp.log(a), mp.log(b)])
        else:
            total += mp.quad(f, [a, b])
    return total


def constraint(lam, beta, p, upper):
    e = 1 / (beta + 1)
    return gain_integral(lambda x: mp.expm1(e * mp.log(x / lam)) / x * p(x), lam, upper)


def solve(beta, p, p_bar, upper):
    lo, hi = mp.log(mp.mpf('1e-8')), mp.log(upper)
    while constraint(mp.exp(lo), beta, p, upper) < p_bar:
        hi, lo = lo, lo - mp.log(mp.mpf('1e8'))
    for _ in range(120):
        mid = (lo + hi) / 2
        if constraint(mp.exp(mid), beta, p, upper) > p_bar:
            lo = mid
        else:
            hi = mid
    return mp.exp((lo + hi) / 2)


def log_e_eeopa(lam, beta, p, upper):
    e = beta / (beta + 1)
    below = gain_integral(p, mp.mpf('1e-30'), lam) if lam > mp.mpf('1e-30') else mp.mpf(0)
    return mp.log(below + gain_integral(lambda x: (x / lam) ** (-e) * p(x), lam, upper))


def log_e_apa(p_bar, beta, p, upper):
    return mp.log(gain_integral(lambda x: (1 + p_bar * x) ** (-beta) * p(x), mp.mpf('1e-30'), upper))


def point(M, Q, theta, p_bar):
    theta, p_bar = mp.mpf(theta), mp.mpf(p_bar)
    beta = theta * T_F * BANDWIDTH / mp.log(2)
    upper = mp.mpf(10 * (M + Q))
    lams, c_e, c_a = [], mp.mpf(0), mp.mpf(0)
    for n in range(1, M + 1):
        p = density(M, Q, n)
        lam = solve(beta, p, p_bar, upper)
        lams.append(lam)
        c_e += -log_e_eeopa(lam, beta, p, upper) / theta
        c_a += -log_e_apa(p_bar, beta, p, upper) / theta
    print('%dx%d theta=%s p_bar=%s' % (M, Q, mp.nstr(theta, 6), mp.nstr(p_bar, 6)))
    print('  thresholds', [mp.nstr(x, 15) for x in lams])
    print('  C_eeopa %s  C_apa %s' % (mp.nstr(c_e, 15), mp.nstr(c_a, 15)))
    print('  eta_eeopa %s  eta_apa %s' % (mp.nstr(c_e / (p_bar * M), 15), mp.nstr(c_a / (p_bar * M), 15)))


if __name__ == '__main__':
    p4 = density(4, 4, 4)
    beta = 1 / mp.log(2)
    print('4x4 group 4 constraint at Lambda=0.5, beta=1/ln2:', mp.nstr(constraint(mp.mpf('0.5'), beta, p4, 80), 15))
    point(4, 4, '1e-3', '0.1')
    point(4, 4, '0.1', '0.1')
    point(4, 4, '1e-5', '0.5')
    point(2, 2, '1e-3', '0.1')
    point(2, 3, '1e-3', '0.1')

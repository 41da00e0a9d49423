# SPDX-License-Identifier: Apache-2.0
# Copyright (C) 2026 The eeopa Authors
"""Exact marginals of the ordered eigenvalues of a complex central Wishart
matrix, by symbolic integration of the joint density in exact rational
exp-polynomial arithmetic. Prints each density and its values (50-digit
evaluation) at a few gains. Used to generate the frozen values in the unit
tests."""
from fractions import Fraction as F
from math import factorial
from collections import defaultdict
import math
from decimal import Decimal, getcontext

getcontext().prec = 60

def mul_poly(M, Q):
    poly = {tuple([Q - M] * M): F(1)}
    for i in range(M):
        for j in range(i + 1, M):
            for _ in range(2):
                new = defaultdict(F)
                for p, c in poly.items():
                    a = list(p); a[i] += 1; new[tuple(a)] += c
                    b = list(p); b[j] += 1; new[tuple(b)] -= c
                poly = {k: v for k, v in new.items() if v != 0}
    return poly

def integrate(terms, var, lo, hi):
    out = defaultdict(F)
    for (p, r), c in terms.items():
        k = p[var]; a = r[var]
        base_p = list(p); base_p[var] = 0
        base_r = list(r); base_r[var] = 0
        def at(bound, sign):
            if bound == 'inf':
                return
            if bound == 'zero':
                out[(tuple(base_p), tuple(base_r))] += sign * c * (-F(factorial(k), 1) / F(a) ** (k + 1))
                return
            idx = bound
            for j in range(k + 1):
                pp = list(base_p); pp[idx] += j
                rr = list(base_r); rr[idx] += a
                out[(tuple(pp), tuple(rr))] += sign * c * (-F(factorial(k), factorial(j)) / F(a) ** (k - j + 1))
        assert a > 0
        at(hi, +1); at(lo, -1)
    return {k: v for k, v in out.items() if v != 0}

def marginal(M, Q, n):
    K = 1
    for i in range(1, M + 1):
        K *= factorial(Q - i) * factorial(M - i)
    terms = {(p, tuple([1] * M)): c / K for p, c in mul_poly(M, Q).items()}
    for j in range(M - 1, n, -1):
        terms = integrate(terms, j, 'zero', n if j == n + 1 else j - 1)
    for j in range(0, n):
        terms = integrate(terms, j, n if j == n - 1 else j + 1, 'inf')
    res = defaultdict(F)
    for (p, r), c in terms.items():
        assert all(p[i] == 0 and r[i] == 0 for i in range(M) if i != n)
        res[(p[n], r[n])] += c
    return {k: v for k, v in sorted(res.items()) if v != 0}

def ev(res, x):
    x = Decimal(str(x))
    total = Decimal(0)
    for (k, a), c in res.items():
        total += Decimal(c.numerator) / Decimal(c.denominator) * (x ** k if k else Decimal(1)) * (-a * x).exp()
    return total

def norm(res):
    return sum(c * F(factorial(k)) / F(a) ** (k + 1) for (k, a), c in res.items())

if __name__ == '__main__':
    for M, Q in [(2, 2), (2, 3), (4, 4)]:
        for n in range(M):
            r = marginal(M, Q, n)
            print(f"M={M} Q={Q} n={n+1} norm={norm(r)}")
            by = defaultdict(dict)
            for (k, a), c in r.items():
                by[a][k] = c
            for a in sorted(by):
                print('   e^-%d:' % a, {k: str(v) for k, v in sorted(by[a].items())})
            for x in [0, 0.1, 0.5, 1, 2, 5]:
                print('   p(%g) = %.15e' % (x, ev(r, x)))

"""Independent reference implementations used only by the tests.

Nothing here imports from floppy, so agreement with the package is a
real cross-check rather than a restatement.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd

# ----------------------------------------------------------------------------
# eigenvalue sign counts through the characteristic polynomial


def charpoly(a: list[list[int]]) -> list[int]:
    """Coefficients of det(xI - A), constant term first (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [0] * n + [1]
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        for i in range(n):
            m[i][i] += coeffs[n - k + 1]
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        assert tr % k == 0
        coeffs[n - k] = -tr // k
        m = am
    return coeffs


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _deriv(p):
    return _trim([i * p[i] for i in range(1, len(p))] or [Fraction(0)])


def _divmod(p, q):
    p = [Fraction(x) for x in p]
    out = [Fraction(0)] * max(1, len(p) - len(q) + 1)
    while len(p) >= len(q) and any(p):
        f = p[-1] / q[-1]
        s = len(p) - len(q)
        out[s] = f
        for i, c in enumerate(q):
            p[s + i] -= f * c
        p = _trim(p[:-1]) if len(p) > 1 else p
    return out, _trim(p)


def _gcd(p, q):
    while any(q):
        _, r = _divmod(p, q)
        p, q = q, r
    return [x / p[-1] for x in p]


def _eval_sign(p, x):
    v = sum(Fraction(c) * x ** i for i, c in enumerate(p))
    return (v > 0) - (v < 0)


def _sign_at_inf(p):
    lead = p[-1]
    s = (lead > 0) - (lead < 0)
    return s


def _variations(signs):
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_positive_roots(p) -> int:
    """Distinct roots of p in (0, inf); p must not vanish at 0."""
    seq = [_trim([Fraction(c) for c in p]), _deriv([Fraction(c) for c in p])]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        _, r = _divmod(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append([-c for c in r])
    at0 = _variations([_eval_sign(s, 0) for s in seq])
    atinf = _variations([_sign_at_inf(s) for s in seq])
    return at0 - atinf


def positive_roots_with_multiplicity(p) -> int:
    """Roots in (0, inf) counted with multiplicity, via Yun's square-free split."""
    p = _trim([Fraction(c) for c in p])
    total = 0
    i = 1
    dp = _deriv(p)
    a = _gcd(p, dp)
    b, _ = _divmod(p, a)
    c, _ = _divmod(dp, a)
    d = [x - y for x, y in itertools.zip_longest(c, _deriv(b), fillvalue=Fraction(0))]
    while len(b) > 1:
        a = _gcd(b, _trim(d))
        if len(a) > 1:
            total += i * sturm_positive_roots(a)
        b, _ = _divmod(b, a)
        c, _ = _divmod(_trim(d), a)
        d = [x - y for x, y in itertools.zip_longest(c, _deriv(b), fillvalue=Fraction(0))]
        i += 1
    return total


def sturm_inertia(a: list[list[int]]) -> tuple[int, int, int]:
    p = charpoly(a)
    zero = next(i for i, c in enumerate(p) if c != 0)
    q = p[zero:]
    pos = positive_roots_with_multiplicity(q)
    qneg = [c if i % 2 == 0 else -c for i, c in enumerate(q)]
    neg = positive_roots_with_multiplicity(qneg)
    return pos, neg, zero


def random_symmetric(rng: random.Random, n: int, lo: int = -6, hi: int = 6) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = rng.randint(lo, hi)
    return a


# ----------------------------------------------------------------------------
# matrices with a prescribed kernel, and brute-force odd kernel search


def rational_nullspace(rows: list[list[int]], n: int) -> list[list[int]]:
    """Integer basis (not necessarily saturated) of {x : rows x = 0}."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    out = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in v])
    return out


def _det(m: list[list[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return int(det)


def is_saturated(basis: list[list[int]]) -> bool:
    """True when the integer span of ``basis`` is all integer points of its span."""
    k, n = len(basis), len(basis[0])
    g = 0
    for cols in itertools.combinations(range(n), k):
        g = gcd(g, _det([[b[c] for c in cols] for b in basis]))
    return g == 1


def matrix_with_kernel(rng: random.Random, n: int, kernel: list[list[int]]) -> list[list[int]]:
    """A symmetric integer matrix whose rational kernel is exactly span(kernel)."""
    comp = rational_nullspace(kernel, n) if kernel else [[int(i == j) for j in range(n)] for i in range(n)]
    r = len(comp)
    while True:
        s = random_symmetric(rng, r, -3, 3)
        if r == 0 or _det(s) != 0:
            break
    # M = A^T S A with the rows of A spanning the orthogonal complement of the kernel
    return [[sum(comp[p][i] * s[p][q] * comp[q][j] for p in range(r) for q in range(r)) for j in range(n)]
            for i in range(n)]


def brute_odd_kernel(m: list[list[int]], bound: int) -> list[int] | None:
    """Search every vector with odd entries in [-bound, bound]."""
    n = len(m)
    odds = [x for x in range(-bound, bound + 1) if x % 2]
    for v in itertools.product(odds, repeat=n):
        if all(sum(m[i][j] * v[j] for j in range(n)) == 0 for i in range(n)):
            return list(v)
    return None


# ----------------------------------------------------------------------------
# quadratic refinements on Z/4, straight from the definitions


def lf(a: int, b: int) -> Fraction:
    x = Fraction(-a * b, 4)
    return x - (x.numerator // x.denominator)


def qf(value: Fraction, a: int) -> Fraction:
    x = a * a * value
    return x - (x.numerator // x.denominator)

"""The region pairing matrices and exact linear algebra on them.

Matrices are stored doubled (``entries2`` holds 2M) so every entry is an
integer; inertia, kernels and the determinant test are insensitive to
the factor or already phrased for 2M.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Mapping, Sequence

from .diagram import RegionProfile

Matrix = tuple[tuple[int, ...], ...]


class PairingError(ValueError):
    pass


@dataclass(frozen=True)
class PairingMatrix:
    side: str
    order: tuple[str, ...]
    entries2: Matrix

    @property
    def size(self) -> int:
        return len(self.order)

    def halves(self) -> list[list[Fraction]]:
        """The matrix M itself, with half-integer entries."""
        return [[Fraction(x, 2) for x in row] for row in self.entries2]


@dataclass(frozen=True)
class InertiaResult:
    sigma_plus: int
    sigma_minus: int
    eta: int


def _as_rows(m) -> Matrix:
    if isinstance(m, PairingMatrix):
        return m.entries2
    return tuple(tuple(int(x) for x in row) for row in m)


def build_matrix(profiles: Sequence[RegionProfile],
                 shared: Mapping[tuple[str, str], tuple[int | None, int | None]],
                 k: int, side: str) -> PairingMatrix:
    """Assemble 2M for one side from region profiles and shared corner counts."""
    rel = [p for p in profiles if p.side == side and p.relevant]
    for (a, b), v in shared.items():
        if shared.get((b, a)) != v:
            raise PairingError(f"shared corner table is not symmetric at ({a}, {b})")
    order = tuple(p.face for p in rel)
    rows = []
    for p in rel:
        row = []
        for q in rel:
            if p.face == q.face:
                row.append(-4 * p.chi + p.s + 4 * p.p + 4 * p.iota + 2 * p.O)
                continue
            non_cross, cross = shared.get((p.face, q.face), (0, 0))
            if k % 2:
                total = non_cross + (cross or 0)
                row.append(total)
            else:
                if cross is None:
                    raise PairingError(f"k is even and corners shared by {p.face}, {q.face} lack w flags")
                row.append(non_cross - cross)
        rows.append(tuple(row))
    return PairingMatrix(side, order, tuple(rows))


def inertia(mtx) -> InertiaResult:
    """Exact inertia by symmetric congruence over the rationals.

    Pivot on the first nonzero diagonal entry of the active block; when
    the diagonal vanishes but some entry does not, split off the 2x2
    hyperbolic block it spans.
    """
    a = [[Fraction(x) for x in row] for row in _as_rows(mtx)]
    n = len(a)
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is not None:
            d = a[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            active.remove(piv)
            for i in active:
                f = a[i][piv] / d
                if f:
                    for j in active:
                        a[i][j] -= f * a[piv][j]
            continue
        pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        # replace e_i by e_i + e_j: the new diagonal entry is 2 a_ij != 0
        for t in active:
            a[i][t] += a[j][t]
        for t in active:
            a[t][i] += a[t][j]
        # a[i][i] is now nonzero; eliminate with it, then j is again pivotable
        d = a[i][i]
        pos += d > 0
        neg += d < 0
        active.remove(i)
        for r in active:
            f = a[r][i] / d
            if f:
                for c in active:
                    a[r][c] -= f * a[i][c]
        dj = a[j][j]
        # the pair spans a hyperbolic plane, so the companion pivot has the opposite sign
        pos += dj > 0
        neg += dj < 0
        active.remove(j)
        for r in active:
            f = a[r][j] / dj
            if f:
                for c in active:
                    a[r][c] -= f * a[j][c]
    return InertiaResult(pos, neg, n - pos - neg)


def integer_kernel(mtx) -> list[list[int]]:
    """A basis of the lattice of integer vectors x with A x = 0.

    Column reduction A U = H with U unimodular (Euclid column steps); the
    columns of U beyond the last pivot span the kernel lattice.
    """
    A = [list(r) for r in _as_rows(mtx)]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(dst: int, src: int, f: int) -> None:
        # column dst += f * column src
        for r in A:
            r[dst] += f * r[src]
        for r in U:
            r[dst] += f * r[src]

    def swap(c1: int, c2: int) -> None:
        for r in A:
            r[c1], r[c2] = r[c2], r[c1]
        for r in U:
            r[c1], r[c2] = r[c2], r[c1]

    piv = 0
    for row in range(m):
        if piv >= n:
            break
        while True:
            nz = [c for c in range(piv, n) if A[row][c] != 0]
            if not nz:
                break
            c0 = min(nz, key=lambda c: abs(A[row][c]))
            swap(piv, c0)
            done = True
            for c in range(piv + 1, n):
                if A[row][c]:
                    col_op(c, piv, -(A[row][c] // A[row][piv]))
                    if A[row][c]:
                        done = False
            if done:
                break
        if A[row][piv] != 0:
            piv += 1
    return [[U[r][c] for r in range(n)] for c in range(piv, n)]


def _gf2_solve(basis: list[list[int]], target: list[int]) -> list[int] | None:
    """Coefficients c in {0,1} with sum c_i basis_i = target mod 2, or None."""
    nb = len(basis)
    n = len(target)
    # augmented rows: one equation per coordinate
    rows = [[basis[j][i] & 1 for j in range(nb)] + [target[i] & 1] for i in range(n)]
    pivots = []
    r = 0
    for c in range(nb):
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[nb] and not any(row[:nb]) for row in rows):
        return None
    sol = [0] * nb
    for i, c in enumerate(pivots):
        sol[c] = rows[i][nb]
    return sol


def odd_kernel_exists(mtx) -> tuple[bool, list[int] | None]:
    """Whether some integer kernel vector has all entries odd, with a witness."""
    rows = _as_rows(mtx)
    n = len(rows)
    if n == 0:
        return True, []
    basis = integer_kernel(rows)
    coeffs = _gf2_solve(basis, [1] * n)
    if coeffs is None:
        return False, None
    v = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(n)]
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]  # g is odd since every entry is odd
    return True, v


def determinant(mtx) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in _as_rows(mtx)]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_power_square(mtx, exponent: int) -> bool:
    """Is |det| = b^2 * 2^exponent for some integer b?"""
    D = abs(determinant(mtx))
    if D == 0:
        return True
    v = 0
    while D % 2 == 0:
        D //= 2
        v += 1
    if v < exponent or (v - exponent) % 2:
        return False
    return isqrt(D) ** 2 == D

"""Independent oracle implementations for the test suite.

Everything in here recomputes results by a different route than the
package (textbook eliminations, brute-force enumeration, closed-form
counts) and must stay free of kumsyz internals beyond plain data.
"""

from fractions import Fraction
from math import comb


def naive_rank_modp(rows, p):
    """Textbook Gaussian elimination over F_p, row-major pivot scan."""
    m = [list(int(x) % p for x in r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][c] % p:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def bareiss_rank(rows):
    """Fraction-free (Bareiss) elimination over the integers/rationals."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = Fraction(1)
    for c in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, nrows):
            for cc in range(c + 1, ncols):
                m[r][cc] = (m[rank][c] * m[r][cc]
                            - m[r][c] * m[rank][cc]) / prev
            m[r][c] = Fraction(0)
        prev = m[rank][c]
        rank += 1
        if rank == nrows:
            break
    return rank


def matmul_object_mod(A, B, p):
    """Schoolbook integer matrix product mod p."""
    m, k = len(A), len(A[0]) if A else 0
    n = len(B[0]) if B else 0
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            s = 0
            for t in range(k):
                s += int(A[i][t]) * int(B[t][j])
            out[i][j] = s % p
    return out


def brute_curve_points(a, b, p):
    """All affine points of y^2 = x^3 + ax + b over F_p plus 1 for infinity."""
    pts = 1
    for x in range(p):
        for y in range(p):
            if (y * y - (x ** 3 + a * x + b)) % p == 0:
                pts += 1
    return pts


def minor(rows, I, J, p):
    """Determinant of the (I, J) submatrix by Laplace expansion, mod p."""
    sub = [[rows[i][j] for j in J] for i in I]

    def det(mat):
        n = len(mat)
        if n == 0:
            return 1
        if n == 1:
            return mat[0][0] % p
        s = 0
        for j in range(n):
            if mat[0][j] % p == 0:
                continue
            rest = [r[:j] + r[j + 1:] for r in mat[1:]]
            term = mat[0][j] * det(rest)
            s += -term if j % 2 else term
        return s % p

    return det(sub)


# closed-form dimension counts


def plus_dim(degrees, k):
    """h^0((A^2k))/2 + 2^(g-1) for per-factor polarization degrees."""
    g = len(degrees)
    h0 = 1
    for d in degrees:
        h0 *= 2 * k * d
    return h0 // 2 + 2 ** (g - 1)


def ambient_dim(degrees, k):
    h0 = 1
    for d in degrees:
        h0 *= k * d
    return h0


def sym_dim(n, k):
    return comb(n + k - 1, k)


# reference Betti tables


def hypersurface_betti(k0):
    """Principal ideal with one generator of degree k0."""
    return {(0, 0): 1, (1, k0): 1}


def ci_22_betti():
    """Complete intersection of two quadrics (Koszul resolution)."""
    return {(0, 0): 1, (1, 2): 2, (2, 4): 1}


def elliptic_quintic_betti():
    return {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}


def twisted_cubic_betti():
    return {(0, 0): 1, (1, 2): 3, (2, 3): 2}

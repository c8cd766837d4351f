"""Elliptic curves y^2 = x^3 + ax + b with exact group law, divisors,
Riemann-Roch section spaces, section multiplication and the inversion
involution.

Sections are stored in the normal form (u(x) + v(x)*y) / d(x) with u, v, d
polynomials over the base field; d is a monic product of (x - xi) factors
determined by the positive affine part of the divisor.  Every function with
poles only at the origin O has d = 1, deg u <= n/2 and deg v <= (n-3)/2
where n is the pole order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (ConsistencyError, InvalidPointError,
                     BundleNotSymmetricError)
from .exactcore import (Matrix, kernel_basis, solve_mod)

# ---------------------------------------------------------------------------
# dense polynomials, coefficient lists low -> high, over a field descriptor


def pstrip(F, c):
    c = list(c)
    while c and c[-1] == F.zero:
        c.pop()
    return c


def pdeg(c):
    return len(c) - 1


def padd(F, a, b):
    n = max(len(a), len(b))
    out = [F.zero] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = F.add(out[i], x)
    return pstrip(F, out)


def psub(F, a, b):
    return padd(F, a, [F.neg(x) for x in b])


def pscale(F, a, s):
    if s == F.zero:
        return []
    return pstrip(F, [F.mul(x, s) for x in a])


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == F.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return pstrip(F, out)


def peval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


# truncated power series, plain lists of fixed length


def strunc(F, a, n):
    a = list(a[:n])
    return a + [F.zero] * (n - len(a))


def smul(F, a, b, n):
    out = [F.zero] * n
    for i, x in enumerate(a[:n]):
        if x == F.zero:
            continue
        for j, y in enumerate(b[:n - i]):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def sinv(F, a, n):
    if a[0] == F.zero:
        raise ZeroDivisionError("series has no inverse")
    inv0 = F.inv(a[0])
    out = [F.zero] * n
    out[0] = inv0
    for k in range(1, n):
        s = F.zero
        for i in range(1, k + 1):
            if i < len(a):
                s = F.add(s, F.mul(a[i], out[k - i]))
        out[k] = F.neg(F.mul(inv0, s))
    return out


def s_of_poly(F, poly, xs, n):
    """Compose a polynomial with a series (Horner)."""
    acc = [F.zero] * n
    for c in reversed(poly):
        acc = smul(F, acc, xs, n)
        acc[0] = F.add(acc[0], c)
    return acc


# ---------------------------------------------------------------------------
# points and curves


@dataclass(frozen=True)
class Point:
    x: object = None
    y: object = None
    infinity: bool = False

    def sort_key(self):
        if self.infinity:
            return (0, 0, 0)
        return (1, self.x, self.y)

    def __repr__(self):
        return "O" if self.infinity else f"({self.x}, {self.y})"


def sqrt_mod(a: int, p: int):
    """A square root of a mod p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) == 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class Curve:
    """Short Weierstrass curve over a prime field or the rationals."""

    def __init__(self, F, a, b):
        self.field = F
        self.a = F.normalize(a)
        self.b = F.normalize(b)
        four_a3 = F.mul(F.normalize(4), F.mul(self.a, F.mul(self.a, self.a)))
        disc = F.add(four_a3, F.mul(F.normalize(27), F.mul(self.b, self.b)))
        if disc == F.zero:
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")
        self._O = Point(infinity=True)

    @property
    def O(self) -> Point:
        return self._O

    def rhs(self, x):
        F = self.field
        return F.add(F.mul(x, F.mul(x, x)), F.add(F.mul(self.a, x), self.b))

    def rhs_poly(self):
        F = self.field
        return pstrip(F, [self.b, self.a, F.zero, F.one])

    def is_on(self, P: Point) -> bool:
        if P.infinity:
            return True
        F = self.field
        return F.mul(P.y, P.y) == self.rhs(P.x)

    def point(self, x, y) -> Point:
        F = self.field
        P = Point(F.normalize(x), F.normalize(y))
        if not self.is_on(P):
            raise InvalidPointError("invalid point")
        return P

    def neg(self, P: Point) -> Point:
        if P.infinity:
            return P
        return Point(P.x, self.field.neg(P.y))

    def add(self, P: Point, Q: Point) -> Point:
        if not (self.is_on(P) and self.is_on(Q)):
            raise InvalidPointError("invalid point")
        F = self.field
        if P.infinity:
            return Q
        if Q.infinity:
            return P
        if P.x == Q.x:
            if F.add(P.y, Q.y) == F.zero:
                return self.O
            num = F.add(F.mul(F.normalize(3), F.mul(P.x, P.x)), self.a)
            lam = F.div(num, F.mul(F.normalize(2), P.y))
        else:
            lam = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x))
        x3 = F.sub(F.sub(F.mul(lam, lam), P.x), Q.x)
        y3 = F.sub(F.mul(lam, F.sub(P.x, x3)), P.y)
        return Point(x3, y3)

    def mul(self, n: int, P: Point) -> Point:
        if n < 0:
            return self.mul(-n, self.neg(P))
        R = self.O
        Q = P
        while n:
            if n & 1:
                R = self.add(R, Q)
            Q = self.add(Q, Q)
            n >>= 1
        return R

    def points(self) -> list[Point]:
        """All rational points, O first then (x, y) in ascending order."""
        if self.field.kind != "prime":
            raise ValueError("point enumeration needs a finite field")
        p = self.field.p
        pts = [self.O]
        for x in range(p):
            r = self.rhs(x)
            y = sqrt_mod(r, p)
            if y is None:
                continue
            if y == 0:
                pts.append(Point(x, 0))
            else:
                y0, y1 = sorted((y, p - y))
                pts.append(Point(x, y0))
                pts.append(Point(x, y1))
        return pts

    def random_point(self, rng) -> Point:
        p = self.field.p
        while True:
            x = int(rng.integers(0, p))
            y = sqrt_mod(self.rhs(x), p)
            if y is not None:
                if y and rng.integers(0, 2):
                    y = p - y
                return Point(x, y)

    def __eq__(self, other):
        return (isinstance(other, Curve) and other.field == self.field
                and other.a == self.a and other.b == self.b)

    def __hash__(self):
        return hash(("Curve", self.field, self.a, self.b))

    def __repr__(self):
        return f"Curve(y^2 = x^3 + {self.a}x + {self.b} over {self.field!r})"


# ---------------------------------------------------------------------------
# divisors


@dataclass(frozen=True)
class Divisor:
    curve: Curve
    items: tuple  # ((Point, mult), ...) merged, sorted, nonzero

    @staticmethod
    def of(curve: Curve, pairs) -> "Divisor":
        acc: dict[Point, int] = {}
        for P, m in pairs:
            if not curve.is_on(P):
                raise InvalidPointError("invalid point")
            acc[P] = acc.get(P, 0) + int(m)
        items = tuple(sorted(((P, m) for P, m in acc.items() if m != 0),
                             key=lambda t: t[0].sort_key()))
        return Divisor(curve, items)

    @staticmethod
    def at_origin(curve: Curve, n: int) -> "Divisor":
        return Divisor.of(curve, [(curve.O, n)])

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.items)

    def at(self, P: Point) -> int:
        for Q, m in self.items:
            if Q == P:
                return m
        return 0

    def __add__(self, other: "Divisor") -> "Divisor":
        assert other.curve == self.curve
        return Divisor.of(self.curve, list(self.items) + list(other.items))

    def __neg__(self) -> "Divisor":
        return Divisor(self.curve, tuple((P, -m) for P, m in self.items))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def scaled(self, k: int) -> "Divisor":
        return Divisor.of(self.curve, [(P, m * k) for P, m in self.items])

    def involute(self) -> "Divisor":
        C = self.curve
        return Divisor.of(C, [(C.neg(P), m) for P, m in self.items])

    @property
    def is_symmetric(self) -> bool:
        return self.involute() == self

    def sum_point(self) -> Point:
        """The group-law sum of the divisor, i.e. its class in Pic^0 + deg."""
        C = self.curve
        S = C.O
        for P, m in self.items:
            S = C.add(S, C.mul(m, P))
        return S

    def canonical(self) -> "Divisor":
        """The linearly equivalent divisor (deg-1)(O) + (S)."""
        C = self.curve
        n = self.degree
        S = self.sum_point()
        if n == 0:
            if S.infinity:
                return Divisor.of(C, [])
            return Divisor.of(C, [(S, 1), (C.O, -1)])
        return Divisor.of(C, [(C.O, n - 1), (S, 1)])

    def __repr__(self):
        if not self.items:
            return "Div(0)"
        return "Div(" + " + ".join(f"{m}*{P}" for P, m in self.items) + ")"


# ---------------------------------------------------------------------------
# local expansions


def local_expansion(curve: Curve, Q: Point, n: int):
    """Series (x(t), y(t)) at the affine point Q to n terms.

    The parameter is t = x - xQ when yQ != 0 and t = y at 2-torsion.
    """
    F = curve.field
    if Q.infinity:
        raise ValueError("expansion at O not supported")
    if n <= 0:
        return [], []
    if Q.y != F.zero:
        xs = strunc(F, [Q.x, F.one], n)
        fs = s_of_poly(F, curve.rhs_poly(), xs, n)
        ys = [F.zero] * n
        ys[0] = Q.y
        inv2y = F.inv(F.mul(F.normalize(2), Q.y))
        for k in range(1, n):
            s = fs[k]
            for i in range(1, k):
                s = F.sub(s, F.mul(ys[i], ys[k - i]))
            ys[k] = F.mul(s, inv2y)
        return xs, ys
    # 2-torsion: t = y, x solves rhs(x) = t^2, simple root of rhs
    ys = [F.zero] * n
    if n >= 2:
        ys[1] = F.one
    rhsp = curve.rhs_poly()
    drhs = pstrip(F, [F.mul(F.normalize(i), c) for i, c in enumerate(rhsp)][1:])
    xs = [Q.x] + [F.zero] * (n - 1)
    prec = 1
    t2 = [F.zero] * n
    if n >= 3:
        t2[2] = F.one
    while prec < n:
        prec = min(2 * prec, n)
        g = s_of_poly(F, rhsp, xs, prec)
        g = [F.sub(a, b) for a, b in zip(g, t2[:prec])]
        gp = s_of_poly(F, drhs, xs, prec)
        corr = smul(F, g, sinv(F, gp, prec), prec)
        xs = [F.sub(a, b) for a, b in zip(strunc(F, xs, prec), corr)]
        xs = strunc(F, xs, n)
    return strunc(F, xs, n), ys


# ---------------------------------------------------------------------------
# section spaces


@dataclass(frozen=True)
class SectionSpace:
    """Basis of L(D) = { f : div(f) + D >= 0 } on an elliptic curve."""

    curve: Curve
    divisor: Divisor
    denom: tuple          # monic poly in x; functions are (u + v*y)/denom
    pole_order: int       # numerators live in L(pole_order * O)
    basis_u: tuple        # per-basis-vector u polynomials
    basis_v: tuple
    parity: tuple | None  # normalized involution eigenvalues, when known

    @property
    def dimension(self) -> int:
        return len(self.basis_u)

    def function(self, j) -> tuple:
        return (self.basis_u[j], self.basis_v[j], self.denom)

    def combo(self, coeffs) -> tuple:
        """(u, v, denom) of a linear combination of basis vectors."""
        F = self.curve.field
        u: list = []
        v: list = []
        for c, bu, bv in zip(coeffs, self.basis_u, self.basis_v):
            c = F.normalize(c)
            if c == F.zero:
                continue
            u = padd(F, u, pscale(F, list(bu), c))
            v = padd(F, v, pscale(F, list(bv), c))
        return (u, v, self.denom)


def _ambient_monomials(F, M: int):
    """Monomial basis of L(M*O): x^i (2i <= M) then x^i*y (2i+3 <= M)."""
    mons = []
    for i in range(M // 2 + 1):
        u = [F.zero] * i + [F.one]
        mons.append((u, []))
    for i in range((M - 3) // 2 + 1):
        v = [F.zero] * i + [F.one]
        mons.append(([], v))
    return mons


def _kernel_columns(F, rows, ncols):
    """Kernel of the condition matrix, as a list of coefficient columns."""
    if not rows:
        return [[F.one if i == j else F.zero for i in range(ncols)]
                for j in range(ncols)]
    M = Matrix.from_rows(F, rows)
    K = kernel_basis(M)
    return [[K[i, j] for i in range(ncols)] for j in range(K.ncols)]


def rr_basis(curve: Curve, D: Divisor) -> SectionSpace:
    """Riemann-Roch space of D; dimension equals deg D when deg D >= 1."""
    F = curve.field
    if D.curve != curve:
        raise ValueError("divisor lives on a different curve")
    if D.degree < 0:
        return SectionSpace(curve, D, (F.one,), -1, (), (), ())

    # clear positive affine part with powers of (x - xi)
    ex: dict = {}
    reps: dict = {}
    for P, m in D.items:
        if P.infinity or m <= 0:
            continue
        e = m if P.y != F.zero else (m + 1) // 2
        if P.x not in ex or e > ex[P.x]:
            ex[P.x] = e
        reps[P.x] = P
    denom = [F.one]
    shift = {}
    for xi in sorted(ex, key=lambda v: (str(type(v)), v)):
        e = ex[xi]
        for _ in range(e):
            denom = pmul(F, denom, [F.neg(xi), F.one])
        P = reps[xi]
        if P.y == F.zero:
            shift[P] = shift.get(P, 0) - 2 * e
        else:
            nP = curve.neg(P)
            shift[P] = shift.get(P, 0) - e
            shift[nP] = shift.get(nP, 0) - e
        shift[curve.O] = shift.get(curve.O, 0) + 2 * e
    Dp = D + Divisor.of(curve, list(shift.items()))

    M = Dp.at(curve.O)
    if M < 0:
        return SectionSpace(curve, D, tuple(denom), -1, (), (), ())
    mons = _ambient_monomials(F, M)

    conditions = []
    for Q, m in Dp.items:
        if Q.infinity or m >= 0:
            continue
        nQ = -m
        xs, ys = local_expansion(curve, Q, nQ)
        max_deg = 0
        for u, v in mons:
            max_deg = max(max_deg, pdeg(u), pdeg(v))
        xpow = [F.zero] * nQ
        xpow[0] = F.one
        xpows = [xpow]
        for _ in range(max_deg + 1):
            xpows.append(smul(F, xpows[-1], xs, nQ))
        for k in range(nQ):
            row = []
            for u, v in mons:
                s = F.zero
                for i, c in enumerate(u):
                    if c != F.zero:
                        s = F.add(s, F.mul(c, xpows[i][k]))
                if v:
                    vy = [F.zero] * nQ
                    for i, c in enumerate(v):
                        if c != F.zero:
                            vy = [F.add(a, F.mul(c, b))
                                  for a, b in zip(vy, xpows[i])]
                    vy = smul(F, vy, ys, nQ)
                    s = F.add(s, vy[k])
                row.append(s)
            conditions.append(row)

    cols = _kernel_columns(F, conditions, len(mons))
    basis_u = []
    basis_v = []
    for col in cols:
        u: list = []
        v: list = []
        for c, (mu, mv) in zip(col, mons):
            if c == F.zero:
                continue
            if mu:
                u = padd(F, u, pscale(F, mu, c))
            if mv:
                v = padd(F, v, pscale(F, mv, c))
        basis_u.append(tuple(u))
        basis_v.append(tuple(v))

    if D.degree >= 1 and len(basis_u) != D.degree:
        raise ConsistencyError(
            f"Riemann-Roch violation: dim {len(basis_u)} != deg {D.degree}")

    parity = None
    if not conditions and pdeg(denom) < 1:
        # pure n*O case: monomials are eigenvectors of the normalized action
        sigma = 1 if D.degree % 2 == 0 else -1
        parity = tuple(sigma * (-1 if mv else 1) for _, mv in mons)
    return SectionSpace(curve, D, tuple(denom), M,
                        tuple(basis_u), tuple(basis_v), parity)


# ---------------------------------------------------------------------------
# expressing functions in a section-space basis


class BasisSolver:
    """Solves (U + V*y)/dprod = sum_j c_j (u_j + v_j*y)/denom_T exactly.

    Comparing the y-free and y-parts as polynomial identities:
        U * denom_T = dprod * sum c_j u_j,
        V * denom_T = dprod * sum c_j v_j.
    """

    def __init__(self, target: SectionSpace, dprod):
        F = target.curve.field
        self.F = F
        self.target = target
        self.dprod = list(dprod)
        self.cols_u = [pmul(F, self.dprod, list(u)) for u in target.basis_u]
        self.cols_v = [pmul(F, self.dprod, list(v)) for v in target.basis_v]

    def solve(self, numerators) -> list[list]:
        """numerators: list of (U, V) pairs; returns coefficient vectors."""
        F = self.F
        dT = list(self.target.denom)
        rhs_u = [pmul(F, U, dT) for U, _ in numerators]
        rhs_v = [pmul(F, V, dT) for _, V in numerators]
        nu = max([len(c) for c in self.cols_u + rhs_u] + [1])
        nv = max([len(c) for c in self.cols_v + rhs_v] + [1])
        dim = self.target.dimension
        nrhs = len(numerators)

        def padcol(c, n):
            return list(c) + [F.zero] * (n - len(c))

        A = [[F.zero] * dim for _ in range(nu + nv)]
        for j in range(dim):
            cu = padcol(self.cols_u[j], nu)
            cv = padcol(self.cols_v[j], nv)
            for i in range(nu):
                A[i][j] = cu[i]
            for i in range(nv):
                A[nu + i][j] = cv[i]
        B = [[F.zero] * nrhs for _ in range(nu + nv)]
        for k in range(nrhs):
            bu = padcol(rhs_u[k], nu)
            bv = padcol(rhs_v[k], nv)
            for i in range(nu):
                B[i][k] = bu[i]
            for i in range(nv):
                B[nu + i][k] = bv[i]

        if F.kind == "prime":
            Anp = np.array(A, dtype=np.int64)
            Bnp = np.array(B, dtype=np.int64)
            try:
                X = solve_mod(Anp, Bnp, F.p)
            except ValueError as e:
                raise ConsistencyError(f"product left the target space: {e}")
            return [[int(X[j, k]) for j in range(dim)] for k in range(nrhs)]
        from .exactcore import rref_frac
        from fractions import Fraction
        aug = [row + brow for row, brow in zip(A, B)]
        pivs, rows = rref_frac(aug)
        X = [[Fraction(0)] * nrhs for _ in range(dim)]
        for r, c in enumerate(pivs):
            if c >= dim:
                raise ConsistencyError("product left the target space")
            for k in range(nrhs):
                X[c][k] = rows[r][dim + k]
        return [[X[j][k] for j in range(dim)] for k in range(nrhs)]


def structure_table(S1: SectionSpace, S2: SectionSpace, T: SectionSpace):
    """Structure constants of L(D1) x L(D2) -> L(D1 + D2).

    Returns a (dim T, dim S1, dim S2) int64 array over a prime field, or a
    nested list of Fractions over the rationals.
    """
    F = S1.curve.field
    curve = S1.curve
    fpoly = curve.rhs_poly()
    dprod = pmul(F, list(S1.denom), list(S2.denom))
    solver = BasisSolver(T, dprod)
    nums = []
    for i in range(S1.dimension):
        u1, v1 = list(S1.basis_u[i]), list(S1.basis_v[i])
        for j in range(S2.dimension):
            u2, v2 = list(S2.basis_u[j]), list(S2.basis_v[j])
            U = padd(F, pmul(F, u1, u2), pmul(F, pmul(F, v1, v2), fpoly))
            V = padd(F, pmul(F, u1, v2), pmul(F, v1, u2))
            nums.append((U, V))
    coeffs = solver.solve(nums)
    d1, d2, dT = S1.dimension, S2.dimension, T.dimension
    if F.kind == "prime":
        tab = np.zeros((dT, d1, d2), dtype=np.int64)
        k = 0
        for i in range(d1):
            for j in range(d2):
                tab[:, i, j] = coeffs[k]
                k += 1
        return tab
    tab = [[[F.zero] * d2 for _ in range(d1)] for _ in range(dT)]
    k = 0
    for i in range(d1):
        for j in range(d2):
            for t in range(dT):
                tab[t][i][j] = coeffs[k][t]
            k += 1
    return tab


@dataclass(frozen=True)
class Section:
    space: SectionSpace
    coeffs: tuple


def mult_sections(f: Section, g: Section,
                  target: SectionSpace | None = None) -> Section:
    """Product of two sections expressed in the basis of L(D1 + D2)."""
    S1, S2 = f.space, g.space
    curve = S1.curve
    F = curve.field
    if target is None:
        target = rr_basis(curve, S1.divisor + S2.divisor)
    u1, v1, _ = S1.combo(f.coeffs)
    u2, v2, _ = S2.combo(g.coeffs)
    fpoly = curve.rhs_poly()
    U = padd(F, pmul(F, u1, u2), pmul(F, pmul(F, v1, v2), fpoly))
    V = padd(F, pmul(F, u1, v2), pmul(F, v1, u2))
    dprod = pmul(F, list(S1.denom), list(S2.denom))
    solver = BasisSolver(target, dprod)
    coeffs = solver.solve([(U, V)])[0]
    return Section(target, tuple(coeffs))


# ---------------------------------------------------------------------------
# the inversion involution on a section space


def involution_matrix(S: SectionSpace) -> Matrix:
    """Matrix of the normalized involution f -> sigma * (f o i) on the basis.

    The sign sigma = (-1)^deg makes the induced action on the fiber at the
    origin equal +1; requires a symmetric divisor.
    """
    if not S.divisor.is_symmetric:
        raise BundleNotSymmetricError("bundle not symmetric")
    F = S.curve.field
    sigma = F.one if S.divisor.degree % 2 == 0 else F.neg(F.one)
    solver = BasisSolver(S, list(S.denom))
    nums = []
    for j in range(S.dimension):
        u = pscale(F, list(S.basis_u[j]), sigma)
        v = pscale(F, list(S.basis_v[j]), F.neg(sigma))
        nums.append((u, v))
    cols = solver.solve(nums)
    return Matrix.from_rows(F, [[cols[j][i] for j in range(S.dimension)]
                                for i in range(S.dimension)])


def parity_split(S: SectionSpace) -> tuple[SectionSpace, SectionSpace]:
    """Eigenbases of the normalized involution (+1 part, -1 part)."""
    F = S.curve.field
    M = involution_matrix(S)
    I = Matrix.identity(F, S.dimension)
    spaces = []
    for sign in (1, -1):
        diff = M - I if sign == 1 else M + I
        K = kernel_basis(diff)
        bu, bv = [], []
        for j in range(K.ncols):
            col = [K[i, j] for i in range(S.dimension)]
            u, v, _ = S.combo(col)
            bu.append(tuple(u))
            bv.append(tuple(v))
        spaces.append(SectionSpace(S.curve, S.divisor, S.denom, S.pole_order,
                                   tuple(bu), tuple(bv),
                                   tuple([sign] * len(bu))))
    return spaces[0], spaces[1]


# ---------------------------------------------------------------------------
# pole/zero accounting, used by the verification suite


def section_ord_at_origin(S: SectionSpace, j: int) -> int:
    F = S.curve.field
    u, v = list(S.basis_u[j]), list(S.basis_v[j])
    orders = []
    if u:
        orders.append(-2 * pdeg(u))
    if v:
        orders.append(-(2 * pdeg(v) + 3))
    if not orders:
        raise ValueError("zero section")
    return min(orders) + 2 * pdeg(list(S.denom))


def section_ord_at(S: SectionSpace, j: int, P: Point) -> int:
    """ord_P of basis function j at an affine point."""
    F = S.curve.field
    u, v = list(S.basis_u[j]), list(S.basis_v[j])
    den = list(S.denom)
    cap = 2 * (max(pdeg(u), pdeg(v), pdeg(den)) + 4)
    xs, ys = local_expansion(S.curve, P, cap)

    def expand(upoly, vpoly):
        acc = s_of_poly(F, upoly, xs, cap) if upoly else [F.zero] * cap
        if vpoly:
            vv = s_of_poly(F, vpoly, xs, cap)
            acc = [F.add(a, b) for a, b in zip(acc, smul(F, vv, ys, cap))]
        return acc

    num = expand(u, v)
    dser = expand(den, [])
    ordn = next((k for k, c in enumerate(num) if c != F.zero), None)
    ordd = next((k for k, c in enumerate(dser) if c != F.zero), None)
    if ordn is None or ordd is None:
        raise ConsistencyError("expansion precision exhausted")
    return ordn - ordd

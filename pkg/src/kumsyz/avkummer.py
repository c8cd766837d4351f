"""Products of elliptic curves as abelian varieties.

External-product line bundles are stored per factor as divisors; section
spaces are tensor products of per-factor Riemann-Roch bases in lexicographic
order.  The Kummer quotient is never materialised: its graded pieces are the
+1 eigenspaces of the inversion action on section spaces of totally
symmetric bundles, realised as index subsets of the tensor basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (BundleNotSymmetricError, FieldMismatchError,
                     IncompatibleBundlesError)
from .exactcore import Matrix
from . import ellcurve
from .ellcurve import Divisor


@dataclass(frozen=True)
class AbelianProduct:
    factors: tuple

    @staticmethod
    def of(curves) -> "AbelianProduct":
        curves = tuple(curves)
        if not curves:
            raise ValueError("need at least one factor")
        F = curves[0].field
        if any(c.field != F for c in curves):
            raise FieldMismatchError("field mismatch")
        return AbelianProduct(curves)

    @property
    def g(self) -> int:
        return len(self.factors)

    @property
    def field(self):
        return self.factors[0].field

    def zero_pic0(self) -> "Pic0Element":
        return Pic0Element(self, tuple(c.O for c in self.factors))


@dataclass(frozen=True)
class Pic0Element:
    """A degree-0 class per factor, alpha = box-product of O(P_i - O)."""

    X: AbelianProduct
    points: tuple

    @property
    def is_zero(self) -> bool:
        return all(P.infinity for P in self.points)

    def neg(self) -> "Pic0Element":
        return Pic0Element(self.X, tuple(c.neg(P) for c, P in
                                         zip(self.X.factors, self.points)))

    def label(self) -> str:
        parts = []
        for P in self.points:
            parts.append("O" if P.infinity else f"{P.x},{P.y}")
        return ";".join(parts)


@dataclass(frozen=True)
class ProductBundle:
    X: AbelianProduct
    divisors: tuple  # one Divisor per factor

    @staticmethod
    def of(X: AbelianProduct, divisors) -> "ProductBundle":
        divisors = tuple(divisors)
        if len(divisors) != X.g:
            raise ValueError("one divisor per factor required")
        for c, d in zip(X.factors, divisors):
            if d.curve != c:
                raise ValueError("divisor on the wrong factor")
        return ProductBundle(X, divisors)

    @staticmethod
    def from_degrees(X: AbelianProduct, degrees) -> "ProductBundle":
        degs = tuple(int(d) for d in degrees)
        if len(degs) != X.g:
            raise ValueError("one degree per factor required")
        return ProductBundle.of(
            X, [Divisor.at_origin(c, d) for c, d in zip(X.factors, degs)])

    @property
    def degrees(self) -> tuple:
        return tuple(d.degree for d in self.divisors)

    @property
    def symmetric(self) -> bool:
        return all(d.is_symmetric for d in self.divisors)

    @property
    def totally_symmetric(self) -> bool:
        # the square of a symmetric bundle: every multiplicity even and the
        # halved divisor symmetric (same support, so symmetric iff self is)
        return self.symmetric and all(
            all(m % 2 == 0 for _, m in d.items) for d in self.divisors)

    def tensor(self, other: "ProductBundle") -> "ProductBundle":
        if other.X != self.X:
            raise IncompatibleBundlesError("bundles on different products")
        return ProductBundle.of(self.X, [a + b for a, b in
                                         zip(self.divisors, other.divisors)])

    def power(self, n: int) -> "ProductBundle":
        return ProductBundle.of(self.X, [d.scaled(n) for d in self.divisors])

    def __repr__(self):
        return f"Bundle{self.degrees}"


def twist(L: ProductBundle, alpha: Pic0Element) -> ProductBundle:
    """Tensor with alpha, per factor D + (P) - (O), in canonical form."""
    if alpha.X != L.X:
        raise IncompatibleBundlesError("twist on a different product")
    out = []
    for c, D, P in zip(L.X.factors, L.divisors, alpha.points):
        if P.infinity:
            out.append(D)
        else:
            out.append((D + Divisor.of(c, [(P, 1), (c.O, -1)])).canonical())
    return ProductBundle.of(L.X, out)


# ---------------------------------------------------------------------------
# tensor section spaces


@dataclass(frozen=True)
class ProductSectionSpace:
    X: AbelianProduct
    bundle: ProductBundle
    factor_spaces: tuple          # one SectionSpace per factor
    idx: tuple                    # selected flat tensor indices, ascending
    parity: tuple | None          # per selected vector, when known

    @property
    def factor_dims(self) -> tuple:
        return tuple(s.dimension for s in self.factor_spaces)

    @property
    def full_dimension(self) -> int:
        n = 1
        for d in self.factor_dims:
            n *= d
        return n

    @property
    def dimension(self) -> int:
        return len(self.idx)

    @property
    def is_full(self) -> bool:
        return self.dimension == self.full_dimension

    def multi_indices(self) -> np.ndarray:
        """Selected indices unraveled to per-factor basis indices."""
        dims = self.factor_dims
        flat = np.array(self.idx, dtype=np.int64)
        return np.stack(np.unravel_index(flat, dims), axis=1) if len(flat) \
            else np.zeros((0, len(dims)), dtype=np.int64)


def sections(X: AbelianProduct, L: ProductBundle) -> ProductSectionSpace:
    """Full tensor-product section space of an external-product bundle."""
    spaces = tuple(ellcurve.rr_basis(c, d) for c, d in
                   zip(X.factors, L.divisors))
    full = 1
    for s in spaces:
        full *= s.dimension
    parity = None
    if all(s.parity is not None for s in spaces):
        grids = np.meshgrid(*[np.array(s.parity) for s in spaces],
                            indexing="ij")
        prod = np.ones_like(grids[0])
        for gar in grids:
            prod = prod * gar
        parity = tuple(int(v) for v in prod.reshape(-1))
    return ProductSectionSpace(X, L, spaces, tuple(range(full)), parity)


def plus_space(X: AbelianProduct, L: ProductBundle) -> ProductSectionSpace:
    """The +1 eigenspace of the inversion action on H^0(L).

    Requires L totally symmetric and untwisted; the dimension always equals
    h^0(L)/2 + 2^(g-1).
    """
    if not L.totally_symmetric:
        raise BundleNotSymmetricError("bundle not symmetric")
    S = sections(X, L)
    if S.parity is None:
        raise BundleNotSymmetricError("bundle not symmetric")
    idx = tuple(i for i, s in zip(S.idx, S.parity) if s == 1)
    expected = S.full_dimension // 2 + 2 ** (X.g - 1)
    if len(idx) != expected:
        raise RuntimeError(
            f"eigenspace dimension {len(idx)} != h0/2 + 2^(g-1) = {expected}")
    return ProductSectionSpace(X, L, S.factor_spaces, idx,
                               tuple([1] * len(idx)))


# ---------------------------------------------------------------------------
# multiplication


@dataclass(frozen=True)
class MultTable:
    """Matrix of H^0(L1) (x) H^0(L2) -> H^0(L1 (x) L2) in tensor bases."""

    source1: ProductSectionSpace
    source2: ProductSectionSpace
    target: ProductSectionSpace
    matrix: Matrix  # (dim target) x (dim S1 * dim S2)


def _check_compose(S1: ProductSectionSpace, S2: ProductSectionSpace,
                   T: ProductSectionSpace):
    for d1, d2, dt in zip(S1.bundle.divisors, S2.bundle.divisors,
                          T.bundle.divisors):
        if d1 + d2 != dt:
            raise IncompatibleBundlesError(
                "factor divisors do not add up to the target bundle")


def pair_table(S1: ProductSectionSpace, S2: ProductSectionSpace,
               T: ProductSectionSpace) -> np.ndarray:
    """Structure constants as a (dim T, dim S1, dim S2) array.

    When T is a proper eigenspace subset both sources must be +1 tagged so
    that no product has components outside the selected rows.
    """
    _check_compose(S1, S2, T)
    if not T.is_full:
        ok = (S1.parity is not None and all(s == 1 for s in S1.parity)
              and S2.parity is not None and all(s == 1 for s in S2.parity)
              and T.parity is not None and all(s == 1 for s in T.parity))
        if not ok:
            raise IncompatibleBundlesError(
                "eigenspace-restricted products need +1 sources and target")
    F = S1.X.field
    g = S1.X.g
    ftabs = [ellcurve.structure_table(S1.factor_spaces[f], S2.factor_spaces[f],
                                      T.factor_spaces[f])
             for f in range(g)]
    K = T.multi_indices()
    I = S1.multi_indices()
    J = S2.multi_indices()
    nK, nI, nJ = len(K), len(I), len(J)
    if F.kind == "prime":
        out = np.ones((nK, nI, nJ), dtype=np.int64)
        for f in range(g):
            t = ftabs[f]
            out = (out * t[K[:, f]][:, I[:, f]][:, :, J[:, f]]) % F.p
        return out
    out = [[[F.one] * nJ for _ in range(nI)] for _ in range(nK)]
    for f in range(g):
        t = ftabs[f]
        for a in range(nK):
            for b in range(nI):
                for c in range(nJ):
                    out[a][b][c] *= t[K[a, f]][I[b, f]][J[c, f]]
    return out


def mult_table(S1: ProductSectionSpace, S2: ProductSectionSpace,
               T: ProductSectionSpace) -> MultTable:
    tab = pair_table(S1, S2, T)
    F = S1.X.field
    if F.kind == "prime":
        mat = Matrix(F, tab.reshape(T.dimension,
                                    S1.dimension * S2.dimension))
    else:
        rows = [[tab[a][b][c] for b in range(S1.dimension)
                 for c in range(S2.dimension)] for a in range(T.dimension)]
        mat = Matrix.from_rows(F, rows) if rows else Matrix.zeros(F, 0, 0)
    return MultTable(S1, S2, T, mat)

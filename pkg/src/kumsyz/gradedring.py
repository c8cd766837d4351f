"""Section rings R = (+)_k H^0(A^k) of an ambient product or a Kummer
eigenspace system, with Hilbert data, Sym^k V -> R_k maps, graded ideal
pieces, h-normality and minimal generator degrees of the homogeneous ideal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import DegreeCapError, BundleNotSymmetricError
from .exactcore import (field_kernel, field_matmul, field_rank,
                        field_rank_chunks, field_zeros)
from . import avkummer
from .avkummer import AbelianProduct, ProductBundle, ProductSectionSpace


@dataclass(frozen=True)
class RingSlice:
    degree: int
    space: ProductSectionSpace | None
    dimension: int


class SectionSystem:
    """Graded system R_k with cached multiplication data.

    kind "ambient": R_k = H^0(X, B^(power*k)) for the base bundle B.
    kind "kummer":  R_k = H^0(X, A^(2*power*k))^+ for the symmetric base A,
    i.e. the degree-k piece of the section ring of A_K^power on the Kummer
    variety, realised purely upstairs.
    """

    def __init__(self, X: AbelianProduct, base: ProductBundle,
                 kind: str = "ambient", power: int = 1, cap: int = 8):
        if kind not in ("ambient", "kummer"):
            raise ValueError(f"unknown system kind {kind!r}")
        if kind == "kummer" and not base.symmetric:
            raise BundleNotSymmetricError("bundle not symmetric")
        if power < 1:
            raise ValueError("power must be >= 1")
        self.X = X
        self.base = base
        self.kind = kind
        self.power = power
        self.cap = cap
        self.field = X.field
        self._slices: dict[int, RingSlice] = {}
        self._gen: dict[int, np.ndarray] = {}
        self._sym: dict[int, "SymMap"] = {}
        self._ideal: dict[int, "IdealPiece"] = {}

    # -- graded pieces ------------------------------------------------------

    def bundle_for(self, k: int) -> ProductBundle:
        mult = 2 * self.power * k if self.kind == "kummer" else self.power * k
        return self.base.power(mult)

    def slice(self, k: int) -> RingSlice:
        if k in self._slices:
            return self._slices[k]
        if k < 0:
            sl = RingSlice(k, None, 0)
        elif k > self.cap:
            raise DegreeCapError("extend MultTable cap")
        elif k == 0:
            sl = RingSlice(0, avkummer.sections(self.X, self.bundle_for(0)), 1)
        else:
            L = self.bundle_for(k)
            space = (avkummer.plus_space(self.X, L) if self.kind == "kummer"
                     else avkummer.sections(self.X, L))
            sl = RingSlice(k, space, space.dimension)
        self._slices[k] = sl
        return sl

    def dim(self, k: int) -> int:
        return self.slice(k).dimension

    @property
    def V(self) -> ProductSectionSpace:
        return self.slice(1).space

    @property
    def dim_v(self) -> int:
        return self.dim(1)

    def gen_table(self, h: int) -> np.ndarray:
        """Structure constants of V x R_h -> R_{h+1}, shape (dR', dV, dR)."""
        if h in self._gen:
            return self._gen[h]
        tab = avkummer.pair_table(self.V, self.slice(h).space,
                                  self.slice(h + 1).space)
        if self.field.kind == "rational":
            arr = np.empty((self.dim(h + 1), self.dim_v, self.dim(h)),
                           dtype=object)
            for a in range(self.dim(h + 1)):
                for b in range(self.dim_v):
                    for c in range(self.dim(h)):
                        arr[a, b, c] = tab[a][b][c]
            tab = arr
        self._gen[h] = tab
        return tab

    # -- Hilbert data --------------------------------------------------------

    def hilbert_values(self, k_max: int) -> list[int]:
        return [self.dim(k) for k in range(1, k_max + 1)]

    def q_stab(self, k_hi: int | None = None) -> int:
        """Least degree from which dim R_k agrees with its Hilbert polynomial.

        The polynomial (degree = dim of the variety) is interpolated exactly
        from the top available dimensions.
        """
        g = self.X.g
        if k_hi is None:
            k_hi = min(self.cap, g + 3)
        pts = [(k, self.dim(k)) for k in range(k_hi - g, k_hi + 1)]

        def poly_at(x: int) -> Fraction:
            acc = Fraction(0)
            for i, (xi, yi) in enumerate(pts):
                term = Fraction(yi)
                for jj, (xj, _) in enumerate(pts):
                    if jj != i:
                        term *= Fraction(x - xj, xi - xj)
                acc += term
            return acc

        q = k_hi - g
        while q > 0 and poly_at(q - 1) == self.dim(q - 1):
            q -= 1
        return q

    def default_h_max(self, r: int) -> int:
        return max(r + 1, self.q_stab() + 1)

    def label(self) -> str:
        degs = ",".join(str(d) for d in self.base.degrees)
        return f"{self.kind}[{degs}]^{self.power}"


# ---------------------------------------------------------------------------
# symmetric-power maps and graded ideal pieces


def sym_dim(n: int, k: int) -> int:
    return comb(n + k - 1, k)


def monomials(n: int, k: int) -> tuple:
    """Degree-k monomials as sorted index tuples, graded-lex order."""
    return tuple(itertools.combinations_with_replacement(range(n), k))


@dataclass(frozen=True)
class SymMap:
    degree: int
    matrix: np.ndarray  # dim R_k x sym_dim(dim V, k)
    monos: tuple


@dataclass(frozen=True)
class IdealPiece:
    degree: int
    basis: np.ndarray  # sym_dim x dimension, kernel columns of the SymMap
    dimension: int


def sym_map(system: SectionSystem, k: int) -> SymMap:
    """Sym^k V -> R_k by iterated multiplication through V x R_{k-1}."""
    if k in system._sym:
        return system._sym[k]
    F = system.field
    nV = system.dim_v
    monos = monomials(nV, k)
    if k == 1:
        mat = field_zeros(F, (nV, nV))
        for i in range(nV):
            mat[i, i] = F.one
        sm = SymMap(1, mat, monos)
    else:
        prev = sym_map(system, k - 1)
        prev_pos = {m: i for i, m in enumerate(prev.monos)}
        G = system.gen_table(k - 1)
        mat = field_zeros(F, (system.dim(k), len(monos)))
        by_lead: dict[int, tuple[list[int], list[int]]] = {}
        for pos, m in enumerate(monos):
            tails, outs = by_lead.setdefault(m[0], ([], []))
            tails.append(prev_pos[m[1:]])
            outs.append(pos)
        for i, (tails, outs) in by_lead.items():
            mat[:, outs] = field_matmul(F, G[:, i, :], prev.matrix[:, tails])
        sm = SymMap(k, mat, monos)
    system._sym[k] = sm
    return sm


def sym_map_alt(system: SectionSystem, k: int) -> np.ndarray:
    """Right-to-left bracketing of the same map, for consistency tests."""
    F = system.field
    nV = system.dim_v
    monos = monomials(nV, k)
    if k == 1:
        return sym_map(system, 1).matrix
    prev = sym_map_alt(system, k - 1)
    prev_monos = monomials(nV, k - 1)
    prev_pos = {m: i for i, m in enumerate(prev_monos)}
    G = system.gen_table(k - 1)
    mat = field_zeros(F, (system.dim(k), len(monos)))
    by_trail: dict[int, tuple[list[int], list[int]]] = {}
    for pos, m in enumerate(monos):
        tails, outs = by_trail.setdefault(m[-1], ([], []))
        tails.append(prev_pos[m[:-1]])
        outs.append(pos)
    for i, (tails, outs) in by_trail.items():
        mat[:, outs] = field_matmul(F, G[:, i, :], prev[:, tails])
    return mat


def ideal_piece(system: SectionSystem, k: int) -> IdealPiece:
    """I_k = ker(Sym^k V -> R_k), exact kernel in monomial coordinates."""
    if k in system._ideal:
        return system._ideal[k]
    sm = sym_map(system, k)
    K = field_kernel(system.field, sm.matrix)
    ip = IdealPiece(k, K, K.shape[1])
    system._ideal[k] = ip
    return ip


def h_normality(system: SectionSystem, k: int) -> bool:
    """True iff Sym^k V -> R_k is surjective."""
    sm = sym_map(system, k)
    return field_rank(system.field, sm.matrix) == system.dim(k)


def _shift_positions(nV: int, k: int, i: int) -> np.ndarray:
    """Position map of multiplication by v_i: Sym^(k-1) -> Sym^k."""
    pos_k = {m: a for a, m in enumerate(monomials(nV, k))}
    out = np.empty(sym_dim(nV, k - 1), dtype=np.int64)
    for a, m in enumerate(monomials(nV, k - 1)):
        out[a] = pos_k[tuple(sorted(m + (i,)))]
    return out


def minimal_generators(system: SectionSystem, k: int) -> int:
    """Number of minimal ideal generators in degree k,
    dim coker(V (x) I_{k-1} -> I_k)."""
    nV = system.dim_v
    Ik = ideal_piece(system, k)
    if Ik.dimension == 0:
        return 0
    if k == 1:
        return Ik.dimension
    Iprev = ideal_piece(system, k - 1)
    if Iprev.dimension == 0:
        return Ik.dimension
    F = system.field
    nmono = sym_dim(nV, k)

    def chunks():
        for i in range(nV):
            pos = _shift_positions(nV, k, i)
            img = field_zeros(F, (Iprev.dimension, nmono))
            img[:, pos] = Iprev.basis.T
            yield img

    r = field_rank_chunks(F, chunks(), nmono)
    return Ik.dimension - r


def generator_degrees(system: SectionSystem, k_max: int) -> dict[int, int]:
    """Multiset of minimal generator degrees of the ideal, up to k_max."""
    out: dict[int, int] = {}
    for k in range(1, k_max + 1):
        c = minimal_generators(system, k)
        if c:
            out[k] = c
    return out

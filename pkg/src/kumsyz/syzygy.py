"""Koszul cohomology: three-term strand complexes, graded Betti numbers
beta_{p,q} and verdicts for the syzygy conditions N_p and N_p^r.

beta_{p,q} is the middle homology dimension of

    Wedge^{p+1} V (x) R_{q-p-1} -> Wedge^p V (x) R_{q-p} -> Wedge^{p-1} V (x) R_{q-p+1}

with the convention Wedge^{-1} = 0 and R_{<0} = 0.  The differentials are
never materialised for large cells: ranks are taken by streaming column
blocks (one per wedge tuple) into the incremental RREF accumulator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import CharacteristicGuardError, DegreeCapError
from .exactcore import Matrix, field_rank_chunks, field_zeros
from .gradedring import SectionSystem


def char_guard(field, p_syz: int, override: bool = False) -> None:
    """Reject field characteristics dividing p+1 or p+2 for syzygy index p."""
    if override or field.kind != "prime":
        return
    c = field.char
    if (p_syz + 1) % c == 0 or (p_syz + 2) % c == 0:
        raise CharacteristicGuardError(
            f"char {c} divides {p_syz + 1} or {p_syz + 2}; "
            "pass override_char_guard to proceed")


def _neg(field, arr):
    if field.kind == "prime":
        return (-arr) % field.p
    return -arr


def _dmap_chunks(system: SectionSystem, p: int, h: int):
    """Row blocks of the transpose of d: Wedge^p V (x) R_h -> Wedge^{p-1} V (x) R_{h+1}.

    One block per source wedge tuple I; block rows are indexed by the R_h
    basis, columns by (K, b) with K = I minus one entry and b in R_{h+1}.
    d(e_I (x) s) = sum_t (-1)^t e_{I-i_t} (x) (v_{i_t} * s).
    """
    F = system.field
    nV = system.dim_v
    dR0 = system.dim(h)
    dR1 = system.dim(h + 1)
    if p < 1 or p > nV or dR0 == 0 or dR1 == 0:
        return
    G = system.gen_table(h)
    pos_out = {t: i for i, t in
               enumerate(itertools.combinations(range(nV), p - 1))}
    nW = len(pos_out)
    for I in itertools.combinations(range(nV), p):
        chunk = field_zeros(F, (dR0, nW * dR1))
        for t, i in enumerate(I):
            K = I[:t] + I[t + 1:]
            kpos = pos_out[K]
            block = G[:, i, :].T
            if t % 2 == 1:
                block = _neg(F, block)
            chunk[:, kpos * dR1:(kpos + 1) * dR1] = block
        yield chunk


def _dmap_rank(system: SectionSystem, p: int, h: int) -> int:
    key = (p, h)
    cache = getattr(system, "_koszul_rank", None)
    if cache is None:
        cache = {}
        system._koszul_rank = cache
    if key in cache:
        return cache[key]
    nV = system.dim_v
    if p < 1 or p > nV or h < 0 or system.dim(h) == 0:
        r = 0
    else:
        ncols = comb(nV, p - 1) * system.dim(h + 1)
        r = field_rank_chunks(system.field, _dmap_chunks(system, p, h), ncols)
    cache[key] = r
    return r


def _dmap_matrix(system: SectionSystem, p: int, h: int) -> Matrix:
    """Dense differential, for small cells and verification."""
    F = system.field
    nV = system.dim_v
    dR0, dR1 = system.dim(h) if h >= 0 else 0, system.dim(h + 1)
    ncols = comb(nV, p) * dR0
    nrows = comb(nV, p - 1) * dR1 if p >= 1 else 0
    out = field_zeros(F, (nrows, ncols))
    if p < 1 or p > nV or dR0 == 0:
        return Matrix(F, out) if F.kind == "prime" else Matrix.from_rows(F, out)
    for blk, chunk in enumerate(_dmap_chunks(system, p, h)):
        out[:, blk * dR0:(blk + 1) * dR0] = chunk.T
    if F.kind == "prime":
        return Matrix(F, out)
    return Matrix.from_rows(F, [list(r) for r in out])


@dataclass
class KoszulCell:
    """The strand complex around Wedge^p V (x) R_{h+1}."""

    system: SectionSystem
    p: int
    h: int

    @property
    def middle_dim(self) -> int:
        nV = self.system.dim_v
        return comb(nV, self.p) * self.system.dim(self.h + 1)

    def din_rank(self) -> int:
        return _dmap_rank(self.system, self.p + 1, self.h)

    def dout_rank(self) -> int:
        return _dmap_rank(self.system, self.p, self.h + 1)

    def din_matrix(self) -> Matrix:
        return _dmap_matrix(self.system, self.p + 1, self.h)

    def dout_matrix(self) -> Matrix:
        return _dmap_matrix(self.system, self.p, self.h + 1)

    @property
    def q(self) -> int:
        return self.p + self.h + 1


def koszul_cell(system: SectionSystem, p: int, h: int) -> KoszulCell:
    if p < 0:
        raise ValueError("p must be >= 0")
    # fail fast if the degree cap cannot feed the strand
    system.slice(h + 2)
    return KoszulCell(system, p, h)


def middle_homology_dim(cell: KoszulCell) -> int:
    """dim ker(d_out) - rank(d_in), the Betti number beta_{p, p+h+1}."""
    return cell.middle_dim - cell.dout_rank() - cell.din_rank()


def betti_number(system: SectionSystem, p: int, q: int) -> int:
    if p < 0 or q < p:
        return 0
    return middle_homology_dim(KoszulCell(system, p, q - p - 1))


@dataclass(frozen=True)
class BettiTable:
    grid: tuple            # grid[p][q] = beta_{p,q}
    dim_v: int
    hilbert: tuple
    p_max: int
    q_max: int

    def beta(self, p: int, q: int) -> int:
        if 0 <= p <= self.p_max and 0 <= q <= self.q_max:
            return self.grid[p][q]
        return 0

    def nonzero(self) -> dict:
        return {(p, q): v for p, row in enumerate(self.grid)
                for q, v in enumerate(row) if v}

    def rows(self) -> list:
        return [list(r) for r in self.grid]


def betti_table(system: SectionSystem, p_max: int, q_max: int) -> BettiTable:
    grid = []
    for p in range(p_max + 1):
        row = []
        for q in range(q_max + 1):
            row.append(betti_number(system, p, q))
        grid.append(tuple(row))
    return BettiTable(tuple(grid), system.dim_v,
                      tuple(system.hilbert_values(min(system.cap, q_max + 1))),
                      p_max, q_max)


@dataclass(frozen=True)
class NprVerdict:
    p: int
    r: int
    status: str                 # "holds" | "fails" | "inconclusive"
    h_lo: int
    h_hi: int
    stable: bool
    witness: tuple | None       # first violating (p', h)
    cells: tuple                # ((p', h, beta), ...) in check order
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def check_Npr(system: SectionSystem, p: int, r: int,
              h_max: int | None = None,
              override_char_guard: bool = False) -> NprVerdict:
    """Certify N_p^r on the finite range h in [r+1, h_max].

    The condition demands exactness of the middle of the strand complex at
    every index p' <= p for all h >= r+1; only the stated finite range is
    certified, with a "stable" flag when the range covers the Hilbert
    stabilization window.
    """
    if p < 0 or r < 0:
        raise ValueError("p and r must be >= 0")
    char_guard(system.field, p, override_char_guard)
    if h_max is None:
        h_max = system.default_h_max(r)
    if h_max < r + 1:
        raise ValueError("h_max below r + 1 certifies nothing")
    stable = h_max >= system.q_stab() + 1
    cells = []
    try:
        for pp in range(p + 1):
            for h in range(r + 1, h_max + 1):
                beta = middle_homology_dim(KoszulCell(system, pp, h))
                cells.append((pp, h, beta))
                if beta != 0:
                    return NprVerdict(p, r, "fails", r + 1, h_max, stable,
                                      (pp, h), tuple(cells),
                                      f"beta_{{{pp},{pp + h + 1}}} = {beta}")
    except DegreeCapError as e:
        return NprVerdict(p, r, "inconclusive", r + 1, h_max, stable, None,
                          tuple(cells), str(e))
    return NprVerdict(p, r, "holds", r + 1, h_max, stable, None, tuple(cells))

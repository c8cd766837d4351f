"""Multiplication-map laboratory on a polarized product abelian variety.

Probes the maps  W_n (x) H^0(A^h (x) alpha) -> H^0(A^(2n+h) (x) alpha)
with W_n = H^0(A^(2n))^+, sweeps them over rational Pic^0 twists, computes
kernel-bundle section spaces H^0(M_{W_n}^(x p) (x) A^m (x) alpha) as exact
iterated kernels, and certifies H^1 vanishing through the surjectivity
chain (never by computing sheaf cohomology).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (BudgetError, BundleNotSymmetricError, ConfigError,
                     ConsistencyError)
from .exactcore import field_kernel, field_matmul, field_rank
from . import avkummer
from .avkummer import (AbelianProduct, Pic0Element, ProductBundle,
                       ProductSectionSpace, pair_table, twist)
from .gradedring import SectionSystem
from .syzygy import KoszulCell, middle_homology_dim


class MultLab:
    """Context holding X, the ample symmetric bundle A, and section caches."""

    def __init__(self, X: AbelianProduct, A: ProductBundle):
        if A.X != X:
            raise ValueError("bundle on a different product")
        if not A.symmetric:
            raise BundleNotSymmetricError("bundle not symmetric")
        self.X = X
        self.A = A
        self.field = X.field
        self._plus: dict[int, ProductSectionSpace] = {}
        self._full: dict[int, ProductSectionSpace] = {}

    def W(self, n: int) -> ProductSectionSpace:
        """W_n = H^0(A^(2n))^+, the + eigenspace."""
        if n not in self._plus:
            self._plus[n] = avkummer.plus_space(self.X, self.A.power(2 * n))
        return self._plus[n]

    def full(self, m: int) -> ProductSectionSpace:
        if m not in self._full:
            self._full[m] = avkummer.sections(self.X, self.A.power(m))
        return self._full[m]

    def twisted(self, m: int, alpha: Pic0Element) -> ProductSectionSpace:
        if alpha.is_zero:
            return self.full(m)
        return avkummer.sections(self.X, twist(self.A.power(m), alpha))

    def system(self, power: int = 1, cap: int = 8) -> SectionSystem:
        return SectionSystem(self.X, self.A, kind="kummer", power=power,
                             cap=cap)


# ---------------------------------------------------------------------------
# single probes


@dataclass(frozen=True)
class MultProbe:
    n: int
    h: int
    alpha_label: str
    parity_source: str
    src_dim: int
    tgt_dim: int
    rank: int

    @property
    def corank(self) -> int:
        return self.tgt_dim - self.rank

    @property
    def surjective(self) -> bool:
        return self.corank == 0


def mult_probe(lab: MultLab, n: int, h: int, alpha: Pic0Element,
               parity_source: str = "plus") -> MultProbe:
    """Exact rank of H^0(A^(2n))^(+|full) (x) H^0(A^h alpha) -> H^0(A^(2n+h) alpha)."""
    if n < 1 or h < 1:
        raise ValueError("need n >= 1 and h >= 1")
    if parity_source not in ("plus", "full"):
        raise ValueError("parity_source must be 'plus' or 'full'")
    S1 = lab.W(n) if parity_source == "plus" else lab.full(2 * n)
    S2 = lab.twisted(h, alpha)
    T = lab.twisted(2 * n + h, alpha)
    tab = pair_table(S1, S2, T)
    F = lab.field
    if F.kind == "prime":
        mat = tab.reshape(T.dimension, S1.dimension * S2.dimension)
    else:
        mat = np.array([[tab[a][b][c] for b in range(S1.dimension)
                         for c in range(S2.dimension)]
                        for a in range(T.dimension)], dtype=object)
    r = field_rank(F, mat)
    return MultProbe(n, h, alpha.label(), parity_source,
                     S1.dimension * S2.dimension, T.dimension, r)


@dataclass(frozen=True)
class EquivProbe:
    """Joint verdicts of m and m^+ at one alpha; they must agree."""

    n: int
    alpha_label: str
    m_rank: int
    mplus_rank: int
    tgt_dim: int

    @property
    def m_surjective(self) -> bool:
        return self.m_rank == self.tgt_dim

    @property
    def mplus_surjective(self) -> bool:
        return self.mplus_rank == self.tgt_dim

    @property
    def agree(self) -> bool:
        return self.m_surjective == self.mplus_surjective


def equiv_m_mplus(lab: MultLab, alpha: Pic0Element, n: int = 1) -> EquivProbe:
    """Verdict pair for H^0(A^2n) (x) H^0(A^2 alpha) -> H^0(A^(2n+2) alpha)
    against its + eigenspace restriction, computed independently by rank."""
    S_full = lab.full(2 * n)
    W = lab.W(n)
    S2 = lab.twisted(2, alpha)
    T = lab.twisted(2 * n + 2, alpha)
    tab = pair_table(S_full, S2, T)
    F = lab.field
    d1, d2, dT = S_full.dimension, S2.dimension, T.dimension
    if F.kind == "prime":
        m_rank = field_rank(F, tab.reshape(dT, d1 * d2))
        plus_cols = np.array(W.idx, dtype=np.int64)  # S_full is full
        m_plus = field_rank(F, tab[:, plus_cols, :].reshape(dT, -1))
    else:
        rows = [[tab[a][b][c] for b in range(d1) for c in range(d2)]
                for a in range(dT)]
        m_rank = field_rank(F, np.array(rows, dtype=object))
        rows_p = [[tab[a][b][c] for b in W.idx for c in range(d2)]
                  for a in range(dT)]
        m_plus = field_rank(F, np.array(rows_p, dtype=object))
    return EquivProbe(n, alpha.label(), m_rank, m_plus, dT)


# ---------------------------------------------------------------------------
# Pic^0 enumeration


def enumerate_pic0(X: AbelianProduct, budget: int = 10 ** 4):
    """All tuples of rational points as twists, deterministic order."""
    per_factor = [c.points() for c in X.factors]
    total = 1
    for pts in per_factor:
        total *= len(pts)
    if total > budget:
        raise BudgetError(
            f"enumeration budget exceeded ({total} > {budget} tuples); "
            "use sampled mode")
    for combo in itertools.product(*per_factor):
        yield Pic0Element(X, tuple(combo))


def sample_pic0(X: AbelianProduct, count: int, seed: int):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        out.append(Pic0Element(
            X, tuple(c.random_point(rng) for c in X.factors)))
    return out


def _alphas(lab: MultLab, mode: str, sample_size: int, seed: int,
            budget: int):
    if mode == "exhaustive":
        return list(enumerate_pic0(lab.X, budget))
    if mode == "sampled":
        if sample_size < 1:
            raise ValueError("sampled mode needs sample_size >= 1")
        return sample_pic0(lab.X, sample_size, seed)
    raise ValueError(f"unknown sweep mode {mode!r}")


@dataclass(frozen=True)
class SweepReport:
    kind: str
    n: int
    h: int
    mode: str
    field_char: int
    factor_points: tuple      # rational point count per factor
    total: int
    failures: tuple           # alpha labels where the probe is not surjective
    violations: tuple         # equiv sweeps: alpha labels where verdicts differ
    per_alpha: tuple          # (label, rank, tgt_dim) in enumeration order

    @property
    def failure_count(self) -> int:
        return len(self.failures)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind, "n": self.n, "h": self.h, "mode": self.mode,
            "field": self.field_char,
            "factor_points": list(self.factor_points),
            "total": self.total,
            "failure_count": self.failure_count,
            "failures": list(self.failures),
            "violations": list(self.violations),
        }


def sweep_alpha(lab: MultLab, kind: str, n: int, h: int,
                mode: str = "exhaustive", sample_size: int = 0,
                seed: int = 0, budget: int = 10 ** 4,
                parity_source: str = "plus") -> SweepReport:
    """Per-alpha verdicts over enumerated or sampled Pic^0 twists.

    kind "mplus"/"m": surjectivity of the (restricted/full) multiplication.
    kind "equiv": both verdicts at h = 2; a disagreement is recorded as a
    theorem violation and fails the run downstream.
    """
    alphas = _alphas(lab, mode, sample_size, seed, budget)
    failures = []
    violations = []
    per_alpha = []
    for alpha in alphas:
        if kind == "equiv":
            pr = equiv_m_mplus(lab, alpha, n)
            per_alpha.append((pr.alpha_label, pr.m_rank, pr.mplus_rank,
                              pr.tgt_dim))
            if not pr.mplus_surjective:
                failures.append(pr.alpha_label)
            if not pr.agree:
                violations.append(pr.alpha_label)
        elif kind in ("mplus", "m"):
            src = "plus" if kind == "mplus" else parity_source
            pr = mult_probe(lab, n, h, alpha,
                            "full" if kind == "m" else src)
            per_alpha.append((pr.alpha_label, pr.rank, pr.tgt_dim))
            if not pr.surjective:
                failures.append(pr.alpha_label)
        else:
            raise ValueError(f"unknown probe kind {kind!r}")
    return SweepReport(kind, n, h, mode, lab.field.char,
                       tuple(len(c.points()) for c in lab.X.factors)
                       if mode == "exhaustive" else (0,) * lab.X.g,
                       len(alphas), tuple(failures), tuple(violations),
                       tuple(per_alpha))


# ---------------------------------------------------------------------------
# kernel-bundle section spaces and the I.T.(0) certification chain


@dataclass(frozen=True)
class KernelBundleSpace:
    """H^0(M_{W_n}^(x p) (x) A^m (x) alpha) inside W_n^(x p) (x) H^0(A^m alpha)."""

    n: int
    p: int
    m: int
    alpha_label: str
    basis: np.ndarray       # ambient_dim x dimension
    h1_zero: str            # "certified" | "inconclusive" | "unchecked"

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]


class _AlphaContext:
    """Per-alpha caches for the recursive kernel/certificate chain."""

    def __init__(self, lab: MultLab, n: int, alpha: Pic0Element):
        self.lab = lab
        self.n = n
        self.alpha = alpha
        self.spaces: dict[int, ProductSectionSpace] = {}
        self.kernels: dict[tuple[int, int], KernelBundleSpace] = {}
        self.steps: dict[tuple[int, int], tuple] = {}
        self.certs: dict[tuple[int, int], tuple] = {}

    def space(self, m: int) -> ProductSectionSpace:
        if m not in self.spaces:
            self.spaces[m] = self.lab.twisted(m, self.alpha)
        return self.spaces[m]


def _identity_basis(F, d: int) -> np.ndarray:
    out = np.zeros((d, d), dtype=np.int64) if F.kind == "prime" else \
        np.empty((d, d), dtype=object)
    if F.kind != "prime":
        from fractions import Fraction
        out.fill(Fraction(0))
    for i in range(d):
        out[i, i] = F.one
    return out


def _kernel_space(ctx: _AlphaContext, p: int, m: int) -> KernelBundleSpace:
    """Iterated exact kernel; always valid by left exactness."""
    key = (p, m)
    if key in ctx.kernels:
        return ctx.kernels[key]
    lab, n = ctx.lab, ctx.n
    F = lab.field
    if p < 0:
        raise ValueError("p must be >= 0")
    if p > 4:
        raise ConfigError("kernel-power recursion beyond p = 4 "
                          "exceeds the matrix budget")
    if m < 1:
        raise ValueError("need m >= 1")
    if p == 0:
        ks = KernelBundleSpace(n, 0, m, ctx.alpha.label(),
                               _identity_basis(F, ctx.space(m).dimension),
                               "unchecked")
    else:
        M, prev, dT = _step_map(ctx, p, m)
        K = field_kernel(F, M)
        dW = lab.W(n).dimension
        if F.kind == "prime":
            big = np.kron(np.eye(dW, dtype=np.int64), prev.basis)
            basis = field_matmul(F, big, K)
        else:
            big = np.kron(np.eye(dW, dtype=object), prev.basis)
            basis = np.dot(big, K)
        ks = KernelBundleSpace(n, p, m, ctx.alpha.label(), basis, "unchecked")
    ctx.kernels[key] = ks
    return ks


def _step_map(ctx: _AlphaContext, p: int, m: int):
    """Matrix of W_n (x) H^0(M^(p-1) A^m alpha) -> W_n^(p-1) (x) H^0(A^(m+2n) alpha)."""
    key = (p, m)
    if key in ctx.steps:
        return ctx.steps[key]
    lab, n = ctx.lab, ctx.n
    F = lab.field
    prev = _kernel_space(ctx, p - 1, m)
    W = lab.W(n)
    dW = W.dimension
    S_m = ctx.space(m)
    S_up = ctx.space(m + 2 * n)
    G = pair_table(W, S_m, S_up)
    if F.kind == "rational":
        arr = np.empty((S_up.dimension, dW, S_m.dimension), dtype=object)
        for a in range(S_up.dimension):
            for b in range(dW):
                for c in range(S_m.dimension):
                    arr[a, b, c] = G[a][b][c]
        G = arr
    dS, dT = S_m.dimension, S_up.dimension
    damb = dW ** (p - 1)
    B = prev.basis.reshape(damb, dS, prev.dimension)
    blocks = []
    for w in range(dW):
        Gt = G[:, w, :]                      # (dT, dS)
        B2 = np.swapaxes(B, 1, 2).reshape(damb * prev.dimension, dS)
        out = field_matmul(F, B2, Gt.T)      # (damb*dimprev, dT)
        out = out.reshape(damb, prev.dimension, dT)
        out = np.swapaxes(out, 1, 2).reshape(damb * dT, prev.dimension)
        blocks.append(out)
    M = np.concatenate(blocks, axis=1)
    ctx.steps[key] = (M, prev, dT)
    return ctx.steps[key]


def _certify(ctx: _AlphaContext, p: int, m: int):
    """The inductive H^1-vanishing certificate for M^(x p) (x) A^m (x) alpha.

    Base case: H^1(A^m alpha) = 0 for m >= 1 (ampleness, an axiom of the
    model).  Step: the p-1 certificates at m and m+2n plus exact
    surjectivity of the multiplication W_n (x) H^0(M^(p-1) A^m alpha)
    -> H^0(M^(p-1) A^(m+2n) alpha).
    """
    key = (p, m)
    if key in ctx.certs:
        return ctx.certs[key]
    if p == 0:
        res = (m >= 1, "" if m >= 1 else f"m = {m} < 1")
    else:
        ok1, why1 = _certify(ctx, p - 1, m)
        ok2, why2 = _certify(ctx, p - 1, m + 2 * ctx.n)
        M, prev, _ = _step_map(ctx, p, m)
        target = _kernel_space(ctx, p - 1, m + 2 * ctx.n)
        r = field_rank(ctx.lab.field, M)
        if r > target.dimension:
            raise ConsistencyError(
                "multiplication image left the kernel-bundle section space")
        surj = r == target.dimension
        if ok1 and ok2 and surj:
            res = (True, "")
        else:
            reasons = []
            if not ok1:
                reasons.append(f"chain({p - 1},{m}): {why1}")
            if not ok2:
                reasons.append(f"chain({p - 1},{m + 2 * ctx.n}): {why2}")
            if not surj:
                reasons.append(
                    f"step({p},{m}) rank {r} < {target.dimension}")
            res = (False, "; ".join(reasons))
    ctx.certs[key] = res
    return res


def kernel_sections(lab: MultLab, n: int, p: int, m: int,
                    alpha: Pic0Element,
                    certify: bool = False) -> KernelBundleSpace:
    """Explicit basis of H^0(M_{W_n}^(x p) (x) A^m (x) alpha).

    p = 0 returns H^0(A^m alpha) itself.  With certify=True the h1_zero
    field is filled from the surjectivity chain ("certified" or
    "inconclusive"), never from a cohomology computation.
    """
    ctx = _AlphaContext(lab, n, alpha)
    ks = _kernel_space(ctx, p, m)
    if not certify:
        return ks
    ok, _ = _certify(ctx, p, m)
    return KernelBundleSpace(n, p, m, ks.alpha_label, ks.basis,
                             "certified" if ok else "inconclusive")


@dataclass(frozen=True)
class It0Report:
    n: int
    p: int
    m: int
    mode: str
    field_char: int
    total: int
    certified: int
    inconclusive: tuple     # (alpha label, reason) pairs
    per_alpha: tuple        # (label, "certified"|"inconclusive")

    @property
    def all_certified(self) -> bool:
        return self.certified == self.total

    def as_dict(self) -> dict:
        return {
            "n": self.n, "p": self.p, "m": self.m, "mode": self.mode,
            "field": self.field_char, "total": self.total,
            "certified": self.certified,
            "inconclusive": [list(t) for t in self.inconclusive],
        }


def it0_check(lab: MultLab, n: int, p: int, m: int,
              mode: str = "exhaustive", sample_size: int = 0, seed: int = 0,
              budget: int = 10 ** 4) -> It0Report:
    """Sweep the I.T.(0)-style certificate for M_{W_n}^(x p) (x) A^m."""
    if p < 1:
        raise ValueError("need p >= 1")
    if p > 4:
        raise ConfigError("recursion depth p > 4 exceeds the matrix budget")
    alphas = _alphas(lab, mode, sample_size, seed, budget)
    inconclusive = []
    per_alpha = []
    for alpha in alphas:
        ctx = _AlphaContext(lab, n, alpha)
        ok, why = _certify(ctx, p, m)
        per_alpha.append((alpha.label(), "certified" if ok else "inconclusive"))
        if not ok:
            inconclusive.append((alpha.label(), why))
    return It0Report(n, p, m, mode, lab.field.char, len(alphas),
                     len(alphas) - len(inconclusive), tuple(inconclusive),
                     tuple(per_alpha))


@dataclass(frozen=True)
class LinkageReport:
    """Cross-check: sweep-certified kernel-bundle positivity at
    m = 2(nh-1) against middle exactness of the matching Koszul cell."""

    n: int
    p: int
    h: int
    m: int
    it0: It0Report
    applicable: bool        # all alphas certified, so the cell must be exact
    beta: int | None
    violations: int

    def as_dict(self) -> dict:
        return {
            "n": self.n, "p": self.p, "h": self.h, "m": self.m,
            "it0": self.it0.as_dict(),
            "applicable": self.applicable,
            "beta": self.beta if self.beta is not None else -1,
            "violations": self.violations,
        }


def reduction_linkage(lab: MultLab, n: int, p: int, h: int,
                      mode: str = "exhaustive", sample_size: int = 0,
                      seed: int = 0, budget: int = 10 ** 4,
                      cap: int = 8) -> LinkageReport:
    m = 2 * (n * h - 1)
    if m < 1:
        raise ValueError("need n*h >= 1")
    rep = it0_check(lab, n, p, m, mode, sample_size, seed, budget)
    if not rep.all_certified:
        return LinkageReport(n, p, h, m, rep, False, None, 0)
    system = lab.system(power=n, cap=cap)
    beta = middle_homology_dim(KoszulCell(system, p, h))
    return LinkageReport(n, p, h, m, rep, True, beta,
                         0 if beta == 0 else 1)

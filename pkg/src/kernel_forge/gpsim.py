"""Monte Carlo synthesis of Gaussian processes from kernel factorizations.

Two synthesis routes produce path ensembles whose covariance is a target
kernel: exact finite-dimensional sampling through a Cholesky factor, and
discretized stochastic-integral sums k_x(s_i) * W_i against independent
Wiener increments over a measure partition.  The duality check compares
both halves of the factorization identity K(x, y) = integral of
conj(k_x) k_y dmu — deterministic quadrature on one side, empirical
covariance on the other.

Randomness policy (pinned for bit-exact reproducibility): path p of a
run with master seed s draws from a Philox counter-based generator keyed
by (s, p).  Raw 64-bit words map to open-interval uniforms via
u = ((word >> 11) + 0.5) * 2^-53, and to normals via the inverse CDF
(scipy.special.ndtri).  Draws depend only on (seed, path, position), so
results are identical across block sizes, thread counts, and platforms.
Increments and frame coefficients stay real; complex-valued processes
arise only through complex feature functions, except for direct sampling
of a complex Gram matrix, which combines the real-embedding Cholesky
factor into an n x 2n complex factor M with M M^H = G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import ndtri

from .errors import NotPositiveDefiniteError, OutOfDomainError
from .factorize import cholesky, real_embedding
from .kernels import GramMatrix, KernelSpec, gram
from .measures import MeasureModel, cells, check_cell_alignment, measure_of_intervals

__all__ = [
    "FactorizationPair",
    "PathEnsemble",
    "RngSeedPolicy",
    "WienerIncrements",
    "DualityReport",
    "QuadraticVariationReport",
    "pair_ex1",
    "pair_ex2",
    "pair_ex3",
    "custom_pair",
    "sample_gaussian_vector",
    "wiener_increments",
    "cumulative_path",
    "ito_synthesize",
    "frame_synthesize",
    "empirical_covariance",
    "duality_check",
    "quadratic_variation",
    "transform_adjoint",
]

PATH_BLOCK = 2048
MAX_MATERIALIZED_ENTRIES = 1 << 27  # ~1 GiB of float64; beyond this, stream

_TWO_NEG53 = 2.0 ** -53


@dataclass(frozen=True)
class RngSeedPolicy:
    """Counter-based substream derivation: path p uses Philox key (seed, p).

    Substreams are statistically independent, and a path's draws are a
    pure function of (master_seed, path, position) — no sequential state
    crosses path boundaries.
    """

    master_seed: int

    def __post_init__(self):
        s = int(self.master_seed)
        if not 0 <= s < 2 ** 64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        object.__setattr__(self, "master_seed", s)

    def raw(self, path: int, count: int) -> np.ndarray:
        key = np.array([self.master_seed, path], dtype=np.uint64)
        return np.random.Philox(key=key).random_raw(count)

    def uniforms(self, path: int, count: int) -> np.ndarray:
        # (word >> 11) keeps 53 bits; +0.5 centers in (0, 1), so the
        # inverse CDF never sees 0 or 1
        return ((self.raw(path, count) >> np.uint64(11)) + 0.5) * _TWO_NEG53

    def normals(self, path: int, count: int) -> np.ndarray:
        return ndtri(self.uniforms(path, count))

    def normal_block(self, first_path: int, n_paths: int, count: int) -> np.ndarray:
        """(n_paths, count) standard normals; ndtri applied once per block."""
        words = np.empty((n_paths, count), dtype=np.uint64)
        for p in range(n_paths):
            words[p] = self.raw(first_path + p, count)
        return ndtri(((words >> np.uint64(11)) + 0.5) * _TWO_NEG53)


def _path_blocks(n_paths: int, block: int = PATH_BLOCK):
    start = 0
    while start < n_paths:
        yield start, min(block, n_paths - start)
        start += block


@dataclass(frozen=True, eq=False)
class PathEnsemble:
    """P sample paths over a fixed evaluation grid.

    Deterministic for fixed (seed, resolution, grid, P) regardless of
    block size or execution order.
    """

    grid: list
    paths: np.ndarray
    seed: int
    partition_resolution: Optional[int] = None

    @property
    def n_paths(self) -> int:
        return self.paths.shape[0]


@dataclass(frozen=True, eq=False)
class WienerIncrements:
    """Independent N(0, mass) increments over the cells of a partition.

    `matrix` is paths x cells; the measure and resolution ride along so
    cumulative sums can apply the cell-inclusion rule.
    """

    measure: MeasureModel
    resolution: int
    matrix: np.ndarray
    seed: int


# ---------------------------------------------------------------------------
# factorization pairs: feature functions + the measure they integrate against

_PAIR_KINDS = ("indicator", "szego", "cantor-product", "custom")


@dataclass(frozen=True)
class FactorizationPair:
    """Feature family k_x plus the measure mu of a kernel factorization.

    The built-in families realize the three canonical factorizations:
    indicator functions against Lebesgue measure (min kernel), the Szego
    features t -> 1/(1 - z e(-t)) against Lebesgue on the circle, and the
    truncated quartic products t -> prod (1 + z^{4^n} e(-4^n t)) against
    the Cantor measure.  A custom pair supplies feature(x, s_array)
    directly.
    """

    kind: str
    measure: MeasureModel
    trunc: int = 0
    feature: Optional[Callable] = None
    complex_valued: bool = False

    def __post_init__(self):
        if self.kind not in _PAIR_KINDS:
            raise ValueError(f"unknown pair kind {self.kind!r}")
        if self.kind == "custom" and self.feature is None:
            raise ValueError("custom pairs need a feature callable")
        if self.kind == "cantor-product" and self.trunc < 1:
            raise ValueError("cantor-product pairs need trunc >= 1")
        if self.kind in ("szego", "cantor-product"):
            object.__setattr__(self, "complex_valued", True)

    def feature_row(self, x, reps: np.ndarray) -> np.ndarray:
        """Evaluate k_x at every partition representative."""
        if self.kind == "indicator":
            return (reps <= float(x)).astype(float)
        if self.kind == "szego":
            return 1.0 / (1.0 - complex(x) * np.exp(-2j * np.pi * reps))
        if self.kind == "cantor-product":
            z = complex(x)
            out = np.ones(len(reps), dtype=complex)
            for n in range(self.trunc):
                p = 4 ** n
                out *= 1.0 + (z ** p) * np.exp(-2j * np.pi * p * reps)
            return out
        vals = np.asarray(self.feature(x, reps))
        return vals.astype(complex if self.complex_valued else float)

    def feature_matrix(self, grid, reps: np.ndarray) -> np.ndarray:
        rows = [self.feature_row(x, reps) for x in grid]
        return np.array(rows)


def pair_ex1(measure: Optional[MeasureModel] = None) -> FactorizationPair:
    """Indicator features chi_[0,x]; Lebesgue by default (min kernel)."""
    return FactorizationPair(
        kind="indicator", measure=measure or MeasureModel("lebesgue")
    )


def pair_ex2(measure: Optional[MeasureModel] = None) -> FactorizationPair:
    """Szego features on the circle; covariance 1/(1 - conj(z) w)."""
    return FactorizationPair(kind="szego", measure=measure or MeasureModel("lebesgue"))


def pair_ex3(trunc: int = 8, measure: Optional[MeasureModel] = None) -> FactorizationPair:
    """Quartic product features against the Cantor measure."""
    return FactorizationPair(
        kind="cantor-product",
        measure=measure or MeasureModel("cantor4"),
        trunc=trunc,
    )


def custom_pair(
    feature: Callable, measure: MeasureModel, complex_valued: bool = False
) -> FactorizationPair:
    return FactorizationPair(
        kind="custom", measure=measure, feature=feature, complex_valued=complex_valued
    )


# ---------------------------------------------------------------------------
# sampling operations


def _gram_entries(g):
    if isinstance(g, GramMatrix):
        return np.array(g.entries), list(g.points.points)
    arr = np.array(g)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr, list(range(arr.shape[0]))


def _complex_sampling_factor(arr: np.ndarray, ridge: float) -> np.ndarray:
    """n x 2n complex M with M @ M.conj().T = G, from the embedded factor."""
    lam = cholesky(real_embedding(arr), ridge=ridge).L
    n = arr.shape[0]
    return (lam[:n, :] + 1j * lam[n:, :]) / math.sqrt(2.0)


def sample_gaussian_vector(g, n_paths: int, seed: int = 0) -> PathEnsemble:
    """Exact Gaussian sampling with covariance G: each path is L @ Z.

    L is the Cholesky factor (with an automatic ridge of 1e-12 * trace
    retried once if the bare factorization fails); Z is a vector of iid
    standard normals from the path's substream.  Complex G samples
    conj(M) @ Z with M the combined embedding factor, which gives
    E(conj(V_i) V_j) = G_ij.
    """
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    arr, grid = _gram_entries(g)
    policy = RngSeedPolicy(seed)
    n = arr.shape[0]
    if n == 0 or not np.any(arr):
        zeros = np.zeros((n_paths, n), dtype=complex if np.iscomplexobj(arr) else float)
        return PathEnsemble(grid=grid, paths=zeros, seed=policy.master_seed)
    is_complex = np.iscomplexobj(arr)
    try:
        factor = (
            _complex_sampling_factor(arr, 0.0)
            if is_complex
            else cholesky(arr).L
        )
    except NotPositiveDefiniteError:
        ridge = 1e-12 * float(np.trace(arr).real)
        factor = (
            _complex_sampling_factor(arr, ridge)
            if is_complex
            else cholesky(arr, ridge=ridge).L
        )
    draws = factor.shape[1]
    mixer = factor.conj().T  # (draws, n); real case: plain transpose
    out = np.empty((n_paths, n), dtype=complex if is_complex else float)
    for start, count in _path_blocks(n_paths):
        z = policy.normal_block(start, count, draws)
        out[start : start + count] = z @ mixer
    return PathEnsemble(grid=grid, paths=out, seed=policy.master_seed)


def wiener_increments(
    m: MeasureModel, resolution: int, n_paths: int, seed: int = 0
) -> WienerIncrements:
    """Independent W_A ~ N(0, mu(A)) per partition cell, per path."""
    part = cells(m, resolution)
    policy = RngSeedPolicy(seed)
    n_cells = len(part.masses)
    if n_paths * n_cells > MAX_MATERIALIZED_ENTRIES:
        raise ValueError(
            f"{n_paths} x {n_cells} increments would exceed the materialization "
            "cap; lower the resolution or synthesize in streamed form"
        )
    roots = np.sqrt(part.masses)
    matrix = np.empty((n_paths, n_cells))
    for start, count in _path_blocks(n_paths):
        matrix[start : start + count] = policy.normal_block(start, count, n_cells) * roots
    return WienerIncrements(
        measure=m, resolution=resolution, matrix=matrix, seed=policy.master_seed
    )


def cumulative_path(increments: WienerIncrements, x_grid) -> PathEnsemble:
    """W([0, x]) by summing increments of cells with left endpoint <= x.

    W(0) = 0 by convention (the rule would otherwise pick up the first
    cell at x = 0).  Paths are constant across gaps of the support —
    cells carrying no mass contribute noise-free zeros only when the
    partition omits them, which the IFS partitions do.
    """
    grid = [float(x) for x in x_grid]
    if any(x < 0.0 or x > 1.0 for x in grid):
        raise OutOfDomainError("cumulative grid must lie in [0, 1]")
    part = cells(increments.measure, increments.resolution)
    lefts = part.lefts
    mask = np.array(
        [(lefts <= x) & (x > 0.0) for x in grid], dtype=float
    ).T  # cells x grid
    return PathEnsemble(
        grid=grid,
        paths=increments.matrix @ mask,
        seed=increments.seed,
        partition_resolution=increments.resolution,
    )


def ito_synthesize(
    pair: FactorizationPair,
    resolution: int,
    x_grid,
    n_paths: int,
    seed: int = 0,
) -> PathEnsemble:
    """Discretized stochastic integral V_x = sum_i k_x(s_i) W_{A_i}.

    s_i are the left-endpoint cell representatives; increments are
    streamed in path blocks so only the P x |grid| result materializes.
    """
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    part = cells(pair.measure, resolution)
    grid = list(x_grid)
    phi = pair.feature_matrix(grid, part.reps)  # grid x cells
    policy = RngSeedPolicy(seed)
    roots = np.sqrt(part.masses)
    mixer = (phi * roots).T  # cells x grid: z @ mixer = sum k(s_i) sqrt(m_i) z_i
    out = np.empty((n_paths, len(grid)), dtype=mixer.dtype)
    n_cells = len(part.masses)
    for start, count in _path_blocks(n_paths):
        z = policy.normal_block(start, count, n_cells)
        out[start : start + count] = z @ mixer
    return PathEnsemble(
        grid=grid, paths=out, seed=policy.master_seed, partition_resolution=resolution
    )


def frame_synthesize(g_functions, x_grid, n_paths: int, seed: int = 0) -> PathEnsemble:
    """V_x = sum_n g_n(x) zeta_n with iid standard normal zeta.

    The empirical covariance converges to sum_n conj(g_n(x)) g_n(y) in
    the conjugate-first convention used throughout.
    """
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    grid = list(x_grid)
    cols = np.array([[fn(x) for fn in g_functions] for x in grid])  # grid x N
    policy = RngSeedPolicy(seed)
    out = np.empty((n_paths, len(grid)), dtype=cols.dtype)
    n_fns = cols.shape[1]
    for start, count in _path_blocks(n_paths):
        z = policy.normal_block(start, count, n_fns)
        out[start : start + count] = z @ cols.T
    return PathEnsemble(grid=grid, paths=out, seed=policy.master_seed)


def empirical_covariance(e: PathEnsemble) -> np.ndarray:
    """C(x, y) = (1/P) sum_p conj(V_x^p) V_y^p — no mean centering.

    The upper triangle is computed once and mirrored with conjugation, so
    the result is Hermitian exactly.
    """
    if e.n_paths < 2:
        raise ValueError("need at least two paths for an empirical covariance")
    v = e.paths
    c = v.conj().T @ v / e.n_paths
    upper = np.triu(c)
    out = upper + np.triu(c, 1).conj().T
    if np.iscomplexobj(out):
        out[np.diag_indices_from(out)] = out.diagonal().real
    return out


@dataclass(frozen=True, eq=False)
class DualityReport:
    """Both halves of the factorization identity on a grid.

    quad_error: max |quadrature of conj(k_x) k_y - K(x, y)| (deterministic).
    mc_error:   max |empirical covariance - K| (stochastic).
    Tolerances ride along; `passed` requires both halves.
    """

    pair_kind: str
    kernel_family: str
    grid: list
    resolution: int
    n_paths: int
    seed: int
    quad_error: float
    quad_tol: float
    mc_error: float
    mc_tol: float

    @property
    def quad_pass(self) -> bool:
        return self.quad_error <= self.quad_tol

    @property
    def mc_pass(self) -> bool:
        return self.mc_error <= self.mc_tol

    @property
    def passed(self) -> bool:
        return self.quad_pass and self.mc_pass


def duality_check(
    pair: FactorizationPair,
    spec: KernelSpec,
    grid,
    resolution: int,
    n_paths: int,
    seed: int = 0,
    quad_tol: Optional[float] = None,
    mc_tol: Optional[float] = None,
) -> DualityReport:
    """Check that the pair factors the kernel, twice over.

    Deterministic half: left-endpoint quadrature of conj(k_x) k_y against
    the pair's measure, compared entrywise to the Gram matrix (default
    tolerance 2^-resolution).  Stochastic half: empirical covariance of
    the synthesized ensemble against the Gram matrix (default tolerance
    5 max|K| / sqrt(P), five standard errors).
    """
    grid = list(grid)
    target = gram(spec, grid).entries
    part = cells(pair.measure, resolution)
    phi = pair.feature_matrix(grid, part.reps)
    quad = (phi.conj() * part.masses) @ phi.T
    quad_error = float(np.max(np.abs(quad - target))) if len(grid) else 0.0

    ensemble = ito_synthesize(pair, resolution, grid, n_paths, seed)
    emp = empirical_covariance(ensemble)
    mc_error = float(np.max(np.abs(emp - target))) if len(grid) else 0.0

    max_k = float(np.max(np.abs(target))) if len(grid) else 1.0
    return DualityReport(
        pair_kind=pair.kind,
        kernel_family=spec.family,
        grid=grid,
        resolution=resolution,
        n_paths=n_paths,
        seed=RngSeedPolicy(seed).master_seed,
        quad_error=quad_error,
        quad_tol=float(quad_tol) if quad_tol is not None else 2.0 ** (-resolution),
        mc_error=mc_error,
        mc_tol=float(mc_tol) if mc_tol is not None else 5.0 * max_k / math.sqrt(n_paths),
    )


@dataclass(frozen=True, eq=False)
class QuadraticVariationReport:
    """Per-resolution quadratic variation of Wiener increments over A.

    Each row reports the empirical mean of Q = sum W_{A_i}^2 (targets
    mu(A)) and the empirical E|mu(A) - Q|^2 (the chi-square fluctuation
    2 sum m_i^2, halving per dyadic refinement).
    """

    interval: tuple
    mu: float
    resolutions: list
    mean_q: list
    e_sq: list
    n_cells: list
    n_paths: int
    seed: int


def quadratic_variation(
    m: MeasureModel, interval, resolutions, n_paths: int, seed: int = 0
) -> QuadraticVariationReport:
    """Sum of squared increments over the cells inside A, per resolution.

    A must be a union of cells at every listed resolution; per path the
    statistic Q concentrates on mu(A) as cells shrink.
    """
    a, b = (float(interval[0]), float(interval[1]))
    if not 0.0 <= a < b <= 1.0:
        raise OutOfDomainError("interval must satisfy 0 <= a < b <= 1")
    mu = measure_of_intervals(m, [(a, b)])
    policy = RngSeedPolicy(seed)
    mean_q, e_sq, cell_counts = [], [], []
    for r in resolutions:
        part = cells(m, int(r))
        idx = check_cell_alignment(m, [(a, b)], int(r))
        roots = np.sqrt(part.masses[idx])
        total = 0.0
        total_sq = 0.0
        for start, count in _path_blocks(n_paths):
            z = policy.normal_block(start, count, len(part.masses))[:, idx]
            q = np.sum((z * roots) ** 2, axis=1)
            total += float(np.sum(q))
            total_sq += float(np.sum((mu - q) ** 2))
        mean_q.append(total / n_paths)
        e_sq.append(total_sq / n_paths)
        cell_counts.append(int(len(idx)))
    return QuadraticVariationReport(
        interval=(a, b),
        mu=mu,
        resolutions=[int(r) for r in resolutions],
        mean_q=mean_q,
        e_sq=e_sq,
        n_cells=cell_counts,
        n_paths=n_paths,
        seed=policy.master_seed,
    )


def transform_adjoint(pair: FactorizationPair, f, x_grid, resolution: int) -> np.ndarray:
    """Adjoint transform by quadrature: (T* f)(x) = integral f conj(k_x) dmu."""
    part = cells(pair.measure, resolution)
    reps = part.reps
    try:
        fv = np.asarray(f(reps))
        if fv.shape != reps.shape:
            raise TypeError
    except TypeError:
        fv = np.array([f(s) for s in reps])
    phi = pair.feature_matrix(list(x_grid), reps)
    return (phi.conj() * part.masses) @ fv

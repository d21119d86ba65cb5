"""Kernel families, point sets, and Gram-matrix assembly.

Families
--------
==================  =========================  =====================================
family              domain                     K(x, y)
==================  =========================  =====================================
brownian-min        reals >= 0                 min(x, y)
brownian-line       all reals                  min(|x|,|y|) if x*y >= 0, else 0
green-1d            open interval (0, 1)       min(x, y) - x*y
shannon             all reals                  sinc(pi (x - y))
szego               open unit disk             1 / (1 - conj(z) w)
cantor-product(N)   open unit disk             prod_{n<N} (1 + (conj(z) w)^(4^n))
drury-arveson(k)    open unit ball of C^k      1 / (1 - sum_j conj(z_j) w_j)
overlap(mu)         finite unions of intervals mu(A intersect B)
==================  =========================  =====================================

Inner products are conjugate-linear in the FIRST argument throughout the
package; every family above satisfies eval(x, y) == conj(eval(y, x)).

The cantor-product family truncates an absolutely convergent infinite
product at N factors; the neglected tail satisfies
|log tail| <= sum_{n>=N} |conj(z)w|^(4^n) <= 2 |conj(z)w|^(4^N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    ChainError,
    DomainMismatchError,
    DuplicatePointError,
    OutOfDomainError,
)
from .measures import MeasureModel, measure_of_intervals

COMPLEX_FAMILIES = ("szego", "cantor-product", "drury-arveson")

FAMILIES = (
    "brownian-min",
    "brownian-line",
    "szego",
    "cantor-product",
    "shannon",
    "drury-arveson",
    "overlap",
    "green-1d",
)

# smallest positive-power magnitude worth multiplying in; below this the
# factor is 1 to double precision
_LOG_TINY = math.log(5e-324)


@dataclass(frozen=True)
class IntervalSet:
    """A finite union of disjoint closed intervals [a_i, b_i], ascending."""

    intervals: tuple

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        for a, b in ivs:
            if a > b:
                raise ValueError(f"interval [{a}, {b}] has a > b")
        for (a1, b1), (a2, b2) in zip(ivs, ivs[1:]):
            if b1 >= a2:
                raise ValueError("intervals must be pairwise disjoint and ascending")

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for a1, b1 in self.intervals:
            for a2, b2 in other.intervals:
                lo, hi = max(a1, a2), min(b1, b2)
                if lo < hi:
                    out.append((lo, hi))
        return IntervalSet(tuple(out))


@dataclass(frozen=True)
class KernelSpec:
    """A kernel family plus its parameters.

    trunc: number of product factors (cantor-product only), >= 1.
    dim: ambient complex dimension (drury-arveson only), >= 1.
    measure: the MeasureModel backing the overlap kernel.
    """

    family: str
    trunc: Optional[int] = None
    dim: Optional[int] = None
    measure: Optional[MeasureModel] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown kernel family: {self.family!r}")
        if self.family == "cantor-product":
            if self.trunc is None or self.trunc < 1:
                raise ValueError("cantor-product needs trunc >= 1")
        if self.family == "drury-arveson":
            if self.dim is None or self.dim < 1:
                raise ValueError("drury-arveson needs dim >= 1")
        if self.family == "overlap" and self.measure is None:
            raise ValueError("overlap needs a MeasureModel")

    @property
    def is_complex(self) -> bool:
        return self.family in COMPLEX_FAMILIES

    @property
    def domain(self) -> str:
        if self.family in ("szego", "cantor-product"):
            return "complex-disk"
        if self.family == "drury-arveson":
            return f"complex-vector({self.dim})"
        if self.family == "overlap":
            return "interval-set"
        if self.family == "green-1d":
            return "unit-interval"
        return "real-line"


def brownian_min() -> KernelSpec:
    return KernelSpec("brownian-min")


def brownian_line() -> KernelSpec:
    return KernelSpec("brownian-line")


def szego() -> KernelSpec:
    return KernelSpec("szego")


def cantor_product(trunc: int = 8) -> KernelSpec:
    return KernelSpec("cantor-product", trunc=trunc)


def shannon() -> KernelSpec:
    return KernelSpec("shannon")


def drury_arveson(dim: int = 2) -> KernelSpec:
    return KernelSpec("drury-arveson", dim=dim)


def overlap(measure: MeasureModel) -> KernelSpec:
    return KernelSpec("overlap", measure=measure)


def green_1d() -> KernelSpec:
    return KernelSpec("green-1d")


@dataclass(frozen=True)
class SampleSet:
    """Ordered distinct points, optionally with a nested chain of levels.

    chain, when given, is a list of point lists F1 c F2 c ... with strict
    nesting; the union of the chain equals `points`.
    """

    points: list
    domain: Optional[str] = None
    chain: Optional[list] = None

    def __post_init__(self):
        pts = list(self.points)
        object.__setattr__(self, "points", pts)
        keys = [point_key(p) for p in pts]
        if len(set(keys)) != len(keys):
            raise DuplicatePointError("sample set contains duplicate points")
        if self.chain is not None:
            levels = [list(level) for level in self.chain]
            object.__setattr__(self, "chain", levels)
            prev = set()
            for level in levels:
                cur = {point_key(p) for p in level}
                if len(cur) != len(level):
                    raise DuplicatePointError("chain level contains duplicate points")
                if not prev < cur:
                    raise ChainError("chain levels must be strictly nested")
                prev = cur
            if prev != set(keys):
                raise ChainError("union of chain levels must equal the point set")

    def __len__(self):
        return len(self.points)


def point_key(p):
    """Hashable exact-equality key for a point of any supported shape."""
    if isinstance(p, IntervalSet):
        return ("iset", p.intervals)
    arr = np.asarray(p)
    if arr.ndim == 0:
        return complex(arr)
    return ("vec", tuple(complex(v) for v in arr.ravel()))


def as_sample_set(points, domain: Optional[str] = None) -> SampleSet:
    if isinstance(points, SampleSet):
        return points
    return SampleSet(points=list(points), domain=domain)


@dataclass(frozen=True)
class GramMatrix:
    """n x n Hermitian kernel matrix over a SampleSet.

    entries is float64 for real families and complex128 otherwise; the
    upper triangle is computed once and mirrored with conjugation, so
    Hermitian symmetry is bitwise exact.
    """

    n: int
    entries: np.ndarray
    points: SampleSet

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.entries)


def _check_tag(spec: KernelSpec, tag: Optional[str]):
    if tag is None:
        return
    ok = {
        "brownian-min": ("real-line", "unit-interval"),
        "brownian-line": ("real-line",),
        "shannon": ("real-line",),
        "green-1d": ("unit-interval", "real-line"),
        "szego": ("complex-disk",),
        "cantor-product": ("complex-disk",),
        "overlap": ("interval-set",),
    }.get(spec.family, (spec.domain,))
    if tag not in ok:
        raise DomainMismatchError(
            f"points tagged {tag!r} cannot feed the {spec.family} kernel"
        )


def _real_scalar(p, family):
    arr = np.asarray(p)
    if arr.ndim != 0 or np.iscomplexobj(arr) and arr.imag != 0:
        raise DomainMismatchError(f"{family} expects real scalar points, got {p!r}")
    return float(arr.real if np.iscomplexobj(arr) else arr)


def _disk_scalar(p, family):
    arr = np.asarray(p)
    if arr.ndim != 0:
        raise DomainMismatchError(f"{family} expects complex scalar points, got {p!r}")
    z = complex(arr)
    if abs(z) >= 1.0:
        raise OutOfDomainError(f"{family} requires |z| < 1, got |z| = {abs(z)}")
    return z


def _sinc_pi(d: float) -> float:
    # exact at integer offsets so that integer Grams are exactly the identity
    if d == math.floor(d):
        return 1.0 if d == 0.0 else 0.0
    return math.sin(math.pi * d) / (math.pi * d)


def _truncated_product(u: complex, trunc: int) -> complex:
    prod = 1.0 + 0.0j
    mag = abs(u)
    if mag == 0.0:
        return prod
    for n in range(trunc):
        if (4 ** n) * math.log(mag) < _LOG_TINY:
            break  # remaining factors are 1 to double precision
        prod *= 1.0 + u ** (4 ** n)
    return prod


def eval_kernel(spec: KernelSpec, x, y):
    """K(x, y) for the given family; Hermitian in its two arguments."""
    fam = spec.family
    if fam == "brownian-min":
        a, b = _real_scalar(x, fam), _real_scalar(y, fam)
        if a < 0 or b < 0:
            raise OutOfDomainError("brownian-min requires x, y >= 0")
        return min(a, b)
    if fam == "brownian-line":
        a, b = _real_scalar(x, fam), _real_scalar(y, fam)
        return min(abs(a), abs(b)) if a * b >= 0 else 0.0
    if fam == "green-1d":
        a, b = _real_scalar(x, fam), _real_scalar(y, fam)
        if not (0.0 < a < 1.0 and 0.0 < b < 1.0):
            raise OutOfDomainError("green-1d requires points strictly inside (0, 1)")
        return min(a, b) - a * b
    if fam == "shannon":
        a, b = _real_scalar(x, fam), _real_scalar(y, fam)
        return _sinc_pi(a - b)
    if fam == "szego":
        z, w = _disk_scalar(x, fam), _disk_scalar(y, fam)
        return 1.0 / (1.0 - z.conjugate() * w)
    if fam == "cantor-product":
        z, w = _disk_scalar(x, fam), _disk_scalar(y, fam)
        return _truncated_product(z.conjugate() * w, spec.trunc)
    if fam == "drury-arveson":
        zx, zy = np.asarray(x, dtype=complex), np.asarray(y, dtype=complex)
        if zx.shape != (spec.dim,) or zy.shape != (spec.dim,):
            raise DomainMismatchError(
                f"drury-arveson({spec.dim}) expects complex vectors of length {spec.dim}"
            )
        for v in (zx, zy):
            if np.sum(np.abs(v) ** 2) >= 1.0:
                raise OutOfDomainError("drury-arveson requires sum |z_j|^2 < 1")
        return 1.0 / (1.0 - np.vdot(zx, zy))
    if fam == "overlap":
        if not isinstance(x, IntervalSet) or not isinstance(y, IntervalSet):
            raise DomainMismatchError("overlap expects IntervalSet points")
        return measure_of_intervals(spec.measure, x.intersect(y).intervals)
    raise ValueError(f"unknown family {fam!r}")  # pragma: no cover


def gram(spec: KernelSpec, points) -> GramMatrix:
    """Gram matrix K_F over a finite point set F.

    Entry (i, j) with i <= j is evaluated once; (j, i) is its conjugate,
    so the matrix is Hermitian bitwise.  Diagonal entries of complex
    families are real by the formulas; any residual rounding in their
    imaginary parts is dropped.
    """
    ss = as_sample_set(points)
    _check_tag(spec, ss.domain)
    n = len(ss)
    dtype = complex if spec.is_complex else float
    g = np.zeros((n, n), dtype=dtype)
    for i in range(n):
        for j in range(i, n):
            v = eval_kernel(spec, ss.points[i], ss.points[j])
            if i == j:
                g[i, i] = complex(v).real if spec.is_complex else v
            else:
                g[i, j] = v
                g[j, i] = np.conj(v)
    return GramMatrix(n=n, entries=g, points=ss)


def cross_gram(spec: KernelSpec, rows, cols) -> np.ndarray:
    """Rectangular kernel matrix K(rows_i, cols_j); no symmetry assumed."""
    rows, cols = list(rows), list(cols)
    dtype = complex if spec.is_complex else float
    out = np.zeros((len(rows), len(cols)), dtype=dtype)
    for i, x in enumerate(rows):
        for j, y in enumerate(cols):
            out[i, j] = eval_kernel(spec, x, y)
    return out


def validate_psd(g, tol: float = 1e-8):
    """(is_psd, min_eigenvalue) for a Hermitian matrix or GramMatrix.

    Verdict: min eigenvalue >= -tol * max(1, max diagonal).  The
    eigenvalue comes from the cyclic-Jacobi routine in `factorize`
    (complex input goes through the real embedding, which preserves the
    spectrum).  A 0 x 0 matrix is vacuously PSD with sentinel +inf.
    """
    from . import factorize

    arr = g.entries if isinstance(g, GramMatrix) else np.asarray(g)
    if arr.size == 0:
        return True, math.inf
    res = factorize.jacobi_eigs(arr)
    min_eig = float(res.eigenvalues[-1])
    scale = max(1.0, float(np.max(arr.diagonal().real)))
    return bool(min_eig >= -tol * scale), min_eig


@dataclass(frozen=True)
class OverlapNormReport:
    """Result of overlap_rkhs_norm: the L2 norm and the induced set function."""

    norm: float
    phi_integrals: list
    gram_norm_sq: float
    resolution: int

    @property
    def norm_sq(self) -> float:
        return self.norm ** 2


def overlap_rkhs_norm(
    measure: MeasureModel, phi, sets, resolution: Optional[int] = None
) -> OverlapNormReport:
    """Norm of the set function Phi(A) = integral over A of phi dmu.

    phi is piecewise constant on the partition cells at `resolution`
    (default: the measure's configured depth) and may be given as a
    per-cell value array or a callable evaluated at cell representatives.
    Each A in `sets` must be a union of whole cells.

    In the reproducing space of the overlap kernel, the norm of Phi
    equals the L2(mu) norm of phi; the report carries a cross-check of
    that identity computed through the overlap Gram on the cell
    indicator sets (diagonal, entries = cell masses).
    """
    from .measures import cells, check_cell_alignment

    res = measure.depth if resolution is None else resolution
    c = cells(measure, res)
    if callable(phi):
        vals = np.asarray([phi(r) for r in c.reps], dtype=float)
    else:
        vals = np.asarray(phi, dtype=float)
        if vals.shape != (len(c),):
            raise ValueError(
                f"phi must give one value per cell ({len(c)} cells at resolution {res})"
            )
    norm = math.sqrt(float(np.sum(c.masses * vals ** 2)))
    integrals = []
    for a in sets:
        if not isinstance(a, IntervalSet):
            a = IntervalSet(tuple(a))
        idx = check_cell_alignment(measure, a.intervals, res)
        integrals.append(float(np.sum(c.masses[idx] * vals[idx])))
    # cross-route: <h, K^-1 h> through the finite Gram of the overlap
    # kernel on the cell sets, with h_i = Phi(cell_i).  Built as the full
    # Gram (and solved) when small; for large partitions only the diagonal
    # is assembled, since disjoint cells make every off-diagonal entry 0.
    cell_sets = [IntervalSet(((float(l), float(r)),)) for l, r in zip(c.lefts, c.rights)]
    spec = overlap(measure)
    h = c.masses * vals
    if len(cell_sets) <= 64:
        kf = gram(spec, cell_sets).entries
        gram_norm_sq = float(h @ np.linalg.solve(kf, h))
    else:
        kdiag = np.array([eval_kernel(spec, s, s) for s in cell_sets])
        gram_norm_sq = float(np.sum(np.abs(h) ** 2 / kdiag))
    return OverlapNormReport(
        norm=norm, phi_integrals=integrals, gram_norm_sq=gram_norm_sq, resolution=res
    )

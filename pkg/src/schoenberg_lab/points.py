"""Point configurations in R^n: generators, separation, span dimension,
spherical-layer counts and empirical regularity diagnostics.

A :class:`PointSet` is immutable after construction and is always translated
so that its first point sits at the origin.  All analysis here is brute force
and exact on the finite configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import DegenerateInputError, DomainError, GenerationError


class PointSet:
    """Finite labeled configuration in R^n.

    Parameters
    ----------
    points : array_like, shape (N, n)
        Point coordinates, one point per row.  The whole configuration is
        translated so the first point becomes the origin.
    """

    def __init__(self, points):
        coords = np.asarray(points, dtype=float)
        if coords.ndim == 1:
            coords = coords[:, None]
        if coords.ndim != 2 or coords.shape[0] == 0:
            raise DegenerateInputError("PointSet needs a nonempty (N, n) array")
        if not np.all(np.isfinite(coords)):
            raise DomainError("PointSet coordinates must be finite")
        if np.unique(coords, axis=0).shape[0] != coords.shape[0]:
            raise DomainError("PointSet points must be distinct")
        coords = coords - coords[0]
        coords.setflags(write=False)
        self._coords = coords
        self._separation: float | None = None

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def dimension(self) -> int:
        """Ambient dimension n."""
        return self._coords.shape[1]

    def __len__(self) -> int:
        return self._coords.shape[0]

    def __repr__(self) -> str:
        return f"PointSet(N={len(self)}, n={self.dimension})"


def separation(ps: PointSet) -> float:
    """Minimum pairwise Euclidean distance d_* of the configuration."""
    if len(ps) < 2:
        raise DegenerateInputError("separation needs at least 2 points")
    if ps._separation is None:
        dist, _ = cKDTree(ps.coords).query(ps.coords, k=2)
        ps._separation = float(np.min(dist[:, 1]))
    return ps._separation


def span_dimension(ps: PointSet, tol: float = 1e-9) -> int:
    """Dimension of the linear span of the (translated) configuration.

    Singular values below ``tol`` times the largest one count as zero.
    """
    if tol <= 0.0:
        raise DomainError("span_dimension tolerance must be positive")
    sv = np.linalg.svd(ps.coords, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


@dataclass(frozen=True)
class LayerProfile:
    """Counts of points in the half-open spherical layers
    ``[m eps, (m+1) eps)`` around one center, for ``m = 0..M``."""

    center_index: int
    epsilon: float
    counts: tuple[int, ...]


def layer_counts(ps: PointSet, center_index: int, epsilon: float, M: int) -> LayerProfile:
    """Exact brute-force layer counts around ``ps.coords[center_index]``.

    Points on a layer boundary belong to the outer-indexed layer
    (half-open ``[m eps, (m+1) eps)`` classification).  With
    ``epsilon <= separation(ps)`` the zeroth layer contains only the center.
    """
    if epsilon <= 0.0:
        raise DomainError("layer_counts requires epsilon > 0")
    if not 0 <= center_index < len(ps):
        raise DomainError(f"center index {center_index} out of range")
    if M < 0:
        raise DomainError("layer_counts requires M >= 0")
    dist = np.linalg.norm(ps.coords - ps.coords[center_index], axis=1)
    layer = np.floor(dist / epsilon).astype(int)
    counts = np.bincount(layer[layer <= M], minlength=M + 1)
    return LayerProfile(center_index, epsilon, tuple(int(c) for c in counts))


def layer_bound(d: int, m: int) -> tuple[int, int]:
    """Upper bounds for the number of points of a separated set in layer m:
    the exact volume-packing bound ``(2m+3)^d - (2m-1)^d`` and the coarser
    ``d 5^d m^{d-1}``."""
    if d < 1 or m < 1:
        raise DomainError("layer_bound requires d >= 1 and m >= 1")
    return ((2 * m + 3) ** d - (2 * m - 1) ** d, d * 5**d * m ** (d - 1))


def delta_regularity_profile(
    ps: PointSet,
    delta: float,
    r_grid,
    centers=None,
) -> list[tuple[float, float]]:
    """Empirical lower-constant profile for annulus point counts.

    For each radius r returns ``min over centers of |{k : r <= |x_k - x_j| <
    r + delta}| / r^(d-1)``.  A strictly positive profile for r beyond some
    r0 is evidence of (not proof of) delta-regularity; boundary centers of a
    finite sample truncate their annuli, so callers interested in the bulk
    behaviour should restrict ``centers`` to interior indices.
    """
    if delta <= 0.0:
        raise DomainError("delta_regularity_profile requires delta > 0")
    if len(ps) < 2:
        raise DegenerateInputError("delta_regularity_profile needs >= 2 points")
    d = span_dimension(ps)
    if d < 1:
        raise DegenerateInputError("configuration must span at least one dimension")
    idx = range(len(ps)) if centers is None else centers
    profile = []
    for r in r_grid:
        if r <= 0.0:
            raise DomainError("radii must be positive")
        best = math.inf
        for j in idx:
            dist = np.linalg.norm(ps.coords - ps.coords[j], axis=1)
            count = int(np.sum((dist >= r) & (dist < r + delta)))
            best = min(best, count / r ** (d - 1))
        profile.append((float(r), float(best)))
    return profile


# -- generators ----------------------------------------------------------------


def lattice(n: int, scale: float, box) -> PointSet:
    """Scaled integer lattice ``scale * Z^n`` intersected with a closed box.

    ``box`` is either one ``(lo, hi)`` pair applied to every axis or a
    sequence of n pairs.
    """
    if n < 1:
        raise DomainError("lattice requires n >= 1")
    if scale <= 0.0:
        raise DomainError("lattice requires scale > 0")
    box = np.asarray(box, dtype=float)
    if box.shape == (2,):
        box = np.tile(box, (n, 1))
    if box.shape != (n, 2) or np.any(box[:, 0] > box[:, 1]):
        raise DomainError("box must be (lo, hi) or n such pairs with lo <= hi")
    axes = [
        scale * np.arange(math.ceil(lo / scale), math.floor(hi / scale) + 1)
        for lo, hi in box
    ]
    if any(a.size == 0 for a in axes):
        raise GenerationError("box contains no lattice points")
    grid = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grid], axis=1)
    return PointSet(pts)


def toeplitz_line(n: int, direction, count: int) -> PointSet:
    """Equally spaced points ``0, e, 2e, ...`` along a unit direction in R^n."""
    if count < 1:
        raise DomainError("toeplitz_line requires count >= 1")
    e = np.asarray(direction, dtype=float)
    if e.shape != (n,) or not np.all(np.isfinite(e)):
        raise DomainError("direction must be a finite vector of length n")
    norm = np.linalg.norm(e)
    if norm == 0.0:
        raise DomainError("direction must be nonzero")
    e = e / norm
    return PointSet(np.arange(count)[:, None] * e[None, :])


def toeplitz_like(gaps) -> PointSet:
    """One-dimensional configuration with prescribed consecutive gaps.

    The gaps must be positive and bounded (uniformly discrete with a finite
    upper gap), the defining property of a Toeplitz-like sequence.
    """
    gaps = np.asarray(gaps, dtype=float)
    if gaps.ndim != 1 or gaps.size == 0:
        raise DomainError("gaps must be a nonempty 1-D sequence")
    if not np.all(np.isfinite(gaps)) or np.any(gaps <= 0.0):
        raise DomainError("gaps must be positive and finite")
    xs = np.concatenate([[0.0], np.cumsum(gaps)])
    return PointSet(xs[:, None])


def quadratic_gaps(count: int) -> PointSet:
    """Points ``0, 1, 4, 9, ...`` on a line: consecutive gaps 2k-1 grow without
    bound, so distant pairs separate (the Fredholm-regime test configuration)."""
    if count < 1:
        raise DomainError("quadratic_gaps requires count >= 1")
    ks = np.arange(count, dtype=float)
    return PointSet((ks * ks)[:, None])


def jittered_separated(
    n: int, count: int, d_target: float, seed: int, side: float | None = None
) -> PointSet:
    """Dart-throwing sample of ``count`` points with pairwise distances
    >= ``d_target`` in a box of the given (or automatically sized) side
    length (seeded, reproducible).

    The rejection budget is ``1000 * count`` darts; exceeding it (e.g. for a
    box too small to hold the requested configuration) raises
    :class:`GenerationError`.
    """
    if n < 1 or count < 1:
        raise DomainError("jittered_separated requires n >= 1 and count >= 1")
    if d_target <= 0.0:
        raise DomainError("jittered_separated requires d_target > 0")
    rng = np.random.default_rng(seed)
    if side is None:
        side = d_target * (2.0 * count ** (1.0 / n) + 2.0)
    elif side <= 0.0:
        raise DomainError("jittered_separated requires side > 0")
    accepted = np.empty((count, n))
    accepted[0] = rng.uniform(0.0, side, size=n)
    n_acc = 1
    budget = 1000 * count
    while n_acc < count and budget > 0:
        budget -= 1
        cand = rng.uniform(0.0, side, size=n)
        if np.min(np.linalg.norm(accepted[:n_acc] - cand, axis=1)) >= d_target:
            accepted[n_acc] = cand
            n_acc += 1
    if n_acc < count:
        raise GenerationError(
            f"could not place {count} points at separation {d_target} "
            f"within {1000 * count} darts"
        )
    return PointSet(accepted)


# -- CSV interface -------------------------------------------------------------


def save_csv(ps: PointSet, path) -> None:
    """Write one point per row with header ``x1,...,xn`` (17 significant digits)."""
    header = ",".join(f"x{i + 1}" for i in range(ps.dimension))
    with open(path, "w", encoding="ascii") as fh:
        fh.write(header + "\n")
        for row in ps.coords:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def load_csv(path) -> PointSet:
    """Read a point set written by :func:`save_csv` (the configuration is
    re-translated so its first point is the origin)."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        names = header.split(",")
        if names != [f"x{i + 1}" for i in range(len(names))]:
            raise DomainError(f"unexpected CSV header {header!r}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.shape[1] != len(names):
        raise DomainError("CSV row width does not match header")
    return PointSet(data)

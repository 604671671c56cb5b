"""Spanning-set entropy estimation and Li-Yorke pair search on tori.

This is the falsification oracle for the exact pipeline: it can refute an
exact entropy value at desk scale but never certify one.  Dynamics are run
on the uniform rational grid (j_1/R, ..., j_d/R); an integer matrix maps the
grid to itself, so every orbit point is exact (an integer vector mod R) and
floats appear only when distances are compared against epsilon.

The growth rate of the minimal cardinality of sets whose Bowen-metric balls
cover the torus is bracketed greedily: a scan-order cover gives the upper
counts, a 2*epsilon-separated greedy packing gives the lower counts, and the
entropy estimate is the fitted log-growth of the upper counts over the last
half of the time range.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionError, DomainError, ParameterError
from .torus import TorusEndo, entropy as exact_entropy

_MAX_GRID_CELLS = 1 << 24
_MAX_BALL_CELLS = 5 * 10**7
_SCAN_CHUNK = 1 << 13


@dataclass(frozen=True)
class GridDynamics:
    """Integer matrix acting on the rational grid of a torus of dim <= 3."""

    dim: int
    matrix: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows) -> "GridDynamics":
        rows = [[int(x) for x in r] for r in rows]
        dim = len(rows)
        if dim == 0 or any(len(r) != dim for r in rows):
            raise DimensionError("grid dynamics needs a nonempty square integer matrix")
        if dim > 3:
            raise ParameterError("grid estimation is limited to tori of dimension <= 3")
        return GridDynamics(dim, tuple(tuple(r) for r in rows))

    @staticmethod
    def from_torus(endo: TorusEndo) -> "GridDynamics":
        return GridDynamics.from_rows([list(r) for r in endo.matrix])

    def torus_endo(self) -> TorusEndo:
        return TorusEndo.from_rows([list(r) for r in self.matrix])


@dataclass(frozen=True)
class SpanningEstimate:
    n_values: tuple[int, ...]
    spanning_counts: tuple[int, ...]    # greedy cover at epsilon (upper)
    separated_counts: tuple[int, ...]   # greedy 2*epsilon-separated packing (lower)
    epsilon: float
    resolution: int
    slope: float
    slope_stderr: float
    slope_band: tuple[float, float]


def _circle_distance_ok(points: np.ndarray, resolution: int, eps_cells: int) -> np.ndarray:
    """Mask of rows whose max-coordinate circle distance is <= eps_cells."""
    folded = np.minimum(points, resolution - points)
    return folded.max(axis=1) <= eps_cells


def _initial_ball(dim: int, resolution: int, eps_cells: int) -> np.ndarray:
    """All difference vectors (mod resolution) within the epsilon box."""
    if (2 * eps_cells + 1) ** dim > _MAX_BALL_CELLS:
        raise ParameterError("epsilon ball does not fit in memory at this resolution")
    line = np.arange(-eps_cells, eps_cells + 1, dtype=np.int64)
    grids = np.meshgrid(*([line] * dim), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1) % resolution


def _flat_indices(center: np.ndarray, offsets: np.ndarray, resolution: int) -> np.ndarray:
    shifted = (center[None, :] + offsets) % resolution
    flat = shifted[:, 0]
    for k in range(1, shifted.shape[1]):
        flat = flat * resolution + shifted[:, k]
    return flat


def _next_unset(mask: np.ndarray, start: int) -> int:
    i = start
    size = mask.size
    while i < size:
        j = min(i + _SCAN_CHUNK, size)
        block = mask[i:j]
        k = int(np.argmin(block))
        if not block[k]:
            return i + k
        i = j
    return size


def _unflatten(flat: int, dim: int, resolution: int) -> np.ndarray:
    coords = []
    for _ in range(dim):
        coords.append(flat % resolution)
        flat //= resolution
    return np.array(list(reversed(coords)), dtype=np.int64)


def _greedy_count(dim: int, resolution: int, offsets: np.ndarray) -> int:
    """Greedy cover of the grid by translates of the offset set, scanning in
    lexicographic order.  The same loop is the greedy packing count when the
    offsets describe the 2*epsilon ball."""
    total = resolution**dim
    covered = np.zeros(total, dtype=bool)
    count = 0
    ptr = 0
    while True:
        ptr = _next_unset(covered, ptr)
        if ptr >= total:
            return count
        center = _unflatten(ptr, dim, resolution)
        covered[_flat_indices(center, offsets, resolution)] = True
        count += 1


def spanning_entropy_estimate(dynamics: GridDynamics, n_max: int, epsilon: float,
                              resolution: int) -> SpanningEstimate:
    """Bracket the spanning-set growth of the dynamics under the Bowen metric.

    `resolution` is the number of grid points per axis and must be finer
    than epsilon/4.  The fitted slope uses the upper counts over the last
    half of the time range; the band is two standard errors of the fit.
    """
    if n_max < 2:
        raise ParameterError("n_max must be at least 2")
    if not 0 < epsilon < 0.5:
        raise ParameterError("epsilon must lie in (0, 1/2)")
    if resolution <= 4 / epsilon:
        raise ParameterError("resolution too coarse: need resolution > 4/epsilon")
    if resolution**dynamics.dim > _MAX_GRID_CELLS:
        raise ParameterError("grid does not fit in memory at this resolution")
    largest = max(abs(x) for row in dynamics.matrix for x in row)
    if largest * resolution * dynamics.dim >= 1 << 62:
        raise ParameterError("matrix entries too large for exact int64 grid arithmetic")
    eps_cells = int(epsilon * resolution)
    matrix = np.array(dynamics.matrix, dtype=np.int64)

    # Bowen balls as difference sets, refined one time step at a time.
    ball = _initial_ball(dynamics.dim, resolution, eps_cells)
    ball2 = _initial_ball(dynamics.dim, resolution, min(2 * eps_cells, resolution // 2))
    image, image2 = ball.copy(), ball2.copy()
    n_values, upper, lower = [], [], []
    for n in range(1, n_max + 1):
        if n > 1:
            image = (image @ matrix.T) % resolution
            keep = _circle_distance_ok(image, resolution, eps_cells)
            ball, image = ball[keep], image[keep]
            image2 = (image2 @ matrix.T) % resolution
            keep2 = _circle_distance_ok(image2, resolution, 2 * eps_cells)
            ball2, image2 = ball2[keep2], image2[keep2]
        n_values.append(n)
        upper.append(_greedy_count(dynamics.dim, resolution, ball))
        lower.append(_greedy_count(dynamics.dim, resolution, ball2))
    slope, stderr = _fit_log_growth(n_values, upper)
    return SpanningEstimate(
        tuple(n_values), tuple(upper), tuple(lower), epsilon, resolution,
        slope, stderr, (slope - 2 * stderr, slope + 2 * stderr))


def _fit_log_growth(ns, counts) -> tuple[float, float]:
    """Least-squares slope of log(count) against n over the last half."""
    start = len(ns) // 2
    xs = np.array(ns[start:], dtype=float)
    ys = np.log(np.array(counts[start:], dtype=float))
    if xs.size < 2:
        return 0.0, 0.0
    xbar, ybar = xs.mean(), ys.mean()
    sxx = float(((xs - xbar) ** 2).sum())
    slope = float(((xs - xbar) * (ys - ybar)).sum() / sxx)
    residuals = ys - (ybar + slope * (xs - xbar))
    dof = max(xs.size - 2, 1)
    stderr = math.sqrt(float((residuals**2).sum()) / dof / sxx)
    return slope, stderr


# ---------------------------------------------------------------------------
# bundle inequality

@dataclass(frozen=True)
class BundleInequalityReport:
    total_slope: float
    base_slope: float
    fiber_entropy: float
    bound: float            # base_slope + fiber_entropy
    slack: float            # 20% of the bound
    passes: bool
    exact_total: float
    exact_base: float


def bundle_inequality_check(total: GridDynamics, base: GridDynamics, fiber: TorusEndo,
                            n_max: int = 6, epsilon: float = 0.05,
                            resolution: int | None = None) -> BundleInequalityReport:
    """Numerical check of entropy(total) <= entropy(base) + entropy(fiber)
    for a torus bundle: the total matrix must be block-triangular with the
    base block on top, zero upper-right block, and the fiber action below.
    """
    a, b = base.dim, fiber.dim
    if total.dim != a + b:
        raise DomainError("total dimension must be base dim + fiber dim")
    mat = total.matrix
    for i in range(a):
        for j in range(a, a + b):
            if mat[i][j] != 0:
                raise DomainError("total matrix is not block-triangular over the base")
    if any(mat[i][j] != base.matrix[i][j] for i in range(a) for j in range(a)):
        raise DomainError("top-left block differs from the base matrix")
    if any(mat[a + i][a + j] != fiber.matrix[i][j] for i in range(b) for j in range(b)):
        raise DomainError("bottom-right block differs from the fiber matrix")

    if resolution is None:
        resolution = _auto_resolution(total, n_max, epsilon)
    total_est = spanning_entropy_estimate(total, n_max, epsilon, resolution)
    base_res = min(resolution, _grid_cap_for_dim(base.dim))
    base_est = spanning_entropy_estimate(base, n_max, epsilon, base_res)
    fiber_h = exact_entropy(fiber).value if fiber.dim else 0.0
    bound = base_est.slope + fiber_h
    slack = 0.2 * bound
    passes = total_est.slope <= bound + slack
    return BundleInequalityReport(
        total_slope=total_est.slope,
        base_slope=base_est.slope,
        fiber_entropy=fiber_h,
        bound=bound,
        slack=slack,
        passes=passes,
        exact_total=exact_entropy(total.torus_endo()).value,
        exact_base=exact_entropy(base.torus_endo()).value,
    )


def _grid_cap_for_dim(dim: int) -> int:
    return {1: 1 << 22, 2: 1 << 12, 3: 1 << 8}[dim]


def _auto_resolution(dynamics: GridDynamics, n_max: int, epsilon: float) -> int:
    """Power-of-two resolution keeping the deepest Bowen ball a few cells
    wide, capped by memory; saturated counts flatten the fitted slope, so
    explicit resolutions are preferable for sharp checks."""
    h = exact_entropy(dynamics.torus_endo()).value
    target = (8.0 * math.exp(h * (n_max - 1))) ** (1.0 / dynamics.dim) / (2 * epsilon)
    r = 1
    while r < target:
        r <<= 1
    floor = 1
    while floor <= 4 / epsilon:
        floor <<= 1
    return max(min(r, _grid_cap_for_dim(dynamics.dim)), floor)


# ---------------------------------------------------------------------------
# Li-Yorke pair search

@dataclass(frozen=True)
class PairCandidate:
    """Heuristic evidence only: empirical orbit-distance extremes of one
    sampled pair, never a proof of a Li-Yorke pair."""

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    liminf_estimate: float
    limsup_estimate: float


def li_yorke_search(dynamics: GridDynamics, horizon: int = 64, pair_budget: int = 64,
                    denominator: int = 4096, eps_low: float = 1e-4,
                    eps_high: float = 0.25, seed: int = 0) -> list[PairCandidate]:
    """Sample rational pairs and track their orbit distances exactly.

    A pair is a candidate when its minimal distance over the horizon drops
    below eps_low and its maximal distance exceeds eps_high.  The default
    eps_low is below 1/denominator, so "proximal" requires the orbits to
    actually collide on the sample grid; isometric and shear-like systems
    therefore return nothing, while collapsing dyadic differences (as under
    the doubling map) are found immediately.
    """
    if horizon <= 0 or pair_budget <= 0:
        raise ParameterError("horizon and pair budget must be positive")
    if denominator < 2:
        raise ParameterError("denominator must be at least 2")
    rng = random.Random(seed)
    q = denominator
    matrix = [list(r) for r in dynamics.matrix]
    candidates = []
    for _ in range(pair_budget):
        a = tuple(rng.randrange(q) for _ in range(dynamics.dim))
        b = tuple(rng.randrange(q) for _ in range(dynamics.dim))
        if a == b:
            continue
        delta = [(x - y) % q for x, y in zip(a, b)]
        lo, hi = 1.0, 0.0
        for _ in range(horizon):
            dist = max(min(x, q - x) for x in delta) / q
            lo, hi = min(lo, dist), max(hi, dist)
            delta = [sum(matrix[i][j] * delta[j] for j in range(dynamics.dim)) % q
                     for i in range(dynamics.dim)]
        if lo < eps_low and hi > eps_high:
            candidates.append(PairCandidate(
                tuple(Fraction(x, q) for x in a),
                tuple(Fraction(x, q) for x in b),
                lo, hi))
    return candidates

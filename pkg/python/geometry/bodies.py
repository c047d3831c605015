"""Convex bodies containing the origin and their radial / membership oracles.

A body is one of ``Ball``, ``HPolytope``, ``Polygon2D``, ``TruncatedCone`` or
the lazy Minkowski node ``Combination``. All of them are frozen and hashable,
so measure results can be cached per body.

The radial function is ρ_K(u) = sup{t >= 0 : t u ∈ K}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

from python.errors import (
    ConvergenceError,
    DimensionMismatch,
    InvalidParams,
    UnsupportedCombination,
)

UNIT_TOL = 1e-12
MEMBER_TOL = 1e-12
BISECT_TOL = 1e-10
BISECT_MAX_ITER = 200

# sup{t >= 0 : t u in K}; may be +inf
RadialValue = float


@dataclass(frozen=True)
class Direction:
    coords: tuple

    def __post_init__(self) -> None:
        coords = tuple(float(c) for c in self.coords)
        if len(coords) < 1:
            raise InvalidParams("direction needs at least one coordinate")
        norm = math.sqrt(math.fsum(c * c for c in coords))
        if abs(norm - 1.0) > UNIT_TOL:
            raise InvalidParams(f"direction must be a unit vector, |coords| = {norm!r}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_vector(cls, vector: Sequence[float]) -> "Direction":
        arr = np.asarray(vector, dtype=float)
        norm = float(np.linalg.norm(arr))
        if norm == 0.0 or not math.isfinite(norm):
            raise InvalidParams("cannot normalize a zero or non-finite vector")
        return cls(tuple(arr / norm))

    @classmethod
    def from_angle(cls, phi: float) -> "Direction":
        return cls((math.cos(phi), math.sin(phi)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True)
class Ball:
    radius: float
    dim: int = 2

    def __post_init__(self) -> None:
        r = float(self.radius)
        if not (r > 0.0) or math.isnan(r):
            raise InvalidParams(f"ball radius must be positive, got {self.radius!r}")
        if int(self.dim) < 1:
            raise InvalidParams(f"ball dimension must be >= 1, got {self.dim!r}")
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "dim", int(self.dim))


@dataclass(frozen=True)
class HPolytope:
    """{x : a_i . x <= b_i}; every b_i >= 0 so the origin is contained."""

    normals: tuple
    offsets: tuple

    def __post_init__(self) -> None:
        normals = tuple(tuple(float(v) for v in row) for row in self.normals)
        offsets = tuple(float(b) for b in self.offsets)
        if not normals:
            raise InvalidParams("hpolytope needs at least one row")
        if len(normals) != len(offsets):
            raise InvalidParams("hpolytope rows and offsets differ in length")
        dim = len(normals[0])
        if dim < 1 or any(len(row) != dim for row in normals):
            raise InvalidParams("hpolytope rows must share one positive dimension")
        for i, (row, b) in enumerate(zip(normals, offsets)):
            if not all(math.isfinite(v) for v in row) or not math.isfinite(b):
                raise InvalidParams(f"hpolytope row {i} is not finite")
            if all(v == 0.0 for v in row):
                raise InvalidParams(f"hpolytope row {i} has a zero normal")
            if b < 0.0:
                raise InvalidParams(f"hpolytope row {i} has b < 0; the origin must be contained")
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)

    @classmethod
    def from_arrays(cls, a: Iterable[Sequence[float]], b: Iterable[float]) -> "HPolytope":
        return cls(tuple(tuple(row) for row in a), tuple(b))

    @property
    def dim(self) -> int:
        return len(self.normals[0])

    def matrix(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.normals, dtype=float), np.asarray(self.offsets, dtype=float)

    def scaled(self, c: float) -> "HPolytope":
        return HPolytope(self.normals, tuple(c * b for b in self.offsets))

    def as_polygon(self) -> "Polygon2D":
        if self.dim != 2:
            raise DimensionMismatch(f"only 2-D hpolytopes convert to polygons, got n={self.dim}")
        a, b = self.matrix()
        pts = []
        for i in range(len(b)):
            for j in range(i + 1, len(b)):
                m = np.array([a[i], a[j]])
                det = float(np.linalg.det(m))
                if abs(det) < 1e-14:
                    continue
                x = np.linalg.solve(m, np.array([b[i], b[j]]))
                if np.all(a @ x <= b + 1e-10 * max(1.0, float(np.max(np.abs(b))))):
                    pts.append(x)
        if not _normals_span_plane(a):
            raise UnsupportedCombination("hpolytope is unbounded; no polygon form")
        if len(pts) < 3:
            raise UnsupportedCombination("hpolytope has fewer than three vertices")
        return Polygon2D.from_points(np.array(pts))


def _normals_span_plane(a: np.ndarray) -> bool:
    angles = np.sort(np.arctan2(a[:, 1], a[:, 0]))
    gaps = np.diff(np.concatenate([angles, [angles[0] + 2.0 * math.pi]]))
    return bool(np.max(gaps) < math.pi - 1e-12)


@dataclass(frozen=True)
class Polygon2D:
    """Counterclockwise convex polygon with the origin inside or on the boundary."""

    vertices: tuple
    edge_normals: tuple = field(init=False, repr=False, compare=False)
    edge_offsets: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(verts) < 3:
            raise InvalidParams("polygon needs at least three vertices")
        if not all(math.isfinite(c) for v in verts for c in v):
            raise InvalidParams("polygon vertices must be finite")
        scale = max(max(abs(c) for v in verts for c in v), 1e-300)
        area2 = 0.0
        normals, offsets = [], []
        k = len(verts)
        for i in range(k):
            x0, y0 = verts[i]
            x1, y1 = verts[(i + 1) % k]
            x2, y2 = verts[(i + 2) % k]
            area2 += x0 * y1 - x1 * y0
            turn = (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1)
            if turn < -1e-12 * scale * scale:
                raise InvalidParams(f"polygon is not convex and counterclockwise at vertex {(i + 1) % k}")
            ex, ey = x1 - x0, y1 - y0
            length = math.hypot(ex, ey)
            if length <= 1e-14 * scale:
                raise InvalidParams(f"polygon has a repeated vertex at index {i}")
            nx, ny = ey / length, -ex / length
            h = nx * x0 + ny * y0
            if h < -1e-12 * scale:
                raise InvalidParams("polygon must contain the origin")
            normals.append((nx, ny))
            offsets.append(max(h, 0.0))
        if area2 <= 0.0:
            raise InvalidParams("polygon vertices must be counterclockwise with positive area")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edge_normals", tuple(normals))
        object.__setattr__(self, "edge_offsets", tuple(offsets))

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]]) -> "Polygon2D":
        pts = np.asarray(points, dtype=float)
        try:
            hull = ConvexHull(pts)
        except QhullError as exc:
            raise InvalidParams(f"points do not span a polygon: {exc}") from exc
        return cls(tuple(tuple(pts[i]) for i in hull.vertices))

    @property
    def dim(self) -> int:
        return 2

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    def scale(self) -> float:
        return max(math.hypot(x, y) for x, y in self.vertices)

    def support(self, u: Sequence[float]) -> float:
        return max(u[0] * x + u[1] * y for x, y in self.vertices)

    def contains(self, x: Sequence[float], tol: float = MEMBER_TOL) -> bool:
        slack = tol * max(1.0, self.scale())
        return all(nx * x[0] + ny * x[1] <= h + slack
                   for (nx, ny), h in zip(self.edge_normals, self.edge_offsets))

    def distance(self, x: Sequence[float]) -> float:
        if self.contains(x, tol=0.0):
            return 0.0
        px, py = float(x[0]), float(x[1])
        best = math.inf
        k = len(self.vertices)
        for i in range(k):
            ax, ay = self.vertices[i]
            bx, by = self.vertices[(i + 1) % k]
            ex, ey = bx - ax, by - ay
            t = ((px - ax) * ex + (py - ay) * ey) / (ex * ex + ey * ey)
            t = min(1.0, max(0.0, t))
            best = min(best, math.hypot(px - ax - t * ex, py - ay - t * ey))
        return best


@dataclass(frozen=True)
class TruncatedCone:
    """{x : x_n >= |x'| tan(alpha) - eps} ∩ B(R), x' the first n-1 coordinates."""

    alpha: float
    eps: float = 0.0
    R: float = math.inf
    dim: int = 2

    def __post_init__(self) -> None:
        alpha, eps, r = float(self.alpha), float(self.eps), float(self.R)
        if not 0.0 < alpha < math.pi / 2.0:
            raise InvalidParams(f"cone angle must lie in (0, pi/2), got {self.alpha!r}")
        if not eps >= 0.0 or math.isinf(eps):
            raise InvalidParams(f"cone drop must be finite and >= 0, got {self.eps!r}")
        if not r > 0.0:
            raise InvalidParams(f"cone truncation radius must be positive, got {self.R!r}")
        if int(self.dim) < 2:
            raise InvalidParams(f"cone dimension must be >= 2, got {self.dim!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "R", r)
        object.__setattr__(self, "dim", int(self.dim))

    @property
    def truncated(self) -> bool:
        return math.isfinite(self.R)


@dataclass(frozen=True)
class Combination:
    lam: float
    left: "Body"
    right: "Body"

    def __post_init__(self) -> None:
        lam = float(self.lam)
        if not 0.0 <= lam <= 1.0:
            raise InvalidParams(f"combination weight must lie in [0, 1], got {self.lam!r}")
        if body_dim(self.left) != body_dim(self.right):
            raise DimensionMismatch(
                f"cannot combine bodies of dimension {body_dim(self.left)} and {body_dim(self.right)}"
            )
        object.__setattr__(self, "lam", lam)

    @property
    def dim(self) -> int:
        return body_dim(self.left)


Body = Union[Ball, HPolytope, Polygon2D, TruncatedCone, Combination]
BODY_TYPES = (Ball, HPolytope, Polygon2D, TruncatedCone, Combination)


def body_dim(body: Body) -> int:
    if not isinstance(body, BODY_TYPES):
        raise InvalidParams(f"not a body: {type(body).__name__}")
    return int(body.dim)


def describe(body: Body) -> str:
    if isinstance(body, Ball):
        return f"ball(R={body.radius:g},n={body.dim})"
    if isinstance(body, HPolytope):
        return f"hpolytope(rows={len(body.offsets)},n={body.dim})"
    if isinstance(body, Polygon2D):
        return f"polygon2d(k={len(body.vertices)})"
    if isinstance(body, TruncatedCone):
        return f"cone(alpha={body.alpha:g},eps={body.eps:g},R={body.R:g},n={body.dim})"
    return f"combination({body.lam:g};{describe(body.left)};{describe(body.right)})"


def _as_unit(theta, dim: int) -> np.ndarray:
    if isinstance(theta, Direction):
        arr = theta.as_array()
    else:
        arr = np.asarray(theta, dtype=float)
        norm = float(np.linalg.norm(arr))
        if norm == 0.0:
            raise InvalidParams("direction must be nonzero")
        arr = arr / norm
    if arr.shape != (dim,):
        raise DimensionMismatch(f"direction has dimension {arr.size}, body has {dim}")
    return arr


def _halfspace_radial(normals: np.ndarray, offsets: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    dots = dirs @ normals.T
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(dots > 0.0, offsets[None, :] / np.where(dots > 0.0, dots, 1.0), np.inf)
    return np.min(ratios, axis=1)


def _cone_radial(cone: TruncatedCone, dirs: np.ndarray) -> np.ndarray:
    r = np.linalg.norm(dirs[:, :-1], axis=1)
    z = dirs[:, -1]
    d = r * math.tan(cone.alpha) - z
    with np.errstate(divide="ignore", invalid="ignore"):
        hit = np.where(d > 0.0, cone.eps / np.where(d > 0.0, d, 1.0), np.inf)
    return np.minimum(hit, cone.R)


def radial_many(body: Body, dirs: np.ndarray) -> np.ndarray:
    """Radial function at each row of ``dirs`` (unit vectors)."""
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    dim = body_dim(body)
    if dirs.shape[1] != dim:
        raise DimensionMismatch(f"directions have dimension {dirs.shape[1]}, body has {dim}")
    if isinstance(body, Ball):
        return np.full(dirs.shape[0], body.radius)
    if isinstance(body, HPolytope):
        a, b = body.matrix()
        norms = np.linalg.norm(a, axis=1)
        return _halfspace_radial(a / norms[:, None], b / norms, dirs)
    if isinstance(body, Polygon2D):
        return _halfspace_radial(np.asarray(body.edge_normals), np.asarray(body.edge_offsets), dirs)
    if isinstance(body, TruncatedCone):
        return _cone_radial(body, dirs)
    return np.array([_combination_radial(body, row) for row in dirs])


def radial(body: Body, theta) -> RadialValue:
    unit = _as_unit(theta, body_dim(body))
    return float(radial_many(body, unit[None, :])[0])


def outer_radius(body: Body) -> float:
    """An upper bound on max |x| over the body."""
    if isinstance(body, Ball):
        return body.radius
    if isinstance(body, Polygon2D):
        return body.scale()
    if isinstance(body, TruncatedCone):
        return body.R
    if isinstance(body, HPolytope):
        if body.dim == 2:
            return body.as_polygon().scale()
        return _hpolytope_box_radius(body)
    return body.lam * outer_radius(body.left) + (1.0 - body.lam) * outer_radius(body.right)


def _hpolytope_box_radius(body: HPolytope) -> float:
    a, b = body.matrix()
    total = 0.0
    for i in range(body.dim):
        extent = 0.0
        for sign in (1.0, -1.0):
            c = np.zeros(body.dim)
            c[i] = -sign
            res = linprog(c, A_ub=a, b_ub=b, bounds=[(None, None)] * body.dim, method="highs")
            if res.status == 3:
                return math.inf
            if res.status != 0:
                raise ConvergenceError(f"bounding box LP failed: {res.message}")
            extent = max(extent, abs(float(res.fun)))
        total += extent * extent
    return math.sqrt(total)


def _combination_radial(body: Combination, theta: np.ndarray) -> float:
    lam = body.lam
    if lam == 1.0:
        return float(radial_many(body.left, theta[None, :])[0])
    if lam == 0.0:
        return float(radial_many(body.right, theta[None, :])[0])
    rho_k = float(radial_many(body.left, theta[None, :])[0])
    rho_l = float(radial_many(body.right, theta[None, :])[0])
    lo = lam * rho_k + (1.0 - lam) * rho_l
    hi = lo + 2.0 * (outer_radius(body.left) + outer_radius(body.right))
    if not math.isfinite(hi):
        raise UnsupportedCombination("ray shooting needs bounded operands")
    if not membership(body, lo * theta):
        raise ConvergenceError("bisection bracket: star combination point is not a member")
    if membership(body, hi * theta):
        raise ConvergenceError("bisection bracket: outer point is a member")
    tol = BISECT_TOL * max(1.0, hi)
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if membership(body, mid * theta):
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(f"radial bisection did not reach tolerance {tol:g}")


def _polygonal(body: Body) -> Polygon2D | None:
    if isinstance(body, Polygon2D):
        return body
    if isinstance(body, HPolytope) and body.dim == 2:
        return body.as_polygon()
    return None


def _scaled_distance(body: Body, x: np.ndarray, lam: float) -> float:
    """dist(x, lam * body)."""
    poly = _polygonal(body)
    if poly is not None:
        return lam * poly.distance(x / lam)
    if isinstance(body, Ball):
        return max(0.0, float(np.linalg.norm(x)) - lam * body.radius)
    raise UnsupportedCombination(f"no exact distance oracle for {describe(body)} against a ball")


def _polygon_pair_member(lam: float, p: Polygon2D, q: Polygon2D, x: np.ndarray) -> bool:
    slack = MEMBER_TOL * max(1.0, p.scale(), q.scale())
    for u in p.edge_normals + q.edge_normals:
        h = lam * p.support(u) + (1.0 - lam) * q.support(u)
        if u[0] * x[0] + u[1] * x[1] > h + slack:
            return False
    return True


def _hpolytope_pair_member(lam: float, k: HPolytope, l: HPolytope, x: np.ndarray) -> bool:
    """Feasibility of y in lam K with x - y in (1 - lam) L, by maximal common slack."""
    a1, b1 = k.matrix()
    a2, b2 = l.matrix()
    n1 = np.linalg.norm(a1, axis=1)
    n2 = np.linalg.norm(a2, axis=1)
    a1, b1 = a1 / n1[:, None], lam * b1 / n1
    a2, b2 = a2 / n2[:, None], (1.0 - lam) * b2 / n2
    dim = k.dim
    a_ub = np.vstack([
        np.hstack([a1, np.ones((a1.shape[0], 1))]),
        np.hstack([-a2, np.ones((a2.shape[0], 1))]),
    ])
    b_ub = np.concatenate([b1, b2 - a2 @ x])
    c = np.zeros(dim + 1)
    c[-1] = -1.0
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * dim + [(None, 1.0)], method="highs")
    if res.status != 0:
        raise ConvergenceError(f"membership LP failed: {res.message}")
    tol = MEMBER_TOL * max(1.0, float(np.max(np.abs(np.concatenate([b1, b2])))), float(np.linalg.norm(x)))
    y = np.asarray(res.x[:dim])
    witness = min(float(np.min(b1 - a1 @ y)), float(np.min(b2 - a2 @ (x - y))))
    if witness >= -tol:
        return True
    return -float(res.fun) >= -tol


def membership(body: Body, x) -> bool:
    x = np.asarray(x, dtype=float)
    dim = body_dim(body)
    if x.shape != (dim,):
        raise DimensionMismatch(f"point has dimension {x.size}, body has {dim}")
    if isinstance(body, Ball):
        return float(np.linalg.norm(x)) <= body.radius * (1.0 + MEMBER_TOL)
    if isinstance(body, HPolytope):
        a, b = body.matrix()
        slack = MEMBER_TOL * max(1.0, float(np.max(np.abs(b))))
        return bool(np.all(a @ x <= b + slack * np.linalg.norm(a, axis=1)))
    if isinstance(body, Polygon2D):
        return body.contains(x)
    if isinstance(body, TruncatedCone):
        scale = max(1.0, body.eps, float(np.linalg.norm(x)))
        r = float(np.linalg.norm(x[:-1]))
        if x[-1] < r * math.tan(body.alpha) - body.eps - MEMBER_TOL * scale:
            return False
        return float(np.linalg.norm(x)) <= body.R * (1.0 + MEMBER_TOL)
    return _combination_member(body, x)


def _combination_member(body: Combination, x: np.ndarray) -> bool:
    lam, k, l = body.lam, body.left, body.right
    if lam == 1.0:
        return membership(k, x)
    if lam == 0.0:
        return membership(l, x)
    if isinstance(k, Combination) or isinstance(l, Combination):
        raise UnsupportedCombination("nested combinations have no membership oracle")
    if isinstance(k, Ball) and isinstance(l, Ball):
        return float(np.linalg.norm(x)) <= (lam * k.radius + (1.0 - lam) * l.radius) * (1.0 + MEMBER_TOL)
    if isinstance(l, Ball):
        return _scaled_distance(k, x, lam) <= (1.0 - lam) * l.radius * (1.0 + MEMBER_TOL) + MEMBER_TOL
    if isinstance(k, Ball):
        return _scaled_distance(l, x, 1.0 - lam) <= lam * k.radius * (1.0 + MEMBER_TOL) + MEMBER_TOL
    if isinstance(k, TruncatedCone) and isinstance(l, TruncatedCone):
        collapsed = combine(lam, k, l)
        if isinstance(collapsed, Combination):
            raise UnsupportedCombination("cones with different angle or truncation do not combine")
        return membership(collapsed, x)
    pk, pl = _polygonal(k), _polygonal(l)
    if pk is not None and pl is not None:
        return _polygon_pair_member(lam, pk, pl, x)
    if isinstance(k, HPolytope) and isinstance(l, HPolytope):
        return _hpolytope_pair_member(lam, k, l, x)
    raise UnsupportedCombination(f"no membership route for {describe(k)} with {describe(l)}")


def combine(lam: float, k: Body, l: Body) -> Body:
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise InvalidParams(f"combination weight must lie in [0, 1], got {lam!r}")
    if body_dim(k) != body_dim(l):
        raise DimensionMismatch(f"cannot combine bodies of dimension {body_dim(k)} and {body_dim(l)}")
    if lam == 1.0:
        return k
    if lam == 0.0:
        return l
    if isinstance(k, Ball) and isinstance(l, Ball):
        return Ball(lam * k.radius + (1.0 - lam) * l.radius, k.dim)
    if (
        isinstance(k, TruncatedCone)
        and isinstance(l, TruncatedCone)
        and k.alpha == l.alpha
        and k.R == l.R
    ):
        # exact before truncation: lam(C - e1 e_n) + (1-lam)(C - e2 e_n) = C - (lam e1 + (1-lam) e2) e_n
        return TruncatedCone(k.alpha, lam * k.eps + (1.0 - lam) * l.eps, k.R, k.dim)
    return Combination(lam, k, l)

import math
from typing import List, Tuple

import numpy as np

from python.errors import InvalidParams
from python.geometry.bodies import Polygon2D

MERGE_TOL = 1e-12
WEDGE_MAX_HALF_ANGLE = math.pi / 8.0
WEDGE_ARC_VERTICES = 256


def _cross(ax: float, ay: float, bx: float, by: float) -> float:
    return ax * by - ay * bx


def _start_lowest(points: np.ndarray) -> np.ndarray:
    idx = min(range(len(points)), key=lambda i: (points[i][1], points[i][0]))
    return np.roll(points, -idx, axis=0)


def _drop_degenerate(points: List[Tuple[float, float]], scale: float) -> List[Tuple[float, float]]:
    tol_len = MERGE_TOL * scale
    tol_area = MERGE_TOL * scale * scale
    pts = list(points)
    changed = True
    while changed and len(pts) > 3:
        changed = False
        out: List[Tuple[float, float]] = []
        k = len(pts)
        for i in range(k):
            prev = out[-1] if out else pts[i - 1]
            cur = pts[i]
            nxt = pts[(i + 1) % k]
            if math.hypot(cur[0] - prev[0], cur[1] - prev[1]) <= tol_len:
                changed = True
                continue
            turn = _cross(cur[0] - prev[0], cur[1] - prev[1], nxt[0] - cur[0], nxt[1] - cur[1])
            if abs(turn) <= tol_area:
                changed = True
                continue
            out.append(cur)
        if len(out) < 3:
            break
        pts = out
    return pts


def polygon_minkowski(lam: float, p: Polygon2D, q: Polygon2D) -> Polygon2D:
    """lam P + (1 - lam) Q by merging the edge sequences of the scaled polygons."""
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise InvalidParams(f"combination weight must lie in [0, 1], got {lam!r}")
    if lam == 1.0:
        return p
    if lam == 0.0:
        return q

    a = _start_lowest(lam * p.as_array())
    b = _start_lowest((1.0 - lam) * q.as_array())
    na, nb = len(a), len(b)
    a_ext = np.vstack([a, a[:2]])
    b_ext = np.vstack([b, b[:2]])

    merged: List[Tuple[float, float]] = []
    i = j = 0
    while i < na or j < nb:
        s = a_ext[i] + b_ext[j]
        merged.append((float(s[0]), float(s[1])))
        ea = a_ext[i + 1] - a_ext[i]
        eb = b_ext[j + 1] - b_ext[j]
        turn = _cross(ea[0], ea[1], eb[0], eb[1])
        if turn >= 0.0 and i < na:
            i += 1
        if turn <= 0.0 and j < nb:
            j += 1

    scale = max(max(math.hypot(x, y) for x, y in merged), 1e-300)
    return Polygon2D(tuple(_drop_degenerate(merged, scale)))


def rotate_polygon(poly: Polygon2D, angle: float) -> Polygon2D:
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    return Polygon2D(tuple(map(tuple, poly.as_array() @ rot.T)))


def square(half_side: float = 1.0) -> Polygon2D:
    h = float(half_side)
    return Polygon2D(((-h, -h), (h, -h), (h, h), (-h, h)))


def sector_polygon(phi: float, delta: float, radius: float, arc_vertices: int = WEDGE_ARC_VERTICES) -> Polygon2D:
    """Circular sector {|angle - phi| <= delta, r <= radius} with the arc as a polyline."""
    if not 0.0 < delta <= WEDGE_MAX_HALF_ANGLE:
        raise InvalidParams(f"wedge half-angle must lie in (0, pi/8], got {delta!r}")
    if not radius > 0.0:
        raise InvalidParams(f"wedge radius must be positive, got {radius!r}")
    angles = np.linspace(phi - delta, phi + delta, int(arc_vertices))
    arc = [(radius * math.cos(t), radius * math.sin(t)) for t in angles]
    return Polygon2D(tuple([(0.0, 0.0)] + arc))


def random_polygon(rng: np.random.Generator,
                   min_vertices: int = 4,
                   max_vertices: int = 12,
                   r_min: float = 0.2,
                   r_max: float = 3.0) -> Polygon2D:
    while True:
        k = int(rng.integers(min_vertices, max_vertices + 1))
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=k))
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2.0 * math.pi]]))
        if float(np.max(gaps)) >= math.pi - 1e-9:
            continue
        radii = rng.uniform(r_min, r_max, size=k)
        pts = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
        return Polygon2D.from_points(pts)


def random_polygon_pairs(count: int, seed: int) -> List[Tuple[Polygon2D, Polygon2D]]:
    rng = np.random.default_rng(seed)
    return [(random_polygon(rng), random_polygon(rng)) for _ in range(int(count))]


def vertex_angles(poly: Polygon2D) -> List[float]:
    return sorted(math.atan2(y, x) % (2.0 * math.pi) for x, y in poly.vertices if math.hypot(x, y) > 0.0)


def brute_force_sum(lam: float, p: Polygon2D, q: Polygon2D) -> Polygon2D:
    """Hull of all pairwise scaled vertex sums."""
    pts = [lam * np.asarray(u) + (1.0 - lam) * np.asarray(v) for u in p.vertices for v in q.vertices]
    return Polygon2D.from_points(np.asarray(pts))

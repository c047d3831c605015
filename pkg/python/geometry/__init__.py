from python.geometry.bodies import (
    Ball,
    Body,
    Combination,
    Direction,
    HPolytope,
    Polygon2D,
    TruncatedCone,
    combine,
    membership,
    radial,
)
from python.geometry.polygons import polygon_minkowski

__all__ = [
    "Ball",
    "Body",
    "Combination",
    "Direction",
    "HPolytope",
    "Polygon2D",
    "TruncatedCone",
    "combine",
    "membership",
    "polygon_minkowski",
    "radial",
]

"""Deterministic treasure hunt in the plane with angular hints."""

from .baseline import lower_bound_walk, spiral_search
from .geom import EPS, AngularHint, HalfPlane, Line, Point, StraightRect
from .hints import BoundedAngleAdversary, ForbiddenAngleAdversary, HalfPlaneAdversary
from .mosaic import treasure_hunt_bounded
from .reduce import reduce_rectangle, treasure_hunt_halfplane
from .scan import rectangle_scan
from .simulator import Episode, export_episode, import_episode

__all__ = [
    "EPS",
    "AngularHint",
    "BoundedAngleAdversary",
    "Episode",
    "ForbiddenAngleAdversary",
    "HalfPlane",
    "HalfPlaneAdversary",
    "Line",
    "Point",
    "StraightRect",
    "export_episode",
    "import_episode",
    "lower_bound_walk",
    "rectangle_scan",
    "reduce_rectangle",
    "spiral_search",
    "treasure_hunt_bounded",
    "treasure_hunt_halfplane",
]

from .domains import Ball, Box, ConvexPolygon, Domain, Horn, make_domain
from .functionals import (
    CellField,
    DistanceField,
    MomentIntegral,
    boundary_distance,
    cell_centers,
    cell_field,
    directional_distance,
    distance_field,
    field_values,
    horn_tail_moment,
    inside,
    mean_distance,
    moment_integral,
    sublevel_volume,
)
from .quadrature import SphereQuadrature, sphere_area, sphere_quadrature

__all__ = [
    "Ball",
    "Box",
    "CellField",
    "ConvexPolygon",
    "DistanceField",
    "Domain",
    "Horn",
    "MomentIntegral",
    "SphereQuadrature",
    "boundary_distance",
    "cell_centers",
    "cell_field",
    "directional_distance",
    "distance_field",
    "field_values",
    "horn_tail_moment",
    "inside",
    "make_domain",
    "mean_distance",
    "moment_integral",
    "sphere_area",
    "sphere_quadrature",
    "sublevel_volume",
]

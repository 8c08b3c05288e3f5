"""Motion planners: paths, rules, the explicit constructions and their combinators."""
from .core import OPEN_COVER, PARTITION, Planner, Rule, dispatch, endpoint_residual, path_to_json, planner_to_json
from .extract import extract_fixed_point_free, extract_via_retract
from .general import join_planner, section_from_nullhomotopies, trace_path, transport_planner
from .lift import equal_height_lift, lift_planner, plateau_heights, project_planner
from .line import c2_line_planner, line_sigma_planner, sigma_path
from .paths import ParamPath, Segment, chain, concat_paths, stack_paths
from .product import graded_product_planner, restrict_to_configurations
from .sphere import geodesic_path, slerp, sphere_planner

__all__ = [
    "OPEN_COVER", "PARTITION", "ParamPath", "Planner", "Rule", "Segment",
    "c2_line_planner", "chain", "concat_paths", "dispatch", "endpoint_residual",
    "equal_height_lift", "extract_fixed_point_free", "extract_via_retract",
    "geodesic_path", "graded_product_planner", "join_planner", "lift_planner",
    "line_sigma_planner", "path_to_json", "planner_to_json", "plateau_heights",
    "project_planner", "restrict_to_configurations", "section_from_nullhomotopies",
    "sigma_path", "slerp", "sphere_planner", "stack_paths", "trace_path",
    "transport_planner",
]

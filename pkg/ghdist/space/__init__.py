from .validate import validate_space, check_matrix, ValidationReport, Issue
from .metric import (point_set_distance, is_eps_net, hausdorff_distance, scale_space, diameter,
                     eccentricities, are_isometric, find_isometry, subset, whole, one_point_space,
                     permute_space)
from .generate import generate_space, random_space, ngon_space, line_space, simplex_space
from .io import read_space, write_space, parse_space, format_space

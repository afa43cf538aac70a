from .pointmap import (map_distortion, covering_radius, is_eps_isometry, is_isometric_map,
                       correspondence_to_map, make_map, identity_map)
from .search import min_distortion_map, edwards_dE, hat_dGH, map_table

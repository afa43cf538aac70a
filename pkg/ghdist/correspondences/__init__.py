from .relation import (distortion, relation_distortion, enumerate_correspondences, gh_lower_bound,
                       nearest_point_correspondence, coverage_masks)
from .solver import gh_exact, gh_exact_oracle, greedy_anchor, branch_order

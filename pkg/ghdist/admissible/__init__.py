from .glue import (glue_from_correspondence, sample_admissible, assemble, glued_hausdorff,
                   random_correspondence)
from .midpoint import midpoint_space, interpolate, interpolation_correspondence

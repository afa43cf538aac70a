from .linf import (kuratowski_embed, supnorm_distances, supnorm_hausdorff, translate,
                   coordinate_descent, align_upper_bound, aligned_images)

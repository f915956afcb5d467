"""Q-valued configurations, the G metric and one-point Lipschitz extensions."""
from ._kernels import BACKEND
from .errors import (CapacityError, CoincidenceError, DimensionMismatchError,
                     InstanceFormatError, NonLipschitzError, QValuedError, SizeLimitError)
from .extend import (ExtendOptions, ExtensionResult, certified_lower_bound, certify_grid,
                     nearest_point_extension, solve_one_point, weighted_one_center)
from .lipmap import AnchoredMap, lip_constant, stretch_at
from .qspace import (Matching, QConfig, canonicalize, g_distance, g_distance_bruteforce,
                     optimal_matching)

__version__ = "0.1.0"

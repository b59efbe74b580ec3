"""Exact jet computations for cusped tangential families and their envelopes."""
__version__ = "0.1.0"

from .jets import (DEFAULT_ORDER, CoordChangeJet, MapJet, NonInvertibleError, NotAGermError, OrderMismatchError,
                   PlaneGermJet, SpaceGermJet, TruncatedSeries, compose, differentiate, invert_coordinate_change,
                   jacobian_determinant, linear_combine, multiply)
from .paramring import ParamPoly
from .orbitspace import (ExactnessError, check_inclusion_4, check_inclusion_5, determinacy_degree,
                         du_plessis_determinacy, extended_codimension, is_miniversal, order_reduction_check,
                         tangent_generators)
from .ctf import (CTFData, GenericityError, build_family, classify_graph, genericity, graph_map, psi,
                  reduce_to_normal_form, special_curve)
from .envelope import (Branch, EnvelopeResult, classify_branch, critical_branches, envelope_of, numeric_envelope,
                       self_intersection, tangency_order)
from .bifurcate import (BifurcationEvent, DeformationFamily, SurfaceClass, classify_branch_surface, h_branch_series,
                        h_family, k_family, miniversal_family, specialize, sweep, tangential_deformation_check)

"""Complex volumes of boundary-parabolic representations from link diagrams.

The pipeline: parse an oriented PD code, check an arc coloring by parabolic
elements, extend it to a shadow-coloring, take ``w_k = det(p, s_k)`` as the
solution of the hyperbolicity equations of the diagram's potential function,
and read off ``vol + i cs`` from ``W_0``.
"""

from .coloring import (
    ShadowColoring,
    check_lemma1,
    find_p,
    find_region_coloring,
    propagate_regions,
    verify_arc_coloring,
)
from .diagram import LinkDiagram, crossing_sign, parse_diagram, quadrant_regions
from .dilog import dilog
from .errors import (
    ArcColoringError,
    ColoringSearchError,
    DegenerateConfigurationError,
    DiagramError,
    PipelineCheckError,
    ShadowVolError,
    SingularPointError,
)
from .potential import build_potential, eval_W, eval_W0, grad_W, residuals
from .quandle import INFINITY, ParabolicElement, cross_ratio, det2, hopf, mobius_apply, star, star_inv
from .volume import VolumeReport, check_cross_ratios, check_nondegeneracy, complex_volume, solution_w0

__version__ = "0.1.0"

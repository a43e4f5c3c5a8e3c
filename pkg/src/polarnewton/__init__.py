"""Newton polygons, degeneracy loci and topology of general polar curves of
plane branches of genus one and two, with an exact-arithmetic kernel, a
numeric Newton-Puiseux oracle, and a seeded verification harness."""

__version__ = "0.1.0"

from .algebra import (  # noqa: F401
    A,
    B,
    MPoly,
    UPoly,
    Var,
    X,
    Y,
    Z,
    avar,
    bvar,
    discriminant,
    is_squarefree,
    mpoly_gcd,
    resultant,
    squarefree_part,
    squarefree_split,
    strip_content,
)
from .cfrac import ContinuedFraction, ConvergentSeq, continued_fraction, convergents  # noqa: F401
from .curves import (  # noqa: F401
    FamilyG1,
    FamilyG2,
    ParseError,
    PlaneSeries,
    PolarParams,
    generic_member_g1,
    generic_member_g2,
    parse_series,
    polar,
    substitute,
)
from .genus1 import (  # noqa: F401
    DegeneracyLocus,
    degeneracy_locus_g1,
    edge_term,
    min_x_exponent,
    polar_model_g1,
    predicted_polygon_g1,
    predicted_side_polynomial_g1,
    predicted_topology_g1,
)
from .genus2 import (  # noqa: F401
    Classification,
    InvalidSemigroupError,
    classify_nondegenerate,
    degeneracy_locus_g2,
    edge_term_parts_g2,
    polar_model_g2,
    predicted_polygon_g2,
    predicted_side_polynomial_g2,
    predicted_topology_g2,
    tail_min_x_exponent,
)
from .newton import (  # noqa: F401
    BranchClass,
    NewtonPolygon,
    Side,
    TopologyReport,
    associated_polynomial,
    is_nondegenerate,
    minkowski_sum,
    newton_polygon,
    oka_decomposition,
    oka_report,
    side_polynomial,
)
from .puiseux import (  # noqa: F401
    InsufficientDepthError,
    PuiseuxBranch,
    intersection_numeric,
    puiseux_expand,
    reconstruction_residual,
    semigroup_from_char,
)
from .verify import SampleConfig, run_power_degeneracy, run_verification  # noqa: F401

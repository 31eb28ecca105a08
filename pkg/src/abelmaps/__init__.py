"""Combinatorics of degree-2 Abel maps for nodal curves.

From a dual graph, a polarization, a multidegree and a marked vertex,
compute the correction function, the quasistable choices at each pair of
edges, the singular locus, and symmetric blowup sequences resolving it.
"""

__version__ = "0.1.0"

from .blowup import (
    BlowupSequence,
    Verdict,
    center_of,
    is_symmetric,
    order_of,
    search_minimal_symmetric,
    verify,
)
from .graph import (
    DualGraph,
    SubdividedGraph,
    boundary_count,
    connected_subsets,
    mask_of,
    parse_intersection_matrix,
    subdivide,
    vertex_flow,
    vertices_of,
)
from .quasistability import (
    AbelData,
    CorrectionTable,
    correction_table,
    is_quasistable,
    is_quasistable_subdivided,
    quasistable_representative,
    quasistable_twist,
    unit_multidegree,
)
from .resolution import (
    PairChoice,
    SingularLocusReport,
    admissible_at,
    build_s_functions,
    mirror,
    quasistable_at,
    reduce,
    singular_locus,
)
from .strata import (
    StratumSignature,
    enumerate_stratum_representatives,
    same_stratum_signature,
    signature,
)

"""Exact combinatorics of square-tiled surfaces (origamis).

An origami on ``N`` unit squares is a pair of permutations ``(h, v)`` of
``1..N`` generating a transitive group: ``h(i)`` is the square to the right of
``i`` and ``v(i)`` the square above it.
"""

from .perm import Permutation
from .origami import (
    IntransitiveError,
    NotBijectiveError,
    Origami,
    OrigamiError,
    OrigamiSyntaxError,
    StratumSignature,
    canonical_form,
    format_origami,
    genus,
    holonomy_lattice,
    holonomy_vectors,
    is_isomorphic,
    is_normal,
    monodromy_order,
    one_square_torus,
    parse_origami,
    quaternion_origami,
    stratum,
    vertex_permutation,
)
from .sl2 import (
    HORIZONTAL,
    VERTICAL,
    Direction,
    Matrix2Z,
    OrbitRecord,
    apply_matrix,
    apply_S,
    apply_S_inv,
    apply_T,
    apply_T_inv,
    apply_word,
    direction_matrix,
    directions,
    disk_param,
    factor,
    orbit,
    reduce_to_horizontal,
    word_matrix,
)
from .cylinders import (
    Cylinder,
    CylinderDecomposition,
    NoSingularityError,
    cylinders_in_direction,
    horizontal_cylinders,
    horizontal_saddle_connections,
    ray_modulus,
    ray_modulus_exact,
    saddle_ratio,
)
from .oracle import trace_direction_oracle
from .properties import (
    BalanceReport,
    GenusError,
    NoWitnessError,
    PowerOfTwoBound,
    corners_property,
    direction_height_profile,
    finiteness_bound,
    has_balanced_heights,
    is_balanced_horizontal,
    regular_corner_circle,
    vorobets_witness,
)
from .search import (
    CorpusEntry,
    CorpusError,
    SearchLimitError,
    SearchReport,
    classify_orbits,
    enumerate_origamis,
    load_corpus,
    origami_id,
    run_survey,
    save_corpus,
)

__version__ = "0.1.0"

__all__ = [
    "apply_matrix",
    "apply_S",
    "apply_S_inv",
    "apply_T",
    "apply_T_inv",
    "apply_word",
    "BalanceReport",
    "canonical_form",
    "classify_orbits",
    "corners_property",
    "CorpusEntry",
    "CorpusError",
    "Cylinder",
    "CylinderDecomposition",
    "cylinders_in_direction",
    "Direction",
    "direction_height_profile",
    "direction_matrix",
    "directions",
    "disk_param",
    "enumerate_origamis",
    "factor",
    "finiteness_bound",
    "format_origami",
    "genus",
    "GenusError",
    "has_balanced_heights",
    "holonomy_lattice",
    "holonomy_vectors",
    "HORIZONTAL",
    "horizontal_cylinders",
    "horizontal_saddle_connections",
    "IntransitiveError",
    "is_balanced_horizontal",
    "is_isomorphic",
    "is_normal",
    "load_corpus",
    "Matrix2Z",
    "monodromy_order",
    "NoSingularityError",
    "NotBijectiveError",
    "NoWitnessError",
    "one_square_torus",
    "orbit",
    "OrbitRecord",
    "Origami",
    "origami_id",
    "OrigamiError",
    "OrigamiSyntaxError",
    "parse_origami",
    "Permutation",
    "PowerOfTwoBound",
    "quaternion_origami",
    "ray_modulus",
    "ray_modulus_exact",
    "reduce_to_horizontal",
    "regular_corner_circle",
    "run_survey",
    "saddle_ratio",
    "save_corpus",
    "SearchLimitError",
    "SearchReport",
    "stratum",
    "StratumSignature",
    "trace_direction_oracle",
    "vertex_permutation",
    "VERTICAL",
    "vorobets_witness",
    "word_matrix",
]

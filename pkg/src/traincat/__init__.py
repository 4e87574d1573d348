"""Diagram calculus for double cosets of infinite symmetric group pairs.

Permutation tuples become decorated combinatorial objects (arc chips,
polygon surfaces, chamber complexes, bipartite diagrams), double cosets
multiply by gluing, and the closed-form characters are validated against
exact group-level and dense tensor oracles.
"""

from .perm_core import (
    ColoredPerm,
    Matrix01,
    Point,
    block_swap,
    corner,
    format_perm,
    matrix01_mul,
    parse_perm,
)
from .coset_oracle import (
    PairSpec,
    coset_product_rep,
    enumerate_double_cosets_finite,
    product_with_width,
    random_element,
    same_coset_finite,
    stabilization_check,
)
from .chips import (
    Chip,
    chip_canon,
    chip_from_pair,
    chip_involution,
    chip_mul,
    chip_thoma_eval,
    identity_chip,
)
from .surfaces import (
    EquippedSurface,
    SurfaceComponent,
    components,
    spherical_assignment_sum,
    surface_canon,
    surface_from_tuple,
    surface_involution,
    surface_mul,
    tuple_from_surface,
    vertices,
)
from .gem import (
    FaceRecord,
    GemComplex,
    f_vector,
    faces,
    gem_canon,
    gem_from_tuple,
    gem_involution,
    gem_mul,
    surface_of_gem,
)
from .bigraph import (
    BipartiteDiagram,
    graph_canon,
    graph_forget,
    graph_from_perm,
    graph_involution,
    graph_mul,
)
from .characters import (
    GramSpec,
    SMatrix,
    ThomaParams,
    coset_invariant_young,
    cycle_decompose,
    nessonov_char,
    s_matrix,
    thoma_char,
    thoma_psd_check,
    young_spherical,
)
from .tensor_oracle import (
    CoeffTensor,
    koszul_sign,
    multiplicativity_drift,
    multiplicativity_drift_classes,
    projector_average,
    rep_matrix_element,
    super_rep_matrix_element,
    young_matrix_element,
)

__version__ = "0.1.0"

"""Complete, continuous isometry invariants and metrics for 3D lattices.

The pipeline: a basis extends to a superbase (four vectors summing to zero),
reduction makes all six conorms p_ij = -v_i . v_j non-negative, and the
canonical arrangement of the root products sqrt(p_ij) is a complete isometry
invariant.  Root metrics minimise a Minkowski distance over the 24 index
relabellings (12 even ones when orientation matters), DC7 vectors give the
classical sorted-neighbour-distance comparison together with a collision
search showing its incompleteness, and quotient/full-triangle projections
support population density maps.

`latforms.BACKEND` reports whether the compiled kernels or the pure-Python
fallback are active (set LATFORMS_PURE=1 to force the fallback).
"""

from ._core import BACKEND
from .errors import (
    DegenerateBasisError,
    DegenerateFormError,
    InvalidCellError,
    InvalidVoformError,
    LatticeError,
    NonOrthogonalError,
    NonRealizableFormError,
    NotObtuseError,
    RecordError,
    ReductionCapError,
    ReductionPreconditionError,
    UsageError,
)
from .forms import (
    ALL_PERMUTATIONS,
    EVEN_PERMUTATIONS,
    Coform,
    LatticeSign,
    PermutationS4,
    RootForm,
    Voform,
    conorms_of,
    coform_to_voform,
    detect_special,
    lattice_sign,
    permute_coform,
    root_form,
    root_form_of_superbase,
    voform_to_coform,
    zero_conorm_residual,
)
from .geometry import (
    Basis,
    PartialSums,
    Superbase,
    UnitCell,
    apply_orthogonal,
    basis_to_superbase,
    basis_to_unit_cell,
    partial_sums,
    random_unimodular,
    superbase_distance,
    unit_cell_to_basis,
    vec3,
)
from .metrics import (
    continuity_bound,
    dc7_distance,
    dc7_of_coform,
    dc7_shift_constraint,
    dc7_vector,
    find_dc7_collisions,
    lattice_distance,
    root_metric,
    shift_coform,
)
from .projection import (
    DensityGrid,
    TrianglePoint,
    accumulate_density,
    ft_project,
    orthorhombic_project,
    project_root_form,
    qt_project,
)
from .reconstruct import reconstruct_superbase
from .records import LatticeRecord, parse_records, parse_root_forms
from .reduction import (
    ReductionStep,
    ReductionTrace,
    is_obtuse,
    reduce_to_obtuse,
    reduction_step,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

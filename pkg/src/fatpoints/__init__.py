"""Exact cohomology of plane fat-point schemes and Terracini loci."""

from .cohomology import (
    HilbertProfile,
    NumericalCharacter,
    bound_checks,
    character_split_check,
    character_to_h1,
    cohomology,
    conditions_matrix,
    hilbert_profile,
    is_connected,
    numerical_character,
    s_min,
    tau_max,
)
from .constructions import (
    Due2Report,
    ci_lemma_verify,
    conic_ci,
    conic_points,
    due2_table,
    emptiness_probe,
    example_due001_report,
    f_of,
    g_of,
    grid_complete_intersection,
    proposition_o1o1_instance,
)
from .exactfield import ExactMatrix, FieldSpec, field_create, matrix_rank
from .geometry import (
    CurveForm,
    ProjPoint,
    SchemeComponent,
    ZeroDimScheme,
    component_rows,
    derivative_row,
    double_scheme,
    eval_row,
    monomial_basis,
    proj_point,
    residual_scheme,
    restrict_to_curve,
    span_dimension,
)
from .terracini import (
    CriticalScheme,
    TerraciniVerdict,
    build_W_on_curve,
    find_critical_scheme,
    is_minimally_terracini,
    is_terracini,
    lemma_z03_check,
    verify_critical_properties,
)

__version__ = "0.1.0"

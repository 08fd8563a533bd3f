"""Exact analysis of first-order linear ODE systems over the rational
functions: classification of singular points, rational reductions to
simple-pole form, Fuchsian construction, parameter specialization, and
numerical monodromy checks."""

__version__ = "0.1.0"

from .fields import QQ, FractionField, NumberField, parameter_field
from .poly import Poly
from .ratfun import RatFun
from .series import LaurentSeries, laurent_expand
from .matrices import Matrix
from .systems import (
    GLOBAL_VAR,
    INFINITY,
    LOCAL_VAR,
    LocalSystem,
    Point,
    gauge,
    localize,
    mobius,
    rational_system,
)
from .lattice import (
    GaugeCertificate,
    Lattice,
    NotRegularSingular,
    SaturationOutcome,
    clearing_power,
    nabla_apply,
    nakayama_basis,
    reduce_to_simple_pole,
    saturate,
    scale_lattice,
)
from .local import (
    LocalClassification,
    classify_local,
    is_regular_point,
    residue_data,
    residue_matrix,
)
from .analysis import (
    PointSpec,
    SingularityReport,
    classify_all,
    fuchsian_from_residues,
    pole_points,
)

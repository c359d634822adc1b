"""Operational analysis of closed cyclic queueing networks.

Closed-form responsiveness and critical points (:mod:`.oplaws`), an exact
MVA oracle (:mod:`.mva`), host decomposition (:mod:`.decomp`) and a
discrete-event simulator (:mod:`.sim`).
"""

from .errors import (
    CurveTooShort,
    DegenerateDecomposition,
    EmptyProfile,
    IndexOutOfRange,
    InvalidArgument,
    InvalidHorizon,
    InvalidServiceTime,
    KbResponseError,
    MissingField,
    ParseError,
    UnknownField,
    ValidationError,
)
from .model import (
    ServiceProfile,
    SystemSummary,
    WorkloadSpec,
    ranked_servers,
    summarize,
    swap_servers,
    validate_profile,
)
from .mva import MvaSolution, elapsed_exact, solve_mva, throughput_curve
from .oplaws import (
    CriticalPoints,
    ResponsivenessPoint,
    critical_request_count,
    critical_user_count,
    responsiveness_approx,
    responsiveness_exact,
    responsiveness_table,
)

__version__ = "0.1.0"

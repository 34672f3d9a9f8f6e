"""Factor systems of strongly graded rings, exact arithmetic throughout."""

from .errors import FactorSysError, InputError, MathFailure
from .facsys import FactorSystem, extract_factor_system, verify_axioms
from .graded import FrameSystem
from .leavitt import LeavittPathAlgebra, lpa_frames, rose
from .lift import Derivation, EtaFamily, build_lift, check_lift_conditions
from .reconstruct import reconstruct_ring

__all__ = [
    "Derivation", "EtaFamily", "FactorSysError", "FactorSystem", "FrameSystem", "InputError",
    "LeavittPathAlgebra", "MathFailure", "build_lift", "check_lift_conditions", "extract_factor_system",
    "lpa_frames", "reconstruct_ring", "rose", "verify_axioms",
]

__version__ = "0.1.0"

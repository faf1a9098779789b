"""Paraxial Laguerre-Gaussian vortex packets and their Wigner functions."""
__version__ = "0.1.0"

from ._kernels import BACKEND
from .kinematics import (
    BoostParameter,
    PacketSpec,
    ParaxialityError,
    PhasePoint,
    boost_all,
    energy,
    invariant_p_form,
    invariant_x_form,
)
from .wavepacket import ComplexAmplitude, amp_momentum, amp_nonrel, amp_position, gouy_phase
from .wigner import WignerForm, wigner_closed

__all__ = [
    "BACKEND",
    "BoostParameter",
    "ComplexAmplitude",
    "PacketSpec",
    "ParaxialityError",
    "PhasePoint",
    "WignerForm",
    "amp_momentum",
    "amp_nonrel",
    "amp_position",
    "boost_all",
    "energy",
    "gouy_phase",
    "invariant_p_form",
    "invariant_x_form",
    "wigner_closed",
]

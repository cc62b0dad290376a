"""Simulator and exact small-scale verifier for BB84 with INFO bits in one basis."""

from ._backend import BACKEND
from .bounds import BoundParams, h2, symmetric_threshold, threshold_curve
from .codes import CodePair, make_code_pair
from .gf2 import BitMatrix, BitVector
from .protocol import Partition, ProtocolParams, Transcript, run_protocol
from .quantum import AttackModel, Basis, DensityMatrix

__all__ = [
    "BACKEND",
    "AttackModel",
    "Basis",
    "BitMatrix",
    "BitVector",
    "BoundParams",
    "CodePair",
    "DensityMatrix",
    "Partition",
    "ProtocolParams",
    "Transcript",
    "h2",
    "make_code_pair",
    "run_protocol",
    "symmetric_threshold",
    "threshold_curve",
]

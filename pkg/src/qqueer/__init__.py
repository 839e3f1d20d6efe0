"""Exact computations for the quantum queer supergroup and its q-Schur superalgebras."""

from .coeff import LaurentPoly, RatScalar, qbinom, qfact, qint
from .matidx import SuperMatrix
from .qpoly import QPolyElement
from .tensormod import TensorElement
from .vmod import VElement

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "QPolyElement",
    "RatScalar",
    "SuperMatrix",
    "TensorElement",
    "VElement",
    "qbinom",
    "qfact",
    "qint",
]

"""Exact density polynomials of Hermitian torsion modules and the identities they satisfy."""
from .density import (
    GlobalPlaceData,
    LocalDatum,
    PlaceKind,
    den_eta_local,
    den_global,
    den_inert,
    den_local,
    den_split,
    functional_defect,
    m_factor,
)
from .errors import (
    BundleDataError,
    CurveDataError,
    DensityForgeError,
    ExtraPointMismatch,
    NonIntegralCoefficient,
    ParityMismatch,
    PoleAtCenter,
    PreconditionViolated,
    SizeBound,
)
from .exactpoly import IntPoly1, IntPoly2
from .partitions import Partition
from .subcount import sub_poly

__version__ = "0.1.0"

"""Exact p-adic and cyclotomic arithmetic with a rigidity/recovery engine
for ordinary CM families: truncated Iwasawa-algebra series, Weierstrass
preparation, Newton polygons, cyclotomic-integer complexity measures, CM
theta series, and recovery of sparse exponential forms from specializations
at p-power roots of unity."""

__version__ = "0.1.0"

from .cyclo import CycloInt, QuadCycloNum, RootOfUnity, TruncPoly
from .padic import PadicCyclo, PadicNum, Valuation
from .rigidity import ExponentialForm, RecoveryReport, SampleSet
from .series import PadicSeries, WeierstrassData, WeightPoint

__all__ = [
    "CycloInt",
    "ExponentialForm",
    "PadicCyclo",
    "PadicNum",
    "PadicSeries",
    "QuadCycloNum",
    "RecoveryReport",
    "RootOfUnity",
    "SampleSet",
    "TruncPoly",
    "Valuation",
    "WeierstrassData",
    "WeightPoint",
    "__version__",
]

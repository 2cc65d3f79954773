"""
GKM cohomology of regular semisimple Hessenberg varieties.

The package builds the moment graph of ``Hess(S, h)`` for a Hessenberg
function ``h``, computes Poincare polynomials, writes down explicit degree-two
classes, and decides whether the rational cohomology ring is generated in
degree two.
"""

from .hessfn import (HessenbergFunction, enumerate_functions, is_connected,
                     lollipop_form, parse, validate)
from .qseries import QPoly, poincare_direct
from .cohomology import GradedReport, is_degree2_generated

__version__ = "0.1.0"

__all__ = [
    "HessenbergFunction", "QPoly", "GradedReport",
    "parse", "validate", "is_connected", "lollipop_form", "enumerate_functions",
    "poincare_direct", "is_degree2_generated", "__version__",
]

"""Sharp-constant toolkit for a Hilbert-type integral inequality on the whole real line.

Computes the sharp constant of the inequality with kernel
(min{1,|x^d y|})^beta / |1 + x^d y|^(lam+beta) by independent routes
(closed form, series, quadrature), verifies the weight identities, the
equivalent inequalities and their reverses, Hardy-type truncated variants,
a numerical sharpness probe, and operator-norm estimates at p = 2.
"""

__version__ = "0.1.0"

from .params import Params, ParameterError, make_params
from .specfun import SpecFunResult, beta, gamma, hyp_at_minus_one
from .quadrature import QuadResult, SingularitySpec, integrate, integrate_whole_line

__all__ = [
    "Params",
    "ParameterError",
    "make_params",
    "SpecFunResult",
    "gamma",
    "beta",
    "hyp_at_minus_one",
    "QuadResult",
    "SingularitySpec",
    "integrate",
    "integrate_whole_line",
    "__version__",
]

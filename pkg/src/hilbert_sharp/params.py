"""Validated parameter bundle shared by every kernel, weight, and constant.

The admissible region is

    beta > -1,   mu > -beta,   sigma > -beta,
    lam = mu + sigma < 1 - beta,   delta in {-1, +1},

with conjugate exponents q = p/(p-1); p > 1 is the forward regime and
0 < p < 1 the reverse regime (q < 0). q is always derived, never supplied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class ParameterError(ValueError):
    """Raised with the name of the first violated constraint."""


@dataclass(frozen=True)
class Params:
    beta: float
    mu: float
    sigma: float
    lam: float
    delta: int
    p: float
    q: float

    @property
    def reverse(self) -> bool:
        return self.p < 1.0

    @property
    def lam_plus_beta(self) -> float:
        # exponent of the kernel's algebraic singularity on x^delta y = -1
        return self.lam + self.beta

    def swapped(self) -> "Params":
        """Same bundle with mu and sigma exchanged."""
        return make_params(self.beta, self.sigma, self.mu, self.delta, self.p)

    def as_dict(self) -> dict:
        return {
            "beta": self.beta,
            "mu": self.mu,
            "sigma": self.sigma,
            "lambda": self.lam,
            "delta": self.delta,
            "p": self.p,
            "q": self.q,
        }


def make_params(beta: float, mu: float, sigma: float, delta: int, p: float) -> Params:
    """Validate and derive the full bundle; raises ParameterError naming the
    first violated constraint."""
    for name, v in (("beta", beta), ("mu", mu), ("sigma", sigma), ("p", p)):
        if not math.isfinite(v):
            raise ParameterError(f"{name} is not finite")
    if delta not in (-1, 1):
        raise ParameterError("delta not in {-1, +1}")
    if beta <= -1.0:
        raise ParameterError("beta <= -1")
    if mu <= -beta:
        raise ParameterError("mu <= -beta")
    if sigma <= -beta:
        raise ParameterError("sigma <= -beta")
    lam = mu + sigma
    if lam >= 1.0 - beta:
        raise ParameterError("lambda >= 1 - beta")
    if p <= 0.0:
        raise ParameterError("p <= 0")
    if p == 1.0:
        raise ParameterError("p == 1")
    q = p / (p - 1.0)
    out = Params(beta, mu, sigma, lam, int(delta), float(p), q)
    # positivity needed by every beta/hypergeometric evaluation downstream
    assert out.beta + out.sigma > 0.0
    assert out.beta + out.mu > 0.0
    assert 1.0 - out.lam - out.beta > 0.0
    return out

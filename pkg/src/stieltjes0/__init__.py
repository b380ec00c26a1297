"""The digamma function, ln Gamma and Euler's constant through integral and series forms.

Submodules:

    numkernel   quadrature, summation, Bernoulli numbers, zeta, Ci/Si
    digamma     psi(a) by several representations, Gauss values at rationals
    polygamma   psi^(m), harmonic numbers
    loggamma    ln Gamma(a) by series, Binet-type integrals and products
    euler       Euler's constant and the fractional-part moments
    cisums      closed forms for weighted sums of Ci(beta n)
    asymsums    sums of psi minus its Stirling asymptotics
    cli         the ``stieltjes0`` command
"""

from .digamma import RepDigamma, psi_rational, psi_ref, psi_rep
from .loggamma import RepLogGamma, lngamma_ref, lngamma_rep
from .numkernel import DEFAULT_CTRL, EULER_GAMMA, Ctrl, DomainError, EvalResult

__all__ = [
    "Ctrl", "DEFAULT_CTRL", "DomainError", "EULER_GAMMA", "EvalResult",
    "RepDigamma", "RepLogGamma", "lngamma_ref", "lngamma_rep",
    "psi_rational", "psi_ref", "psi_rep",
]

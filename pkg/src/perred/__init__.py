"""Periodic points of Chebyshev polynomials reduced modulo primes."""
from .numtheory import coprime_part, crt_solve, factorize, is_prime, radical, valuation
from .finitefield import PrimeFieldCtx, QuadExtElem, make_ctx
from .dynamics import OrbitSummary, periodic_set
from .chebyshev import cheb_coeffs, closed_form_count, ratio
from .conjugacy import RationalPoly, detect_chebyshev_conjugacy, parse_poly
from .classify import ClassificationOutcome, perinf_chebyshev, perinf_polynomial

__version__ = "0.1.0"

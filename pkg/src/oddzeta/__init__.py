"""Riemann zeta values at integer arguments, with odd values estimated from
the two neighbouring even values."""

__version__ = "0.1.0"

from .numerics import FitResult, PrecisionContext, fit_line, integrate_01
from .bernoulli import (
    aux_integral_cos,
    aux_integral_sin,
    bernoulli_number,
    bernoulli_polynomial,
    rbn_minus,
    rbn_plus,
)
from .zeta_core import (
    Method,
    ZetaValue,
    eta_from_zeta,
    fractional_sums,
    rho,
    zeta_even,
    zeta_from_eta,
    zeta_from_rho,
    zeta_reference,
)
from .odd_estimator import (
    OddEstimate,
    asymptotic_zeta,
    lemma1_check,
    recurrence_ratio,
    sfree_count_estimate,
    sfree_density,
    zeta_bounds,
    zeta_odd_geomean,
)
from .reference_methods import (
    HermiteRule,
    SeriesState,
    hermite_rule,
    series_error_asymptote,
    series_error_bound,
    zeta_integral_method,
    zeta_series_method,
)

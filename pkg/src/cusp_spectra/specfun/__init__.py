"""Special functions: Bessel K of complex order, E1, Gamma family, zeta, 2F1, Debye expansions."""

from .bessel import (
    ARG_FLOOR,
    ORDER_CAP,
    BesselAccuracyError,
    BesselDomainError,
    ComplexOrder,
    ScaledMoments,
    as_order,
    bessel_k,
    bessel_k_all,
    bessel_k_dorder,
    bessel_k_dx,
    last_node_count,
    scaled_moments,
    set_node_debug,
)
from .elementary import (
    EULER_GAMMA,
    SpecialDomainError,
    digamma,
    exp_integral_e1,
    exp_integral_e1_scaled,
    gamma,
    log_gamma,
    zeta_hurwitz,
    zeta_hurwitz_ds,
    zeta_riemann,
)
from .hypergeometric import HypergeometricParameterError, hyp2f1, hyp2f1_reflect, hyp2f1_reflect_terms
from .olver import (
    ExpansionValidityError,
    ExpansionWithBound,
    ORDER_THRESHOLD,
    OlverPolynomial,
    bessel_k_large_argument,
    bessel_k_uniform,
    bessel_kprime_large_argument,
    bessel_kprime_uniform,
    logderiv_uniform,
    olver_float_tables,
    olver_polys,
)

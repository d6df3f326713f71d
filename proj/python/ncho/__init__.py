"""Special values zeta_Q(n) of the non-commutative harmonic oscillator."""

from ._ncho import (
    DomainError,
    NumericError,
    Params,
    R21_closed_form,
    R_n1_series,
    __version__,
    apery_J,
    delta_det,
    delta_det_closed_form,
    den,
    derive_params,
    eigenvalues,
    gauss_2f1_quarter,
    heun_residual,
    hurwitz_zeta_half,
    orbit_integral,
    orbits,
    riemann_zeta,
    trace_inverse_power,
    verify,
    zeta_Q,
    zeta_Q2_closed_form,
    zeta_Q_degenerate,
)


def value(n, alpha, beta, **quad):
    """zeta_Q(n) and its standard error as a (value, error) pair."""
    record = zeta_Q(n, alpha, beta, **quad)
    return record["results"][0]["value"], record["results"][0]["error"]


__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]

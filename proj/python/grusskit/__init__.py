"""Numerical range, operator variance and Gruss-type inequality toolkit."""

from ._core import (
    GrussError,
    ParseError,
    PreconditionError,
    audenaert_max,
    chain,
    dist_characterizations,
    dist_sphere,
    dist_to_line,
    dist_to_scalars,
    dragomir_bound,
    fixture,
    fixture_names,
    generate,
    h_factor,
    is_normaloid,
    kantorovich_check,
    numerical_radius,
    numerical_range_boundary,
    numerical_range_disc,
    renaud_bound,
    run_campaign,
    smallest_enclosing_disc,
    spectral_norm,
    spectrum,
    sweep_k,
    v_p,
    variance,
    variance_identities,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

"""Quantum Renyi divergences, channel capacities, and error exponents.

Thin convenience layer over the compiled extension: states are numpy complex
matrices, channels are lists of output matrices plus input weights, orders
are floats (``math.inf`` selects the order-infinity formulas), and variants
are the strings ``"petz"``, ``"sandwiched"``, ``"flat"``.
"""

import json as _json

from ._qrd import (
    InputError,
    InvalidAlphaRange,
    NonConvergence,
    apply_config_json,
    chi_alpha,
    d_alpha,
    distinct_eigenvalue_count,
    divergence_radius,
    dueck_korner,
    hellinger_arc,
    hoeffding_capacity,
    hoeffding_fixed_input,
    holevo_quantity,
    induced_cq_channel,
    isotypic_projections,
    kw_exponent,
    min_output_alpha_entropy,
    parse_state_json,
    pinched_divergence,
    q_alpha,
    relative_entropy,
    renyi_capacity,
    sc_exponent,
    sc_exponent_curve,
    sibson_minimizer,
    state_to_json,
    universal_symmetric_state,
    v_factor,
    verify_group_names,
    verify_report_json,
)

__all__ = [
    "InputError",
    "InvalidAlphaRange",
    "NonConvergence",
    "apply_config_json",
    "chi_alpha",
    "d_alpha",
    "distinct_eigenvalue_count",
    "divergence_radius",
    "dueck_korner",
    "hellinger_arc",
    "hoeffding_capacity",
    "hoeffding_fixed_input",
    "holevo_quantity",
    "induced_cq_channel",
    "isotypic_projections",
    "kw_exponent",
    "min_output_alpha_entropy",
    "parse_state_json",
    "pinched_divergence",
    "q_alpha",
    "relative_entropy",
    "renyi_capacity",
    "sc_exponent",
    "sc_exponent_curve",
    "sibson_minimizer",
    "state_to_json",
    "universal_symmetric_state",
    "v_factor",
    "verify",
    "verify_group_names",
    "verify_report_json",
]

__version__ = "0.1.0"


def verify(seed=7, groups=("all",)):
    """Run the seeded verification suite and return the report as a dict."""
    return _json.loads(verify_report_json(seed, list(groups)))

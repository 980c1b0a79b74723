"""Density Waring toolkit.

Thin Python layer over the native ``_waring`` module. Functions returning
reports give plain dicts with the same keys as the command-line JSON output.
"""

from ._waring import (
    InvariantError,
    PreconditionError,
    RangeError,
    V_q,
    W_modulus,
    WaringError,
    coverage_experiment,
    dense_sumset_check,
    downset_demo,
    empirical_density,
    kth_power_classes,
    minimal_s,
    pseudorandomness,
    quantitative_cd,
    random_dense_subset,
    representation_count,
    restriction_constant,
    shnirelman_density,
    sigma_W,
    size_Z_formula,
    sumset,
    transference_demo,
    unit_power_class_count,
    version,
    vinogradov_count,
    waring_pair,
    zeta,
    zeta_sandwich,
    zk_estimate,
)

__version__ = version()

__all__ = [
    "InvariantError",
    "PreconditionError",
    "RangeError",
    "V_q",
    "W_modulus",
    "WaringError",
    "coverage_experiment",
    "dense_sumset_check",
    "downset_demo",
    "empirical_density",
    "kth_power_classes",
    "minimal_s",
    "pseudorandomness",
    "quantitative_cd",
    "random_dense_subset",
    "representation_count",
    "restriction_constant",
    "shnirelman_density",
    "sigma_W",
    "size_Z_formula",
    "sumset",
    "transference_demo",
    "unit_power_class_count",
    "version",
    "vinogradov_count",
    "waring_pair",
    "zeta",
    "zeta_sandwich",
    "zk_estimate",
]

"""Secrecy rate-equivocation regions of cooperative relay broadcast channels."""
from crbc.gaussian import (
    EquivocationPair,
    GaussianCrbcParams,
    SchemeParams,
    TwoSidedGaussianParams,
    corollary1_limit,
    gaussian_sato_bound,
    jamming_threshold,
    wiretap_secrecy,
)

__version__ = "0.1.0"

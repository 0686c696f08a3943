"""Certified numerical radius, W_max brackets and block-matrix inequality checks."""
from .eigen import hermitian_eigenvalues, lambda_max, spectral_norm, spectral_norm_bounds
from .harness import CampaignConfig, Report, run_campaign, shrink
from .inequalities import CATALOG, CHECK_IDS, CheckResult, get_check
from .matcore import Rng, block, random_ginibre, random_haar_unitary, scalar_embed
from .radius import Bracket, norm_bracket, numerical_radius, rayleigh_lower_bound
from .wmax import Decomposition, wmax_bracket, wmax_search, wmax_upper

__all__ = [
    "Bracket", "CATALOG", "CHECK_IDS", "CampaignConfig", "CheckResult", "Decomposition",
    "Report", "Rng", "block", "get_check", "hermitian_eigenvalues", "lambda_max",
    "norm_bracket", "numerical_radius", "random_ginibre", "random_haar_unitary",
    "rayleigh_lower_bound", "run_campaign", "scalar_embed", "shrink", "spectral_norm",
    "spectral_norm_bounds", "wmax_bracket", "wmax_search", "wmax_upper",
]

"""LP statistical modeling: orthonormal score functions, LP moments and
comoments, copula density models, correspondence analysis, the LPINFOR
dependence statistic, and copula-based conditional modeling.

The heavy lifting lives in the compiled extension ``_lpstat``; this package
re-exports its functions.
"""

from _lpstat import (  # noqa: F401
    DataError,
    NumericError,
    __version__,
    canonical_singular_values,
    chidiv,
    conditional_mean_curve,
    conditional_quantiles,
    copula_density_grid,
    correspondence,
    empirical_dist,
    gaussian_lpinfor,
    generate_scenario,
    gof,
    legendre,
    lp_comoments,
    lp_comoments_table,
    lp_moments,
    lpinfor,
    lpinfor_table,
    permutation_pvalue,
    population_lp_moments,
    score_table,
    skew_density,
    spearman,
    two_by_two,
)

__all__ = [
    "DataError",
    "NumericError",
    "__version__",
    "canonical_singular_values",
    "chidiv",
    "conditional_mean_curve",
    "conditional_quantiles",
    "copula_density_grid",
    "correspondence",
    "empirical_dist",
    "gaussian_lpinfor",
    "generate_scenario",
    "gof",
    "legendre",
    "lp_comoments",
    "lp_comoments_table",
    "lp_moments",
    "lpinfor",
    "lpinfor_table",
    "permutation_pvalue",
    "population_lp_moments",
    "score_table",
    "skew_density",
    "spearman",
    "two_by_two",
]

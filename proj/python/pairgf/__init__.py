"""Green's functions and local densities of states for two repulsive Coulomb electrons."""

from ._core import (
    CutoffRequired,
    DivergentArguments,
    DomainError,
    Error,
    NumericalError,
    SingularSystem,
    __version__,
    bare_kernel,
    classify_args,
    coulomb_gf,
    coulomb_gf_coincident_regular,
    coulomb_gf_partial_waves,
    dyson_solve,
    g0_dos,
    g0_real,
    gamma,
    grid_points,
    hyp1f1,
    ldos,
    ldos_free,
    ldos_grid,
    pair_gf,
    single_refs,
    whittaker_wronskian_residual,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]

"""Lawrence 3-algebra residuals, solution families and lens invariants."""

from ._triqal import (
    DEFAULT_TOLERANCE,
    SingularFormError,
    TensorError,
    axiom_residual,
    build_full,
    cubic_residual,
    derive_m,
    embed,
    eq22_residual,
    family,
    invariant,
    lens_network,
    load_algebra,
    pachner14_residual,
    pentagon_coordinate_residual,
    pentagon_residual,
    projector_matrix,
    projector_residual,
    save_algebra,
    system23_residuals,
    trivial_solution,
)

__all__ = [name for name in dir() if not name.startswith("_")]

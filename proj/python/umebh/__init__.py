"""Python bindings for the umebh core library."""

from umebh._core import (
    ExistenceVerdict,
    PartialCheck,
    classify_dimension,
    complete_last_row,
    example5_b,
    example7_a,
    find_unimodular_in_span,
    fourier,
    lift_count,
    prop2_matrix,
    run_cli,
    s0_family,
    special_umeb,
    state_vector,
    umeb5,
    umeb7,
    verify_meb_conditions,
    verify_partial,
    verify_unextendible_special,
    weyl,
)

__all__ = [
    "ExistenceVerdict",
    "PartialCheck",
    "classify_dimension",
    "complete_last_row",
    "example5_b",
    "example7_a",
    "find_unimodular_in_span",
    "fourier",
    "lift_count",
    "prop2_matrix",
    "run_cli",
    "s0_family",
    "special_umeb",
    "state_vector",
    "umeb5",
    "umeb7",
    "verify_meb_conditions",
    "verify_partial",
    "verify_unextendible_special",
    "weyl",
]

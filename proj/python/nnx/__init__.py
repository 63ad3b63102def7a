"""Toeplitz algebra of the affine semigroup N x| N^x."""

from ._core import (
    LevelExceeded,
    Monomial,
    ParseError,
    State,
    char_euler_sum,
    euclid_smallest,
    ground_check,
    invariance_ratio,
    join,
    kms_characterisation_check,
    kms_defect,
    monomial_grid,
    no_kms_witness,
    reconstruct_sn,
    reduce,
    relation_suite,
    run_cli,
    spectrum_contains,
    spectrum_includes,
    zeta,
)

__all__ = [
    "LevelExceeded",
    "Monomial",
    "ParseError",
    "State",
    "char_euler_sum",
    "euclid_smallest",
    "ground_check",
    "invariance_ratio",
    "join",
    "kms_characterisation_check",
    "kms_defect",
    "monomial_grid",
    "no_kms_witness",
    "reconstruct_sn",
    "reduce",
    "relation_suite",
    "run_cli",
    "spectrum_contains",
    "spectrum_includes",
    "zeta",
]

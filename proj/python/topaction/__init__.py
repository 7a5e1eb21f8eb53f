"""Initial normal covers, representability of actions and pointed presheaves."""

from ._core import (
    ParseError,
    Presheaf,
    ValidationError,
    VerificationError,
    count_actions,
    emit_grid,
    escape_index,
    hom_count,
    initial_cover,
    is_normal_epi,
    min_separator_size,
    run_cli,
    verify,
)

__all__ = [
    "ParseError",
    "Presheaf",
    "ValidationError",
    "VerificationError",
    "count_actions",
    "emit_grid",
    "escape_index",
    "hom_count",
    "initial_cover",
    "is_normal_epi",
    "min_separator_size",
    "run_cli",
    "verify",
]

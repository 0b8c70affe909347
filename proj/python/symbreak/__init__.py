"""Distinguishing 2-colorings of locally finite graphs."""

from ._core import (
    AnchorNotFound,
    ArgumentError,
    BudgetExceeded,
    Coloring,
    Error,
    Graph,
    GroupTooLarge,
    IdentifierError,
    PreconditionError,
    ScheduleInvalid,
    SearchCapExceeded,
    StructureError,
    WitnessExhausted,
    chain_length_bound,
    check_dsc,
    density_profile,
    dsc_coloring,
    explicit_coloring,
    finite_graph,
    growth_profile,
    make_graph,
    monte_carlo,
    motion_growth_coloring,
    random_coloring,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]

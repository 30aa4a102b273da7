"""maskquery: recover hidden bit masks from promise oracles and account for
every query, with exact expected-query analytics for the quantum procedure
and its classical competitors."""

__version__ = "0.1.0"

from .bitstring import BitString
from .oracle import (
    MaskVariant,
    MaskedOracle,
    PromiseCheck,
    PromiseViolation,
    QueryStats,
    make_oracle,
    verify_promise,
)
from .qsim import (
    StateVector,
    TrialOutcome,
    apply_oracle,
    hadamard_first_register,
    measure_first_register,
    run_trial_fast,
    run_trial_full,
)
from .algorithms import (
    RecoveryResult,
    classical_binary_search_adapted,
    classical_binary_search_m1,
    classical_sequential_search,
    quantum_find_s,
    quantum_find_s_or,
    recover_with_budget,
)
from .analytics import (
    Rational,
    ceil_log2,
    classical_lower_bound_m1,
    entropy_budget_m1,
    t_cb,
    t_cs,
    t_q,
    t_q_approx,
    t_q_series,
)
from .harness import (
    ExperimentSpec,
    FigureSeries,
    emit_figure1,
    emit_figure3,
    montecarlo_expected_queries,
)

__all__ = [
    "BitString",
    "MaskVariant",
    "MaskedOracle",
    "PromiseCheck",
    "PromiseViolation",
    "QueryStats",
    "make_oracle",
    "verify_promise",
    "StateVector",
    "TrialOutcome",
    "apply_oracle",
    "hadamard_first_register",
    "measure_first_register",
    "run_trial_fast",
    "run_trial_full",
    "RecoveryResult",
    "classical_binary_search_adapted",
    "classical_binary_search_m1",
    "classical_sequential_search",
    "quantum_find_s",
    "quantum_find_s_or",
    "recover_with_budget",
    "Rational",
    "ceil_log2",
    "classical_lower_bound_m1",
    "entropy_budget_m1",
    "t_cb",
    "t_cs",
    "t_q",
    "t_q_approx",
    "t_q_series",
    "ExperimentSpec",
    "FigureSeries",
    "emit_figure1",
    "emit_figure3",
    "montecarlo_expected_queries",
]

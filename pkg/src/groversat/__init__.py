"""Grover-search compiler and simulator for uniquely satisfiable K-SAT
formulas, with trapped-ion execution cost estimation."""

from .circuit import (
    Circuit,
    Control,
    Gate,
    GateInventory,
    GateKind,
    QubitRole,
    RoleKind,
    append_gate,
    format_circuit,
    inventory,
    invert,
    lower_polarity,
    parse_circuit,
)
from .compiler import (
    CompileOptions,
    GroverPlan,
    KickbackStyle,
    NonUniqueFormulaError,
    WideClauseStrategy,
    compile,
    compile_diffusion,
    compile_oracle,
    grover_iterations,
)
from .costmodel import (
    CostReport,
    TrapConfig,
    conventional_counts,
    conventional_time,
    straightforward_pulses,
    straightforward_time,
    table1_report,
    trap_frequency,
)
from .formula import (
    Assignment,
    Clause,
    CnfFormula,
    Literal,
    SatClassification,
    classify,
    emit_dimacs,
    evaluate,
    parse_dimacs,
    parse_infix,
)
from .simulator import (
    MeasurementReport,
    StateVector,
    apply,
    basis_state,
    measure_variables,
    run,
    uniform_state,
)

__version__ = "0.1.0"

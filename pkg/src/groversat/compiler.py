"""Compile a CNF formula into a complete Grover-search circuit.

Oracle construction works ancilla-style: each multi-literal clause is ORed
into its own ancilla (De Morgan: a multi-controlled X firing when every
literal is false, then an X on the ancilla), a single multi-controlled X ANDs
the clause values into the result qubit, a phase kick flips the sign of the
satisfying components via an ancilla held in (|0> - |1>)/sqrt(2), and the
compute block is run in reverse to restore every ancilla. Diffusion reflects
the variable register about the uniform superposition.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import simulator
from .circuit import (
    Circuit,
    Control,
    Gate,
    QubitRole,
    RoleKind,
    Stage,
    h,
    mcx,
    mcz,
    x,
)
from .formula import (
    Assignment,
    CnfFormula,
    Literal,
    SatClassification,
    classify,
)

STAGE_PREAMBLE = "preamble"
STAGE_CLAUSE = "clause-stage"
STAGE_AND = "and-stage"
STAGE_KICKBACK = "kickback"
STAGE_UNCOMPUTE = "uncompute"
STAGE_DIFFUSION = "diffusion"


class CompileError(ValueError):
    pass


class NonUniqueFormulaError(CompileError):
    """Formula is not uniquely satisfiable; carries the classification."""

    def __init__(self, classification: SatClassification):
        super().__init__(
            f"formula is {classification.kind}; Grover compilation needs a "
            f"unique solution (pass force=True to compile anyway)"
        )
        self.classification = classification


class RegisterLimitError(CompileError):
    pass


class KickbackStyle(enum.Enum):
    SEPARATE_ANCILLA = "separate"
    DIRECT_PHASE = "direct"


class WideClauseStrategy(enum.Enum):
    CASCADE = "cascade"
    DIRECT = "direct"


@dataclass(frozen=True)
class CompileOptions:
    kickback_style: KickbackStyle = KickbackStyle.SEPARATE_ANCILLA
    wide_clause: WideClauseStrategy = WideClauseStrategy.CASCADE
    iterations: int | None = None  # None selects the optimal count
    force: bool = False  # compile non-unique formulas (no target hint)

    def __post_init__(self):
        if self.iterations is not None and self.iterations < 1:
            raise CompileError("fixed iteration count must be >= 1")


@dataclass(frozen=True)
class GroverPlan:
    circuit: Circuit
    register_size: int
    iteration_count: int
    target_hint: Assignment | None

    @property
    def variable_count(self) -> int:
        return len(self.circuit.qubits_with_role(RoleKind.VARIABLE))


class _Layout:
    """Deterministic register layout: variables, then intermediates, then
    clause ancillas, then result (separate-ancilla style only), then kickback."""

    def __init__(self, f: CnfFormula, opts: CompileOptions):
        roles: list[QubitRole] = [QubitRole.variable(name) for name in f.variables]
        self.intermediate: dict[tuple[int, int], int] = {}
        if opts.wide_clause is WideClauseStrategy.CASCADE:
            for ci, clause in enumerate(f.clauses):
                for step in range(clause.width - 2):
                    self.intermediate[(ci, step)] = len(roles)
                    roles.append(QubitRole.intermediate(ci, step))
        self.ancilla: dict[int, int] = {}
        for ci, clause in enumerate(f.clauses):
            if clause.width >= 2:
                self.ancilla[ci] = len(roles)
                roles.append(QubitRole.clause_ancilla(ci))
        if opts.kickback_style is KickbackStyle.SEPARATE_ANCILLA:
            self.result = len(roles)
            roles.append(QubitRole.result())
        else:
            self.result = None
        self.kickback = len(roles)
        roles.append(QubitRole.kickback())
        self.roles = tuple(roles)
        self.nvars = f.variable_count

    @property
    def size(self) -> int:
        return len(self.roles)

    @property
    def phase_target(self) -> int:
        return self.result if self.result is not None else self.kickback


def _literal_false_control(lit: Literal) -> Control:
    # A positive literal is false on |0>, a negated one on |1>.
    return Control(lit.variable, 1 if lit.negated else 0)


def _literal_true_control(lit: Literal) -> Control:
    return Control(lit.variable, 0 if lit.negated else 1)


def _or_step(inputs: list[Control], target: int) -> list[Gate]:
    # target := OR of the inputs, for target initially |0>.
    return [mcx(inputs, target), x(target)]


def _clause_gates(f: CnfFormula, opts: CompileOptions, layout: _Layout) -> list[Gate]:
    gates: list[Gate] = []
    for ci, clause in enumerate(f.clauses):
        if clause.width < 2:
            continue  # single literals become direct controls on the AND gate
        if clause.width == 2 or opts.wide_clause is WideClauseStrategy.DIRECT:
            inputs = [_literal_false_control(lit) for lit in clause.literals]
            gates += _or_step(inputs, layout.ancilla[ci])
        else:
            # Left-associative cascade: accumulate the OR through the
            # intermediates, landing the full clause on its ancilla.
            lits = clause.literals
            acc = layout.intermediate[(ci, 0)]
            gates += _or_step(
                [_literal_false_control(lits[0]), _literal_false_control(lits[1])], acc
            )
            for j in range(2, clause.width):
                is_last = j == clause.width - 1
                target = layout.ancilla[ci] if is_last else layout.intermediate[(ci, j - 1)]
                gates += _or_step(
                    [Control(acc, 0), _literal_false_control(lits[j])], target
                )
                acc = target
    return gates


def _and_gates(f: CnfFormula, opts: CompileOptions, layout: _Layout) -> list[Gate]:
    controls: list[Control] = []
    seen: dict[int, int] = {}
    for ci, clause in enumerate(f.clauses):
        if clause.width >= 2:
            ctl = Control(layout.ancilla[ci], 1)
        else:
            ctl = _literal_true_control(clause.literals[0])
        if ctl.qubit in seen:
            if seen[ctl.qubit] != ctl.fires_on:
                # Complementary unit clauses: the formula is identically
                # false, so the result qubit is never set and the AND gate
                # degenerates to nothing.
                return []
            continue
        seen[ctl.qubit] = ctl.fires_on
        controls.append(ctl)
    return [mcx(controls, layout.phase_target)]


def compile_clause_stage(f: CnfFormula, opts: CompileOptions = CompileOptions()) -> Circuit:
    """The clause-evaluation fragment: one OR per multi-literal clause."""
    if f.clause_count == 0:
        raise CompileError("cannot compile an empty formula")
    layout = _Layout(f, opts)
    gates = _clause_gates(f, opts, layout)
    return Circuit(layout.roles, tuple(gates), (Stage(STAGE_CLAUSE, 0, len(gates)),))


def compile_and_stage(f: CnfFormula, opts: CompileOptions = CompileOptions()) -> Circuit:
    """The AND fragment: conjunction of all clause values into the result."""
    if f.clause_count == 0:
        raise CompileError("cannot compile an empty formula")
    layout = _Layout(f, opts)
    gates = _and_gates(f, opts, layout)
    return Circuit(layout.roles, tuple(gates), (Stage(STAGE_AND, 0, len(gates)),))


def compile_kickback(f: CnfFormula, opts: CompileOptions = CompileOptions()) -> Circuit:
    """The phase-kick fragment. Separate-ancilla style copies the result onto
    the kickback qubit; direct style has nothing to do (the AND gate already
    targeted it)."""
    layout = _Layout(f, opts)
    gates: list[Gate] = []
    if opts.kickback_style is KickbackStyle.SEPARATE_ANCILLA:
        gates.append(mcx([Control(layout.result, 1)], layout.kickback))
    return Circuit(layout.roles, tuple(gates), (Stage(STAGE_KICKBACK, 0, len(gates)),))


def _oracle_stages(f: CnfFormula, opts: CompileOptions, layout: _Layout):
    clause = _clause_gates(f, opts, layout)
    and_ = _and_gates(f, opts, layout)
    if opts.kickback_style is KickbackStyle.SEPARATE_ANCILLA:
        kick = [mcx([Control(layout.result, 1)], layout.kickback)]
        uncompute = list(reversed(clause + and_))
    else:
        kick = []
        uncompute = list(reversed(clause))
    return clause, and_, kick, uncompute


def compile_oracle(f: CnfFormula, opts: CompileOptions = CompileOptions()) -> Circuit:
    """Full oracle block: compute, phase kick, uncompute.

    Maps |x>|anc=0>|-> to (-1)^{F(x)} |x>|anc=0>|->. Requires a uniquely
    satisfiable formula unless opts.force is set.
    """
    if f.clause_count == 0:
        raise CompileError("cannot compile an empty formula")
    if not opts.force:
        classification = classify(f)
        if not classification.is_unique:
            raise NonUniqueFormulaError(classification)
    layout = _Layout(f, opts)
    blocks = zip(
        (STAGE_CLAUSE, STAGE_AND, STAGE_KICKBACK, STAGE_UNCOMPUTE),
        _oracle_stages(f, opts, layout),
    )
    gates: list[Gate] = []
    stages = []
    for name, block in blocks:
        stages.append(Stage(name, len(gates), len(gates) + len(block)))
        gates += block
    return Circuit(layout.roles, tuple(gates), tuple(stages))


def _diffusion_gates(nvars: int) -> list[Gate]:
    if nvars == 1:
        # The reflection about the uniform state on one qubit is plain X
        # (the H X Z X H form would need a zero-control phase gate).
        return [x(0)]
    gates = [h(i) for i in range(nvars)]
    gates += [x(i) for i in range(nvars)]
    gates.append(mcz([Control(i, 1) for i in range(nvars - 1)], nvars - 1))
    gates += [x(i) for i in range(nvars)]
    gates += [h(i) for i in range(nvars)]
    return gates


def compile_diffusion(nvars: int) -> Circuit:
    """Inversion-about-average on ``nvars`` qubits, up to a global phase.

    H and X on every qubit sandwich an all-ones controlled phase flip; the
    resulting operator has matrix entries 2/N - delta_ij up to one overall
    sign, which is dropped as unobservable.
    """
    if nvars < 1:
        raise CompileError("diffusion needs at least one qubit")
    roles = tuple(QubitRole.variable(f"q{i}") for i in range(nvars))
    gates = _diffusion_gates(nvars)
    return Circuit(roles, tuple(gates), (Stage(STAGE_DIFFUSION, 0, len(gates)),))


def grover_iterations(nvars: int) -> int:
    """Optimal iteration count for a single marked state among 2**nvars.

    Rounds the pi*sqrt(N)/4 rule to the nearest integer (i.e. the standard
    round(pi*sqrt(N)/4 - 1/2)), never below 1.
    """
    if nvars < 1:
        raise CompileError("need at least one variable")
    return max(1, math.floor(math.pi * math.sqrt(2.0**nvars) / 4.0))


def compile(
    f: CnfFormula,
    opts: CompileOptions = CompileOptions(),
    max_qubits: int = simulator.MAX_QUBITS,
) -> GroverPlan:
    """Compile the full search: preamble, then (oracle + diffusion) repeated."""
    if f.clause_count == 0:
        raise CompileError("cannot compile an empty formula")
    classification = classify(f)
    if not classification.is_unique and not opts.force:
        raise NonUniqueFormulaError(classification)
    layout = _Layout(f, opts)
    if layout.size > max_qubits:
        raise RegisterLimitError(
            f"plan needs {layout.size} qubits, limit is {max_qubits}"
        )
    iterations = (
        opts.iterations if opts.iterations is not None else grover_iterations(f.variable_count)
    )

    gates: list[Gate] = [h(i) for i in range(layout.nvars)]
    gates += [x(layout.kickback), h(layout.kickback)]
    stages = [Stage(STAGE_PREAMBLE, 0, len(gates))]

    clause, and_, kick, uncompute = _oracle_stages(f, opts, layout)
    diffusion = _diffusion_gates(layout.nvars)
    blocks = (
        (STAGE_CLAUSE, clause),
        (STAGE_AND, and_),
        (STAGE_KICKBACK, kick),
        (STAGE_UNCOMPUTE, uncompute),
        (STAGE_DIFFUSION, diffusion),
    )
    for _ in range(iterations):
        for name, block in blocks:
            start = len(gates)
            gates += block
            stages.append(Stage(name, start, len(gates)))

    circuit = Circuit(layout.roles, tuple(gates), tuple(stages))
    target = classification.unique_solution if classification.is_unique else None
    return GroverPlan(circuit, layout.size, iterations, target)

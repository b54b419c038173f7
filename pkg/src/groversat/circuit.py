"""Gate-level circuit IR: typed qubit roles, the X/H/MCX/MCZ gate set,
inversion, polarity lowering, gate census and a text serialization."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable

ONE_QUBIT_KEY = ("one-qubit", 1)


class CircuitError(ValueError):
    pass


class GateKind(enum.Enum):
    PAULI_X = "x"
    HADAMARD = "h"
    MCX = "mcx"
    MCZ = "mcz"


class RoleKind(enum.Enum):
    VARIABLE = "var"
    INTERMEDIATE = "inter"
    CLAUSE_ANCILLA = "clause"
    RESULT = "result"
    KICKBACK = "kickback"


@dataclass(frozen=True)
class QubitRole:
    kind: RoleKind
    name: str | None = None
    clause: int | None = None
    step: int | None = None

    @staticmethod
    def variable(name: str) -> "QubitRole":
        return QubitRole(RoleKind.VARIABLE, name=name)

    @staticmethod
    def intermediate(clause: int, step: int) -> "QubitRole":
        return QubitRole(RoleKind.INTERMEDIATE, clause=clause, step=step)

    @staticmethod
    def clause_ancilla(clause: int) -> "QubitRole":
        return QubitRole(RoleKind.CLAUSE_ANCILLA, clause=clause)

    @staticmethod
    def result() -> "QubitRole":
        return QubitRole(RoleKind.RESULT)

    @staticmethod
    def kickback() -> "QubitRole":
        return QubitRole(RoleKind.KICKBACK)


@dataclass(frozen=True)
class Control:
    """A control line: fires_on=1 is a plain control, fires_on=0 fires on |0>."""

    qubit: int
    fires_on: int = 1

    def __post_init__(self):
        if self.fires_on not in (0, 1):
            raise CircuitError(f"control polarity must be 0 or 1, got {self.fires_on}")


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    controls: tuple[Control, ...]
    target: int

    def __post_init__(self):
        if self.kind in (GateKind.PAULI_X, GateKind.HADAMARD):
            if self.controls:
                raise CircuitError(f"{self.kind.value} takes no controls")
        else:
            if not self.controls:
                raise CircuitError(f"{self.kind.value} needs at least one control")
        qubits = [c.qubit for c in self.controls]
        if self.target in qubits:
            raise CircuitError(f"target {self.target} is also a control")
        if len(set(qubits)) != len(qubits):
            raise CircuitError("duplicate control qubit")

    @property
    def arity(self) -> int:
        return len(self.controls) + 1

    def qubits(self) -> Iterable[int]:
        for c in self.controls:
            yield c.qubit
        yield self.target


def x(target: int) -> Gate:
    return Gate(GateKind.PAULI_X, (), target)


def h(target: int) -> Gate:
    return Gate(GateKind.HADAMARD, (), target)


def mcx(controls: Iterable[Control | int], target: int) -> Gate:
    return Gate(GateKind.MCX, _as_controls(controls), target)


def mcz(controls: Iterable[Control | int], target: int) -> Gate:
    return Gate(GateKind.MCZ, _as_controls(controls), target)


def _as_controls(controls: Iterable[Control | int]) -> tuple[Control, ...]:
    return tuple(c if isinstance(c, Control) else Control(c) for c in controls)


@dataclass(frozen=True)
class Stage:
    """A named contiguous run of gates, [start, end)."""

    name: str
    start: int
    end: int


@dataclass(frozen=True)
class Circuit:
    qubits: tuple[QubitRole, ...]
    gates: tuple[Gate, ...] = ()
    stages: tuple[Stage, ...] = ()

    def __post_init__(self):
        n = len(self.qubits)
        for gate in self.gates:
            for q in gate.qubits():
                if not 0 <= q < n:
                    raise CircuitError(f"gate touches qubit {q}, register has {n}")
        for kind in (RoleKind.RESULT, RoleKind.KICKBACK):
            if sum(1 for r in self.qubits if r.kind is kind) > 1:
                raise CircuitError(f"more than one {kind.value} qubit")
        if self.stages:
            pos = 0
            for stage in self.stages:
                if stage.start != pos or stage.end < stage.start:
                    raise CircuitError("stages must partition the gate list")
                pos = stage.end
            if pos != len(self.gates):
                raise CircuitError("stages must partition the gate list")

    @property
    def qubit_count(self) -> int:
        return len(self.qubits)

    def qubits_with_role(self, kind: RoleKind) -> list[int]:
        return [i for i, r in enumerate(self.qubits) if r.kind is kind]

    def stage_end(self, name: str, occurrence: int = 0) -> int:
        """Gate index just past the given occurrence of a named stage."""
        seen = 0
        for stage in self.stages:
            if stage.name == name:
                if seen == occurrence:
                    return stage.end
                seen += 1
        raise CircuitError(f"no stage {name!r} (occurrence {occurrence})")


def append_gate(c: Circuit, g: Gate) -> Circuit:
    """Return a copy of the circuit with one more gate (stages dropped)."""
    for q in g.qubits():
        if not 0 <= q < c.qubit_count:
            raise CircuitError(f"gate touches qubit {q}, register has {c.qubit_count}")
    return replace(c, gates=c.gates + (g,), stages=())


def invert(c: Circuit) -> Circuit:
    """Reverse the gate order. Every gate in this set is self-inverse, so the
    result undoes the original circuit exactly."""
    n = len(c.gates)
    stages = tuple(
        Stage(s.name, n - s.end, n - s.start) for s in reversed(c.stages)
    )
    return replace(c, gates=tuple(reversed(c.gates)), stages=stages)


def lower_polarity(c: Circuit) -> Circuit:
    """Replace every fires-on-0 control with a plain control wrapped in a
    PauliX pair on that qubit. Stage boundaries are remapped accordingly."""
    new_gates: list[Gate] = []
    boundary_map = {0: 0}
    for i, gate in enumerate(c.gates):
        negatives = [ctl.qubit for ctl in gate.controls if ctl.fires_on == 0]
        if negatives:
            for q in negatives:
                new_gates.append(x(q))
            new_gates.append(
                replace(gate, controls=tuple(Control(ctl.qubit) for ctl in gate.controls))
            )
            for q in negatives:
                new_gates.append(x(q))
        else:
            new_gates.append(gate)
        boundary_map[i + 1] = len(new_gates)
    stages = tuple(
        Stage(s.name, boundary_map[s.start], boundary_map[s.end]) for s in c.stages
    )
    return replace(c, gates=tuple(new_gates), stages=stages)


@dataclass(frozen=True)
class GateInventory:
    """Multiset of gates keyed by (kind, arity). Single-qubit gates are pooled
    under the "one-qubit" key; multiqubit kinds are "mcx" and "mcz"."""

    counts: dict[tuple[str, int], int] = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.counts.values())

    def one_qubit(self) -> int:
        return self.counts.get(ONE_QUBIT_KEY, 0)

    def multiqubit(self) -> dict[tuple[str, int], int]:
        return {k: v for k, v in self.counts.items() if k != ONE_QUBIT_KEY}

    def cpf_counts(self) -> dict[int, int]:
        """Counts per arity, merging mcx and mcz (both are one phase-flip-class
        gate to the cost model)."""
        merged: Counter[int] = Counter()
        for (kind, arity), n in self.counts.items():
            if kind != "one-qubit":
                merged[arity] += n
        return dict(sorted(merged.items()))

    @staticmethod
    def from_cpf_counts(per_arity: dict[int, int]) -> "GateInventory":
        counts = {("mcz", arity): n for arity, n in per_arity.items() if n}
        return GateInventory(counts)


def inventory(c: Circuit, rewrite_cx_as_cz: bool = False) -> GateInventory:
    """Census of the gate list.

    With ``rewrite_cx_as_cz`` each n-qubit MCX is counted as one n-qubit MCZ
    plus two single-qubit gates (Hadamard conjugation of the target).
    """
    counts: Counter[tuple[str, int]] = Counter()
    for gate in c.gates:
        if gate.kind in (GateKind.PAULI_X, GateKind.HADAMARD):
            counts[ONE_QUBIT_KEY] += 1
        elif gate.kind is GateKind.MCX and rewrite_cx_as_cz:
            counts[("mcz", gate.arity)] += 1
            counts[ONE_QUBIT_KEY] += 2
        else:
            counts[(gate.kind.value, gate.arity)] += 1
    return GateInventory(dict(counts))


# --- text serialization ---------------------------------------------------

FORMAT_HEADER = "groversat-circuit 1"


def format_circuit(c: Circuit) -> str:
    lines = [FORMAT_HEADER, f"qubits {c.qubit_count}"]
    for i, role in enumerate(c.qubits):
        if role.kind is RoleKind.VARIABLE:
            lines.append(f"qubit {i} var {role.name}")
        elif role.kind is RoleKind.INTERMEDIATE:
            lines.append(f"qubit {i} inter {role.clause} {role.step}")
        elif role.kind is RoleKind.CLAUSE_ANCILLA:
            lines.append(f"qubit {i} clause {role.clause}")
        else:
            lines.append(f"qubit {i} {role.kind.value}")
    for stage in c.stages:
        lines.append(f"stage {stage.name} {stage.start} {stage.end}")
    for gate in c.gates:
        parts = [gate.kind.value]
        for ctl in gate.controls:
            parts.append(f"{'+' if ctl.fires_on else '-'}{ctl.qubit}")
        parts.append(str(gate.target))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise CircuitError("missing circuit header")
    it = iter(lines[1:])
    first = next(it, None)
    if first is None or not first.startswith("qubits "):
        raise CircuitError("missing qubit count")
    count = int(first.split()[1])
    roles: dict[int, QubitRole] = {}
    stages: list[Stage] = []
    gates: list[Gate] = []
    for line in it:
        parts = line.split()
        if parts[0] == "qubit":
            idx = int(parts[1])
            kind = parts[2]
            if kind == "var":
                roles[idx] = QubitRole.variable(parts[3])
            elif kind == "inter":
                roles[idx] = QubitRole.intermediate(int(parts[3]), int(parts[4]))
            elif kind == "clause":
                roles[idx] = QubitRole.clause_ancilla(int(parts[3]))
            elif kind in ("result", "kickback"):
                roles[idx] = QubitRole(RoleKind(kind))
            else:
                raise CircuitError(f"unknown qubit role {kind!r}")
        elif parts[0] == "stage":
            stages.append(Stage(parts[1], int(parts[2]), int(parts[3])))
        else:
            gates.append(_parse_gate_line(parts))
    if sorted(roles) != list(range(count)):
        raise CircuitError("qubit role lines do not cover the register")
    return Circuit(
        tuple(roles[i] for i in range(count)), tuple(gates), tuple(stages)
    )


def _parse_gate_line(parts: list[str]) -> Gate:
    try:
        kind = GateKind(parts[0])
    except ValueError:
        raise CircuitError(f"unknown gate kind {parts[0]!r}") from None
    if len(parts) < 2:
        raise CircuitError(f"gate line too short: {' '.join(parts)!r}")
    target = int(parts[-1])
    controls = []
    for token in parts[1:-1]:
        if token[0] == "+":
            controls.append(Control(int(token[1:]), 1))
        elif token[0] == "-":
            controls.append(Control(int(token[1:]), 0))
        else:
            raise CircuitError(f"control token needs a +/- polarity mark: {token!r}")
    return Gate(kind, tuple(controls), target)

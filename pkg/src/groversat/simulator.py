"""Exact dense statevector simulation.

Amplitudes are complex128; qubit 0 is the least significant bit of the basis
index. The per-gate inner loops live in a compiled Cython extension when
available and in a numpy fallback otherwise; both expose the same in-place
kernel interface.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .circuit import Circuit, Gate, GateKind, RoleKind

if TYPE_CHECKING:
    from .compiler import GroverPlan

# Dense-simulation bound; GROVER_SAT_MAX_QUBITS overrides it.
MAX_QUBITS = int(os.environ.get("GROVER_SAT_MAX_QUBITS", "24"))
DUMP_THRESHOLD = 1e-14

if os.environ.get("GROVERSAT_NO_EXT") == "1":
    from . import _kernels_py as _kernels
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _kernels

KERNEL_IMPLEMENTATION: str = _kernels.IMPLEMENTATION


class SimulationError(ValueError):
    pass


@dataclass
class StateVector:
    qubit_count: int
    amplitudes: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.qubit_count, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _check_qubit_count(q: int):
    if not 1 <= q <= MAX_QUBITS:
        raise SimulationError(f"qubit count {q} outside 1..{MAX_QUBITS}")


def basis_state(q: int, index: int = 0) -> StateVector:
    _check_qubit_count(q)
    if not 0 <= index < (1 << q):
        raise SimulationError(f"basis index {index} out of range for {q} qubits")
    amps = np.zeros(1 << q, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(q, amps)


def uniform_state(q: int) -> StateVector:
    """The equal superposition over all 2**q basis states."""
    _check_qubit_count(q)
    amps = np.full(1 << q, 2.0 ** (-q / 2.0), dtype=np.complex128)
    return StateVector(q, amps)


def _apply_inplace(amps: np.ndarray, q: int, g: Gate):
    for qubit in g.qubits():
        if not 0 <= qubit < q:
            raise SimulationError(f"gate touches qubit {qubit}, state has {q}")
    tbit = 1 << g.target
    if g.kind is GateKind.PAULI_X:
        _kernels.apply_x(amps, tbit)
    elif g.kind is GateKind.HADAMARD:
        _kernels.apply_h(amps, tbit)
    else:
        cmask = cval = 0
        for ctl in g.controls:
            cmask |= 1 << ctl.qubit
            if ctl.fires_on:
                cval |= 1 << ctl.qubit
        if g.kind is GateKind.MCX:
            _kernels.apply_mcx(amps, cmask, cval, tbit)
        else:
            _kernels.apply_mcz(amps, cmask, cval, tbit)


def apply(s: StateVector, g: Gate) -> StateVector:
    """Apply one gate, returning a new state."""
    out = s.copy()
    _apply_inplace(out.amplitudes, out.qubit_count, g)
    return out


def run(s: StateVector, c: Circuit, upto: int | None = None) -> StateVector:
    """Apply a circuit's gates in order (optionally only the first ``upto``)."""
    if c.qubit_count != s.qubit_count:
        raise SimulationError(
            f"circuit has {c.qubit_count} qubits, state has {s.qubit_count}"
        )
    out = s.copy()
    gates = c.gates if upto is None else c.gates[:upto]
    for gate in gates:
        _apply_inplace(out.amplitudes, out.qubit_count, gate)
    return out


@dataclass
class MeasurementReport:
    """Variable-register marginals of a plan's final state.

    ``probabilities[i]`` is the probability of the variable assignment packed
    into basis index ``i`` (variable 0 = low bit), marginalized over all
    ancillas. ``ancilla_residual`` is the probability mass on states where any
    clause/intermediate/result ancilla is nonzero; the kickback qubit is
    excluded since it legitimately sits in a superposition.
    """

    probabilities: np.ndarray
    argmax: tuple[int, ...]
    ancilla_residual: float

    def probability_of(self, assignment: tuple[int, ...]) -> float:
        idx = 0
        for i, bit in enumerate(assignment):
            if bit:
                idx |= 1 << i
        return float(self.probabilities[idx])


def measure_variables(s: StateVector, plan: "GroverPlan") -> MeasurementReport:
    return measure_circuit_variables(s, plan.circuit)


def measure_circuit_variables(s: StateVector, c: Circuit) -> MeasurementReport:
    """Marginals over the Variable qubits of a circuit's register."""
    nvars = len(c.qubits_with_role(RoleKind.VARIABLE))
    # Layout puts variables at indices 0..nvars-1 (the low bits).
    if c.qubits_with_role(RoleKind.VARIABLE) != list(range(nvars)):
        raise SimulationError("variable qubits must occupy the low indices")
    probs = s.probabilities()
    marginal = probs.reshape(-1, 1 << nvars).sum(axis=0)
    best = int(np.argmax(marginal))
    argmax = tuple((best >> i) & 1 for i in range(nvars))
    residual = ancilla_residual_mass(s, c)
    return MeasurementReport(marginal, argmax, residual)


def ancilla_residual_mass(s: StateVector, c: Circuit) -> float:
    """Probability mass on basis states with any nonzero non-kickback ancilla."""
    anc_mask = 0
    for i, role in enumerate(c.qubits):
        if role.kind in (RoleKind.CLAUSE_ANCILLA, RoleKind.INTERMEDIATE, RoleKind.RESULT):
            anc_mask |= 1 << i
    if anc_mask == 0:
        return 0.0
    idx = np.arange(s.amplitudes.shape[0], dtype=np.intp)
    probs = s.probabilities()
    return float(probs[(idx & anc_mask) != 0].sum())


def format_state_dump(s: StateVector, threshold: float = DUMP_THRESHOLD) -> str:
    """One line per non-negligible amplitude: basis index, real, imaginary."""
    lines = []
    for i, amp in enumerate(s.amplitudes):
        if abs(amp) >= threshold:
            lines.append(f"{i} {amp.real:.17g} {amp.imag:.17g}")
    return "\n".join(lines) + "\n"

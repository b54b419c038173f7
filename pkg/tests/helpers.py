"""Shared test utilities: reference gate matrices built independently of the
simulator, plus seeded random generators for circuits, states and formulas."""

import numpy as np

from groversat.circuit import Circuit, Control, Gate, GateKind, QubitRole

EQ2_INFIX = "(~a|~b)&(a|b)&a"
EQ6_INFIX = "(a|b)&(~a|c)&~b"
EQ7_INFIX = "(a|b|c)&(a|~b|c)&b&~c"
EQ2_DIMACS = "p cnf 2 3\n-1 -2 0\n1 2 0\n1 0\n"
EQ6_DIMACS = "p cnf 3 3\n1 2 0\n-1 3 0\n-2 0\n"

H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def gate_matrix(gate: Gate, nq: int) -> np.ndarray:
    """Dense matrix of one gate, little-endian (qubit 0 = low index bit)."""
    dim = 1 << nq
    if gate.kind in (GateKind.PAULI_X, GateKind.HADAMARD):
        u2 = X2 if gate.kind is GateKind.PAULI_X else H2
        m = np.eye(1, dtype=complex)
        for q in range(nq - 1, -1, -1):
            m = np.kron(m, u2 if q == gate.target else I2)
        return m
    m = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        fires = all(((col >> c.qubit) & 1) == c.fires_on for c in gate.controls)
        if gate.kind is GateKind.MCX:
            row = col ^ (1 << gate.target) if fires else col
            m[row, col] = 1.0
        else:
            sign = -1.0 if fires and (col >> gate.target) & 1 else 1.0
            m[col, col] = sign
    return m


def circuit_matrix(c: Circuit) -> np.ndarray:
    """Matrix of a whole circuit via plain matrix products (no simulator)."""
    m = np.eye(1 << c.qubit_count, dtype=complex)
    for gate in c.gates:
        m = gate_matrix(gate, c.qubit_count) @ m
    return m


def random_state(rng: np.random.Generator, nq: int) -> np.ndarray:
    amps = rng.normal(size=1 << nq) + 1j * rng.normal(size=1 << nq)
    return (amps / np.linalg.norm(amps)).astype(np.complex128)


def random_gate(rng: np.random.Generator, nq: int) -> Gate:
    kinds = [GateKind.PAULI_X, GateKind.HADAMARD]
    if nq >= 2:
        kinds += [GateKind.MCX, GateKind.MCZ]
    kind = kinds[rng.integers(len(kinds))]
    if kind in (GateKind.PAULI_X, GateKind.HADAMARD):
        return Gate(kind, (), int(rng.integers(nq)))
    n_controls = int(rng.integers(1, min(3, nq - 1) + 1))
    qubits = rng.choice(nq, size=n_controls + 1, replace=False)
    controls = tuple(
        Control(int(q), int(rng.integers(2))) for q in qubits[:-1]
    )
    return Gate(kind, controls, int(qubits[-1]))


def random_circuit(
    rng: np.random.Generator, max_qubits: int = 5, max_gates: int = 20
) -> Circuit:
    nq = int(rng.integers(1, max_qubits + 1))
    ngates = int(rng.integers(0, max_gates + 1))
    roles = tuple(QubitRole.variable(f"q{i}") for i in range(nq))
    gates = tuple(random_gate(rng, nq) for _ in range(ngates))
    return Circuit(roles, gates)


def maxterm_formula(nvars: int, truth):
    """CNF realization of an arbitrary truth table: one clause excluding each
    falsifying assignment. The all-ones table has no CNF clauses and is not
    representable here."""
    from groversat import formula as fm

    clauses = []
    for y in range(1 << nvars):
        if truth[y]:
            continue
        clauses.append([(i, bool((y >> i) & 1)) for i in range(nvars)])
    return fm.make_formula([f"v{i}" for i in range(nvars)], clauses)


def random_formula_spec(rng: np.random.Generator, max_vars: int = 6):
    """Random (variables, clauses) pair as plain data: each clause is a list
    of (variable index, negated) with distinct variables."""
    nvars = int(rng.integers(1, max_vars + 1))
    nclauses = int(rng.integers(0, 5))
    clauses = []
    for _ in range(nclauses):
        width = int(rng.integers(1, min(3, nvars) + 1))
        vs = rng.choice(nvars, size=width, replace=False)
        clauses.append([(int(v), bool(rng.integers(2))) for v in vs])
    return [f"v{i}" for i in range(nvars)], clauses

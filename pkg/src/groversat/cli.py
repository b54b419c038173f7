"""Command-line front end: parse, classify, compile, simulate, cost."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace

from . import __version__, circuit, compiler, costmodel, formula, simulator

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_UNIQUE = 2
EXIT_RESOURCE = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for non-unique
    # formulas, so remap usage problems to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class _Io:
    fmt: str

    def emit(self, report: dict, text_lines: list[str]):
        if self.fmt == "json":
            print(json.dumps(report, indent=2))
        else:
            for line in text_lines:
                print(line)


def _add_input_args(p: argparse.ArgumentParser):
    p.add_argument("input", nargs="?", help="DIMACS CNF file")
    p.add_argument("--expr", help="inline infix formula, e.g. '(~a|~b)&(a|b)&a'")


def _add_compile_args(p: argparse.ArgumentParser):
    p.add_argument(
        "--kickback",
        choices=[s.value for s in compiler.KickbackStyle],
        default=compiler.KickbackStyle.SEPARATE_ANCILLA.value,
    )
    p.add_argument(
        "--wide-clause",
        choices=[s.value for s in compiler.WideClauseStrategy],
        default=compiler.WideClauseStrategy.CASCADE.value,
    )
    p.add_argument("--iterations", type=int, help="fixed iteration count (>= 1)")
    p.add_argument(
        "--force",
        action="store_true",
        help="compile formulas without a unique solution",
    )


def _add_trap_args(p: argparse.ArgumentParser):
    p.add_argument("--eta", type=float, default=0.02)
    p.add_argument("--theta", type=float, default=30.0, help="laser angle (degrees)")
    p.add_argument("--m-ratio", type=float, default=0.1)
    p.add_argument("--wavelength-nm", type=float, default=729.0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="groversat")
    parser.add_argument("--version", action="version", version=f"groversat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[], help="classify a formula by enumeration")
    _add_input_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compile", help="compile a Grover plan and print the circuit")
    _add_input_args(p)
    _add_compile_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("simulate", help="run the plan on the exact simulator")
    _add_input_args(p)
    _add_compile_args(p)
    p.add_argument(
        "--dump-state",
        nargs="?",
        const="final",
        choices=("kickback", "oracle", "final"),
        help="dump amplitudes at a stage boundary (default: final)",
    )
    p.add_argument(
        "--sweep",
        type=int,
        metavar="K",
        help="tabulate success probability for 0..K iterations (CSV)",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("cost", help="estimate trapped-ion execution cost")
    _add_input_args(p)
    _add_compile_args(p)
    _add_trap_args(p)
    p.add_argument(
        "--table1",
        action="store_true",
        help="report the three benchmark circuits from their fixed inventories",
    )
    p.add_argument(
        "--backend",
        choices=(costmodel.CONVENTIONAL, costmodel.STRAIGHTFORWARD, "both"),
        default="both",
    )
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_cost)
    return parser


def _load_formula(args) -> formula.CnfFormula:
    if args.expr is not None and args.input is not None:
        raise _UsageError("give either a DIMACS file or --expr, not both")
    if args.expr is not None:
        return formula.parse_infix(args.expr)
    if args.input is None:
        raise _UsageError("no input: give a DIMACS file or --expr")
    try:
        with open(args.input, encoding="utf-8") as fh:
            return formula.parse_dimacs(fh.read())
    except OSError as exc:
        raise _UsageError(f"cannot read {args.input}: {exc}") from None


class _UsageError(Exception):
    pass


def _options(args) -> compiler.CompileOptions:
    return compiler.CompileOptions(
        kickback_style=compiler.KickbackStyle(args.kickback),
        wide_clause=compiler.WideClauseStrategy(args.wide_clause),
        iterations=args.iterations,
        force=args.force,
    )


def _trap_config(args) -> costmodel.TrapConfig:
    return costmodel.TrapConfig(
        eta=args.eta,
        theta_deg=args.theta,
        m_ratio=args.m_ratio,
        wavelength_m=args.wavelength_nm * 1e-9,
    )


def _formula_dict(f: formula.CnfFormula) -> dict:
    return {
        "variables": list(f.variables),
        "clause_count": f.clause_count,
        "clause_widths": [c.width for c in f.clauses],
    }


def _classification_dict(f: formula.CnfFormula, cls: formula.SatClassification) -> dict:
    return {
        "kind": cls.kind,
        "count": cls.count,
        "solutions": [formula.format_assignment(f, x) for x in cls.solutions],
    }


def _plan_dict(plan: compiler.GroverPlan) -> dict:
    inv_raw = circuit.inventory(plan.circuit)
    inv_cpf = circuit.inventory(circuit.lower_polarity(plan.circuit), rewrite_cx_as_cz=True)
    return {
        "register_size": plan.register_size,
        "iteration_count": plan.iteration_count,
        "gate_count": len(plan.circuit.gates),
        "register": [_role_str(r) for r in plan.circuit.qubits],
        "stage_gate_counts": _stage_counts(plan.circuit),
        "inventory": _inventory_dict(inv_raw),
        "inventory_cpf": _inventory_dict(inv_cpf),
    }


def _role_str(role: circuit.QubitRole) -> str:
    if role.kind is circuit.RoleKind.VARIABLE:
        return f"var {role.name}"
    if role.kind is circuit.RoleKind.INTERMEDIATE:
        return f"inter {role.clause}.{role.step}"
    if role.kind is circuit.RoleKind.CLAUSE_ANCILLA:
        return f"clause {role.clause}"
    return role.kind.value


def _stage_counts(c: circuit.Circuit) -> dict:
    counts: dict[str, int] = {}
    for stage in c.stages:
        counts[stage.name] = counts.get(stage.name, 0) + (stage.end - stage.start)
    return counts


def _inventory_dict(inv: circuit.GateInventory) -> dict:
    out = {}
    for (kind, arity), n in sorted(inv.counts.items()):
        key = "one-qubit" if kind == "one-qubit" else f"{kind}{arity}"
        out[key] = n
    return out


def cmd_solve(args) -> int:
    f = _load_formula(args)
    cls = formula.classify(f)
    report = {
        "tool": {"name": "groversat", "version": __version__},
        "formula": _formula_dict(f),
        "classification": _classification_dict(f, cls),
    }
    if cls.is_unique:
        lines = [f"Unique: {formula.format_assignment(f, cls.unique_solution)}"]
    elif cls.is_unsatisfiable:
        lines = ["Unsatisfiable"]
    else:
        lines = [f"Multiple: {cls.count} solutions"]
        lines += [f"  {formula.format_assignment(f, x)}" for x in cls.solutions]
    _Io(args.format).emit(report, lines)
    return EXIT_OK if cls.is_unique else EXIT_NOT_UNIQUE


def cmd_compile(args) -> int:
    f = _load_formula(args)
    plan = compiler.compile(f, _options(args))
    text = circuit.format_circuit(plan.circuit)
    report = {
        "tool": {"name": "groversat", "version": __version__},
        "formula": _formula_dict(f),
        "plan": _plan_dict(plan),
        "circuit_text": text,
    }
    lines = [
        f"register size: {plan.register_size}",
        f"iterations: {plan.iteration_count}",
        "register:",
    ]
    lines += [f"  {i}: {_role_str(r)}" for i, r in enumerate(plan.circuit.qubits)]
    lines.append("inventory (as compiled): " + _format_counts(report["plan"]["inventory"]))
    lines.append("inventory (phase-flip form): " + _format_counts(report["plan"]["inventory_cpf"]))
    lines.append("circuit:")
    lines.append(text.rstrip("\n"))
    _Io(args.format).emit(report, lines)
    return EXIT_OK


def _format_counts(counts: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in counts.items()) if counts else "none"


def _dump_point(plan: compiler.GroverPlan, which: str, style: compiler.KickbackStyle) -> int:
    if which == "kickback":
        if style is not compiler.KickbackStyle.SEPARATE_ANCILLA:
            raise _UsageError(
                "state dump at the kickback point needs --kickback separate "
                "(the direct style has no result qubit)"
            )
        return plan.circuit.stage_end(compiler.STAGE_KICKBACK, 0)
    if which == "oracle":
        return plan.circuit.stage_end(compiler.STAGE_UNCOMPUTE, 0)
    return len(plan.circuit.gates)


def cmd_simulate(args) -> int:
    f = _load_formula(args)
    opts = _options(args)
    plan = compiler.compile(f, opts)
    state = simulator.run(simulator.basis_state(plan.register_size), plan.circuit)
    measurement = simulator.measure_variables(state, plan)
    report = {
        "tool": {"name": "groversat", "version": __version__},
        "formula": _formula_dict(f),
        "plan": _plan_dict(plan),
        "measurement": {
            "argmax": formula.format_assignment(f, measurement.argmax),
            "argmax_probability": measurement.probability_of(measurement.argmax),
            "ancilla_residual": measurement.ancilla_residual,
        },
    }
    lines = [
        f"register size: {plan.register_size}",
        f"iterations: {plan.iteration_count}",
        f"most likely assignment: {report['measurement']['argmax']}"
        f" (p={report['measurement']['argmax_probability']:.9f})",
        f"ancilla residual: {measurement.ancilla_residual:.3e}",
    ]
    if plan.target_hint is not None:
        p_target = measurement.probability_of(plan.target_hint)
        report["measurement"]["target"] = formula.format_assignment(f, plan.target_hint)
        report["measurement"]["success_probability"] = p_target
        lines.append(
            f"P({formula.format_assignment(f, plan.target_hint)}) = {p_target:.9f}"
        )
    if args.sweep is not None:
        sweep = _sweep(f, opts, args.sweep, plan)
        report["sweep"] = [{"iterations": k, "probability": p} for k, p in sweep]
        lines.append("sweep (iterations,probability):")
        lines += [f"{k},{p:.12g}" for k, p in sweep]
    if args.dump_state is not None:
        upto = _dump_point(plan, args.dump_state, opts.kickback_style)
        partial = simulator.run(simulator.basis_state(plan.register_size), plan.circuit, upto=upto)
        dump = simulator.format_state_dump(partial)
        report["state_dump"] = {"stage": args.dump_state, "amplitudes": dump}
        lines.append(f"state at {args.dump_state} (index real imag):")
        lines.append(dump.rstrip("\n"))
    _Io(args.format).emit(report, lines)
    return EXIT_OK


def _sweep(f, opts, upto_k: int, base_plan: compiler.GroverPlan) -> list[tuple[int, float]]:
    """Success probability of the plan's target after 0..K iterations, read
    off one simulation at the end of each diffusion block."""
    if upto_k < 0:
        raise _UsageError("--sweep takes a nonnegative count")
    target = base_plan.target_hint
    if target is None:
        raise _UsageError("--sweep needs a uniquely satisfiable formula")
    plan = compiler.compile(f, replace(opts, iterations=max(upto_k, 1)))
    state = simulator.basis_state(plan.register_size)
    points = []
    pos = 0
    for stage in plan.circuit.stages:
        state = simulator.run(state, _slice(plan.circuit, pos, stage.end))
        pos = stage.end
        if stage.name == compiler.STAGE_PREAMBLE:
            points.append((0, simulator.measure_variables(state, plan).probability_of(target)))
        elif stage.name == compiler.STAGE_DIFFUSION:
            k = len(points)
            if k <= upto_k:
                points.append((k, simulator.measure_variables(state, plan).probability_of(target)))
    return points


def _slice(c: circuit.Circuit, start: int, end: int) -> circuit.Circuit:
    return circuit.Circuit(c.qubits, c.gates[start:end])


def cmd_cost(args) -> int:
    cfg = _trap_config(args)
    if args.table1:
        return _cost_table1(args, cfg)
    f = _load_formula(args)
    plan = compiler.compile(f, _options(args))
    inv = circuit.inventory(circuit.lower_polarity(plan.circuit), rewrite_cx_as_cz=True)
    omega_z = costmodel.trap_frequency(cfg, plan.register_size)
    reports = []
    if args.backend in (costmodel.CONVENTIONAL, "both"):
        reports.append(costmodel.conventional_report(inv, omega_z, cfg))
    if args.backend in (costmodel.STRAIGHTFORWARD, "both"):
        reports.append(costmodel.straightforward_report(inv, omega_z, cfg))
    if args.format == "csv":
        print("backend,n_ions,omega_z_rad_per_s,pulses,gate_time_seconds,total_seconds")
        for r in reports:
            gate_time = r.t_b_seconds if r.t_b_seconds is not None else r.t_cpf_seconds
            print(
                f"{r.backend},{plan.register_size},{omega_z:.10g},"
                f"{r.pulses},{gate_time:.10g},{r.total_seconds:.10g}"
            )
        return EXIT_OK
    report = {
        "tool": {"name": "groversat", "version": __version__},
        "formula": _formula_dict(f),
        "n_ions": plan.register_size,
        "inventory_cpf": _inventory_dict(inv),
        "omega_z_hz": omega_z / (2 * math.pi),
        "backends": [_cost_dict(r) for r in reports],
    }
    lines = [
        f"ions: {plan.register_size}",
        f"omega_z/2pi: {report['omega_z_hz'] / 1e6:.4f} MHz",
        f"inventory (phase-flip form): {_format_counts(report['inventory_cpf'])}",
    ]
    for r in reports:
        lines += _cost_lines(r)
    _Io(args.format).emit(report, lines)
    return EXIT_OK


def _cost_dict(r: costmodel.CostReport) -> dict:
    out = {
        "backend": r.backend,
        "omega_z_rad_per_s": r.omega_z_rad_per_s,
        "total_seconds": r.total_seconds,
        "pulses": r.pulses,
    }
    if r.backend == costmodel.CONVENTIONAL:
        out["counts"] = {
            "a": r.counts.a_gates,
            "a_star": r.counts.a_star_gates,
            "b": r.counts.b_gates,
            "b_star": r.counts.b_star_gates,
            "one_qubit": r.counts.one_qubit_gates,
        }
        out["t_b_seconds"] = r.t_b_seconds
        out["note"] = r.note
    else:
        out["t_cpf_seconds"] = r.t_cpf_seconds
    return out


def _cost_lines(r: costmodel.CostReport) -> list[str]:
    if r.backend == costmodel.CONVENTIONAL:
        c = r.counts
        return [
            "conventional backend:",
            f"  pulses: A={c.a_gates} A*={c.a_star_gates} B={c.b_gates} "
            f"B*={c.b_star_gates} one-qubit={c.one_qubit_gates}",
            f"  T_B: {r.t_b_seconds * 1e6:.4f} us",
            f"  total: {r.total_seconds * 1e3:.4f} ms",
            f"  note: {r.note}",
        ]
    return [
        "straightforward backend:",
        f"  pulses: {r.pulses}",
        f"  T_CPF: {r.t_cpf_seconds * 1e6:.4f} us",
        f"  total: {r.total_seconds * 1e3:.4f} ms",
    ]


def _cost_table1(args, cfg: costmodel.TrapConfig) -> int:
    rows = costmodel.table1_report(cfg)
    csv_text = costmodel.table1_csv(rows)
    if args.format == "csv":
        print(csv_text, end="")
        return EXIT_OK
    report = {
        "tool": {"name": "groversat", "version": __version__},
        "rows": [
            {
                "circuit": row.label,
                "n_ions": row.n_ions,
                "omega_z_hz": row.omega_z_hz,
                "conventional": _cost_dict(row.conventional),
                "straightforward": _cost_dict(row.straightforward),
            }
            for row in rows
        ],
        "note": costmodel.PULSE_FORMULA_NOTE,
    }
    lines = []
    for row in rows:
        conv, direct = row.conventional, row.straightforward
        lines.append(
            f"circuit {row.label}: ions={row.n_ions} "
            f"omega_z/2pi={row.omega_z_hz / 1e6:.3f} MHz "
            f"N[B]={conv.counts.b_gates} N[B*]={conv.counts.b_star_gates} "
            f"T_B={conv.t_b_seconds * 1e6:.3f} us "
            f"T_conv={conv.total_seconds * 1e3:.3f} ms "
            f"T_direct={direct.total_seconds * 1e3:.3f} ms"
        )
    lines.append(f"note: {costmodel.PULSE_FORMULA_NOTE}")
    _Io(args.format).emit(report, lines)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"groversat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except formula.BoundExceededError as exc:
        print(f"groversat: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except compiler.RegisterLimitError as exc:
        print(f"groversat: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except compiler.NonUniqueFormulaError as exc:
        print(f"groversat: {exc}", file=sys.stderr)
        return EXIT_NOT_UNIQUE
    except (formula.FormulaError, compiler.CompileError, circuit.CircuitError,
            costmodel.CostModelError, simulator.SimulationError) as exc:
        print(f"groversat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

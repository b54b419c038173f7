#!/usr/bin/env python3
"""Benchmark the compiled statevector kernels against the numpy fallback.

Times the four gate kernels on a large register, plus a full
inversion-about-average block (the dominant repeated structure in a search
plan). Run after building the extension:

    python benchmarks/bench_kernels.py --qubits 20
"""

import argparse
import time

import numpy as np

from groversat import _kernels_py
from groversat import compiler
from groversat.circuit import GateKind

try:
    from groversat import _kernels
except ImportError:
    _kernels = None


def apply_gate(mod, amps, gate):
    tbit = 1 << gate.target
    if gate.kind is GateKind.PAULI_X:
        mod.apply_x(amps, tbit)
    elif gate.kind is GateKind.HADAMARD:
        mod.apply_h(amps, tbit)
    else:
        cmask = cval = 0
        for ctl in gate.controls:
            cmask |= 1 << ctl.qubit
            if ctl.fires_on:
                cval |= 1 << ctl.qubit
        if gate.kind is GateKind.MCX:
            mod.apply_mcx(amps, cmask, cval, tbit)
        else:
            mod.apply_mcz(amps, cmask, cval, tbit)


def best_of(runs, fn):
    best = float("inf")
    for _ in range(runs):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(mod, nq, runs):
    n = 1 << nq
    amps = np.full(n, n**-0.5, dtype=np.complex128)
    mid = nq // 2
    all_controls_mask = ((1 << nq) - 1) ^ (1 << mid)
    results = {
        "x": best_of(runs, lambda: mod.apply_x(amps, 1 << mid)),
        "h": best_of(runs, lambda: mod.apply_h(amps, 1 << mid)),
        "mcx": best_of(
            runs,
            lambda: mod.apply_mcx(amps, all_controls_mask, all_controls_mask, 1 << mid),
        ),
        "mcz": best_of(
            runs,
            lambda: mod.apply_mcz(amps, all_controls_mask, all_controls_mask, 1 << mid),
        ),
    }
    diffusion = compiler.compile_diffusion(nq)

    def run_diffusion():
        for gate in diffusion.gates:
            apply_gate(mod, amps, gate)

    results["diffusion block"] = best_of(runs, run_diffusion)
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qubits", type=int, default=20)
    parser.add_argument("--runs", type=int, default=5)
    args = parser.parse_args()

    print(f"register: {args.qubits} qubits ({1 << args.qubits} amplitudes), "
          f"best of {args.runs}")
    fallback = bench_kernels(_kernels_py, args.qubits, args.runs)
    if _kernels is None:
        print("compiled kernels not built (install without GROVERSAT_NO_EXT)")
        compiled = None
    else:
        compiled = bench_kernels(_kernels, args.qubits, args.runs)

    header = f"{'op':>16}  {'numpy (ms)':>12}  {'cython (ms)':>12}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for op, t_py in fallback.items():
        if compiled is None:
            print(f"{op:>16}  {t_py * 1e3:12.3f}  {'-':>12}  {'-':>8}")
        else:
            t_cy = compiled[op]
            print(
                f"{op:>16}  {t_py * 1e3:12.3f}  {t_cy * 1e3:12.3f}  "
                f"{t_py / t_cy:8.2f}x"
            )


if __name__ == "__main__":
    main()

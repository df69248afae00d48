"""Verifier for qudit protocols written in the CQP process calculus.

Pipeline: parse a `.cqp` program, check the linear (no-cloning) typing,
execute the operational semantics into a finite labelled transition system,
and decide probabilistic branching bisimilarity between two programs.
"""

__version__ = "0.1.0"

from .qudits import (  # noqa: F401
    DensityMatrix,
    MeasurementBranch,
    PureState,
    Unitary,
    apply_gate,
    basis_state,
    bell_state,
    cnot_lshift,
    cnot_rshift,
    hadamard,
    measure_qudits,
    omega,
    partial_trace,
    pauli_x_pow,
    pauli_z_pow,
)

"""Stabilizer encoding of finite Boolean-function axiom systems.

Black boxes write the values of N single-argument Boolean functions onto N
qubits; Pauli-group measurements then test parity propositions about those
values.  A proposition is logically dependent on the encoded axioms exactly
when its observable commutes with every stabilizer generator, in which case
the outcome is definite; otherwise the outcome is uniformly random.  This
package carries the exact tableau machinery for that correspondence, a dense
brute-force oracle to check it against, and a seeded Monte-Carlo harness for
the finite-statistics experiments.
"""
from .blackbox import (
    BlackBoxConfig,
    BooleanFunction,
    axiom_truths,
    parse_config,
    proposition_truth,
)
from .gf2 import BitMatrix, BitVector, in_span, rank, symplectic_product
from .logic import (
    AxiomSet,
    DependenceReport,
    GhzReport,
    Proposition,
    classical_truth,
    classify,
    enumerate_propositions,
    ghz_report,
    quantum_truth,
)
from .pauli import (
    PauliOperator,
    SignedObservable,
    commutes,
    conjugate_by_blackbox,
    format_observable,
    from_proposition,
    multiply,
    observable_product,
    parse_observable,
)
from .stabilizer import (
    MeasurementKind,
    MeasurementResult,
    OutcomeDistribution,
    StabilizerTableau,
    apply_blackbox,
    joint_distribution,
    measure,
    measure_forced,
    prepare,
    random_axioms,
    random_commuting_observables,
)
from .experiment import (
    Decision,
    NoiseModel,
    RunRecord,
    Verdict,
    classify_record,
    decay_study,
    philox_rng,
    reproduce_q1,
    reproduce_q2,
    sample,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomSet",
    "BitMatrix",
    "BitVector",
    "BlackBoxConfig",
    "BooleanFunction",
    "Decision",
    "DependenceReport",
    "GhzReport",
    "MeasurementKind",
    "MeasurementResult",
    "NoiseModel",
    "OutcomeDistribution",
    "PauliOperator",
    "Proposition",
    "RunRecord",
    "SignedObservable",
    "StabilizerTableau",
    "Verdict",
    "apply_blackbox",
    "axiom_truths",
    "classical_truth",
    "classify",
    "classify_record",
    "commutes",
    "conjugate_by_blackbox",
    "decay_study",
    "enumerate_propositions",
    "format_observable",
    "from_proposition",
    "ghz_report",
    "in_span",
    "joint_distribution",
    "measure",
    "measure_forced",
    "multiply",
    "observable_product",
    "parse_config",
    "parse_observable",
    "philox_rng",
    "prepare",
    "proposition_truth",
    "quantum_truth",
    "random_axioms",
    "random_commuting_observables",
    "rank",
    "sample",
    "symplectic_product",
]

"""Propositions, logical dependence, and the classical/quantum truth split.

A proposition is a 2N-bit vector; it is dependent on an axiom set exactly
when it lies in the GF(2) span of the axiom vectors, which coincides with
its observable commuting with every encoded generator.  Dependent
propositions carry two candidate truth values: the classical one (parity
combination of the axiom truth bits) and the quantum one (read off a
measurement of the prepared state).  The two can legitimately differ, and
when they do the witness is the operator-level phase bit of the generator
product; :func:`ghz_report` packages the canonical three-qubit instance of
that divergence.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from . import blackbox as bb
from . import pauli
from . import stabilizer as stab
from .blackbox import BlackBoxConfig
from .gf2 import BitMatrix, BitVector, in_span, rank, symplectic_product
from .pauli import PauliOperator, SignedObservable
from .stabilizer import MeasurementKind, StabilizerTableau

ENUMERATION_CAP = 8


@dataclass(frozen=True)
class Proposition:
    """A 2N-bit proposition vector (alpha_1..alpha_N, beta_1..beta_N)."""

    vector: BitVector

    def __post_init__(self):
        if len(self.vector) % 2:
            raise ValueError(f"proposition vector length {len(self.vector)} is odd")

    @property
    def n_qubits(self) -> int:
        return len(self.vector) // 2

    @classmethod
    def from_string(cls, text: str) -> "Proposition":
        """From Pauli letters, e.g. "XXX"; a leading sign is ignored."""
        return cls(pauli.parse_observable(text).vector)

    def observable(self) -> SignedObservable:
        return pauli.from_proposition(self.vector)

    def __str__(self) -> str:
        return pauli.format_observable(self.observable())[1:]


class AxiomSet:
    """N axiom vectors with their truth parities (1 encodes an "= 1" axiom).

    Vectors must be pairwise symplectically orthogonal and GF(2)-independent,
    i.e. they must describe a co-measurable, information-complete axiom
    system for N qubits.
    """

    __slots__ = ("_vectors", "_parities")

    def __init__(self, vectors: Sequence[BitVector], parities: Sequence[int]):
        vectors = tuple(vectors)
        parities = tuple(int(b) for b in parities)
        if not vectors:
            raise ValueError("empty axiom set")
        if len(vectors) != len(parities):
            raise ValueError("one parity bit per axiom vector required")
        if any(b not in (0, 1) for b in parities):
            raise ValueError("parities must be bits")
        two_n = len(vectors[0])
        n = two_n // 2
        if two_n % 2 or len(vectors) != n:
            raise ValueError(f"need exactly {n} vectors of length {two_n}")
        if any(len(v) != two_n for v in vectors):
            raise ValueError("axiom vectors have inconsistent lengths")
        for p in range(n):
            for q in range(p + 1, n):
                if symplectic_product(vectors[p], vectors[q]):
                    raise ValueError("axioms not co-measurable")
        if rank(BitMatrix(vectors, num_cols=two_n)) != n:
            raise ValueError("axioms not independent")
        self._vectors = vectors
        self._parities = parities

    @property
    def vectors(self) -> tuple:
        return self._vectors

    @property
    def parities(self) -> tuple:
        return self._parities

    @property
    def n_qubits(self) -> int:
        return len(self._vectors)

    def matrix(self) -> BitMatrix:
        return BitMatrix(self._vectors, num_cols=2 * self.n_qubits)

    def signs(self) -> tuple:
        """Eigenvalue signs (-1)^parity, one per axiom."""
        return tuple(-1 if b else 1 for b in self._parities)

    def generator_pairs(self) -> list:
        """(vector, sign) pairs ready for :func:`stabilizer.prepare`."""
        return list(zip(self._vectors, self.signs()))

    @classmethod
    def from_observables(cls, observables: Sequence[SignedObservable]) -> "AxiomSet":
        """Sign -1 becomes parity 1 (the "= 1" reading)."""
        return cls(
            [o.vector for o in observables],
            [0 if o.sign == 1 else 1 for o in observables],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AxiomSet):
            return NotImplemented
        return self._vectors == other._vectors and self._parities == other._parities

    def __repr__(self) -> str:
        obs = ", ".join(
            pauli.format_observable(SignedObservable(pauli.from_proposition(v).base, s))
            for v, s in self.generator_pairs()
        )
        return f"AxiomSet({obs})"


@dataclass(frozen=True)
class DependenceReport:
    """Classification of one proposition against one axiom set.

    ``coefficients`` and the truth fields are populated only for dependent
    propositions; ``phase_bit`` is the operator-level sign c in
    ``Theta = (-1)^c * prod_p Omega_p^{k_p}`` and witnesses any divergence
    between the two truth values.
    """

    dependent: bool
    coefficients: Optional[BitVector] = None
    classical_truth: Optional[int] = None
    quantum_truth: Optional[int] = None
    phase_bit: Optional[int] = None


class PropositionCounts(NamedTuple):
    dependent: int
    independent: int


def classify(j: Proposition, axioms: AxiomSet) -> DependenceReport:
    """Dependence test: is the proposition vector in the axioms' GF(2) span?"""
    if len(j.vector) != 2 * axioms.n_qubits:
        raise ValueError(
            f"length mismatch: proposition {len(j.vector)}, "
            f"axioms expect {2 * axioms.n_qubits}"
        )
    coeffs = in_span(j.vector, axioms.matrix())
    if coeffs is None:
        return DependenceReport(dependent=False)
    return DependenceReport(
        dependent=True,
        coefficients=coeffs,
        phase_bit=_phase_bit(j, axioms, coeffs),
    )


def _phase_bit(j: Proposition, axioms: AxiomSet, coeffs: BitVector) -> int:
    product = PauliOperator.identity(axioms.n_qubits)
    for k, v in zip(coeffs, axioms.vectors):
        if k:
            product = pauli.multiply(product, pauli.from_proposition(v).base)
    delta = (j.observable().base.phase - product.phase) % 4
    return delta // 2


def classical_truth(j: Proposition, axioms: AxiomSet) -> Optional[int]:
    """Parity combination sum_p k_p * t_p of the axiom truths, or None."""
    report = classify(j, axioms)
    if not report.dependent:
        return None
    total = 0
    for k, t in zip(report.coefficients, axioms.parities):
        total ^= k & t
    return total


def quantum_truth(j: Proposition, state: StabilizerTableau) -> Optional[int]:
    """Truth bit b from a definite measurement outcome (-1)^b, or None."""
    if j.n_qubits != state.n_qubits:
        raise ValueError(f"size mismatch: {j.n_qubits} vs {state.n_qubits} qubits")
    result = stab.measure_forced(state, j.observable(), 1)
    if result.kind is not MeasurementKind.DETERMINISTIC:
        return None
    return 0 if result.outcome == 1 else 1


def enumerate_propositions(
    n: int, axioms: AxiomSet, cap: int = ENUMERATION_CAP
) -> PropositionCounts:
    """Exhaustively classify all 4^n proposition vectors.

    For any valid axiom set the result is (2^n, 4^n - 2^n): the span of n
    independent vectors has 2^n elements.
    """
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap of {cap}")
    if axioms.n_qubits != n:
        raise ValueError(f"axiom set is for {axioms.n_qubits} qubits, not {n}")
    matrix = axioms.matrix()
    dependent = 0
    for mask in range(4 ** n):
        v = BitVector.from_mask(mask, 2 * n)
        if in_span(v, matrix) is not None:
            dependent += 1
    return PropositionCounts(dependent, 4 ** n - dependent)


# The canonical three-qubit instance: generators of the shared eigenstate and
# the three product observables serving as axioms, plus the derived one.
GHZ_GENERATOR_STRINGS = ("+ZZI", "+IZZ", "+XXX")
GHZ_AXIOM_STRINGS = ("YYX", "YXY", "XYY")
GHZ_DERIVED_STRING = "XXX"


@dataclass(frozen=True)
class GhzReport:
    """Outcome of the three-qubit classical-vs-quantum truth comparison."""

    config: str
    axiom_observables: tuple
    axiom_parities: tuple
    derived_observable: str
    coefficients: tuple
    classical: int
    quantum: int
    phase_bit: int

    @property
    def contradiction(self) -> int:
        return self.classical ^ self.quantum

    def to_text(self) -> str:
        lines = [
            f"config: {self.config}",
            f"axioms: {' '.join(self.axiom_observables)}",
            f"axiom_parities: {' '.join(str(b) for b in self.axiom_parities)}",
            f"derived: {self.derived_observable}",
            f"coefficients: ({','.join(str(k) for k in self.coefficients)})",
            f"classical_truth: {self.classical}",
            f"quantum_truth: {self.quantum}",
            f"phase_bit: {self.phase_bit}",
            f"contradiction: {self.contradiction}",
        ]
        return "".join(line + "\n" for line in lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "config": self.config,
                "axioms": list(self.axiom_observables),
                "axiom_parities": list(self.axiom_parities),
                "derived": self.derived_observable,
                "coefficients": list(self.coefficients),
                "classical_truth": self.classical,
                "quantum_truth": self.quantum,
                "phase_bit": self.phase_bit,
                "contradiction": self.contradiction,
            },
            indent=2,
        )


def ghz_report(cfg: BlackBoxConfig) -> GhzReport:
    """Run the three-qubit contradiction for one black-box configuration.

    The prepared state is the joint +1 eigenstate of ZZI, IZZ, XXX; the
    axioms are the observables YYX, YXY, XYY (each a product of two
    generators, up to sign) whose parities the post-box state encodes.  The
    derived proposition XXX is dependent with coefficients (1,1,1); its
    classical parity combination and its definite measurement outcome always
    disagree, because the operator product of the three axiom observables is
    minus XXX.
    """
    if cfg.n != 3:
        raise ValueError(f"the GHZ argument needs exactly 3 qubits, got {cfg.n}")
    axiom_vectors = [Proposition.from_string(s).vector for s in GHZ_AXIOM_STRINGS]
    shifts = bb.axiom_truths(axiom_vectors, cfg)
    # Each axiom reads "= 1" on the bare state; the box XORs in its parity.
    parities = [1 ^ t for t in shifts]
    axioms = AxiomSet(axiom_vectors, parities)

    state = stab.prepare(
        [(pauli.parse_observable(s).vector, 1) for s in GHZ_GENERATOR_STRINGS]
    )
    state = stab.apply_blackbox(state, cfg)
    for vector, parity in zip(axiom_vectors, parities):
        encoded = quantum_truth(Proposition(vector), state)
        if encoded != parity:  # arithmetic and physics must agree here
            raise AssertionError("state does not encode the axiom parities")

    derived = Proposition.from_string(GHZ_DERIVED_STRING)
    report = classify(derived, axioms)
    return GhzReport(
        config=str(cfg),
        axiom_observables=GHZ_AXIOM_STRINGS,
        axiom_parities=tuple(parities),
        derived_observable=GHZ_DERIVED_STRING,
        coefficients=report.coefficients.to_tuple(),
        classical=classical_truth(derived, axioms),
        quantum=quantum_truth(derived, state),
        phase_bit=report.phase_bit,
    )

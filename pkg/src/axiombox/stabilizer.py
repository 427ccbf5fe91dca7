"""Stabilizer-tableau states: preparation from axioms, black-box evolution,
Pauli measurement with collapse, and exact joint outcome distributions.

A tableau holds N signed commuting generators (the encoded axioms) plus N
destabilizers, one anticommutation partner per generator.  The destabilizer
pairing turns "which generators multiply to this observable" into N symplectic
products, so a deterministic measurement costs O(N^2) bit operations and is
phase-exact; no linear system is solved at measurement time.

Tableaus are value-like: measurement returns a fresh post-state instead of
mutating, so states can be shared and branched freely.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Sequence, Tuple

from . import pauli
from .blackbox import BlackBoxConfig
from .gf2 import (
    BitMatrix,
    BitVector,
    in_span,
    nullspace,
    rank,
    swap_halves,
    symplectic_product,
)
from .pauli import PauliOperator, SignedObservable


class MeasurementKind(Enum):
    DETERMINISTIC = "deterministic"
    RANDOM = "random"


class StabilizerTableau:
    """N-qubit stabilizer state as signed generators plus destabilizers."""

    __slots__ = ("_generators", "_destabilizers")

    def __init__(
        self,
        generators: Sequence[SignedObservable],
        destabilizers: Sequence[PauliOperator],
    ):
        self._generators = tuple(generators)
        self._destabilizers = tuple(destabilizers)

    @property
    def n_qubits(self) -> int:
        return self._generators[0].n_qubits

    @property
    def generators(self) -> tuple:
        return self._generators

    @property
    def destabilizers(self) -> tuple:
        return self._destabilizers

    def generator_matrix(self) -> BitMatrix:
        return BitMatrix([g.vector for g in self._generators])

    def check_invariants(self) -> None:
        """Raise AssertionError if the tableau structure is broken."""
        n = self.n_qubits
        assert len(self._generators) == n and len(self._destabilizers) == n
        for p in range(n):
            for q in range(p + 1, n):
                assert (
                    symplectic_product(
                        self._generators[p].vector, self._generators[q].vector
                    )
                    == 0
                ), "generators must commute pairwise"
        assert rank(self.generator_matrix()) == n, "generators must be independent"
        for p in range(n):
            dv = self._destabilizers[p].vector
            for q in range(n):
                want = 1 if p == q else 0
                assert (
                    symplectic_product(dv, self._generators[q].vector) == want
                ), "destabilizer pairing broken"

    def to_text(self) -> str:
        """One signed generator per line, e.g. "+ZZI"."""
        return "".join(pauli.format_observable(g) + "\n" for g in self._generators)

    @classmethod
    def from_text(cls, text: str) -> "StabilizerTableau":
        """Parse :meth:`to_text` output (or any axiom file) and prepare."""
        pairs = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            obs = pauli.parse_observable(line)
            pairs.append((obs.vector, obs.sign))
        return prepare(pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StabilizerTableau):
            return NotImplemented
        return (
            self._generators == other._generators
            and self._destabilizers == other._destabilizers
        )

    def __repr__(self) -> str:
        gens = " ".join(pauli.format_observable(g) for g in self._generators)
        return f"StabilizerTableau({gens})"


@dataclass(frozen=True)
class MeasurementResult:
    outcome: int  # +1 or -1
    kind: MeasurementKind
    post_state: StabilizerTableau


class OutcomeDistribution:
    """Exact probabilities over sign-vectors (one +-1 entry per observable)."""

    __slots__ = ("_outcomes", "_num_observables")

    def __init__(
        self,
        outcomes: Dict[tuple, float],
        num_observables: int,
        tolerance: float = 1e-9,
    ):
        total = 0.0
        for signs, prob in outcomes.items():
            if len(signs) != num_observables:
                raise ValueError(f"sign vector {signs} has wrong length")
            if any(s not in (1, -1) for s in signs):
                raise ValueError(f"sign vector {signs} must contain only +-1")
            if prob < -tolerance:
                raise ValueError(f"negative probability {prob} for {signs}")
            total += prob
        if abs(total - 1.0) > tolerance:
            raise ValueError(f"probabilities sum to {total}, not 1")
        self._outcomes = dict(outcomes)
        self._num_observables = num_observables

    @property
    def num_observables(self) -> int:
        return self._num_observables

    @property
    def outcomes(self) -> dict:
        return dict(self._outcomes)

    def probability(self, signs: tuple) -> float:
        return self._outcomes.get(tuple(signs), 0.0)

    def support(self) -> list:
        return sorted(s for s, p in self._outcomes.items() if p > 0.0)

    def dense_items(self) -> list:
        """All 2^m sign-vectors with their probabilities, zeros included,
        in (+ before -) lexicographic order."""
        items = []
        for index in range(2 ** self._num_observables):
            signs = tuple(
                -1 if (index >> (self._num_observables - 1 - k)) & 1 else 1
                for k in range(self._num_observables)
            )
            items.append((signs, self.probability(signs)))
        return items

    def max_deviation(self, other: "OutcomeDistribution") -> float:
        """Largest absolute probability difference over all sign-vectors."""
        if self._num_observables != other._num_observables:
            raise ValueError("distributions are over different observable counts")
        keys = set(self._outcomes) | set(other._outcomes)
        return max(
            (abs(self.probability(k) - other.probability(k)) for k in keys),
            default=0.0,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OutcomeDistribution):
            return NotImplemented
        return self.max_deviation(other) == 0.0

    def __repr__(self) -> str:
        body = ", ".join(
            f"{''.join('+' if s == 1 else '-' for s in k)}: {v}"
            for k, v in sorted(self._outcomes.items(), reverse=True)
        )
        return f"OutcomeDistribution({{{body}}})"


def prepare(axioms: Sequence[Tuple[BitVector, int]]) -> StabilizerTableau:
    """Tableau for the joint eigenstate of the given signed axiom observables.

    ``axioms`` is a list of (2N-bit vector, sign) pairs: exactly N of them,
    pairwise symplectically orthogonal and GF(2)-independent.  Destabilizers
    are synthesized by solving the symplectic pairing constraints.
    """
    if not axioms:
        raise ValueError("empty axiom list")
    vectors = [v for v, _ in axioms]
    signs = [s for _, s in axioms]
    if any(s not in (1, -1) for s in signs):
        raise ValueError("axiom signs must be +1 or -1")
    two_n = len(vectors[0])
    if two_n % 2:
        raise ValueError(f"axiom vectors must have even length, got {two_n}")
    n = two_n // 2
    if len(vectors) != n:
        raise ValueError(f"need exactly {n} axioms for {n} qubits, got {len(vectors)}")
    for v in vectors:
        if len(v) != two_n:
            raise ValueError("axiom vectors have inconsistent lengths")
    for p in range(n):
        for q in range(p + 1, n):
            if symplectic_product(vectors[p], vectors[q]):
                raise ValueError("axioms not co-measurable")
    if rank(BitMatrix(vectors, num_cols=two_n)) != n:
        raise ValueError("axioms not independent")

    generators = [
        SignedObservable(pauli.from_proposition(v).base, s)
        for v, s in zip(vectors, signs)
    ]
    destabilizers = _synthesize_destabilizers(vectors)
    return StabilizerTableau(generators, destabilizers)


def _synthesize_destabilizers(vectors: Sequence[BitVector]) -> list:
    """Find d_p with <d_p, g_q> = delta_pq by GF(2) elimination."""
    n = len(vectors)
    pairing = BitMatrix([swap_halves(v) for v in vectors])  # row q . d = <d, g_q>
    columns = pairing.transpose()
    destabilizers = []
    for p in range(n):
        coeffs = in_span(BitVector.unit(p, n), columns)
        if coeffs is None:  # impossible for independent generators
            raise AssertionError("destabilizer synthesis failed; rank invariant broken")
        x, z = coeffs.halves()
        destabilizers.append(PauliOperator(x, z, (x & z).weight() % 4))
    return destabilizers


def apply_blackbox(t: StabilizerTableau, cfg: BlackBoxConfig) -> StabilizerTableau:
    """Conjugate every generator; only signs can change."""
    if t.n_qubits != cfg.n:
        raise ValueError(f"size mismatch: {t.n_qubits} qubits vs {cfg.n} functions")
    new_gens = [pauli.conjugate_by_blackbox(g, cfg) for g in t.generators]
    return StabilizerTableau(new_gens, t.destabilizers)


def _deterministic_outcome(t: StabilizerTableau, obs: SignedObservable) -> int:
    """Outcome when obs commutes with every generator.

    The destabilizer pairing reads off the coefficients k_p of
    ``base(obs) = i^{2c} * prod_p base(g_p)^{k_p}``; the phase-exact product
    then yields c and the outcome ``obs.sign * (-1)^c * prod_p sign(g_p)^{k_p}``.
    """
    ov = obs.vector
    product = PauliOperator.identity(t.n_qubits)
    sign_product = 1
    for g, d in zip(t.generators, t.destabilizers):
        if symplectic_product(ov, d.vector):
            product = pauli.multiply(product, g.base)
            sign_product *= g.sign
    if product.vector != ov:  # can only happen if the rank-N invariant broke
        raise AssertionError("observable not in generator span despite commuting")
    delta = (obs.base.phase - product.phase) % 4
    phase_flip = -1 if delta == 2 else 1
    return obs.sign * phase_flip * sign_product


def _collapse(
    t: StabilizerTableau,
    obs: SignedObservable,
    anticommuting: Sequence[int],
    outcome: int,
) -> StabilizerTableau:
    """Standard anticommuting-generator replacement with destabilizer upkeep."""
    q = anticommuting[0]
    pivot = t.generators[q]
    generators = list(t.generators)
    destabilizers = list(t.destabilizers)
    for p in anticommuting[1:]:
        generators[p] = pauli.observable_product(generators[p], pivot)
    ov = obs.vector
    for p, d in enumerate(destabilizers):
        if p != q and symplectic_product(ov, d.vector):
            destabilizers[p] = pauli.multiply(d, pivot.base)
    destabilizers[q] = pivot.base
    generators[q] = SignedObservable(obs.base, outcome * obs.sign)
    return StabilizerTableau(generators, destabilizers)


def measure(
    t: StabilizerTableau, obs: SignedObservable, rng=None
) -> MeasurementResult:
    """Measure one Pauli observable.

    If obs commutes with every generator the outcome is definite and the
    state is unchanged.  Otherwise the outcome is +-1 with probability 1/2
    each, drawn from ``rng`` (a ``numpy.random.Generator`` or anything with
    a ``random()`` method); the module never owns a seed.
    """
    if obs.n_qubits != t.n_qubits:
        raise ValueError(f"size mismatch: {obs.n_qubits} vs {t.n_qubits} qubits")
    ov = obs.vector
    anticommuting = [
        p
        for p, g in enumerate(t.generators)
        if symplectic_product(ov, g.vector)
    ]
    if not anticommuting:
        return MeasurementResult(
            _deterministic_outcome(t, obs), MeasurementKind.DETERMINISTIC, t
        )
    if rng is None:
        raise ValueError("random measurement outcome requires an rng")
    outcome = 1 if rng.random() < 0.5 else -1
    post = _collapse(t, obs, anticommuting, outcome)
    return MeasurementResult(outcome, MeasurementKind.RANDOM, post)


def measure_forced(
    t: StabilizerTableau, obs: SignedObservable, outcome: int
) -> MeasurementResult:
    """Like :func:`measure` but a random branch takes the given outcome.

    Deterministic measurements ignore ``outcome`` and report their own.
    """
    if outcome not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome}")
    if obs.n_qubits != t.n_qubits:
        raise ValueError(f"size mismatch: {obs.n_qubits} vs {t.n_qubits} qubits")
    ov = obs.vector
    anticommuting = [
        p
        for p, g in enumerate(t.generators)
        if symplectic_product(ov, g.vector)
    ]
    if not anticommuting:
        return MeasurementResult(
            _deterministic_outcome(t, obs), MeasurementKind.DETERMINISTIC, t
        )
    post = _collapse(t, obs, anticommuting, outcome)
    return MeasurementResult(outcome, MeasurementKind.RANDOM, post)


def joint_distribution(
    t: StabilizerTableau, obs_list: Sequence[SignedObservable]
) -> OutcomeDistribution:
    """Exact outcome distribution for a list of pairwise-commuting observables.

    Computed by sequential measurement with branching on random results, so
    every probability is exactly 0 or 1/2^m (m = number of binary random
    choices on that branch), and those values are exact in binary floating
    point.
    """
    for i in range(len(obs_list)):
        for k in range(i + 1, len(obs_list)):
            if symplectic_product(obs_list[i].vector, obs_list[k].vector):
                raise ValueError("not co-measurable")
    outcomes: Dict[tuple, float] = {}

    def walk(state: StabilizerTableau, index: int, prob: float, signs: tuple):
        if index == len(obs_list):
            outcomes[signs] = outcomes.get(signs, 0.0) + prob
            return
        obs = obs_list[index]
        first = measure_forced(state, obs, 1)
        if first.kind is MeasurementKind.DETERMINISTIC:
            walk(first.post_state, index + 1, prob, signs + (first.outcome,))
        else:
            walk(first.post_state, index + 1, prob * 0.5, signs + (1,))
            second = measure_forced(state, obs, -1)
            walk(second.post_state, index + 1, prob * 0.5, signs + (-1,))

    walk(t, 0, 1.0, ())
    return OutcomeDistribution(outcomes, len(obs_list))


def random_axioms(n: int, rng) -> list:
    """A uniformly-flavored random valid axiom set: N signed 2N-bit vectors,
    pairwise symplectically orthogonal and independent.

    Grown greedily: each new vector is a random element of the symplectic
    orthogonal complement of the ones chosen so far, rejected if it falls in
    their span.
    """
    two_n = 2 * n
    vectors: List[BitVector] = []
    while len(vectors) < n:
        if vectors:
            complement = nullspace(BitMatrix([swap_halves(v) for v in vectors]))
        else:
            complement = [BitVector.unit(i, two_n) for i in range(two_n)]
        picks = rng.integers(0, 2, size=len(complement))
        mask = 0
        for bit, basis_vec in zip(picks, complement):
            if bit:
                mask ^= basis_vec.mask
        candidate = BitVector.from_mask(mask, two_n)
        if candidate.is_zero():
            continue
        if vectors and in_span(candidate, BitMatrix(vectors, num_cols=two_n)) is not None:
            continue
        vectors.append(candidate)
    return [(v, 1 if rng.integers(0, 2) == 0 else -1) for v in vectors]


def random_commuting_observables(n: int, count: int, rng) -> list:
    """``count`` random pairwise-commuting signed observables on n qubits.

    Unlike :func:`random_axioms`, linear dependence (and even the identity)
    is allowed; the list only has to be co-measurable.
    """
    two_n = 2 * n
    vectors: List[BitVector] = []
    while len(vectors) < count:
        if vectors:
            complement = nullspace(BitMatrix([swap_halves(v) for v in vectors]))
        else:
            complement = [BitVector.unit(i, two_n) for i in range(two_n)]
        mask = 0
        if complement:
            picks = rng.integers(0, 2, size=len(complement))
            for bit, basis_vec in zip(picks, complement):
                if bit:
                    mask ^= basis_vec.mask
        vectors.append(BitVector.from_mask(mask, two_n))
    observables = []
    for v in vectors:
        sign = 1 if rng.integers(0, 2) == 0 else -1
        base = pauli.from_proposition(v).base
        observables.append(SignedObservable(base, sign))
    return observables

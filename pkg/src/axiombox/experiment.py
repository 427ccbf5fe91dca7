"""Monte-Carlo harness: seeded sampling with a noise model, classification of
finite outcome strings as dependent/independent, and the misclassification
decay study, plus the two standard demonstration grids (single-qubit state
times basis matrix; Bell state in three bases).

Randomness is counter-based Philox keyed on (seed, substream), so every
record is bit-reproducible from its seed and a demo's cells can be drawn in
any order (or concurrently) without changing the output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import pauli
from . import stabilizer as stab
from .blackbox import BlackBoxConfig
from .pauli import SignedObservable
from .stabilizer import StabilizerTableau

_MASK64 = (1 << 64) - 1


def philox_rng(seed: int, substream: int = 0) -> np.random.Generator:
    """Counter-based generator keyed on (seed, substream): streams for
    different substreams never overlap, whatever order they are drawn in."""
    key = np.array([seed & _MASK64, substream & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class NoiseModel:
    """I.i.d. outcome-bit flips plus multiplicative detector bias.

    ``flip_prob`` is the chance each measured sign is reported inverted;
    ``bias`` maps an outcome sign-vector to a positive detection weight
    (unnormalized), default uniform.
    """

    flip_prob: float = 0.0
    bias: Optional[Dict[tuple, float]] = None

    def __post_init__(self):
        if not 0.0 <= self.flip_prob < 0.5:
            raise ValueError(
                f"flip_prob must lie in [0, 0.5), got {self.flip_prob}"
            )
        if self.bias is not None:
            if not self.bias:
                raise ValueError("bias map must not be empty")
            if any(w <= 0 for w in self.bias.values()):
                raise ValueError("bias weights must be positive")

    def weight(self, signs: tuple) -> float:
        if self.bias is None:
            return 1.0
        return self.bias.get(signs, 1.0)


@dataclass(frozen=True)
class RunRecord:
    """One sampling run: counts per outcome plus full provenance."""

    seed: int
    n_runs: int
    counts: Dict[tuple, int]
    observables: tuple
    config: Optional[str] = None
    axioms: Optional[tuple] = None
    flip_prob: float = 0.0
    substream: int = 0

    def __post_init__(self):
        if sum(self.counts.values()) != self.n_runs:
            raise ValueError("counts must sum to n_runs")

    def frequency(self, signs: tuple) -> float:
        return self.counts.get(tuple(signs), 0) / self.n_runs


class Decision(Enum):
    DEPENDENT = "dependent"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class Verdict:
    decision: Decision
    imbalance: float
    confidence_bound: float


@dataclass(frozen=True)
class FrequencyRow:
    """One CSV row of a demo grid."""

    state: str
    basis: str
    outcome_label: str
    count: int
    frequency: float


@dataclass(frozen=True)
class DecayRow:
    run_length: int
    error_rate: float  # averaged over both ground truths
    dependent_error_rate: float
    independent_error_rate: float
    chernoff_bound: float


def sample(
    state: StabilizerTableau,
    observables: Sequence[SignedObservable],
    n_runs: int,
    seed: int,
    noise: Optional[NoiseModel] = None,
    substream: int = 0,
    config: Optional[BlackBoxConfig] = None,
    axioms: Optional[Sequence[str]] = None,
) -> RunRecord:
    """Draw ``n_runs`` independent outcomes of the joint measurement.

    The exact distribution is computed once, reweighted by detector bias,
    sampled, and then every outcome bit is flipped independently with
    probability ``noise.flip_prob``.
    """
    if n_runs < 1:
        raise ValueError(f"n_runs must be >= 1, got {n_runs}")
    if not observables:
        raise ValueError("at least one observable is required")
    noise = noise or NoiseModel()
    dist = stab.joint_distribution(state, observables)
    support = dist.support()
    weights = np.array([dist.probability(s) * noise.weight(s) for s in support])
    weights = weights / weights.sum()

    rng = philox_rng(seed, substream)
    picks = rng.choice(len(support), size=n_runs, p=weights)
    signs = np.array(support, dtype=np.int8)[picks]
    if noise.flip_prob > 0.0:
        flips = rng.random(signs.shape) < noise.flip_prob
        signs = np.where(flips, -signs, signs)

    counts: Dict[tuple, int] = {}
    rows, tallies = np.unique(signs, axis=0, return_counts=True)
    for row, tally in zip(rows, tallies):
        counts[tuple(int(s) for s in row)] = int(tally)
    return RunRecord(
        seed=seed,
        n_runs=n_runs,
        counts=counts,
        observables=tuple(pauli.format_observable(o) for o in observables),
        config=str(config) if config is not None else None,
        axioms=tuple(axioms) if axioms is not None else None,
        flip_prob=noise.flip_prob,
        substream=substream,
    )


def classify_record(record: RunRecord, threshold: float = 0.25) -> Verdict:
    """Dependent/independent verdict for a single binary-observable record.

    ``imbalance`` is the distance of the +1 frequency from 1/2; the record
    is called Dependent when it exceeds the threshold.  The reported
    confidence bound is the additive-Chernoff (Hoeffding) tail
    ``exp(-2 n margin^2)`` at the observed margin from the threshold.
    """
    if len(record.observables) != 1:
        raise ValueError("classification needs a single binary observable")
    if record.n_runs < 1 or not record.counts:
        raise ValueError("empty record")
    imbalance = abs(record.frequency((1,)) - 0.5)
    decision = Decision.DEPENDENT if imbalance > threshold else Decision.INDEPENDENT
    margin = abs(imbalance - threshold)
    bound = math.exp(-2.0 * record.n_runs * margin * margin)
    return Verdict(decision=decision, imbalance=imbalance, confidence_bound=bound)


def decay_study(
    noise: NoiseModel,
    run_lengths: Sequence[int],
    trials: int,
    seed: int,
    threshold: float = 0.25,
) -> List[DecayRow]:
    """Empirical misclassification rate versus outcome-string length.

    For each length, ``trials`` dependent instances (a definite outcome
    flipped with ``flip_prob``, i.e. +1 counts ~ Binomial(L, 1-q)) and
    ``trials`` independent instances (uniform signs, which the flips leave
    uniform) are classified by the imbalance threshold; the row reports the
    fraction misclassified over both ground truths next to the averaged
    Hoeffding upper bound.
    """
    q = noise.flip_prob
    dep_margin = 0.5 - q - threshold
    if q >= threshold or dep_margin <= 0:
        raise ValueError("indistinguishable regime")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rows = []
    for stream_index, length in enumerate(run_lengths):
        if length < 1:
            raise ValueError(f"run length must be >= 1, got {length}")
        rng = philox_rng(seed, stream_index)
        dep_plus = rng.binomial(length, 1.0 - q, size=trials)
        ind_plus = rng.binomial(length, 0.5, size=trials)
        dep_imbalance = np.abs(dep_plus / length - 0.5)
        ind_imbalance = np.abs(ind_plus / length - 0.5)
        dep_errors = int(np.sum(dep_imbalance <= threshold))
        ind_errors = int(np.sum(ind_imbalance > threshold))
        bound = 0.5 * math.exp(-2.0 * length * dep_margin * dep_margin) + math.exp(
            -2.0 * length * threshold * threshold
        )
        rows.append(
            DecayRow(
                run_length=int(length),
                error_rate=(dep_errors + ind_errors) / (2 * trials),
                dependent_error_rate=dep_errors / trials,
                independent_error_rate=ind_errors / trials,
                chernoff_bound=bound,
            )
        )
    return rows


# Demo grids.  Single-qubit inputs/bases are the three Pauli eigenbases; the
# two-qubit demo measures the shared eigenbasis of ZZ and XX (the entangled
# one), the local z basis, and the mixed z/x product basis.
Q1_STATES = (("z+", "Z"), ("x+", "X"), ("y+", "Y"))
Q1_BASES = (("z", "Z"), ("x", "X"), ("y", "Y"))
Q2_BASES = (
    ("b_E", ("ZZ", "XX")),
    ("b_F", ("ZI", "IZ")),
    ("b_D", ("ZI", "IX")),
)


def record_rows(
    state_label: str, basis_label: str, record: RunRecord, num_obs: int
) -> List[FrequencyRow]:
    rows = []
    for index in range(2 ** num_obs):
        signs = tuple(
            -1 if (index >> (num_obs - 1 - k)) & 1 else 1 for k in range(num_obs)
        )
        label = "".join("+" if s == 1 else "-" for s in signs)
        count = record.counts.get(signs, 0)
        rows.append(
            FrequencyRow(
                state=state_label,
                basis=basis_label,
                outcome_label=label,
                count=count,
                frequency=round(count / record.n_runs, 6),
            )
        )
    return rows


def reproduce_q1(
    cfg: BlackBoxConfig,
    n_runs: int,
    seed: int,
    noise: Optional[NoiseModel] = None,
) -> List[FrequencyRow]:
    """Single-qubit grid: three input eigenstates, each measured in all three
    Pauli bases after the black box.  Exactly the diagonal cells are definite."""
    if cfg.n != 1:
        raise ValueError(f"q1 demo needs a single-function config, got {cfg.n}")
    rows: List[FrequencyRow] = []
    for i, (state_label, state_letter) in enumerate(Q1_STATES):
        prepared = stab.prepare([(pauli.parse_observable(state_letter).vector, 1)])
        evolved = stab.apply_blackbox(prepared, cfg)
        for k, (basis_label, basis_letter) in enumerate(Q1_BASES):
            record = sample(
                evolved,
                [pauli.parse_observable(basis_letter)],
                n_runs,
                seed,
                noise,
                substream=3 * i + k,
                config=cfg,
                axioms=(f"+{state_letter}",),
            )
            rows.extend(record_rows(state_label, basis_label, record, 1))
    return rows


def reproduce_q2(
    cfg: BlackBoxConfig,
    n_runs: int,
    seed: int,
    noise: Optional[NoiseModel] = None,
) -> List[FrequencyRow]:
    """Bell-state grid: the ZZ/XX joint eigenstate measured in the entangled
    basis (definite), the local z basis (half the outcomes vanish), and the
    mixed z/x basis (all four outcomes uniform)."""
    if cfg.n != 2:
        raise ValueError(f"q2 demo needs a two-function config, got {cfg.n}")
    prepared = stab.prepare(
        [
            (pauli.parse_observable("ZZ").vector, 1),
            (pauli.parse_observable("XX").vector, 1),
        ]
    )
    evolved = stab.apply_blackbox(prepared, cfg)
    rows: List[FrequencyRow] = []
    for k, (basis_label, letters) in enumerate(Q2_BASES):
        record = sample(
            evolved,
            [pauli.parse_observable(s) for s in letters],
            n_runs,
            seed,
            noise,
            substream=k,
            config=cfg,
            axioms=("+ZZ", "+XX"),
        )
        rows.extend(record_rows("phi+", basis_label, record, 2))
    return rows


def render_frequency_csv(rows: Sequence[FrequencyRow], comment: str) -> str:
    """CSV with a leading '#' parameter comment and a header row."""
    out = [f"# {comment}", "state,basis,outcome_label,count,frequency"]
    for r in rows:
        out.append(
            f"{r.state},{r.basis},{r.outcome_label},{r.count},{r.frequency:.6f}"
        )
    return "".join(line + "\n" for line in out)


def render_decay_tsv(rows: Sequence[DecayRow], comment: str) -> str:
    out = [
        f"# {comment}",
        "run_length\terror_rate\tdependent_error_rate\t"
        "independent_error_rate\tchernoff_bound",
    ]
    for r in rows:
        out.append(
            f"{r.run_length}\t{r.error_rate:.6f}\t{r.dependent_error_rate:.6f}\t"
            f"{r.independent_error_rate:.6f}\t{r.chernoff_bound:.6e}"
        )
    return "".join(line + "\n" for line in out)

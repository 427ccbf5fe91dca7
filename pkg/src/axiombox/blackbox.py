"""Black-box configurations: N single-argument Boolean functions.

A black box is fully specified by the value pairs ``(f_j(0), f_j(1))`` of its
N Boolean functions.  This module evaluates proposition and axiom parities
directly from those bits, i.e. the purely arithmetical side of the
axiom/state correspondence; the matching unitary action on observables lives
in :mod:`axiombox.pauli`.

Truth convention: parity bit 0 means the proposition "<parity expression> = 0"
is TRUE.

Label convention: the four functions are numbered ``y_k`` with
``k = 2*f(0) + f(1)``, so ``y0 = (0,0)``, ``y1 = (0,1)``, ``y2 = (1,0)``,
``y3 = (1,1)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .gf2 import BitVector


@dataclass(frozen=True)
class BooleanFunction:
    """One function {0,1} -> {0,1}, stored as its two values."""

    f0: int
    f1: int

    def __post_init__(self):
        if self.f0 not in (0, 1) or self.f1 not in (0, 1):
            raise ValueError(f"function values must be bits, got ({self.f0}, {self.f1})")

    @property
    def label(self) -> int:
        return 2 * self.f0 + self.f1

    @classmethod
    def from_label(cls, k: int) -> "BooleanFunction":
        if k not in (0, 1, 2, 3):
            raise ValueError(f"function label must be 0..3, got {k}")
        return cls(f0=k >> 1, f1=k & 1)

    def __str__(self) -> str:
        return f"y{self.label}"


@dataclass(frozen=True)
class BlackBoxConfig:
    """Ordered tuple of the N Boolean functions a black box encodes."""

    functions: tuple

    def __post_init__(self):
        fns = tuple(self.functions)
        if not fns:
            raise ValueError("a black box needs at least one function")
        if not all(isinstance(f, BooleanFunction) for f in fns):
            raise TypeError("functions must be BooleanFunction instances")
        object.__setattr__(self, "functions", fns)

    @property
    def n(self) -> int:
        return len(self.functions)

    @property
    def f0_vector(self) -> BitVector:
        """Bit j = f_j(0)."""
        return BitVector([f.f0 for f in self.functions])

    @property
    def f1_vector(self) -> BitVector:
        """Bit j = f_j(1)."""
        return BitVector([f.f1 for f in self.functions])

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "BlackBoxConfig":
        return cls(tuple(BooleanFunction.from_label(k) for k in labels))

    @classmethod
    def identity(cls, n: int) -> "BlackBoxConfig":
        """The all-y0 configuration, whose unitary is the identity."""
        return cls.from_labels([0] * n)

    @classmethod
    def all_configs(cls, n: int) -> Iterator["BlackBoxConfig"]:
        """All 4^n configurations, in lexicographic label order."""
        for labels in itertools.product(range(4), repeat=n):
            yield cls.from_labels(labels)

    def xor(self, other: "BlackBoxConfig") -> "BlackBoxConfig":
        """Bitwise-XOR combination; black boxes compose to this up to phase."""
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        return BlackBoxConfig(
            tuple(
                BooleanFunction(a.f0 ^ b.f0, a.f1 ^ b.f1)
                for a, b in zip(self.functions, other.functions)
            )
        )

    def __str__(self) -> str:
        return ",".join(str(f) for f in self.functions)


def proposition_truth(j: BitVector, cfg: BlackBoxConfig) -> int:
    """Parity of ``sum_j [beta_j f_j(0) + alpha_j f_j(1)]`` for J = (alpha|beta).

    Bit 0 means the "... = 0" proposition holds for this configuration.
    Note the crossing: the z-part (beta) multiplies f(0) and the x-part
    (alpha) multiplies f(1).
    """
    if len(j) != 2 * cfg.n:
        raise ValueError(
            f"proposition vector length {len(j)} does not match {cfg.n} functions"
        )
    alpha, beta = j.halves()
    return (beta & cfg.f0_vector).parity() ^ (alpha & cfg.f1_vector).parity()


def axiom_truths(axioms: Sequence[BitVector], cfg: BlackBoxConfig) -> list:
    """Per-axiom parity bits t_p; the sign pattern the black box writes."""
    return [proposition_truth(h, cfg) for h in axioms]


def parse_config(text: str) -> BlackBoxConfig:
    """Parse a config file body: one function per line, "f0 f1" or "y2".

    Blank lines and '#' comments are skipped.
    """
    functions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.lower().startswith("y"):
                functions.append(BooleanFunction.from_label(int(line[1:])))
            else:
                f0, f1 = line.split()
                functions.append(BooleanFunction(int(f0), int(f1)))
        except (ValueError, TypeError) as exc:
            raise ValueError(f"bad config line {lineno}: {raw!r}") from exc
    return BlackBoxConfig(tuple(functions))


def format_config(cfg: BlackBoxConfig) -> str:
    """Inverse of :func:`parse_config`, label form."""
    return "".join(f"y{f.label}\n" for f in cfg.functions)

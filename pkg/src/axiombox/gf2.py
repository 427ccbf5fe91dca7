"""Bit-exact linear algebra over GF(2).

Vectors pack their bits into a single Python integer (bit ``j`` of the mask
is entry ``j``), so XOR/AND of whole vectors run word-parallel in C no matter
the length.  Everything here is immutable and hashable; all arithmetic is
exact, with no floating point anywhere.

Symplectic layout convention, shared by every module in this package: a
vector of even length ``2N`` is split as ``(x-part | z-part)`` with qubit
index ascending, i.e. bits ``0..N-1`` are the x exponents and bits ``N..2N-1``
the z exponents.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Optional, Union

BitsLike = Union["BitVector", Iterable[int], str]


class BitVector:
    """Immutable vector over GF(2) with a fixed length."""

    __slots__ = ("_mask", "_length")

    def __init__(self, bits: BitsLike):
        if isinstance(bits, BitVector):
            mask, length = bits._mask, bits._length
        else:
            mask = 0
            length = 0
            for b in bits:
                bit = int(b)
                if bit not in (0, 1):
                    raise ValueError(f"bit entries must be 0 or 1, got {b!r}")
                mask |= bit << length
                length += 1
        self._mask = mask
        self._length = length

    @classmethod
    def from_mask(cls, mask: int, length: int) -> "BitVector":
        """Build a vector from a packed integer mask of ``length`` bits."""
        if mask < 0 or mask >> length:
            raise ValueError(f"mask {mask:#x} does not fit in {length} bits")
        v = cls.__new__(cls)
        v._mask = mask
        v._length = length
        return v

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls.from_mask(0, length)

    @classmethod
    def unit(cls, index: int, length: int) -> "BitVector":
        """Standard basis vector e_index."""
        if not 0 <= index < length:
            raise ValueError(f"index {index} out of range for length {length}")
        return cls.from_mask(1 << index, length)

    @classmethod
    def concat(cls, *parts: "BitVector") -> "BitVector":
        mask = 0
        length = 0
        for p in parts:
            mask |= p._mask << length
            length += p._length
        return cls.from_mask(mask, length)

    @property
    def mask(self) -> int:
        return self._mask

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self._length:
            raise IndexError(index)
        return (self._mask >> index) & 1

    def __iter__(self) -> Iterator[int]:
        m = self._mask
        for _ in range(self._length):
            yield m & 1
            m >>= 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check_same_length(other)
        return BitVector.from_mask(self._mask ^ other._mask, self._length)

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check_same_length(other)
        return BitVector.from_mask(self._mask & other._mask, self._length)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._mask == other._mask and self._length == other._length

    def __hash__(self) -> int:
        return hash((self._mask, self._length))

    def __repr__(self) -> str:
        return f"BitVector('{''.join(str(b) for b in self)}')"

    def weight(self) -> int:
        """Hamming weight (number of set bits)."""
        return self._mask.bit_count()

    def parity(self) -> int:
        return self._mask.bit_count() & 1

    def is_zero(self) -> bool:
        return self._mask == 0

    def to_tuple(self) -> tuple:
        return tuple(self)

    def halves(self) -> tuple["BitVector", "BitVector"]:
        """Split an even-length vector into its (x-part, z-part)."""
        if self._length % 2:
            raise ValueError(f"cannot halve a vector of odd length {self._length}")
        n = self._length // 2
        low = (1 << n) - 1
        return (
            BitVector.from_mask(self._mask & low, n),
            BitVector.from_mask(self._mask >> n, n),
        )

    def _check_same_length(self, other: "BitVector") -> None:
        if self._length != other._length:
            raise ValueError(
                f"length mismatch: {self._length} vs {other._length}"
            )


class BitMatrix:
    """Immutable rectangular matrix over GF(2), stored as packed row masks."""

    __slots__ = ("_rows", "_num_cols")

    def __init__(self, rows: Iterable[BitsLike], num_cols: Optional[int] = None):
        packed = []
        for r in rows:
            v = r if isinstance(r, BitVector) else BitVector(r)
            if num_cols is None:
                num_cols = len(v)
            elif len(v) != num_cols:
                raise ValueError(
                    f"ragged rows: expected {num_cols} columns, got {len(v)}"
                )
            packed.append(v.mask)
        if num_cols is None:
            num_cols = 0
        self._rows = tuple(packed)
        self._num_cols = num_cols

    @property
    def num_rows(self) -> int:
        return len(self._rows)

    @property
    def num_cols(self) -> int:
        return self._num_cols

    @property
    def row_masks(self) -> tuple:
        return self._rows

    def row(self, i: int) -> BitVector:
        return BitVector.from_mask(self._rows[i], self._num_cols)

    def __iter__(self) -> Iterator[BitVector]:
        for m in self._rows:
            yield BitVector.from_mask(m, self._num_cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self._rows == other._rows and self._num_cols == other._num_cols

    def __repr__(self) -> str:
        body = ", ".join(f"'{''.join(str(b) for b in r)}'" for r in self)
        return f"BitMatrix([{body}])"

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self._num_cols):
            mask = 0
            for i, rm in enumerate(self._rows):
                mask |= ((rm >> j) & 1) << i
            cols.append(BitVector.from_mask(mask, len(self._rows)))
        return BitMatrix(cols, num_cols=len(self._rows))


def _echelon(matrix: BitMatrix) -> list:
    """Forward elimination with combination tracking.

    Pivots are chosen left-to-right; within a column the first remaining
    nonzero row wins, so the echelon form (and every coefficient vector
    derived from it) is deterministic.

    Returns a list of ``(pivot_col, row_mask, combo_mask)`` in pivot order,
    where ``combo_mask`` records which original rows were XORed together.
    """
    work = [(m, 1 << i) for i, m in enumerate(matrix.row_masks)]
    pivots = []
    done = 0
    for col in range(matrix.num_cols):
        hit = next(
            (k for k in range(done, len(work)) if (work[k][0] >> col) & 1), None
        )
        if hit is None:
            continue
        work[done], work[hit] = work[hit], work[done]
        pm, pc = work[done]
        for k in range(len(work)):
            if k != done and (work[k][0] >> col) & 1:
                work[k] = (work[k][0] ^ pm, work[k][1] ^ pc)
        pivots.append((col, pm, pc))
        done += 1
        if done == len(work):
            break
    return pivots


def rank(matrix: BitMatrix) -> int:
    """GF(2) row rank.  Empty matrices have rank 0."""
    return len(_echelon(matrix))


def in_span(v: BitVector, basis: BitMatrix) -> Optional[BitVector]:
    """Coefficients k with ``sum_p k_p * basis_row_p == v`` (mod 2), or None.

    When the basis rows are linearly independent the coefficient vector is
    unique; otherwise the deterministic echelon form fixes which of the
    equivalent solutions is returned.
    """
    if len(v) != basis.num_cols:
        raise ValueError(
            f"dimension mismatch: vector length {len(v)}, "
            f"basis has {basis.num_cols} columns"
        )
    residue = v.mask
    combo = 0
    for col, pm, pc in _echelon(basis):
        if (residue >> col) & 1:
            residue ^= pm
            combo ^= pc
    if residue:
        return None
    return BitVector.from_mask(combo, basis.num_rows)


def nullspace(matrix: BitMatrix) -> list:
    """Basis of ``{v : matrix @ v == 0}`` over GF(2) (v as a column vector)."""
    pivots = _echelon(matrix)
    pivot_cols = {col: pm for col, pm, _ in pivots}
    free_cols = [c for c in range(matrix.num_cols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        mask = 1 << free
        # Back-substitute in reverse pivot order so each pivot entry is fixed
        # once; echelon rows have no bits left of their own pivot column.
        for col, pm, _ in reversed(pivots):
            if (pm & mask).bit_count() & 1:
                mask ^= 1 << col
        basis.append(BitVector.from_mask(mask, matrix.num_cols))
    return basis


def symplectic_product(v1: BitVector, v2: BitVector) -> int:
    """Symplectic inner product of two ``(x-part | z-part)`` vectors.

    Returns ``sum_j (x1_j*z2_j + z1_j*x2_j) mod 2``; the result is 0 exactly
    when the Pauli operators carried by the vectors commute.
    """
    if len(v1) != len(v2):
        raise ValueError(f"length mismatch: {len(v1)} vs {len(v2)}")
    if len(v1) % 2:
        raise ValueError(f"symplectic product needs even length, got {len(v1)}")
    n = len(v1) // 2
    low = (1 << n) - 1
    x1, z1 = v1.mask & low, v1.mask >> n
    x2, z2 = v2.mask & low, v2.mask >> n
    return ((x1 & z2).bit_count() + (z1 & x2).bit_count()) & 1


def swap_halves(v: BitVector) -> BitVector:
    """Exchange the x- and z-parts, so that ``u . swap_halves(v)`` (dot =
    parity of AND) equals ``symplectic_product(u, v)``."""
    x, z = v.halves()
    return BitVector.concat(z, x)

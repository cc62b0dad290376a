"""Exact linear algebra over F_2.

Bit strings are packed into Python integers with the first character as the
most significant bit, so ``BitVector("1000").value == 8``.  With that layout
integer order coincides with lexicographic order of the strings, which the
coset-leader tie-break relies on.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence, Union

from . import _backend
from .errors import DimensionError, EnumerationLimitError, LinearDependenceError

#: Largest number of generators whose span is enumerated exhaustively.
MAX_ENUM_RANK = 20


class BitVector:
    """An element of F_2^t.  Immutable; ``+`` is componentwise XOR.

    Length 0 is allowed so that a code without parity rows still has a
    (trivial) syndrome.
    """

    __slots__ = ("_len", "_value")

    def __init__(self, length: int, value: int = 0):
        if length < 0:
            raise DimensionError(f"bit vector length must be >= 0, got {length}")
        if value < 0 or value >> length:
            raise ValueError(f"value {value} does not fit in {length} bits")
        self._len = length
        self._value = value

    @classmethod
    def from_str(cls, text: str) -> "BitVector":
        text = text.strip()
        if set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), int(text, 2) if text else 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        bits = list(bits)
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit values must be 0 or 1, got {b!r}")
            value = (value << 1) | int(b)
        return cls(len(bits), value)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, (1 << length) - 1)

    @classmethod
    def unit(cls, length: int, index: int) -> "BitVector":
        if not 0 <= index < length:
            raise IndexError(index)
        return cls(length, 1 << (length - 1 - index))

    @property
    def value(self) -> int:
        return self._value

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, index: int) -> int:
        if index < 0:
            index += self._len
        if not 0 <= index < self._len:
            raise IndexError(index)
        return (self._value >> (self._len - 1 - index)) & 1

    def __iter__(self) -> Iterator[int]:
        for i in range(self._len):
            yield (self._value >> (self._len - 1 - i)) & 1

    def __add__(self, other: "BitVector") -> "BitVector":
        _check_len(self, other)
        return BitVector(self._len, self._value ^ other._value)

    __xor__ = __add__

    def __and__(self, other: "BitVector") -> "BitVector":
        _check_len(self, other)
        return BitVector(self._len, self._value & other._value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._len == other._len and self._value == other._value

    def __hash__(self) -> int:
        return hash((self._len, self._value))

    def __str__(self) -> str:
        return format(self._value, f"0{self._len}b")

    def __repr__(self) -> str:
        return f"BitVector('{self}')"

    def weight(self) -> int:
        return self._value.bit_count()

    def dot(self, other: "BitVector") -> int:
        _check_len(self, other)
        return (self._value & other._value).bit_count() & 1

    def support(self) -> list[int]:
        return [i for i, b in enumerate(self) if b]

    def restrict(self, indices: Sequence[int]) -> "BitVector":
        """Substring made of the bits at ``indices``, in that order."""
        return BitVector.from_bits(self[i] for i in indices)

    def to_list(self) -> list[int]:
        return list(self)


Vectorish = Union[BitVector, str]


def _as_vector(v: Vectorish) -> BitVector:
    return BitVector.from_str(v) if isinstance(v, str) else v


def _check_len(u: BitVector, v: BitVector) -> None:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")


class BitMatrix:
    """Ordered rows of equal-length bit vectors.

    ``ncols`` must be given for a matrix without rows.
    """

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Vectorish] = (), ncols: int | None = None):
        rows = tuple(_as_vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("an empty BitMatrix needs an explicit ncols")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionError(f"row {r} has length {len(r)}, expected {ncols}")
        self._rows = rows
        self._ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls([BitVector.unit(n, i) for i in range(n)], ncols=n)

    @classmethod
    def from_ints(cls, values: Iterable[int], ncols: int) -> "BitMatrix":
        return cls([BitVector(ncols, v) for v in values], ncols=ncols)

    @property
    def rows(self) -> tuple[BitVector, ...]:
        return self._rows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def nrows(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self._rows)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return BitMatrix(self._rows[index], ncols=self._ncols)
        return self._rows[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._ncols, self._rows))

    def __repr__(self) -> str:
        return f"BitMatrix({[str(r) for r in self._rows]!r}, ncols={self._ncols})"

    def ints(self) -> list[int]:
        return [r.value for r in self._rows]

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if other.ncols != self._ncols:
            raise DimensionError(f"column mismatch: {self._ncols} vs {other.ncols}")
        return BitMatrix(self._rows + other.rows, ncols=self._ncols)

    def column(self, index: int) -> BitVector:
        if not self._rows:
            raise DimensionError("matrix has no rows")
        return BitVector.from_bits(r[index] for r in self._rows)

    def to_text(self) -> str:
        lines = [f"n={self._ncols} rows={len(self._rows)}"]
        lines.extend(str(r) for r in self._rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        header = _parse_header(lines[0], ("n", "rows"))
        body = lines[1:]
        if len(body) != header["rows"]:
            raise ValueError(f"header announces {header['rows']} rows, found {len(body)}")
        return cls(body, ncols=header["n"])


def _parse_header(line: str, keys: Sequence[str]) -> dict[str, int]:
    fields = {}
    for token in line.split():
        name, sep, val = token.partition("=")
        if not sep:
            raise ValueError(f"malformed header token {token!r}")
        fields[name] = int(val)
    missing = [k for k in keys if k not in fields]
    if missing:
        raise ValueError(f"header {line!r} lacks {missing}")
    return fields


def weight(v: BitVector) -> int:
    return v.weight()


def hamming_distance(u: BitVector, v: BitVector) -> int:
    _check_len(u, v)
    return (u.value ^ v.value).bit_count()


def mul_transpose(x: BitVector, m: BitMatrix) -> BitVector:
    """``x M^T``: entry j is the F_2 inner product of ``x`` with row j."""
    if len(x) != m.ncols:
        raise DimensionError(f"vector length {len(x)} vs matrix width {m.ncols}")
    out = 0
    for row in m.ints():
        out = (out << 1) | ((x.value & row).bit_count() & 1)
    return BitVector(len(m), out)


def _echelon(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot bit positions)."""
    work = list(rows)
    pivots: list[int] = []
    top = 0
    for bit in range(ncols - 1, -1, -1):
        mask = 1 << bit
        for i in range(top, len(work)):
            if work[i] & mask:
                work[top], work[i] = work[i], work[top]
                break
        else:
            continue
        for i in range(len(work)):
            if i != top and work[i] & mask:
                work[i] ^= work[top]
        pivots.append(bit)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank(rows: BitMatrix) -> int:
    return len(_echelon(rows.ints(), rows.ncols)[0])


def is_linearly_independent(rows: BitMatrix) -> bool:
    return rank(rows) == len(rows)


def in_span(v: BitVector, basis: BitMatrix) -> bool:
    if len(v) != basis.ncols:
        raise DimensionError(f"vector length {len(v)} vs basis width {basis.ncols}")
    if not len(basis):
        return v.value == 0
    return rank(basis.stack(BitMatrix([v]))) == rank(basis)


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of ``{x : x M^T = 0}``."""
    n = m.ncols
    reduced, pivots = _echelon(m.ints(), n)
    pivot_rows = dict(zip(pivots, reduced))
    basis = []
    for free in range(n - 1, -1, -1):
        if free in pivot_rows:
            continue
        vec = 1 << free
        for p, row in pivot_rows.items():
            if row & (1 << free):
                vec |= 1 << p
        basis.append(vec)
    return BitMatrix.from_ints(basis, n)


def _guard(k: int, what: str) -> None:
    if k > MAX_ENUM_RANK:
        raise EnumerationLimitError(
            f"{what}: 2^{k} elements exceeds the 2^{MAX_ENUM_RANK} enumeration guard"
        )


def span_min_distance(v: BitVector, basis: BitMatrix) -> int:
    """Hamming distance from ``v`` to the nearest element of Span(basis).

    The span of an empty basis is {0}.
    """
    if len(v) != basis.ncols:
        raise DimensionError(f"vector length {len(v)} vs basis width {basis.ncols}")
    _guard(len(basis), "span_min_distance")
    return _backend.span_min_weight(v.value, basis.ints(), basis.ncols)


def _check_code_rows(vectors: BitMatrix, r: int, m: int) -> None:
    if r < 0 or m < 1:
        raise ValueError(f"need r >= 0 and m >= 1, got r={r}, m={m}")
    if len(vectors) != r + m:
        raise DimensionError(f"expected {r + m} rows, got {len(vectors)}")
    _guard(r + m - 1, "d_rm")
    if not is_linearly_independent(vectors):
        raise LinearDependenceError("rows are not linearly independent over F_2")


def compute_d_rm(vectors: BitMatrix, r: int, m: int) -> int:
    """Minimum, over the privacy-amplification rows, of each row's distance to
    the span of every row before it."""
    _check_code_rows(vectors, r, m)
    ints = vectors.ints()
    n = vectors.ncols
    return min(
        _backend.span_min_weight(ints[rp], ints[:rp], n) for rp in range(r, r + m)
    )


def compute_d_j(vectors: BitMatrix, r: int, m: int, j: int) -> int:
    """Distance from row ``r + j`` (1-based j) to the span of all other rows."""
    _check_code_rows(vectors, r, m)
    if not 1 <= j <= m:
        raise ValueError(f"j must lie in 1..{m}, got {j}")
    ints = vectors.ints()
    target = r + j - 1
    others = ints[:target] + ints[target + 1:]
    return _backend.span_min_weight(ints[target], others, vectors.ncols)


def min_code_distance(parity_rows: BitMatrix) -> int:
    """Minimum weight of a nonzero ``x`` with ``x P^T = 0``."""
    kernel = kernel_basis(parity_rows)
    if not len(kernel):
        raise ValueError("the code has no nonzero codeword")
    _guard(len(kernel), "min_code_distance")
    return _backend.min_nonzero_span_weight(kernel.ints(), parity_rows.ncols)


def correction_capability(parity_rows: BitMatrix) -> int:
    return (min_code_distance(parity_rows) - 1) // 2

"""Error correction and privacy amplification over F_2.

A :class:`CodePair` bundles the parity-check rows of the error-correcting
code with the rows of the key-extraction matrix.  Decoding is exact
coset-leader decoding from a table built once at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import _backend, gf2
from ._rational import as_fraction
from .errors import (
    DimensionError,
    EnumerationLimitError,
    InvalidCodeError,
    LinearDependenceError,
)
from .gf2 import BitMatrix, BitVector

#: Largest syndrome length for which a full coset-leader table is built.
MAX_SYNDROME_BITS = 20


@dataclass(frozen=True, eq=False)
class CodePair:
    n: int
    r: int
    m: int
    pc_rows: BitMatrix
    pk_rows: BitMatrix
    d_rm: int
    t_corr: int
    _leaders: tuple[int, ...] = field(repr=False)

    @property
    def vectors(self) -> BitMatrix:
        """All r+m rows, parity rows first."""
        return self.pc_rows.stack(self.pk_rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CodePair):
            return NotImplemented
        return self.pc_rows == other.pc_rows and self.pk_rows == other.pk_rows

    def __hash__(self) -> int:
        return hash((self.pc_rows, self.pk_rows))

    def to_text(self) -> str:
        rows = [str(v) for v in self.vectors]
        return "\n".join([f"n={self.n} r={self.r} m={self.m}", *rows]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CodePair":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty code-pair text")
        header = gf2._parse_header(lines[0], ("n", "r", "m"))
        n, r, m = header["n"], header["r"], header["m"]
        body = lines[1:]
        if len(body) != r + m:
            raise ValueError(f"header announces {r + m} rows, found {len(body)}")
        return make_code_pair(BitMatrix(body[:r], ncols=n), BitMatrix(body[r:], ncols=n))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path: str | Path) -> "CodePair":
        return cls.from_text(Path(path).read_text())


def _column_syndromes(pc_rows: BitMatrix) -> list[int]:
    """Syndrome of each unit vector, indexed by integer bit position."""
    n, r = pc_rows.ncols, len(pc_rows)
    ints = pc_rows.ints()
    cols = []
    for bit in range(n):
        s = 0
        for a, row in enumerate(ints):
            if row >> bit & 1:
                s |= 1 << (r - 1 - a)
        cols.append(s)
    return cols


def make_code_pair(pc_rows: BitMatrix, pk_rows: BitMatrix) -> CodePair:
    """Validate a (parity-check, key) row pair and populate its caches."""
    if pc_rows.ncols != pk_rows.ncols:
        raise DimensionError(f"row widths differ: {pc_rows.ncols} vs {pk_rows.ncols}")
    n, r, m = pc_rows.ncols, len(pc_rows), len(pk_rows)
    if m < 1:
        raise InvalidCodeError("the key matrix needs at least one row")
    if r > MAX_SYNDROME_BITS:
        raise EnumerationLimitError(
            f"syndrome table of 2^{r} entries exceeds the 2^{MAX_SYNDROME_BITS} guard"
        )
    vectors = pc_rows.stack(pk_rows)
    try:
        d_rm = gf2.compute_d_rm(vectors, r, m)
    except LinearDependenceError as exc:
        raise InvalidCodeError(str(exc)) from exc
    t_corr = gf2.correction_capability(pc_rows)
    leaders = _backend.coset_leaders(_column_syndromes(pc_rows), n, r)
    return CodePair(n, r, m, pc_rows, pk_rows, d_rm, t_corr, tuple(leaders))


def syndrome(code: CodePair, x: BitVector) -> BitVector:
    """``x P_C^T``, the r-bit string Alice publishes."""
    return gf2.mul_transpose(x, code.pc_rows)


def final_key(code: CodePair, x: BitVector) -> BitVector:
    """``x P_K^T``, the m-bit key."""
    return gf2.mul_transpose(x, code.pk_rows)


def correct(code: CodePair, x_bob: BitVector, xi: BitVector) -> BitVector:
    """Move ``x_bob`` into the coset whose syndrome is ``xi``.

    The correction is the minimum-weight pattern for the syndrome difference
    (numerically smallest on ties).  Errors heavier than ``t_corr`` may
    decode to the wrong word; no failure is signalled.
    """
    if len(xi) != code.r:
        raise DimensionError(f"syndrome length {len(xi)} vs r={code.r}")
    diff = (xi + syndrome(code, x_bob)).value
    leader = code._leaders[diff]
    return BitVector(code.n, x_bob.value ^ leader)


def coset_leader(code: CodePair, xi: BitVector) -> BitVector:
    if len(xi) != code.r:
        raise DimensionError(f"syndrome length {len(xi)} vs r={code.r}")
    return BitVector(code.n, code._leaders[xi.value])


def hamming_7_4() -> BitMatrix:
    """Parity-check rows of the [7,4] Hamming code (column j is j in binary)."""
    return BitMatrix(["0001111", "0110011", "1010101"])


def search_code_pair(
    n: int,
    r: int,
    m: int,
    delta,
    t_target: int,
    rng: np.random.Generator,
    max_iters: int = 10_000,
) -> CodePair | None:
    """Random search for a code pair with ``d_rm / n > delta`` and
    ``t_corr >= t_target``.  Returns None when nothing is found.

    Candidates are uniformly random row sets, kept only if independent.
    Targets ruled out by the Singleton bound return None immediately.
    """
    if n < 1 or r < 0 or m < 1 or r + m > n:
        raise ValueError(f"inconsistent sizes n={n}, r={r}, m={m}")
    delta = as_fraction(delta)
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    if t_target < 0:
        raise ValueError("t_target must be nonnegative")
    if n - r > gf2.MAX_ENUM_RANK or r > MAX_SYNDROME_BITS:
        raise EnumerationLimitError(f"n={n}, r={r} exceeds the enumeration guards")
    # d <= r + 1 for a kernel of dimension n - r; d_rm <= n
    if 2 * t_target + 1 > r + 1 or delta >= 1:
        return None
    for _ in range(max_iters):
        rows = [int(v) for v in rng.integers(1, 1 << n, size=r + m, dtype=np.uint64)]
        vectors = BitMatrix.from_ints(rows, n)
        if not gf2.is_linearly_independent(vectors):
            continue
        if gf2.correction_capability(vectors[:r]) < t_target:
            continue
        if Fraction(gf2.compute_d_rm(vectors, r, m), n) <= delta:
            continue
        return make_code_pair(vectors[:r], vectors[r:])
    return None

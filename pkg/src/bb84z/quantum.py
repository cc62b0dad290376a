"""Exact small-scale quantum model of a per-qubit collective attack.

Every transmitted qubit meets the same unitary ``U`` acting on
``qubit (x) probe``, with the probe starting in ``probe_init``.  Eve keeps the
probes; Bob keeps the qubits.  Nothing here samples: all quantities are
computed from state vectors and density matrices directly.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import codes as _codes
from .errors import DimensionError, EnumerationLimitError
from .gf2 import BitVector

TOL = 1e-9
#: Largest total probe dimension for which Eve's joint state is built.
MAX_EVE_DIM = 4096
#: Largest INFO length enumerated when mixing Eve's states.
MAX_MIX_N = 12

_SQRT_HALF = 1.0 / math.sqrt(2.0)


class Basis(str, enum.Enum):
    Z = "z"
    X = "x"

    @classmethod
    def coerce(cls, value) -> "Basis":
        if isinstance(value, Basis):
            return value
        if value in (0, "0"):
            return cls.Z
        if value in (1, "1"):
            return cls.X
        return cls(str(value).lower())


def prepare(bit: int, basis) -> np.ndarray:
    """State vector of ``bit`` encoded in ``basis``."""
    basis = Basis.coerce(basis)
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    if basis is Basis.Z:
        return np.array([1.0, 0.0], dtype=complex) if bit == 0 else np.array([0.0, 1.0], dtype=complex)
    sign = 1.0 if bit == 0 else -1.0
    return np.array([_SQRT_HALF, sign * _SQRT_HALF], dtype=complex)


class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, validate: bool = True):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"density matrix must be square, got shape {matrix.shape}")
        self.matrix = matrix
        if validate:
            problem = self.problem()
            if problem:
                raise ValueError(problem)

    @classmethod
    def pure(cls, vec) -> "DensityMatrix":
        vec = np.asarray(vec, dtype=complex)
        return cls(np.outer(vec, vec.conj()))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def problem(self, tol: float = TOL) -> str | None:
        """Description of the first violated invariant, or None."""
        m = self.matrix
        if not np.allclose(m, m.conj().T, atol=tol, rtol=0):
            return "matrix is not Hermitian"
        tr = np.trace(m)
        if abs(tr - 1.0) > tol:
            return f"trace is {tr.real:.12g}, not 1"
        low = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
        if low < -tol:
            return f"negative eigenvalue {low:.3g}"
        return None

    def is_valid(self, tol: float = TOL) -> bool:
        return self.problem(tol) is None

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class AttackModel:
    """One unitary on ``qubit (x) probe`` applied identically to every qubit.

    ``unitary`` is indexed as ``qubit * probe_dim + probe``.
    """

    probe_dim: int
    unitary: np.ndarray
    probe_init: np.ndarray
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        u = np.asarray(self.unitary, dtype=complex)
        p = np.asarray(self.probe_init, dtype=complex).reshape(-1)
        d = self.probe_dim
        if d < 1:
            raise ValueError("probe_dim must be positive")
        if u.shape != (2 * d, 2 * d):
            raise DimensionError(f"unitary must be {2 * d}x{2 * d}, got {u.shape}")
        if p.shape != (d,):
            raise DimensionError(f"probe_init must have length {d}, got {p.shape[0]}")
        if not np.allclose(u.conj().T @ u, np.eye(2 * d), atol=TOL, rtol=0):
            raise ValueError("attack matrix is not unitary")
        if abs(np.vdot(p, p).real - 1.0) > TOL:
            raise ValueError("probe_init is not a unit vector")
        object.__setattr__(self, "unitary", u)
        object.__setattr__(self, "probe_init", p)

    def to_json(self) -> dict:
        return {
            "probe_dim": self.probe_dim,
            "probe_init": [[float(z.real), float(z.imag)] for z in self.probe_init],
            "unitary": [[float(z.real), float(z.imag)] for z in self.unitary.reshape(-1)],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "custom") -> "AttackModel":
        d = int(data["probe_dim"])
        init = np.array([complex(re, im) for re, im in data["probe_init"]])
        flat = np.array([complex(re, im) for re, im in data["unitary"]])
        if flat.size != 4 * d * d:
            raise DimensionError(f"unitary needs {4 * d * d} entries, got {flat.size}")
        return cls(d, flat.reshape(2 * d, 2 * d), init, name=name)

    def output_state(self, bit: int, basis) -> np.ndarray:
        """Joint state after the attack, shaped ``(qubit, probe)``."""
        psi = self.unitary @ np.kron(prepare(bit, basis), self.probe_init)
        return psi.reshape(2, self.probe_dim)


def _rotation(theta: float, dim: int) -> np.ndarray:
    r = np.eye(dim, dtype=complex)
    c, s = math.cos(theta), math.sin(theta)
    r[0, 0], r[0, 1], r[1, 0], r[1, 1] = c, -s, s, c
    return r


def _controlled(theta: float, control, probe_dim: int) -> np.ndarray:
    """``sum_b |b><b| (x) R(b * theta)`` with ``|b>`` taken in the control basis."""
    u = np.zeros((2 * probe_dim, 2 * probe_dim), dtype=complex)
    for b in (0, 1):
        v = prepare(b, control)
        u += np.kron(np.outer(v, v.conj()), _rotation(b * theta, probe_dim))
    return u


def identity_attack(probe_dim: int = 2) -> AttackModel:
    init = np.zeros(probe_dim, dtype=complex)
    init[0] = 1.0
    return AttackModel(probe_dim, np.eye(2 * probe_dim), init, name="identity")


def rotation_attack(theta: float, control="z", probe_dim: int = 2) -> AttackModel:
    """Rotate the probe by ``theta`` when the qubit reads 1 in ``control``.

    ``theta = 0`` is the identity and ``theta = pi/2`` copies the control-basis
    value into the probe.  A z-controlled rotation leaves z-basis bits intact
    and flips x-basis bits with probability ``(1 - cos theta) / 2``; the
    x-controlled variant does the reverse.
    """
    if probe_dim < 2:
        raise ValueError("rotation attacks need probe_dim >= 2")
    init = np.zeros(probe_dim, dtype=complex)
    init[0] = 1.0
    control = Basis.coerce(control)
    return AttackModel(
        probe_dim,
        _controlled(theta, control, probe_dim),
        init,
        name=f"rotation-{control.value}({theta:.6g})",
    )


def flip_z_attack() -> AttackModel:
    """Probe flips exactly when the qubit is |1> in the z basis."""
    a = rotation_attack(math.pi / 2, "z")
    return AttackModel(a.probe_dim, a.unitary, a.probe_init, name="flip-z")


def two_axis_attack(theta_z: float, theta_x: float) -> AttackModel:
    """Two probe qubits: one rotated under z control, then one under x control."""
    first = np.kron(_controlled(theta_z, Basis.Z, 2), np.eye(2))
    # x-controlled rotation on the second probe qubit, identity on the first
    second = np.zeros((8, 8), dtype=complex)
    for b in (0, 1):
        v = prepare(b, Basis.X)
        second += np.kron(np.kron(np.outer(v, v.conj()), np.eye(2)), _rotation(b * theta_x, 2))
    init = np.zeros(4, dtype=complex)
    init[0] = 1.0
    return AttackModel(4, second @ first, init, name=f"two-axis({theta_z:.6g},{theta_x:.6g})")


def rotation_angle_for_error_rate(rate: float) -> float:
    """Angle whose rotation attack disturbs the other basis with this rate."""
    if not 0 <= rate <= 0.5:
        raise ValueError("a rotation attack reaches error rates in [0, 1/2] only")
    return math.acos(1.0 - 2.0 * rate)


def channel_outcome_probs(attack: AttackModel, bit: int, send_basis, measure_basis) -> tuple[float, float]:
    """Bob's outcome distribution after the attack."""
    psi = attack.output_state(bit, send_basis)
    probs = []
    for outcome in (0, 1):
        amp = prepare(outcome, measure_basis).conj() @ psi
        probs.append(float(np.vdot(amp, amp).real))
    total = probs[0] + probs[1]
    return probs[0] / total, probs[1] / total


def basis_error_prob(attack: AttackModel, basis) -> float:
    """Error probability when sending and measuring in ``basis``, averaged over the bit."""
    return 0.5 * sum(channel_outcome_probs(attack, bit, basis, basis)[1 - bit] for bit in (0, 1))


def conjugate_error_prob(attack: AttackModel) -> float:
    """Per-qubit error rate the INFO bits would show had they been sent in x."""
    return basis_error_prob(attack, Basis.X)


def probe_state(attack: AttackModel, bit: int, basis) -> np.ndarray:
    """Eve's single-position probe state, the qubit traced out."""
    psi = attack.output_state(bit, basis)
    return psi.T @ psi.conj()


def _eve_dim_guard(attack: AttackModel, n: int) -> None:
    if attack.probe_dim ** n > MAX_EVE_DIM:
        raise EnumerationLimitError(
            f"probe dimension {attack.probe_dim}^{n} exceeds the {MAX_EVE_DIM} guard"
        )


def _product(states: Iterable[np.ndarray]) -> np.ndarray:
    return functools.reduce(np.kron, states)


def eve_marginal(attack: AttackModel, x: BitVector, bprime: BitVector) -> DensityMatrix:
    """Eve's state given INFO bits ``x`` sent in bases ``bprime`` (0 = z, 1 = x)."""
    if len(x) != len(bprime):
        raise DimensionError(f"x has length {len(x)}, bprime {len(bprime)}")
    if len(x) == 0:
        raise DimensionError("need at least one position")
    _eve_dim_guard(attack, len(x))
    states = [probe_state(attack, xb, bb) for xb, bb in zip(x, bprime)]
    return DensityMatrix(_product(states), validate=False)


def _mixture_inputs(attack, code, bprime):
    n = code.n
    if len(bprime) != n:
        raise DimensionError(f"bprime has length {len(bprime)}, code has n={n}")
    if n > MAX_MIX_N:
        raise EnumerationLimitError(f"n={n} exceeds the {MAX_MIX_N}-bit mixing guard")
    _eve_dim_guard(attack, n)
    table = [
        (probe_state(attack, 0, bb), probe_state(attack, 1, bb)) for bb in bprime
    ]
    return n, table


def rho_hats(attack: AttackModel, code: _codes.CodePair, bprime: BitVector, xi: BitVector) -> dict[BitVector, DensityMatrix]:
    """Eve's state for every final key, given the published syndrome ``xi``.

    Each state is the uniform mixture of :func:`eve_marginal` over the INFO
    strings with that syndrome and key.  Strings are visited in increasing
    order so the sums are reproducible.
    """
    n, table = _mixture_inputs(attack, code, bprime)
    if len(xi) != code.r:
        raise DimensionError(f"syndrome length {len(xi)} vs r={code.r}")
    sums: dict[BitVector, np.ndarray] = {}
    counts: dict[BitVector, int] = {}
    for value in range(1 << n):
        x = BitVector(n, value)
        if _codes.syndrome(code, x) != xi:
            continue
        k = _codes.final_key(code, x)
        term = _product(table[i][b] for i, b in enumerate(x))
        if k in sums:
            sums[k] = sums[k] + term
            counts[k] += 1
        else:
            sums[k] = term
            counts[k] = 1
    expected = 1 << (n - code.r - code.m)
    out = {}
    for k in sorted(sums, key=lambda v: v.value):
        if counts[k] != expected:
            raise ValueError(f"key {k} has {counts[k]} preimages, expected {expected}")
        out[k] = DensityMatrix(sums[k] / counts[k], validate=False)
    return out


def rho_hat(attack: AttackModel, code: _codes.CodePair, bprime: BitVector, xi: BitVector, k: BitVector) -> DensityMatrix:
    """Eve's state for final key ``k`` given the published syndrome ``xi``."""
    n, table = _mixture_inputs(attack, code, bprime)
    if len(xi) != code.r or len(k) != code.m:
        raise DimensionError("syndrome or key length does not match the code")
    acc = None
    count = 0
    for value in range(1 << n):
        x = BitVector(n, value)
        if _codes.syndrome(code, x) != xi or _codes.final_key(code, x) != k:
            continue
        term = _product(table[i][b] for i, b in enumerate(x))
        acc = term if acc is None else acc + term
        count += 1
    if acc is None:
        raise ValueError(f"no INFO string has syndrome {xi} and key {k}")
    return DensityMatrix(acc / count, validate=False)


def jacobi_eigvalsh(h: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.

    The complex ``n x n`` problem is embedded in the real symmetric
    ``2n x 2n`` matrix ``[[Re, -Im], [Im, Re]]``, whose spectrum is the
    original one with every eigenvalue doubled.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    a = np.block([[h.real, -h.imag], [h.imag, h.real]])
    size = 2 * n
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, float(np.sum(a * a) - np.sum(np.diag(a) ** 2))))
        if off < tol:
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
    vals = np.sort(np.diag(a))
    return vals[::2]


def trace_distance(a: DensityMatrix, b: DensityMatrix, method: str = "lapack") -> float:
    """Half the trace norm of ``a - b``.

    ``method="jacobi"`` swaps LAPACK for the dependency-free Jacobi solver.
    """
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
    diff = a.matrix - b.matrix
    diff = (diff + diff.conj().T) / 2
    if method == "lapack":
        vals = np.linalg.eigvalsh(diff)
    elif method == "jacobi":
        vals = jacobi_eigvalsh(diff)
    else:
        raise ValueError(f"unknown eigenvalue method {method!r}")
    return float(min(1.0, max(0.0, 0.5 * np.abs(vals).sum())))


def binomial_tail(n: int, p: float, threshold) -> float:
    """``P[X >= threshold]`` for ``X ~ Binomial(n, p)``, summed exactly."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    start = max(0, math.ceil(threshold))
    if start > n:
        return 0.0
    return float(sum(math.comb(n, k) * p**k * (1.0 - p) ** (n - k) for k in range(start, n + 1)))


def binomial_cdf(n: int, p: float, upto: int) -> float:
    """``P[X <= upto]`` for ``X ~ Binomial(n, p)``."""
    if upto < 0:
        return 0.0
    upto = min(upto, n)
    return float(sum(math.comb(n, k) * p**k * (1.0 - p) ** (n - k) for k in range(upto + 1)))

"""BB84-INFO-z protocol runs and the sampling experiments built on them.

INFO and TEST-Z bits travel in the z basis, TEST-X bits in the x basis.  Bob
holds every qubit until the bases are announced and then measures each one
in the right basis.  The classical channel is authenticated and error-free.

Monte Carlo helpers take an integer ``seed``.  Trial ``t`` draws from
``numpy.random.default_rng(seed + t)``, so any subset of trials can be
replayed alone and results do not depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend, codes, quantum
from ._rational import as_fraction
from .codes import CodePair
from .errors import DimensionError, EnumerationLimitError
from .gf2 import BitVector
from .quantum import AttackModel, Basis

#: Largest pool length for the exhaustive sampling check.
MAX_POOL = 24


@dataclass(frozen=True)
class ProtocolParams:
    n: int
    n_z: int
    n_x: int
    p_az: float
    p_ax: float
    code: CodePair

    def __post_init__(self):
        for name in ("n", "n_z", "n_x"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        for name in ("p_az", "p_ax"):
            v = getattr(self, name)
            if not 0 <= v < 0.5:
                raise ValueError(f"{name} must lie in [0, 1/2), got {v}")
        if self.code.n != self.n:
            raise DimensionError(f"code length {self.code.n} differs from n={self.n}")

    @property
    def N(self) -> int:
        return self.n + self.n_z + self.n_x

    def z_budget(self) -> int:
        """Most TEST-Z errors that still pass."""
        return math.floor(self.n_z * as_fraction(self.p_az))

    def x_budget(self) -> int:
        """Most TEST-X errors that still pass."""
        return math.floor(self.n_x * as_fraction(self.p_ax))


@dataclass(frozen=True)
class Partition:
    """Indicator strings of the INFO (s), TEST-Z (z) and TEST-X (b) positions."""

    s: BitVector
    z: BitVector
    b: BitVector

    def __post_init__(self):
        N = len(self.s)
        if len(self.z) != N or len(self.b) != N:
            raise DimensionError("partition strings differ in length")
        if (self.s.value & self.z.value) or (self.s.value & self.b.value) or (self.z.value & self.b.value):
            raise ValueError("partition classes overlap")
        if (self.s.value | self.z.value | self.b.value) != (1 << N) - 1:
            raise ValueError("partition classes do not cover every position")

    @property
    def N(self) -> int:
        return len(self.s)

    @property
    def info(self) -> list[int]:
        return self.s.support()

    @property
    def test_z(self) -> list[int]:
        return self.z.support()

    @property
    def test_x(self) -> list[int]:
        return self.b.support()


def sample_partition(N: int, n: int, n_z: int, n_x: int, rng: np.random.Generator) -> Partition:
    """Uniformly random partition, via a uniform shuffle of the class labels."""
    if min(n, n_z, n_x) < 0 or n + n_z + n_x != N:
        raise ValueError(f"sizes {n}+{n_z}+{n_x} do not add up to N={N}")
    labels = rng.permutation(np.repeat(np.arange(3), [n, n_z, n_x]))
    return Partition(*(BitVector.from_bits((labels == c).astype(int)) for c in range(3)))


@dataclass(frozen=True)
class Transcript:
    partition: Partition
    i_sent: BitVector
    i_received: BitVector
    c: BitVector
    c_s: BitVector
    c_z: BitVector
    c_b: BitVector
    xi: BitVector | None
    aborted: bool
    key_alice: BitVector | None
    key_bob: BitVector | None

    @property
    def keys_match(self) -> bool | None:
        if self.aborted:
            return None
        return self.key_alice == self.key_bob

    def to_json(self) -> dict:
        def bits(v):
            return None if v is None else str(v)

        return {
            "partition": {"s": str(self.partition.s), "z": str(self.partition.z), "b": str(self.partition.b)},
            "i_sent": str(self.i_sent),
            "i_received": str(self.i_received),
            "c": str(self.c),
            "c_s": str(self.c_s),
            "c_z": str(self.c_z),
            "c_b": str(self.c_b),
            "xi": bits(self.xi),
            "aborted": self.aborted,
            "key_alice": bits(self.key_alice),
            "key_bob": bits(self.key_bob),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Transcript":
        def bits(v):
            return None if v is None else BitVector.from_str(v)

        part = data["partition"]
        return cls(
            Partition(BitVector.from_str(part["s"]), BitVector.from_str(part["z"]), BitVector.from_str(part["b"])),
            BitVector.from_str(data["i_sent"]),
            BitVector.from_str(data["i_received"]),
            BitVector.from_str(data["c"]),
            BitVector.from_str(data["c_s"]),
            BitVector.from_str(data["c_z"]),
            BitVector.from_str(data["c_b"]),
            bits(data["xi"]),
            bool(data["aborted"]),
            bits(data["key_alice"]),
            bits(data["key_bob"]),
        )


def test_gate(c_z: BitVector, c_b: BitVector, params: ProtocolParams) -> bool:
    """True when neither test class shows more errors than its threshold allows."""
    if len(c_z) != params.n_z or len(c_b) != params.n_x:
        raise DimensionError("test error strings do not match n_z, n_x")
    return c_z.weight() <= params.z_budget() and c_b.weight() <= params.x_budget()


test_gate.__test__ = False  # keep pytest from collecting it


def _flip_table(attack: AttackModel) -> np.ndarray:
    """``table[basis, bit]``: probability Bob's outcome differs from ``bit``."""
    table = np.empty((2, 2))
    for bi, basis in enumerate((Basis.Z, Basis.X)):
        for bit in (0, 1):
            table[bi, bit] = quantum.channel_outcome_probs(attack, bit, basis, basis)[1 - bit]
    return table


def run_protocol(params: ProtocolParams, attack: AttackModel, rng: np.random.Generator, _flips: np.ndarray | None = None) -> Transcript:
    """One complete run: partition, transmission, tests, correction, keys.

    Randomness is consumed in a fixed order: partition, Alice's bits, then one
    uniform per qubit for Bob's outcomes.
    """
    N = params.N
    flips = _flip_table(attack) if _flips is None else _flips
    part = sample_partition(N, params.n, params.n_z, params.n_x, rng)
    sent = rng.integers(0, 2, size=N)
    bases = np.array(part.b.to_list())
    err = rng.random(N) < flips[bases, sent]
    received = sent ^ err.astype(sent.dtype)

    i_sent = BitVector.from_bits(sent)
    i_received = BitVector.from_bits(received)
    c = i_sent + i_received
    info, tz, tx = part.info, part.test_z, part.test_x
    c_s, c_z, c_b = c.restrict(info), c.restrict(tz), c.restrict(tx)

    if not test_gate(c_z, c_b, params):
        return Transcript(part, i_sent, i_received, c, c_s, c_z, c_b, None, True, None, None)

    code = params.code
    x = i_sent.restrict(info)
    x_bob = i_received.restrict(info)
    xi = codes.syndrome(code, x)
    x_hat = codes.correct(code, x_bob, xi)
    return Transcript(
        part, i_sent, i_received, c, c_s, c_z, c_b, xi, False,
        codes.final_key(code, x), codes.final_key(code, x_hat),
    )


def run_trials(params: ProtocolParams, attack: AttackModel, trials: int, seed: int) -> list[Transcript]:
    flips = _flip_table(attack)
    return [run_protocol(params, attack, np.random.default_rng(seed + t), flips) for t in range(trials)]


def hoeffding_exhaustive(c_pool: BitVector, n: int, n_x: int, p_ax, eps) -> Fraction:
    """Exact probability, over all ways of choosing which ``n`` pool entries are
    INFO bits, that the INFO error rate exceeds ``p_ax + eps`` while the
    remaining ``n_x`` TEST-X entries pass their threshold.
    """
    L = n + n_x
    if len(c_pool) != L:
        raise DimensionError(f"pool length {len(c_pool)} differs from n + n_x = {L}")
    if n < 1 or n_x < 0:
        raise ValueError("need n >= 1 and n_x >= 0")
    if L > MAX_POOL:
        raise EnumerationLimitError(f"pool of {L} exceeds the {MAX_POOL} guard")
    p, e = as_fraction(p_ax), as_fraction(eps)
    info_min = math.floor(n * (p + e)) + 1
    test_max = math.floor(n_x * p)
    hits = _backend.split_event_count(c_pool.value, L, n, info_min, test_max)
    return Fraction(hits, math.comb(L, n))


def wilson_interval(hits: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    if trials < 1:
        raise ValueError("need at least one trial")
    phat = hits / trials
    denom = 1.0 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class Estimate:
    hits: int
    trials: int
    low: float
    high: float

    @property
    def value(self) -> float:
        return self.hits / self.trials

    @property
    def sigma(self) -> float:
        """Wilson 95% half-width expressed in standard deviations."""
        return (self.high - self.low) / (2 * 1.96)


def _estimate(hits: int, trials: int) -> Estimate:
    return Estimate(hits, trials, *wilson_interval(hits, trials))


def monte_carlo_joint_event(params: ProtocolParams, attack: AttackModel, trials: int, seed: int) -> Estimate:
    """Frequency of: conjugate-basis INFO errors reach ``d_rm / 2`` and both
    tests pass.

    INFO errors are drawn i.i.d. at the attack's x-basis error rate, as if the
    INFO bits had been sent in x.  Test bits go through the channel in their
    real bases with uniformly random values.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    flips = _flip_table(attack)
    q_conj = quantum.conjugate_error_prob(attack)
    need = math.ceil(Fraction(params.code.d_rm, 2))
    z_budget, x_budget = params.z_budget(), params.x_budget()
    hits = 0
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        info_err = int(np.count_nonzero(rng.random(params.n) < q_conj))
        z_bits = rng.integers(0, 2, size=params.n_z)
        z_err = int(np.count_nonzero(rng.random(params.n_z) < flips[0, z_bits]))
        x_bits = rng.integers(0, 2, size=params.n_x)
        x_err = int(np.count_nonzero(rng.random(params.n_x) < flips[1, x_bits]))
        if info_err >= need and z_err <= z_budget and x_err <= x_budget:
            hits += 1
    return _estimate(hits, trials)


def pass_probability(params: ProtocolParams, attack: AttackModel) -> float:
    """Exact probability that both tests pass."""
    q_z = quantum.basis_error_prob(attack, Basis.Z)
    q_x = quantum.basis_error_prob(attack, Basis.X)
    return quantum.binomial_cdf(params.n_z, q_z, params.z_budget()) * quantum.binomial_cdf(
        params.n_x, q_x, params.x_budget()
    )


def joint_event_probability(params: ProtocolParams, attack: AttackModel) -> float:
    """Exact probability of the event :func:`monte_carlo_joint_event` samples.

    Under a collective attack the three error classes are independent, so the
    probability factorises into binomial terms.
    """
    q_conj = quantum.conjugate_error_prob(attack)
    tail = quantum.binomial_tail(params.n, q_conj, Fraction(params.code.d_rm, 2))
    return tail * pass_probability(params, attack)


def delta_eve(params: ProtocolParams, attack: AttackModel, transcript: Transcript, k: BitVector, k2: BitVector) -> float:
    """Trace distance between Eve's states for keys ``k`` and ``k2`` after
    this run, or 0 if the run aborted."""
    if transcript.aborted:
        return 0.0
    bprime = BitVector.zeros(params.n)
    states = quantum.rho_hats(attack, params.code, bprime, transcript.xi)
    return quantum.trace_distance(states[k], states[k2])


def expected_delta_eve(params: ProtocolParams, attack: AttackModel, k: BitVector, k2: BitVector) -> float:
    """Exact average of :func:`delta_eve` over all runs.

    Eve's key states depend on the run only through the syndrome, which is
    uniform on all ``2^r`` values and independent of the test outcomes.
    """
    code = params.code
    bprime = BitVector.zeros(params.n)
    total = 0.0
    for s in range(1 << code.r):
        states = quantum.rho_hats(attack, code, bprime, BitVector(code.r, s))
        total += quantum.trace_distance(states[k], states[k2])
    return pass_probability(params, attack) * total / (1 << code.r)


@dataclass(frozen=True)
class ReliabilityStats:
    trials: int
    accepted: int
    mismatches: int
    correctable_mismatches: int
    mismatch: Estimate

    @property
    def aborted(self) -> int:
        return self.trials - self.accepted

    @property
    def conditional_mismatch_rate(self) -> float:
        return self.mismatches / self.accepted if self.accepted else 0.0


def reliability_trials(params: ProtocolParams, attack: AttackModel, trials: int, seed: int) -> ReliabilityStats:
    """Key disagreement statistics over full protocol runs.

    ``mismatch`` counts disagreeing accepted runs against all trials, the
    quantity the reliability bound controls.  ``correctable_mismatches``
    counts disagreements in runs whose INFO error weight was within the
    code's correction capability; it should always be zero.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    accepted = mismatches = correctable = 0
    t_corr = params.code.t_corr
    for tr in run_trials(params, attack, trials, seed):
        if tr.aborted:
            continue
        accepted += 1
        if tr.key_alice != tr.key_bob:
            mismatches += 1
            if tr.c_s.weight() <= t_corr:
                correctable += 1
    return ReliabilityStats(trials, accepted, mismatches, correctable, _estimate(mismatches, trials))

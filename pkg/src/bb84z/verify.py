"""Exhaustive inequality suites.

Each suite yields :class:`Check` records, one per instance, which the CLI
writes to a report.  ``rhs_scale`` multiplies every right-hand side and is
only there so the harness can be shown to catch a broken bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import bounds, codes, gf2, protocol, quantum
from .codes import CodePair
from .gf2 import BitMatrix, BitVector

#: Slack for floating-point comparisons of exact quantities.
FLOAT_SLACK = 1e-12

PROP1_THETAS = tuple(i * math.pi / 16 for i in range(9))


@dataclass(frozen=True)
class Check:
    suite: str
    instance: str
    lhs: float
    rhs: float
    ok: bool


def _permute_columns(value: int, n: int, perm: Sequence[int]) -> int:
    out = 0
    for i in range(n):
        if value >> (n - 1 - i) & 1:
            out |= 1 << (n - 1 - perm[i])
    return out


def enumerate_code_pairs(
    n_values=(1, 2, 3, 4), r_values=(0, 1), m_values=(1, 2), budget: int = 500
) -> list[CodePair]:
    """One representative per column-permutation class of independent row sets.

    Rows are ordered (parity rows, then key rows); the representative is the
    lexicographically smallest permuted row tuple.  Raises if more than
    ``budget`` classes exist.
    """
    out = []
    for n in n_values:
        perms = list(itertools.permutations(range(n)))
        for r in r_values:
            for m in m_values:
                if r + m > n:
                    continue
                seen = set()
                for rows in itertools.permutations(range(1, 1 << n), r + m):
                    canon = min(tuple(_permute_columns(v, n, p) for v in rows) for p in perms)
                    if canon in seen:
                        continue
                    vectors = BitMatrix.from_ints(canon, n)
                    if not gf2.is_linearly_independent(vectors):
                        continue
                    seen.add(canon)
                    out.append(codes.make_code_pair(vectors[:r], vectors[r:]))
                    if len(out) > budget:
                        raise ValueError(f"more than {budget} code classes")
    return out


def _code_label(code: CodePair) -> str:
    pc = ",".join(str(v) for v in code.pc_rows) or "-"
    pk = ",".join(str(v) for v in code.pk_rows)
    return f"n={code.n} r={code.r} m={code.m} pc={pc} pk={pk}"


def prop1_sweep(code_pairs: Sequence[CodePair], thetas=PROP1_THETAS, rhs_scale: float = 1.0) -> Iterator[Check]:
    """Trace distance between Eve's states for every key pair, every syndrome
    and every rotation angle, against ``2 m sqrt(P[conjugate errors >= d_rm/2])``."""
    for code in code_pairs:
        bprime = BitVector.zeros(code.n)
        for theta in thetas:
            attack = quantum.rotation_attack(theta)
            tail = quantum.binomial_tail(code.n, quantum.conjugate_error_prob(attack), code.d_rm / 2)
            rhs = bounds.prop1_bound(code.m, tail) * rhs_scale
            for s in range(1 << code.r):
                xi = BitVector(code.r, s)
                states = quantum.rho_hats(attack, code, bprime, xi)
                for k, k2 in itertools.combinations(states, 2):
                    lhs = quantum.trace_distance(states[k], states[k2])
                    yield Check(
                        "prop1",
                        f"{_code_label(code)} theta={theta:.6f} xi={xi} k={k} k'={k2}",
                        lhs, rhs, lhs <= rhs + FLOAT_SLACK,
                    )


def hoeffding_suite(
    max_len: int = 12, ns=(2, 4, 6), epss=(0.1, 0.2), p_axs=(0.0, 0.25), rhs_scale: float = 1.0
) -> Iterator[Check]:
    """For each (n, n_x, eps, p_ax), the worst pool of length n + n_x against
    the sampling bound.  Every pool is evaluated."""
    for n in ns:
        for n_x in range(1, max_len - n + 1):
            L = n + n_x
            for eps in epss:
                for p in p_axs:
                    rhs = bounds.sampling_exponent_bound(n, n_x, eps) * rhs_scale
                    worst, worst_pool = 0.0, 0
                    for pool in range(1 << L):
                        val = float(protocol.hoeffding_exhaustive(BitVector(L, pool), n, n_x, p, eps))
                        if val > worst:
                            worst, worst_pool = val, pool
                    yield Check(
                        "hoeffding",
                        f"n={n} n_x={n_x} eps={eps} p_ax={p} worst_pool={BitVector(L, worst_pool)}",
                        worst, rhs, worst <= rhs + FLOAT_SLACK,
                    )


def decoder_suite(code: CodePair | None = None) -> Iterator[Check]:
    """Every codeword with every single-bit error must decode back.

    ``lhs`` is the Hamming distance of the decoded word from the codeword.
    """
    if code is None:
        code = codes.make_code_pair(codes.hamming_7_4(), BitMatrix(["1000000"]))
    n = code.n
    zero = BitVector.zeros(code.r)
    for value in range(1 << n):
        word = BitVector(n, value)
        if codes.syndrome(code, word) != zero:
            continue
        for pos in range(n):
            received = word + BitVector.unit(n, pos)
            decoded = codes.correct(code, received, zero)
            miss = gf2.hamming_distance(decoded, word)
            yield Check("decoder", f"codeword={word} flip={pos}", float(miss), 0.0, miss == 0)


def average_distance_suite(rhs_scale: float = 1.0) -> Iterator[Check]:
    """Exact average of Eve's key-state distance against ``2 m sqrt(P[joint event])``
    on small protocol instances."""
    instances = [
        (codes.make_code_pair(BitMatrix([], ncols=2), BitMatrix(["11"])), 2, 2, 0.25, 0.45),
        (codes.make_code_pair(BitMatrix(["110"]), BitMatrix(["011"])), 3, 3, 1 / 3, 1 / 3),
        (codes.make_code_pair(BitMatrix(["1100"]), BitMatrix(["0110", "0011"])), 4, 4, 0.25, 0.25),
    ]
    for code, n_z, n_x, p_az, p_ax in instances:
        params = protocol.ProtocolParams(code.n, n_z, n_x, p_az, p_ax, code)
        keys = [BitVector(code.m, v) for v in range(1 << code.m)]
        for theta in PROP1_THETAS:
            attack = quantum.rotation_attack(theta)
            rhs = bounds.prop1_bound(code.m, protocol.joint_event_probability(params, attack)) * rhs_scale
            for k, k2 in itertools.combinations(keys, 2):
                lhs = protocol.expected_delta_eve(params, attack, k, k2)
                yield Check(
                    "avg_distance",
                    f"{_code_label(code)} n_z={n_z} n_x={n_x} theta={theta:.6f} k={k} k'={k2}",
                    lhs, rhs, lhs <= rhs + FLOAT_SLACK,
                )


def montecarlo_suite(seed: int, trials: int = 2000, rhs_scale: float = 1.0) -> Iterator[Check]:
    """Sampled joint-event frequency against the sampling bound plus three
    Wilson sigmas, for codes whose distance clears ``p_ax + eps``."""
    code = codes.make_code_pair(BitMatrix([], ncols=4), BitMatrix(["1111"]))
    eps = 0.2
    for n_x in (4, 8):
        params = protocol.ProtocolParams(4, 4, n_x, 0.25, 0.25, code)
        if code.d_rm / (2 * code.n) <= params.p_ax + eps:
            raise ValueError("code distance does not clear p_ax + eps")
        bound = bounds.sampling_exponent_bound(code.n, n_x, eps)
        for i, theta in enumerate(PROP1_THETAS):
            attack = quantum.rotation_attack(theta)
            est = protocol.monte_carlo_joint_event(params, attack, trials, seed + 100_000 * (i + 9 * n_x))
            rhs = (bound + 3 * est.sigma) * rhs_scale
            yield Check(
                "montecarlo",
                f"n=4 n_x={n_x} eps={eps} theta={theta:.6f} trials={trials}",
                est.value, rhs, est.value <= rhs + FLOAT_SLACK,
            )


def run_all(seed: int, rhs_scale: float = 1.0, hoeffding_max_len: int = 12, mc_trials: int = 2000) -> list[Check]:
    checks: list[Check] = []
    checks.extend(prop1_sweep(enumerate_code_pairs(), rhs_scale=rhs_scale))
    checks.extend(hoeffding_suite(max_len=hoeffding_max_len, rhs_scale=rhs_scale))
    checks.extend(decoder_suite())
    checks.extend(average_distance_suite(rhs_scale=rhs_scale))
    checks.extend(montecarlo_suite(seed, trials=mc_trials, rhs_scale=rhs_scale))
    return checks

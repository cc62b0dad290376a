"""Both kernel implementations against brute-force oracles and each other."""

import itertools
import math
import os
import random
import subprocess
import sys

import pytest

from bb84z import _backend


def _brute_span_min(v, basis):
    best = None
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        w = 0
        for c, b in zip(coeffs, basis):
            if c:
                w ^= b
        d = bin(v ^ w).count("1")
        best = d if best is None else min(best, d)
    return best


@pytest.mark.parametrize("seed", range(20))
def test_span_min_weight_matches_enumeration(kernels, seed):
    rnd = random.Random(seed)
    n = rnd.randint(1, 12)
    k = rnd.randint(0, 6)
    basis = [rnd.randrange(1 << n) for _ in range(k)]
    v = rnd.randrange(1 << n)
    assert kernels.span_min_weight(v, basis) == _brute_span_min(v, basis)


@pytest.mark.parametrize("seed", range(20))
def test_min_nonzero_span_weight(kernels, seed):
    rnd = random.Random(seed)
    n = rnd.randint(2, 12)
    gens = [rnd.randrange(1, 1 << n) for _ in range(rnd.randint(1, 5))]
    weights = []
    for coeffs in itertools.product((0, 1), repeat=len(gens)):
        w = 0
        for c, g in zip(coeffs, gens):
            if c:
                w ^= g
        if w:
            weights.append(bin(w).count("1"))
    assert kernels.min_nonzero_span_weight(gens) == min(weights)


@pytest.mark.parametrize("n,rows", [
    (7, [0b0001111, 0b0110011, 0b1010101]),
    (5, [0b11000, 0b01100, 0b00110]),
    (6, [0b101010, 0b010101]),
    (4, []),
])
def test_coset_leaders_match_brute_force(kernels, n, rows):
    r = len(rows)
    cols = []
    for bit in range(n):
        s = 0
        for a, row in enumerate(rows):
            if row >> bit & 1:
                s |= 1 << (r - 1 - a)
        cols.append(s)
    table = kernels.coset_leaders(cols, n, r)
    expected = {}
    # all patterns sorted by (weight, string), first one per syndrome wins
    for e in sorted(range(1 << n), key=lambda e: (bin(e).count("1"), format(e, f"0{n}b"))):
        s = 0
        for a, row in enumerate(rows):
            s = (s << 1) | (bin(e & row).count("1") & 1)
        expected.setdefault(s, e)
    assert table == [expected.get(s, -1) for s in range(1 << r)]


def test_split_event_count_matches_combinations(kernels):
    rnd = random.Random(5)
    for _ in range(40):
        L = rnd.randint(2, 10)
        n = rnd.randint(1, L)
        pool = rnd.randrange(1 << L)
        info_min = rnd.randint(0, n + 1)
        test_max = rnd.randint(-1, L - n)
        expected = 0
        for subset in itertools.combinations(range(L), n):
            mask = sum(1 << i for i in subset)
            inside = bin(pool & mask).count("1")
            if inside >= info_min and bin(pool).count("1") - inside <= test_max:
                expected += 1
        assert kernels.split_event_count(pool, L, n, info_min, test_max) == expected


def test_backends_agree_on_wide_inputs():
    backends = _backend.available_backends()
    rnd = random.Random(11)
    basis = [rnd.randrange(1 << 60) for _ in range(14)]
    v = rnd.randrange(1 << 60)
    results = {name: mod.span_min_weight(v, basis) for name, mod in backends.items()}
    assert len(set(results.values())) == 1


def test_wide_vectors_fall_back_to_python():
    basis = [1 << 80, (1 << 80) | 1]
    assert _backend.span_min_weight((1 << 80) | 3, basis, 81) == 1


def test_split_count_total_is_binomial(kernels):
    assert kernels.split_event_count(0, 10, 4, 0, 10) == math.comb(10, 4)


def test_env_var_forces_python_backend():
    env = dict(os.environ, BB84Z_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from bb84z import _backend; print(_backend.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bb84z import gf2
from bb84z.errors import DimensionError, EnumerationLimitError, LinearDependenceError
from bb84z.gf2 import BitMatrix, BitVector

from conftest import bits, dot, span_elements, xor

V = BitVector.from_str


def vectors(n):
    return st.integers(0, (1 << n) - 1).map(lambda v: BitVector(n, v))


@st.composite
def same_length(draw, count, max_n=16):
    n = draw(st.integers(1, max_n))
    return [draw(vectors(n)) for _ in range(count)]


class TestBitVector:
    def test_string_round_trip(self):
        assert str(V("0010110")) == "0010110"
        assert V("1000").value == 8
        assert list(V("101")) == [1, 0, 1]

    def test_rejects_non_bits(self):
        with pytest.raises(ValueError):
            V("10a")
        with pytest.raises(ValueError):
            BitVector.from_bits([0, 2])

    def test_restrict_keeps_order(self):
        assert V("10110").restrict([4, 0, 2]) == V("011")

    def test_empty_vector_is_allowed(self):
        e = V("")
        assert len(e) == 0 and e.weight() == 0

    @given(same_length(1))
    def test_self_sum_is_zero(self, vs):
        (v,) = vs
        assert (v + v).weight() == 0


class TestWeightAndDistance:
    @pytest.mark.parametrize("s,w", [("0000", 0), ("1011", 3), ("1", 1)])
    def test_weight(self, s, w):
        assert gf2.weight(V(s)) == w

    @pytest.mark.parametrize("u,v,d", [("1010", "1010", 0), ("1010", "0101", 4), ("110", "011", 2)])
    def test_hamming_distance(self, u, v, d):
        assert gf2.hamming_distance(V(u), V(v)) == d

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            gf2.hamming_distance(V("10"), V("101"))

    @given(same_length(3))
    def test_metric_axioms(self, vs):
        u, v, w = vs
        d = gf2.hamming_distance
        assert d(u, v) == d(v, u)
        assert (d(u, v) == 0) == (u == v)
        assert d(u, w) <= d(u, v) + d(v, w)


class TestMulTranspose:
    def test_zero_input(self):
        m = BitMatrix(["1110", "0111", "1001"])
        assert gf2.mul_transpose(V("0000"), m) == V("000")

    def test_identity(self):
        x = V("10110")
        assert gf2.mul_transpose(x, BitMatrix.identity(5)) == x

    def test_hand_example(self):
        # 1101.1110 = 1+1 = 0 and 1101.0111 = 1+1 = 0
        x, m = bits("1101"), [bits("1110"), bits("0111")]
        expected = [dot(x, row) for row in m]
        assert expected == [0, 0]
        assert gf2.mul_transpose(V("1101"), BitMatrix(["1110", "0111"])).to_list() == expected

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            gf2.mul_transpose(V("101"), BitMatrix(["1110"]))

    @given(st.data())
    def test_linearity(self, data):
        n = data.draw(st.integers(1, 12))
        rows = data.draw(st.lists(vectors(n), min_size=1, max_size=6))
        m = BitMatrix(rows)
        x, y = data.draw(vectors(n)), data.draw(vectors(n))
        assert gf2.mul_transpose(x + y, m) == gf2.mul_transpose(x, m) + gf2.mul_transpose(y, m)


class TestIndependence:
    @pytest.mark.parametrize("rows,expected", [
        (["100", "010", "001"], True),
        (["101", "011", "110"], False),
        (["1100", "1100"], False),
    ])
    def test_examples(self, rows, expected):
        assert gf2.is_linearly_independent(BitMatrix(rows)) is expected

    def test_empty_is_independent(self):
        assert gf2.is_linearly_independent(BitMatrix([], ncols=3))

    @given(st.data())
    @settings(max_examples=60)
    def test_rank_matches_span_size(self, data):
        n = data.draw(st.integers(1, 6))
        rows = data.draw(st.lists(vectors(n), max_size=5))
        m = BitMatrix(rows, ncols=n)
        distinct = {tuple(e) for e in span_elements([r.to_list() for r in rows], n)}
        assert 2 ** gf2.rank(m) == len(distinct)

    def test_kernel_basis_spans_the_kernel(self):
        m = BitMatrix(["0001111", "0110011", "1010101"])
        kernel = gf2.kernel_basis(m)
        assert len(kernel) == 4
        assert gf2.is_linearly_independent(kernel)
        for row in kernel:
            assert gf2.mul_transpose(row, m).weight() == 0


def _oracle_span_distance(v, basis_rows, n):
    return min(sum(xor(v, w)) for w in span_elements(basis_rows, n))


class TestSpanDistances:
    def test_empty_basis(self):
        assert gf2.span_min_distance(V("111"), BitMatrix([], ncols=3)) == 3

    def test_member_of_span(self):
        basis = BitMatrix(["1100", "0011"])
        assert gf2.span_min_distance(V("1111"), basis) == 0

    @given(st.data())
    @settings(max_examples=80)
    def test_matches_enumeration_oracle(self, data):
        n = data.draw(st.integers(1, 8))
        basis = data.draw(st.lists(vectors(n), max_size=4))
        v = data.draw(vectors(n))
        got = gf2.span_min_distance(v, BitMatrix(basis, ncols=n))
        assert got == _oracle_span_distance(v.to_list(), [b.to_list() for b in basis], n)
        assert (got == 0) == gf2.in_span(v, BitMatrix(basis, ncols=n))

    def test_guard(self):
        basis = BitMatrix.identity(21)
        with pytest.raises(EnumerationLimitError):
            gf2.span_min_distance(BitVector.zeros(21), basis)


def _oracle_d_rm(rows, r, m):
    n = len(rows[0])
    return min(_oracle_span_distance(rows[rp], rows[:rp], n) for rp in range(r, r + m))


def _independent_rows(n, count, data):
    rows = data.draw(st.lists(vectors(n), min_size=count, max_size=count))
    m = BitMatrix(rows, ncols=n)
    from hypothesis import assume

    assume(gf2.is_linearly_independent(m))
    return m


class TestCodeDistances:
    def test_d_rm_single_row(self):
        assert gf2.compute_d_rm(BitMatrix(["11111"]), 0, 1) == 5
        assert gf2.compute_d_rm(BitMatrix(["10110"]), 0, 1) == 3

    def test_d_rm_hand_example(self):
        rows = ["1100", "0110", "0011"]
        expected = _oracle_d_rm([bits(r) for r in rows], 1, 2)
        assert expected == 2
        assert gf2.compute_d_rm(BitMatrix(rows), 1, 2) == expected

    def test_d_rm_rejects_dependent_rows(self):
        with pytest.raises(LinearDependenceError):
            gf2.compute_d_rm(BitMatrix(["110", "011", "101"]), 1, 2)

    def test_d_j_identity(self):
        rows = BitMatrix.identity(3)
        expected = _oracle_span_distance(bits("010"), [bits("100"), bits("001")], 3)
        assert expected == 1
        assert gf2.compute_d_j(rows, 1, 2, 1) == expected

    @given(st.data())
    @settings(max_examples=60)
    def test_d_rm_bounded_by_every_d_j(self, data):
        n = data.draw(st.integers(2, 7))
        r = data.draw(st.integers(0, 2))
        m = data.draw(st.integers(1, 3))
        if r + m > n:
            r, m = 0, 1
        vec = _independent_rows(n, r + m, data)
        d_rm = gf2.compute_d_rm(vec, r, m)
        assert d_rm == _oracle_d_rm([v.to_list() for v in vec], r, m)
        for j in range(1, m + 1):
            assert d_rm <= gf2.compute_d_j(vec, r, m, j)
        if m == 1:
            assert gf2.compute_d_j(vec, r, 1, 1) == d_rm
            assert d_rm == gf2.span_min_distance(vec[r], vec[:r])

    def test_min_code_distance_repetition(self):
        assert gf2.min_code_distance(BitMatrix(["110", "011"])) == 3

    def test_min_code_distance_hamming(self):
        h = [bits(r) for r in ("0001111", "0110011", "1010101")]
        words = [x for x in itertools.product((0, 1), repeat=7) if all(dot(x, row) == 0 for row in h)]
        assert len(words) == 16
        expected = min(sum(w) for w in words if any(w))
        assert expected == 3
        assert gf2.min_code_distance(BitMatrix(["0001111", "0110011", "1010101"])) == expected
        assert gf2.correction_capability(BitMatrix(["0001111", "0110011", "1010101"])) == 1

    def test_min_code_distance_trivial_code(self):
        with pytest.raises(ValueError):
            gf2.min_code_distance(BitMatrix.identity(4))


class TestTextFormat:
    def test_round_trip(self):
        m = BitMatrix(["1010", "0111"])
        text = m.to_text()
        assert text.splitlines()[0] == "n=4 rows=2"
        assert BitMatrix.from_text(text) == m

    def test_empty_matrix(self):
        m = BitMatrix([], ncols=5)
        assert BitMatrix.from_text(m.to_text()) == m

    def test_row_count_mismatch(self):
        with pytest.raises(ValueError):
            BitMatrix.from_text("n=3 rows=2\n101\n")

import pytest
from hypothesis import given, strategies as st

from maskquery import BitString


def bs(text):
    return BitString.parse(text)


pairs = st.integers(1, 64).flatmap(
    lambda w: st.tuples(st.just(w),
                        st.integers(0, 2**w - 1),
                        st.integers(0, 2**w - 1)))


class TestOperations:
    def test_and(self):
        assert bs("110") & bs("011") == bs("010")
        x = bs("10110")
        assert x & BitString.ones(5) == x
        assert x & BitString.zeros(5) == BitString.zeros(5)

    def test_or(self):
        assert bs("010") | bs("100") == bs("110")
        x = bs("10110")
        assert x | BitString.zeros(5) == x
        assert x | BitString.ones(5) == BitString.ones(5)

    def test_xor(self):
        assert bs("110") ^ bs("110") == bs("000")
        assert bs("101") ^ bs("011") == bs("110")
        x = bs("10110")
        assert x ^ BitString.zeros(5) == x

    def test_inner_product(self):
        assert bs("110").inner_product(bs("100")) == 1
        assert bs("111").inner_product(bs("110")) == 0
        assert bs("10101").inner_product(BitString.zeros(5)) == 0

    def test_weight(self):
        assert BitString.zeros(7).weight() == 0
        assert BitString.ones(7).weight() == 7
        assert bs("110").weight() == 2

    def test_complement(self):
        assert ~BitString.zeros(4) == BitString.ones(4)
        assert ~bs("110") == bs("001")
        x = bs("0101101")
        assert ~~x == x
        assert x.weight() + (~x).weight() == x.width

    def test_width_mismatch(self):
        with pytest.raises(ValueError):
            bs("101") & bs("1010")
        with pytest.raises(ValueError):
            bs("101").inner_product(bs("10"))


class TestConstruction:
    def test_bounds(self):
        with pytest.raises(ValueError):
            BitString(0, 0)
        with pytest.raises(ValueError):
            BitString(65, 0)
        with pytest.raises(ValueError):
            BitString(3, 8)
        BitString(64, 2**64 - 1)

    def test_unit_is_msb_first(self):
        assert str(BitString.unit(5, 1)) == "10000"
        assert str(BitString.unit(5, 5)) == "00001"

    def test_bit_indexing(self):
        x = bs("10010")
        assert [x.bit(i) for i in range(1, 6)] == [1, 0, 0, 1, 0]
        assert x.support() == (1, 4)

    def test_from_positions(self):
        assert BitString.from_positions(4, [1, 3]) == bs("1010")
        with pytest.raises(ValueError):
            BitString.from_positions(4, [5])

    def test_parse_rejects_junk(self):
        for bad in ("", "012", "1 0", "ab"):
            with pytest.raises(ValueError):
                BitString.parse(bad)


@given(pairs)
def test_de_morgan(data):
    w, a_bits, b_bits = data
    a, b = BitString(w, a_bits), BitString(w, b_bits)
    assert ~(a & b) == (~a) | (~b)
    assert a & b == b & a
    assert a | b == b | a
    assert a ^ b == b ^ a


@given(pairs)
def test_xor_weight_parity(data):
    w, a_bits, b_bits = data
    a, b = BitString(w, a_bits), BitString(w, b_bits)
    assert (a ^ b).weight() % 2 == (a.weight() + b.weight()) % 2


@given(st.integers(1, 64).flatmap(
    lambda w: st.tuples(st.just(w), st.integers(0, 2**w - 1))))
def test_text_roundtrip(data):
    w, bits = data
    x = BitString(w, bits)
    text = str(x)
    assert len(text) == w
    assert BitString.parse(text) == x

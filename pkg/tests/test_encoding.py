import pytest

from backend.code_tree import CodeTree
from backend.encoding import (
    bits,
    encode_shifted,
    shifted_encoder,
    suffix_after_lcp,
    trie_measure_of_codes,
    trie_measure_of_sequence,
)
from backend.errors import InvalidInputError
from backend.set_sequence import SetSequence


@pytest.mark.parametrize("alpha, beta, expected", [
    ("0010", "0100", "100"),
    ("0100", "1010", "1010"),
    ("1010", "1101", "101"),
    ("0", "1", "1"),
    ("011", "0101", "01"),
])
def test_suffix_after_lcp(alpha, beta, expected):
    assert suffix_after_lcp(bits(alpha), bits(beta)) == bits(expected)


@pytest.mark.parametrize("alpha, beta", [("01", "011"), ("011", "01"), ("10", "10"), ("", "1")])
def test_suffix_after_lcp_rejects_prefix_pairs(alpha, beta):
    with pytest.raises(InvalidInputError):
        suffix_after_lcp(bits(alpha), bits(beta))


def test_bits_rejects_other_characters():
    with pytest.raises(InvalidInputError):
        bits("012")


@pytest.mark.parametrize("x, a, u, expected", [
    (3, 0, 8, "011"),
    (3, 1, 8, "100"),
    (7, 1, 8, "000"),
    (13, 0, 16, "1101"),
    (0, 0, 2, "0"),
])
def test_encode_shifted(x, a, u, expected):
    assert encode_shifted(x, a, u) == bits(expected)


def test_encode_shifted_single_element_universe_is_empty_code():
    assert len(encode_shifted(0, 0, 1)) == 0


@pytest.mark.parametrize("x, a, u", [(8, 0, 8), (-1, 0, 8), (0, 8, 8), (0, 0, 6)])
def test_encode_shifted_rejects_out_of_range(x, a, u):
    with pytest.raises(InvalidInputError):
        encode_shifted(x, a, u)


def test_trie_measure_of_codes_counts_edges():
    assert trie_measure_of_codes([bits("011"), bits("100"), bits("110")]) == 8


def test_trie_measure_of_single_code_is_its_length():
    assert trie_measure_of_codes([bits("1011")]) == 4


def test_trie_measure_of_fixed_length_codes_is_bounded(rng):
    for _ in range(500):
        log_u = rng.randint(0, 8)
        u = 1 << log_u
        elements = rng.sample(range(u), rng.randint(1, min(u, 20)))
        a = rng.randrange(u)
        codes = sorted((encode_shifted(x, a, u) for x in elements), key=lambda code: code.to01())
        assert log_u <= trie_measure_of_codes(codes) <= len(elements) * log_u


@pytest.mark.parametrize("codes", [
    [],
    ["100", "011"],
    ["011", "011"],
    ["0", "01"],
])
def test_trie_measure_of_codes_rejects_bad_lists(codes):
    with pytest.raises(InvalidInputError):
        trie_measure_of_codes([bits(c) for c in codes])


@pytest.mark.parametrize("a, expected", [(0, 8), (1, 6), (2, 8), (3, 7)])
def test_trie_measure_of_shifted_sequence(three_four_six, a, expected):
    assert trie_measure_of_sequence(shifted_encoder(a, 8), three_four_six) == expected


def test_trie_measure_of_wider_universe(sixteen_universe_sequence):
    assert trie_measure_of_sequence(shifted_encoder(0, 16), sixteen_universe_sequence) == 14


def test_trie_measure_with_code_tree(four_position_sequence):
    tree = CodeTree.parse("(0,(1,(2,3)))")
    assert trie_measure_of_sequence(tree, four_position_sequence) == 12


def test_trie_measure_skips_empty_sets():
    seq = SetSequence(universe_size=8, sets=((), (3, 4, 6), ()))
    assert trie_measure_of_sequence(shifted_encoder(0, 8), seq) == 8


def test_trie_measure_of_empty_sequence_is_zero():
    assert trie_measure_of_sequence(shifted_encoder(0, 1), SetSequence(universe_size=1, sets=())) == 0


def test_trie_measure_rejects_element_missing_from_tree():
    seq = SetSequence(universe_size=8, sets=((1, 5),))
    with pytest.raises(InvalidInputError):
        trie_measure_of_sequence(CodeTree.parse("(0,1)"), seq)

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exstructa.errors import NotAnExtension, TooManyStructures
from exstructa.intervals import (
    Interval,
    ar_sequences,
    cyclic_algebra,
    ext_shape,
    hereditary_linear,
    indecomposables,
    linear_algebra,
)
from exstructa.structures import (
    ExactStructure,
    e_projectives,
    e_simples,
    enumerate_structures,
    is_aw_fast,
    required_ar_mask,
    seq_in_E,
)

A2 = linear_algebra([2, 1])
A3 = hereditary_linear(3)
C22 = cyclic_algebra([2, 2])


def E(alg, *ends):
    return ExactStructure.from_ends(alg, ends)


def test_seq_in_E_examples():
    split = ExactStructure.split(A3)
    assert not seq_in_E(split, Interval(2, 1), Interval(1, 1))
    with_first = E(A3, (1, 1))
    assert seq_in_E(with_first, Interval(2, 1), Interval(1, 1))
    assert required_ar_mask(A3, Interval(2, 1), Interval(1, 1)) == 0b001
    # S_3 >-> [1,3] ->> [1,2] needs the sequences ending at (2,1) and (1,2)
    need = required_ar_mask(A3, Interval(3, 1), Interval(1, 2))
    assert need == 0b110
    assert seq_in_E(E(A3, (2, 1), (1, 2)), Interval(3, 1), Interval(1, 2))
    assert not seq_in_E(E(A3, (2, 1)), Interval(3, 1), Interval(1, 2))


def test_seq_in_E_requires_extension():
    with pytest.raises(NotAnExtension):
        seq_in_E(ExactStructure.split(A3), Interval(1, 2), Interval(2, 2))


def test_e_simples_examples():
    assert set(e_simples(ExactStructure.maximal(A3))) == {
        Interval(1, 1),
        Interval(2, 1),
        Interval(3, 1),
    }
    assert len(e_simples(E(A3, (1, 2)))) == 6
    assert set(e_simples(E(A3, (1, 1)))) == {
        Interval(1, 1),
        Interval(2, 1),
        Interval(3, 1),
        Interval(2, 2),
        Interval(1, 3),
    }


def test_e_projectives_examples():
    split = ExactStructure.split(A3)
    assert e_projectives(split) == indecomposables(A3)
    assert set(e_projectives(ExactStructure.maximal(A3))) == {
        Interval(1, 3),
        Interval(2, 2),
        Interval(3, 1),
    }
    assert len(e_projectives(E(A3, (1, 1)))) == 5


def test_e_projective_count_identity():
    for alg in (A2, A3, C22):
        for s in enumerate_structures(alg):
            assert len(e_projectives(s)) == len(indecomposables(alg)) - s.size()


def test_is_aw_fast_examples():
    assert not is_aw_fast(E(A3, (1, 2)))
    flags = [is_aw_fast(s) for s in enumerate_structures(A3)]
    assert sum(flags) == 7
    assert [s.b_hex for s, f in zip(enumerate_structures(A3), flags) if not f] == ["2"]
    for alg in (A2, A3, C22):
        assert is_aw_fast(ExactStructure.split(alg))


def test_enumerate_structures():
    assert len(list(enumerate_structures(A2))) == 2
    structs = list(enumerate_structures(A3))
    assert len(structs) == 8
    assert [s.mask for s in structs] == list(range(8))
    with pytest.raises(TooManyStructures):
        list(enumerate_structures(A3, cap=2))


def test_hex_roundtrip():
    s = E(A3, (1, 1), (2, 1))
    assert ExactStructure.from_hex(A3, s.b_hex) == s


# -- invariants ----------------------------------------------------------------


def _algebra_battery():
    yield A2
    yield A3
    yield C22
    yield linear_algebra([2, 2, 1])
    yield cyclic_algebra([2, 2, 2])
    yield hereditary_linear(4)


def test_socle_consistency():
    # a sequence's own membership reflects exactly its bit
    for alg in _algebra_battery():
        seqs = ar_sequences(alg)
        for s in enumerate_structures(alg):
            for k, seq in enumerate(seqs):
                assert seq_in_E(s, seq.sub, seq.end) == bool(s.mask >> k & 1)


def test_monotonicity_in_B():
    for alg in (A2, A3, C22):
        structs = list(enumerate_structures(alg))
        pairs = [
            (a, b)
            for a in structs
            for b in structs
            if a.mask & ~b.mask == 0
        ]
        exts = [
            (s, q)
            for s in indecomposables(alg)
            for q in indecomposables(alg)
            if ext_shape(alg, s, q) is not None
        ]
        for small, big in pairs:
            for s, q in exts:
                if seq_in_E(small, s, q):
                    assert seq_in_E(big, s, q)


def test_split_structure_admits_nothing():
    for alg in _algebra_battery():
        split = ExactStructure.split(alg)
        for s in indecomposables(alg):
            for q in indecomposables(alg):
                if ext_shape(alg, s, q) is not None:
                    assert not seq_in_E(split, s, q)


def test_ar_middle_matches_fast_membership():
    # the sequence ending at u is admissible iff its bit is on, and its
    # middle terms are the shape's top and overlap
    for alg in _algebra_battery():
        for seq in ar_sequences(alg):
            sh = ext_shape(alg, seq.sub, seq.end)
            assert sh.top == seq.mid_top and sh.overlap == seq.mid_small


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 7), st.integers(0, 7))
def test_e_simples_antitone(mask_a, mask_b):
    # more admissible sequences can only destroy simplicity
    if mask_a & ~mask_b:
        mask_a, mask_b = mask_b, mask_a | mask_b
    small = set(e_simples(ExactStructure(A3, mask_b)))
    big = set(e_simples(ExactStructure(A3, mask_a & mask_b)))
    assert small <= big

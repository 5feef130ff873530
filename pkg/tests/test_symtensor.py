from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from hyperminors.hypermatrix import IndexOutOfRange, generic_hypermatrix, section
from hyperminors.symtensor import (
    SymProfile,
    canonicalize,
    count_variables,
    generic_sym_hypermatrix,
    parse_sym_label,
    sym_label,
)


def test_canonicalize_examples():
    assert canonicalize(SymProfile((2,), (3,)), (2, 1, 2)) == ((1, 2, 2),)
    assert canonicalize(SymProfile((2,), (3,)), (1, 1, 2)) == ((1, 1, 2),)
    assert canonicalize(SymProfile((2, 2), (1, 2)), ((2,), (2, 1))) == ((2,), (1, 2))
    with pytest.raises(IndexOutOfRange):
        canonicalize(SymProfile((2,), (2,)), (1, 3))


def test_labels():
    ci = ((1, 2, 2), (1,))
    assert sym_label(ci) == "x[{1,2,2};{1}]"
    assert parse_sym_label(sym_label(ci)) == ci


def test_count_variables():
    assert count_variables(SymProfile((2,), (1,))) == 2
    assert count_variables(SymProfile((3,), (3,))) == 10
    assert count_variables(SymProfile((2, 3), (1, 2))) == 12


def test_generic_examples():
    A = generic_sym_hypermatrix(SymProfile((2,), (2,)))
    assert A.shape == (2, 2) and A.ring.names == ("x[{1,1}]", "x[{1,2}]", "x[{2,2}]")
    B = generic_sym_hypermatrix(SymProfile((3,), (2,)))
    assert B.ring.nvars == 6 and B.to_matrix() == B.to_matrix().transpose()
    C = generic_sym_hypermatrix(SymProfile((2, 2), (1, 2)))
    assert C.shape == (2, 2, 2) and C.ring.nvars == 6


def test_all_ones_degree_is_generic():
    A = generic_sym_hypermatrix(SymProfile((2, 3), (1, 1)))
    G = generic_hypermatrix((2, 3))
    assert len(set(A.entries)) == 6
    assert A.shape == G.shape


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=2))
def test_orbit_invariance(blocks):
    prof = SymProfile(tuple(b[0] for b in blocks), tuple(b[1] for b in blocks))
    A = generic_sym_hypermatrix(prof)
    assert len(set(A.entries)) == count_variables(prof)
    axes = prof.axis_blocks
    for idx in product(*(range(n) for n in A.shape)):
        for blk in axes:
            for perm in permutations(blk):
                moved = list(idx)
                for src, dst in zip(blk, perm):
                    moved[dst - 1] = idx[src - 1]
                assert A[tuple(moved)] == A[idx]


def test_section_is_smaller_profile():
    prof = SymProfile((2, 3), (2, 2))
    A = generic_sym_hypermatrix(prof)
    for axis in range(1, 5):
        sub = prof.after_section(axis)
        S = section(A, axis, 1)
        assert S.shape == sub.shape
        for idx in product(*(range(1, n + 1) for n in S.shape)):
            full = list(idx)
            full.insert(axis - 1, 1)
            want = sym_label(canonicalize(prof, tuple(full)))
            assert str(S[tuple(i - 1 for i in idx)]) == want
        # equal indices of the smaller profile give equal entries
        seen = {}
        for idx in product(*(range(1, n + 1) for n in S.shape)):
            key = canonicalize(sub, idx)
            entry = S[tuple(i - 1 for i in idx)]
            assert seen.setdefault(key, entry) == entry

import json
import random

import pytest

from hyperminors.groebner import IdealBasis
from hyperminors.hypermatrix import (
    AxisOutOfRange,
    Hypermatrix,
    IndexOutOfRange,
    InvalidAxisSubset,
    NotVariableEntries,
    classify_weak_generic,
    d_minors,
    flatten,
    generic_hypermatrix,
    ideal_of_minors,
    section,
)
from hyperminors.linalg import span_dimension
from hyperminors.poly import PolyRing
from hyperminors.symtensor import SymProfile, generic_sym_hypermatrix

G222 = generic_hypermatrix((2, 2, 2))


def names(polys):
    return [str(p) for p in polys]


def test_section_pins_axis():
    S = section(G222, 3, 1)
    assert S.shape == (2, 2)
    assert names(S.entries) == ["x[1,1,1]", "x[1,2,1]", "x[2,1,1]", "x[2,2,1]"]


def test_section_of_vector_is_single_entry():
    v = generic_hypermatrix((3,))
    s = section(v, 1, 2)
    assert s.shape == () and names(s.entries) == ["x[2]"]


def test_section_errors():
    with pytest.raises(AxisOutOfRange):
        section(G222, 4, 1)
    with pytest.raises(IndexOutOfRange):
        section(G222, 1, 3)


def test_section_of_supersymmetric_is_symmetric():
    A = generic_sym_hypermatrix(SymProfile((2,), (3,)))
    S = section(A, 1, 1).to_matrix()
    assert S == S.transpose()


def test_flatten_layout():
    F = flatten(G222, [1])
    assert F.matrix.shape == (2, 4)
    assert names(F.matrix.row(0)) == ["x[1,1,1]", "x[1,1,2]", "x[1,2,1]", "x[1,2,2]"]
    M = generic_hypermatrix((2, 3))
    assert flatten(M, [1]).matrix == M.to_matrix()
    with pytest.raises(InvalidAxisSubset):
        flatten(G222, [])
    with pytest.raises(InvalidAxisSubset):
        flatten(G222, [1, 2, 3])


def test_flatten_transpose():
    A = generic_hypermatrix((2, 3, 2))
    for J1 in ([1], [2], [1, 3]):
        J2 = [a for a in (1, 2, 3) if a not in J1]
        assert flatten(A, J1).matrix.transpose() == flatten(A, J2).matrix


def test_decomposable_flattening_has_rank_one():
    R = PolyRing(["y1", "y2", "z1", "z2", "z3"])
    ys, zs = R.gens[:2], R.gens[2:]
    A = Hypermatrix((2, 3), [a * b for a in ys for b in zs], R)
    assert all(m.is_zero() for m in flatten(A, [1]).matrix.minors(2))


def test_minor_counts():
    assert names(d_minors(generic_hypermatrix((2, 2)), 2)) == ["x[1,2]*x[2,1] - x[1,1]*x[2,2]"]
    m = d_minors(G222, 2)
    # 18 flattening minors; the 6 slice minors each appear in two flattenings
    assert len(m) == 12
    assert span_dimension(m, 2) == 9
    assert d_minors(G222, 3) == []


def test_ideal_of_minors_2x2():
    I = ideal_of_minors(generic_hypermatrix((2, 2)), 2)
    assert isinstance(I, IdealBasis) and len(I.generators) == 1


def test_rank_one_constant_tensor_has_no_minors():
    rng = random.Random(7)
    R = PolyRing(["u"])
    for _ in range(5):
        vs = [[rng.randint(-5, 5) for _ in range(n)] for n in (2, 3, 2)]
        entries = [a * b * c for a in vs[0] for b in vs[1] for c in vs[2]]
        A = Hypermatrix((2, 3, 2), entries, R)
        assert d_minors(A, 2) == []


def test_section_minors_are_minors():
    for A in (G222, generic_hypermatrix((2, 3, 2)), generic_sym_hypermatrix(SymProfile((2, 2), (1, 2)))):
        full = set(d_minors(A, 2))
        for axis in range(1, A.ndim + 1):
            for v in range(1, A.shape[axis - 1] + 1):
                assert set(d_minors(section(A, axis, v), 2)) <= full


def test_json_round_trip():
    doc = json.dumps(G222.to_json())
    B = Hypermatrix.from_json(doc)
    assert B.shape == G222.shape
    assert names(B.entries) == names(G222.entries)


def test_classify_generic():
    rep = classify_weak_generic(generic_hypermatrix((3, 3)))
    assert rep.as_tuple() == (True, True, True)
    assert {s.kind for s in rep.sections} == {"trivial"}
    rep = classify_weak_generic(generic_hypermatrix((2, 3, 2)))
    assert rep.is_weak_generic and {s.kind for s in rep.sections} == {"generic"}


def test_classify_symmetric_sections():
    prof = SymProfile((2, 3), (1, 2))
    rep = classify_weak_generic(generic_sym_hypermatrix(prof))
    assert rep.is_weak_generic
    by_axis = {s.axis: s for s in rep.sections}
    assert by_axis[1].kind == "symmetric" and by_axis[1].detail["d"] == [2]
    assert by_axis[2].kind == "generic" and by_axis[2].detail["n"] == [2, 3]


def test_classify_rejects_non_variables():
    R = PolyRing(["a", "b"])
    a, b = R.gens
    with pytest.raises(NotVariableEntries):
        classify_weak_generic(Hypermatrix((2,), [a + b, a], R))
    with pytest.raises(NotVariableEntries):
        classify_weak_generic(Hypermatrix((2,), [2 * a, b], R))


def test_classify_no_unique_entry():
    R = PolyRing(["a", "b"])
    a, b = R.gens
    A = Hypermatrix((2, 2), [a, b, b, a], R)
    rep = classify_weak_generic(A)
    assert not rep.has_unique_entry and not rep.is_weak_generic


def test_classify_unrecognized_section():
    R = PolyRing(["a", "b", "c"])
    a, b, c = R.gens
    # a 2x2x2 whose sections repeat entries in a non-symmetric pattern
    A = Hypermatrix((2, 2, 2), [a, b, b, a, c, a, b, c], R)
    rep = classify_weak_generic(A)
    assert not rep.sections_prime
    assert any(s.kind == "unrecognized" for s in rep.sections)

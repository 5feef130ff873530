import sympy

from hyperminors.field import GF
from hyperminors.hypermatrix import d_minors
from hyperminors.linalg import span_dimension
from hyperminors.poly import monomials_of_degree
from hyperminors.symtensor import SymProfile, generic_sym_hypermatrix
from hyperminors.varieties import (
    graded_kernel,
    graded_kernel_dim,
    pullback_vanishes,
    segre_map,
    segre_veronese_map,
    veronese_map,
    verify_segre_veronese,
)


def sympy_kernel_dim(P, degree):
    """Independent oracle: sympy nullspace of the monomial pullback matrix."""
    mons = monomials_of_degree(P.ambient_ring.nvars, degree)
    imgs = [P.monomial_pullback(e) for e in mons]
    cols = sorted({e for im in imgs for e in im.terms})
    M = sympy.Matrix([[im.terms.get(c, 0) for c in cols] for im in imgs])
    return len(M.T.nullspace())


def test_targets():
    P = segre_map((2, 2))
    assert [str(t) for t in P.targets] == ["w[1,1]*w[2,1]", "w[1,1]*w[2,2]",
                                           "w[1,2]*w[2,1]", "w[1,2]*w[2,2]"]
    C = veronese_map(2, 3)
    assert [str(t) for t in C.targets] == ["w[1,1]^3", "w[1,1]^2*w[1,2]",
                                           "w[1,1]*w[1,2]^2", "w[1,2]^3"]
    SV = segre_veronese_map(SymProfile((2, 2), (1, 2)))
    assert len(SV.targets) == 6
    for t in SV.targets:
        assert SV.multidegree(t) == (1, 2)


def test_pullback_vanishes():
    prof = SymProfile((2,), (3,))
    P = segre_veronese_map(prof)
    assert pullback_vanishes(d_minors(generic_sym_hypermatrix(prof), 2), P) == (True, None)
    Q = veronese_map(2, 2)
    ok, (p, img) = pullback_vanishes([Q.ambient_ring.gen(0)], Q)
    assert not ok and str(img) == "w[1,1]^2"
    assert pullback_vanishes([], Q)[0]


def test_kernel_dims_against_sympy():
    cases = [(segre_map((2, 2)), 2, 1), (veronese_map(2, 3), 2, 3), (veronese_map(3, 2), 2, 6)]
    for P, deg, want in cases:
        assert graded_kernel_dim(P, deg) == want
        assert sympy_kernel_dim(P, deg) == want


def test_kernel_basis_vanishes_and_is_independent():
    P = veronese_map(2, 4)
    dim, basis = graded_kernel(P, 2)
    assert dim == 6 and len(basis) == 6
    assert pullback_vanishes(basis, P)[0]
    assert span_dimension(basis, 2) == 6


def test_no_linear_relations():
    for prof in (SymProfile((2, 2), (1, 1)), SymProfile((3,), (2,)), SymProfile((2, 3), (1, 2))):
        assert graded_kernel_dim(segre_veronese_map(prof), 1) == 0


def test_degree_two_kernel_times_variables_in_degree_three():
    P = segre_veronese_map(SymProfile((2, 2), (1, 2)))
    _, basis2 = graded_kernel(P, 2)
    _, basis3 = graded_kernel(P, 3)
    prods = [b * v for b in basis2 for v in P.ambient_ring.gens]
    assert pullback_vanishes(prods, P)[0]
    assert span_dimension(basis3 + prods, 3) == span_dimension(basis3, 3)


def test_verify_examples():
    rep = verify_segre_veronese(SymProfile((2, 2), (1, 1)))
    assert rep.passed and rep.check("degree2_equality").lhs == 1
    rep = verify_segre_veronese(SymProfile((2,), (3,)))
    assert rep.passed and rep.check("degree2_equality").rhs == 3
    rep = verify_segre_veronese(SymProfile((2, 2), (1, 2)), mode="groebner")
    assert rep.status == "pass"


def test_verify_over_prime_field():
    rep = verify_segre_veronese(SymProfile((2, 3), (1, 2)), field=GF())
    assert rep.passed and rep.field == "GF(2147483647)"

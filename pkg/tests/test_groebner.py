import pytest
import sympy

from hyperminors.groebner import (
    Budget,
    IdealBasis,
    ResourceBudgetExceeded,
    eliminate,
    ideal_equal,
    is_groebner,
    kernel_of_map,
    normal_form,
)
from hyperminors.hypermatrix import generic_hypermatrix, ideal_of_minors
from hyperminors.linalg import span_dimension
from hyperminors.poly import PolyRing, Polynomial
from hyperminors.varieties import degree_piece_rows, graded_kernel_dim, segre_map, veronese_map

R = PolyRing(["x", "y"])
x, y = R.gens


def _sympy_gb(polys, gens, order="grevlex"):
    syms = sympy.symbols(gens)
    loc = dict(zip(gens, syms))
    exprs = [sympy.sympify(str(p).replace("^", "**"), locals=loc) for p in polys]
    return sympy.groebner(exprs, *syms, order=order)


def test_small_basis_matches_sympy():
    I = IdealBasis(R, [x**2 - y, y**2])
    gb = I.groebner_basis()
    assert sorted(map(str, gb)) == sorted(["x^2 - y", "y^2"])
    ref = _sympy_gb([x**2 - y, y**2], ["x", "y"])
    assert len(ref.exprs) == len(gb)
    for g in gb:
        assert I.contains(g)
    assert is_groebner(gb, R)


def test_trivial_inputs():
    assert len(IdealBasis(R, [x, x]).generators) == 1
    assert IdealBasis(R, []).groebner_basis() == []
    assert normal_form(R.one, IdealBasis(R, [x])) == R.one


def test_generators_reduce_to_zero():
    S = PolyRing(["a", "b", "c"])
    a, b, c = S.gens
    I = IdealBasis(S, [a * b - c**2, a**2 - b * c, b**2 - a * c + c])
    gb = I.groebner_basis()
    for g in I.generators:
        assert I.normal_form(g).is_zero()
    assert is_groebner(gb, S)
    ref = _sympy_gb(I.generators, ["a", "b", "c"])
    ours = IdealBasis(S, gb)
    theirs = IdealBasis(S, [S.parse(str(e).replace("**", "^")) for e in ref.exprs])
    assert ideal_equal(ours, theirs)


def test_ideal_equal_examples():
    assert ideal_equal(IdealBasis(R, [x, y]), IdealBasis(R, [x + y, y]))
    assert not ideal_equal(IdealBasis(R, [x]), IdealBasis(R, [x**2]))


def test_cusp_elimination():
    S = PolyRing(["t", "x", "y"])
    t, X, Y = S.gens
    E = eliminate(IdealBasis(S, [X - t**2, Y - t**3]), ["t"])
    assert [str(g) for g in E.groebner] == ["x^3 - y^2"]


def test_eliminate_nothing():
    I = IdealBasis(R, [x**2 - y])
    assert ideal_equal(eliminate(I, []), I)


def test_segre_with_repeated_coordinate():
    S = PolyRing(["s", "t", "x", "y", "z", "w"])
    s, t, X, Y, Z, W = S.gens
    E = eliminate(IdealBasis(S, [X - s * t, Y - s**2, Z - t**2, W - s * t]), ["s", "t"])
    K = E.ring
    assert E.contains(K.parse("x - w"))
    assert E.contains(K.parse("x*w - y*z"))


def test_kernel_examples():
    cubic = veronese_map(2, 3)
    K = kernel_of_map(cubic.targets, cubic.ambient_ring)
    assert len([g for g in K.groebner if g.degree() == 2]) == 3
    conic = veronese_map(2, 2)
    K = kernel_of_map(conic.targets, conic.ambient_ring)
    assert len(K.groebner) == 1 and K.groebner[0].degree() == 2
    one = PolyRing(["x1"])
    P = PolyRing(["w1"])
    assert kernel_of_map([P.gen(0)], one).groebner == []


def test_segre_minors_equal_kernel():
    A = generic_hypermatrix((2, 2))
    P = segre_map((2, 2))
    K = kernel_of_map(P.targets, P.ambient_ring)
    I = ideal_of_minors(A, 2)
    # both registries list the entries in row-major order
    assert ideal_equal(I, IdealBasis(I.ring, [Polynomial(I.ring, g.terms) for g in K.groebner]))


def test_kernel_agrees_with_graded_oracle():
    P = veronese_map(2, 4)
    K = kernel_of_map(P.targets, P.ambient_ring)
    for deg in (1, 2, 3):
        piece = list(degree_piece_rows(K.groebner, deg))
        dim = span_dimension(piece, deg) if piece else 0
        assert dim == graded_kernel_dim(P, deg)


def test_budget_exhaustion_raises():
    P = veronese_map(3, 3)
    with pytest.raises(ResourceBudgetExceeded):
        kernel_of_map(P.targets, P.ambient_ring, Budget(max_pairs=3))


def test_determinism():
    S = PolyRing(["a", "b", "c"])
    a, b, c = S.gens
    gens = [a * b - c**2, a**2 - b * c, b**2 - a * c]
    assert IdealBasis(S, gens).groebner_basis() == IdealBasis(S, list(reversed(gens))).groebner_basis()

import random
from fractions import Fraction

import pytest
import sympy

from hyperminors.field import GF, QQ
from hyperminors.hypermatrix import flatten, generic_hypermatrix
from hyperminors.linalg import (
    InhomogeneousInput,
    NonConstantEntry,
    bareiss_rank,
    coefficient_rows,
    exact_rank,
    left_kernel,
    span_dimension,
)
from hyperminors.poly import FormMatrix, PolyRing


def test_rank_examples():
    assert exact_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert exact_rank([[0] * 5, [0] * 5]) == 0
    R = PolyRing(["x"])
    with pytest.raises(NonConstantEntry):
        exact_rank(FormMatrix([[R.gen("x")]]))


def test_span_examples():
    R = PolyRing(["x", "y"])
    x, y = R.gens
    assert span_dimension([x**2, x**2, y**2], 2) == 2
    assert span_dimension([], 2) == 0
    with pytest.raises(InhomogeneousInput):
        span_dimension([x**2 + y], 2)


def test_raw_minors_of_2x2x2_span_nine():
    # all 18 flattening minors, before any dedup
    A = generic_hypermatrix((2, 2, 2))
    raw = []
    for J1 in ((1,), (1, 2), (1, 3)):
        raw += flatten(A, J1).matrix.minors(2)
    assert len(raw) == 18
    rows, _ = coefficient_rows(raw, 2)
    width = 36  # quadrics in 8 variables
    dense = [[r.get(c, 0) for c in range(width)] for r in rows]
    assert exact_rank(dense) == 9
    assert sympy.Matrix(dense).rank() == 9


def test_rank_agrees_with_sympy_and_prime():
    rng = random.Random(3)
    for _ in range(20):
        nr, nc = rng.randint(1, 12), rng.randint(1, 12)
        r = rng.randint(0, min(nr, nc))
        # product of random factors has rank <= r
        U = [[rng.randint(-4, 4) for _ in range(r)] for _ in range(nr)]
        V = [[rng.randint(-4, 4) for _ in range(nc)] for _ in range(r)]
        M = [[sum(U[i][k] * V[k][j] for k in range(r)) for j in range(nc)] for i in range(nr)]
        expected = sympy.Matrix(M).rank() if M and M[0] else 0
        assert bareiss_rank(M) == expected
        assert exact_rank(M, GF()) == expected


def test_left_kernel():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {1: 1}]
    ker = left_kernel(rows, QQ)
    assert len(ker) == 1
    v = ker[0]
    combo = {}
    for i, c in v.items():
        for j, a in rows[i].items():
            combo[j] = combo.get(j, 0) + c * a
    assert all(val == 0 for val in combo.values())


def test_fraction_rows():
    rows = [{0: Fraction(1, 2), 1: Fraction(1, 3)}, {0: 3, 1: 2}]
    assert exact_rank([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]) == 1
    assert len(left_kernel(rows)) == 1

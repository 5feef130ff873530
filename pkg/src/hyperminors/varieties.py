"""Segre, Veronese and Segre-Veronese parameterizations and their checks.

The graded kernel oracle computes, degree by degree, every form that vanishes
on a parameterized variety as the left nullspace of the matrix sending
ambient monomials to the coefficient vectors of their pullbacks.  It is pure
linear algebra and does not depend on the Groebner engine, so it serves as
the independent reference for the ideal-equality statements.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import QQ
from .groebner import Budget, IdealBasis, ResourceBudgetExceeded, ideal_equal, kernel_of_map
from .hypermatrix import d_minors
from .linalg import Echelon, left_kernel
from .poly import PolyRing, Polynomial, Substitution, monomials_of_degree
from .report import FAIL, INCONCLUSIVE, PASS, Check, Report
from .symtensor import SymProfile, canonical_indices, generic_sym_hypermatrix, sym_label

__all__ = [
    "Parameterization",
    "segre_map",
    "veronese_map",
    "segre_veronese_map",
    "pullback_vanishes",
    "graded_kernel",
    "graded_kernel_dim",
    "graded_span_dim",
    "degree_piece_rows",
    "verify_segre_veronese",
]


@dataclass
class Parameterization:
    """Ambient variables mapped to forms in a parameter ring."""

    param_ring: PolyRing
    ambient_ring: PolyRing
    targets: list  # aligned with ambient_ring variables
    groups: tuple = ()  # parameter indices per factor, when the map is multigraded

    def __post_init__(self):
        if len(self.targets) != self.ambient_ring.nvars:
            raise ValueError("one target per ambient variable is required")
        self._subst = Substitution(
            self.ambient_ring, dict(enumerate(self.targets)), self.param_ring
        )

    def target(self, var) -> Polynomial:
        return self.targets[self.ambient_ring.var_index(var)]

    def pullback(self, p: Polynomial) -> Polynomial:
        return self._subst(p)

    def monomial_pullback(self, e) -> Polynomial:
        return self._subst.monomial_image(tuple(e))

    def multidegree(self, p: Polynomial):
        """Multidegree of a monomial target with respect to ``groups``."""
        out = set()
        for e in p.terms:
            out.add(tuple(sum(e[i] for i in g) for g in self.groups))
        return out.pop() if len(out) == 1 else None


def segre_veronese_map(profile: SymProfile, field=QQ, name="x") -> Parameterization:
    """Monomial map ``x[B_1;...;B_t] -> prod_j prod_{i in B_j} w[j,i]``."""
    pnames, groups = [], []
    for j, nj in enumerate(profile.n, start=1):
        groups.append(tuple(range(len(pnames), len(pnames) + nj)))
        pnames.extend(f"w[{j},{i}]" for i in range(1, nj + 1))
    params = PolyRing(pnames, "degrevlex", field)
    cis = canonical_indices(profile)
    ambient = PolyRing([sym_label(ci, name) for ci in cis], "degrevlex", field)
    targets = []
    for ci in cis:
        e = [0] * params.nvars
        for g, blk in zip(groups, ci):
            for i in blk:
                e[g[i - 1]] += 1
        targets.append(params.monomial(tuple(e)))
    return Parameterization(params, ambient, targets, tuple(groups))


def segre_map(dims, field=QQ) -> Parameterization:
    return segre_veronese_map(SymProfile(tuple(dims), (1,) * len(dims)), field)


def veronese_map(n, d, field=QQ) -> Parameterization:
    return segre_veronese_map(SymProfile((n,), (d,)), field)


def pullback_vanishes(polys, P: Parameterization):
    """``(True, None)`` if every polynomial pulls back to zero, else the first witness."""
    for p in polys:
        img = P.pullback(p)
        if img:
            return False, (p, img)
    return True, None


def _pullback_rows(P: Parameterization, degree: int):
    mons = monomials_of_degree(P.ambient_ring.nvars, degree)
    index = {}
    rows = []
    for e in mons:
        img = P.monomial_pullback(e)
        row = {}
        for pe, c in img.terms.items():
            col = index.get(pe)
            if col is None:
                col = index[pe] = len(index)
            row[col] = c
        rows.append(row)
    return mons, rows


def graded_kernel_dim(P: Parameterization, degree: int) -> int:
    """Dimension of the degree-``degree`` forms vanishing on the image of ``P``."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    mons, rows = _pullback_rows(P, degree)
    ech = Echelon(P.ambient_ring.field)
    for r in rows:
        ech.add(r)
    return len(mons) - ech.rank


def graded_kernel(P: Parameterization, degree: int):
    """``(dimension, basis)`` of the degree-``degree`` kernel; basis in RREF."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    ring = P.ambient_ring
    mons, rows = _pullback_rows(P, degree)
    vecs = left_kernel(rows, ring.field)
    basis = [ring.from_dict({mons[i]: c for i, c in v.items()}) for v in vecs]
    return len(basis), basis


def degree_piece_rows(gens, degree: int):
    """Yield the products ``m * g`` spanning the degree-``degree`` piece of ``<gens>``."""
    for g in gens:
        dg = g.degree()
        if dg > degree:
            continue
        if dg == degree:
            yield g
            continue
        for m in monomials_of_degree(g.ring.nvars, degree - dg):
            yield g.mul_monomial(m)


def graded_span_dim(gens, degree: int, stop_at=None, field=None) -> int:
    """Dimension of the degree-``degree`` piece of the ideal generated by ``gens``.

    With ``stop_at`` the elimination ends as soon as that rank is reached
    (useful when an upper bound is already known).
    """
    gens = [g for g in gens if g]
    if not gens:
        return 0
    ech = Echelon(field or gens[0].ring.field)
    index = {}
    for p in degree_piece_rows(gens, degree):
        row = {}
        for e, c in p.terms.items():
            col = index.get(e)
            if col is None:
                col = index[e] = len(index)
            row[col] = c
        ech.add(row)
        if stop_at is not None and ech.rank >= stop_at:
            break
    return ech.rank


def _profile_json(profile: SymProfile):
    return {"n": list(profile.n), "d": list(profile.d)}


def verify_segre_veronese(profile: SymProfile, mode="linear-algebra", field=QQ,
                          budget: Budget | None = None) -> Report:
    """Check that the 2-minors of the generic (n, d)-symmetric hypermatrix cut out
    the Segre-Veronese variety.

    Checks: (a) every minor pulls back to zero; (b) degree-2 span equals the
    degree-2 kernel; (c) the degree-3 piece of the minor ideal equals the
    degree-3 kernel; (d) in ``groebner`` mode, equality of reduced Groebner
    bases with the elimination kernel (inconclusive if the budget runs out).
    """
    if mode not in ("linear-algebra", "groebner"):
        raise ValueError(f"unknown mode {mode!r}")
    A = generic_sym_hypermatrix(profile, field=field)
    P = segre_veronese_map(profile, field)
    minors = d_minors(A, 2)
    rep = Report("segre-veronese", _profile_json(profile), field=field.to_json())
    rep.extra["generators"] = len(minors)

    ok, witness = pullback_vanishes(minors, P)
    rep.checks.append(Check.truth(
        "pullback_vanishes", ok, len(minors), 0 if ok else str(witness[1]),
        note=None if ok else f"minor {witness[0]} survives"))

    k2 = graded_kernel_dim(P, 2)
    s2 = graded_span_dim(minors, 2)
    rep.checks.append(Check.compare("degree2_equality", s2, k2))

    k3 = graded_kernel_dim(P, 3)
    s3 = graded_span_dim(minors, 3, stop_at=k3)
    rep.checks.append(Check.compare("degree3_generation", s3, k3))

    if mode == "groebner":
        rep.checks.append(_groebner_check(A.ring, minors, P, budget))
    return rep


def _groebner_check(ring, gens, P: Parameterization, budget):
    budget = budget or Budget(max_seconds=120)
    try:
        K = kernel_of_map(P.targets, P.ambient_ring, budget)
        eq = ideal_equal(IdealBasis(ring, gens), K, budget)
    except ResourceBudgetExceeded as exc:
        return Check("groebner_equality", INCONCLUSIVE, None, None, note=str(exc))
    return Check("groebner_equality", PASS if eq else FAIL, eq, True,
                 note=f"kernel has {len(K.groebner)} Groebner elements")

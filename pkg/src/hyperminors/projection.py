"""Projections of Veronese varieties from codimension-2 schemes.

The scheme is never built as a set of points.  Its ideal is encoded by a
Hilbert-Burch matrix ``L`` with seeded pseudorandom entries: the maximal
minors ``F_j`` (degree t) and ``G_l`` (degree t+1) generate the ideal J, and
``J_d`` is spanned by ``z_h * w_i * F_j`` and ``z_h * G_l`` where ``z_h`` runs
over the monomials of degree d-t-1.  Coordinates:

* ``x[h;i,j]`` for ``z_h * w_i * F_j`` (h, j 1-based; i = 0..n matches ``w_i``)
* ``x[h,l]``   for ``z_h * G_l`` (only when 2k >= t)

Two coordinates ``x[b+e_i;h,j]`` and ``x[b+e_h;i,j]`` name the same form.
The quotient coordinates ``y[gamma;j]`` (one per product ``w^gamma F_j``)
merge them.

Maximal minors use signed cofactors, ``cof_c = (-1)^c det(L minus column c)``
with 0-based ``c``, so every row of ``L`` satisfies ``sum_c L[i][c] cof_c = 0``
without extra signs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb

from .field import QQ
from .groebner import Budget, IdealBasis, ResourceBudgetExceeded, ideal_equal, kernel_of_map
from .hypermatrix import Hypermatrix, d_minors
from .linalg import rref, sparse_rank, span_dimension
from .poly import FormMatrix, PolyRing, Polynomial, Substitution, dedup_polys, minor, monomials_of_degree
from .report import FAIL, INCONCLUSIVE, PASS, Check, Report
from .varieties import Parameterization, graded_kernel_dim, graded_span_dim, pullback_vanishes

log = logging.getLogger(__name__)

__all__ = [
    "InvalidProfile",
    "GenericityFailure",
    "DegenerateDegree",
    "NotRankOne",
    "ZeroMatrix",
    "SplitMix64",
    "ProjectionProfile",
    "HilbertBurch",
    "ProjectionModel",
    "build_hilbert_burch",
    "jd_spanning_set",
    "linear_relations",
    "identification_relations",
    "border_identities",
    "bordered_determinants",
    "relation_rank",
    "catalecticant",
    "build_A",
    "xm_cat_equations",
    "rank1_factor",
    "sample_point",
    "expected_jd_dim",
    "expected_relation_count",
    "plane_relation_count",
    "coordinate_count",
    "raw_variable_count",
    "verify_projection",
    "valid_profiles",
]

MAX_RESEEDS = 8
COEFF_RANGE = 9


class InvalidProfile(ValueError):
    pass


class GenericityFailure(RuntimeError):
    def __init__(self, msg, trail=()):
        super().__init__(msg)
        self.trail = list(trail)


class DegenerateDegree(ValueError):
    pass


class NotRankOne(ValueError):
    pass


class ZeroMatrix(ValueError):
    pass


class SplitMix64:
    """SplitMix64: 64-bit state, Weyl increment plus a two-round mixer.

    Chosen because the whole algorithm fits in four lines and produces the
    same stream on every platform.
    """

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = int(seed) & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` by rejection sampling."""
        span = hi - lo + 1
        limit = (1 << 64) - (1 << 64) % span
        while True:
            v = self.next_u64()
            if v < limit:
                return lo + v % span


@dataclass(frozen=True)
class ProjectionProfile:
    n: int
    d: int
    t: int
    k: int
    seed: int = 0
    field: object = QQ

    def __post_init__(self):
        n, d, t, k = self.n, self.d, self.t, self.k
        if n < 1:
            raise InvalidProfile(f"n must be at least 1, got {n}")
        if not 0 < t <= d - 2:
            raise InvalidProfile(f"need 0 < t <= d-2, got d={d}, t={t}")
        if not 0 <= k <= t:
            raise InvalidProfile(f"need 0 <= k <= t, got t={t}, k={k}")
        if self.s > comb(d, 2):
            raise InvalidProfile(f"s = {self.s} exceeds C(d,2) = {comb(d, 2)}")

    @property
    def s(self) -> int:
        return comb(self.t + 1, 2) + self.k

    @property
    def high_k(self) -> bool:
        return 2 * self.k >= self.t

    @property
    def case(self) -> str:
        return "HighK" if self.high_k else "LowK"

    @property
    def h(self) -> int:
        """Number of degree-(t+1) generators."""
        return 2 * self.k - self.t if self.high_k else 0

    @property
    def nF(self) -> int:
        return self.t - self.k + 1

    @property
    def u(self) -> int:
        return comb(self.n + self.d - self.t - 1, self.n)

    @property
    def r(self) -> int:
        return (self.n + 1) * self.nF + self.h

    def z_exponents(self):
        return monomials_of_degree(self.n + 1, self.d - self.t - 1)

    def beta_exponents(self):
        return monomials_of_degree(self.n + 1, self.d - self.t - 2)

    def with_seed(self, seed) -> "ProjectionProfile":
        return ProjectionProfile(self.n, self.d, self.t, self.k, seed, self.field)

    def to_json(self):
        return {"n": self.n, "d": self.d, "t": self.t, "k": self.k, "s": self.s, "case": self.case}


def valid_profiles(n=2, max_d=7):
    """All valid (d, t, k) for the given n with d <= max_d, as profiles with seed 0."""
    out = []
    for d in range(3, max_d + 1):
        for t in range(1, d - 1):
            for k in range(0, t + 1):
                if comb(t + 1, 2) + k <= comb(d, 2):
                    out.append(ProjectionProfile(n, d, t, k))
    return out


# closed-form counts


def raw_variable_count(p: ProjectionProfile) -> int:
    return p.u * (p.n + 1) * p.nF + p.u * p.h


def coordinate_count(p: ProjectionProfile) -> int:
    """Number of distinct forms ``w^gamma F_j``, ``z_h G_l`` spanning J_d."""
    return comb(p.n + p.d - p.t, p.n) * p.nF + comb(p.n + p.d - p.t - 1, p.n) * p.h


def expected_relation_count(p: ProjectionProfile) -> int:
    beta = comb(p.n + p.d - p.t - 2, p.n)
    if p.high_k:
        return p.k * beta
    return (p.t - 2 * p.k) * p.u + p.k * beta


def plane_relation_count(p: ProjectionProfile) -> int:
    """The binomial counts stated for the plane (n = 2)."""
    d, t, k = p.d, p.t, p.k
    if p.high_k:
        return k * comb(d - t, 2)
    return comb(d - t + 1, 2) * (t - 2 * k) + comb(d - t, 2) * k


def expected_jd_dim(p: ProjectionProfile) -> int:
    """dim J_d read off the Hilbert-Burch resolution of a generic scheme."""
    n, e = p.n, p.d - p.t

    def c(m):
        return comb(m + n, n) if m >= 0 else 0

    if p.high_k:
        return c(e) * p.nF + c(e - 1) * p.h - p.k * c(e - 2)
    return c(e) * p.nF - (p.t - 2 * p.k) * c(e - 1) - p.k * c(e - 2)


# Hilbert-Burch matrix


@dataclass
class HilbertBurch:
    L: FormMatrix
    F: list
    G: list
    profile: ProjectionProfile
    seed_used: int
    trail: list = dc_field(default_factory=list)

    @property
    def ring(self) -> PolyRing:
        return self.L.ring

    def entry_degree(self, i, c) -> int:
        p = self.profile
        if p.high_k:
            return 1 if c < p.h else 2
        return 2 if i < p.k else 1

    def cofactor(self, c) -> Polynomial:
        m = self.L
        cols = [j for j in range(m.ncols) if j != c]
        det = minor(m, range(m.nrows), cols)
        return -det if c % 2 else det

    def to_json(self):
        return {
            "L": [[str(e) for e in row] for row in self.L.entries],
            "F": [str(f) for f in self.F],
            "G": [str(g) for g in self.G],
            "seed_used": self.seed_used,
        }


def _param_ring(p: ProjectionProfile) -> PolyRing:
    return PolyRing([f"w{i}" for i in range(p.n + 1)], "degrevlex", p.field)


def _random_matrix(p: ProjectionProfile, seed: int) -> FormMatrix:
    ring = _param_ring(p)
    rng = SplitMix64(seed)
    nrows, ncols = (p.k, p.k + 1) if p.high_k else (p.t - p.k, p.t - p.k + 1)
    mons = {e: monomials_of_degree(p.n + 1, e) for e in (1, 2)}
    rows = []
    for i in range(nrows):
        row = []
        for c in range(ncols):
            if p.high_k:
                deg = 1 if c < p.h else 2
            else:
                deg = 2 if i < p.k else 1
            while True:
                coeffs = [rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in mons[deg]]
                if any(coeffs):
                    break
            row.append(ring.from_dict({e: c_ for e, c_ in zip(mons[deg], coeffs) if c_}))
        rows.append(row)
    return FormMatrix(rows, ring)


def _assemble(p: ProjectionProfile, seed: int) -> HilbertBurch:
    L = _random_matrix(p, seed)
    hb = HilbertBurch(L, [], [], p, seed)
    cof = [hb.cofactor(c) for c in range(L.ncols)]
    if p.high_k:
        hb.G = cof[:p.h]
        hb.F = cof[p.h:]
    else:
        hb.F = cof
    return hb


def _genericity_problem(hb: HilbertBurch) -> str | None:
    p = hb.profile
    if any(not f for f in hb.F) or any(not g for g in hb.G):
        return "a maximal minor vanishes"
    for f in hb.F:
        if not f.is_homogeneous(p.t):
            return "F is not homogeneous of degree t"
    for g in hb.G:
        if not g.is_homogeneous(p.t + 1):
            return "G is not homogeneous of degree t+1"
    if span_dimension(hb.F, p.t) != len(hb.F):
        return "F is linearly dependent"
    model = ProjectionModel(p, hb)
    if model.jd_dimension != expected_jd_dim(p):
        return f"dim J_d = {model.jd_dimension}, expected {expected_jd_dim(p)}"
    if not model.relation_rank[2]:
        return "relation matrix is not of maximal rank"
    return None


def build_hilbert_burch(profile: ProjectionProfile, max_retries: int = MAX_RESEEDS) -> HilbertBurch:
    """Seeded Hilbert-Burch matrix, reseeding with seed+1 while validation fails."""
    trail = []
    for attempt in range(max_retries + 1):
        seed = profile.seed + attempt
        hb = _assemble(profile, seed)
        problem = _genericity_problem(hb)
        if problem is None:
            hb.trail = trail
            return hb
        log.warning("seed %d rejected: %s; reseeding", seed, problem)
        trail.append({"seed": seed, "reason": problem})
    raise GenericityFailure(f"no generic matrix after {max_retries + 1} seeds", trail)


# the model: coordinates, spanning set, relations, hypermatrix


class ProjectionModel:
    """All constructions attached to one profile and one Hilbert-Burch matrix."""

    def __init__(self, profile: ProjectionProfile, hb: HilbertBurch | None = None):
        self.profile = profile
        self.hb = hb if hb is not None else build_hilbert_burch(profile)
        p = profile
        self.z_exps = p.z_exponents()
        self.z_index = {e: h for h, e in enumerate(self.z_exps)}
        self.betas = p.beta_exponents()
        names = []
        for h in range(p.u):
            for i in range(p.n + 1):
                for j in range(p.nF):
                    names.append(f"x[{h + 1};{i},{j + 1}]")
        for h in range(p.u):
            for l in range(p.h):
                names.append(f"x[{h + 1},{l + 1}]")
        self.ambient = PolyRing(names, "degrevlex", p.field)

    # coordinates

    def xt(self, h, i, j) -> int:
        """Index of x[h;i,j] (all 0-based)."""
        p = self.profile
        return (h * (p.n + 1) + i) * p.nF + j

    def xg(self, h, l) -> int:
        p = self.profile
        return p.u * (p.n + 1) * p.nF + h * p.h + l

    def shift(self, beta, i):
        e = list(beta)
        e[i] += 1
        return tuple(e)

    def _linear(self, coeffs: dict) -> Polynomial:
        ring = self.ambient
        f = ring.field
        terms = {}
        for idx, c in coeffs.items():
            c = f.convert(c)
            if f.is_zero(c):
                continue
            e = [0] * ring.nvars
            e[idx] = 1
            terms[tuple(e)] = c
        return Polynomial(ring, terms)

    @cached_property
    def _agens(self):
        return self.ambient.gens

    @cached_property
    def param_ring(self) -> PolyRing:
        return self.hb.ring

    @cached_property
    def targets(self) -> list:
        """Forms of degree d attached to each ambient coordinate, in ambient order."""
        p, ring = self.profile, self.param_ring
        ws = ring.gens
        out = []
        for h in range(p.u):
            z = ring.monomial(self.z_exps[h])
            for i in range(p.n + 1):
                zw = z * ws[i]
                for j in range(p.nF):
                    out.append(zw * self.hb.F[j])
        for h in range(p.u):
            z = ring.monomial(self.z_exps[h])
            for l in range(p.h):
                out.append(z * self.hb.G[l])
        return out

    @cached_property
    def parameterization(self) -> Parameterization:
        return Parameterization(self.param_ring, self.ambient, self.targets)

    @cached_property
    def jd(self) -> list:
        return list(zip(self.ambient.names, self.targets))

    @cached_property
    def jd_dimension(self) -> int:
        return span_dimension(self.targets, self.profile.d)

    # linear relations

    @staticmethod
    def _split_quadratic(e):
        idx = [i for i, a in enumerate(e) for _ in range(a)]
        return idx[0], idx[1]

    @cached_property
    def linear_relations(self) -> list:
        p, hb, f = self.profile, self.hb, self.profile.field
        L = hb.L
        out = []

        def add(acc, idx, c):
            acc[idx] = f.add(acc.get(idx, 0), f.convert(c))

        if p.high_k:
            for beta in self.betas:
                for i in range(p.k):
                    acc = {}
                    for r in range(p.h):
                        for e, c in L[i, r].terms.items():
                            l = e.index(1)
                            add(acc, self.xg(self.z_index[self.shift(beta, l)], r), c)
                    for q in range(p.nF):
                        for e, c in L[i, p.h + q].terms.items():
                            l, m = self._split_quadratic(e)
                            add(acc, self.xt(self.z_index[self.shift(beta, l)], m, q), c)
                    out.append(self._linear(acc))
            return out
        # rows k..t-k-1 are linear: one relation per z-monomial
        for beta in self.z_exps:
            h = self.z_index[beta]
            for i in range(p.k, p.t - p.k):
                acc = {}
                for c_ in range(p.nF):
                    for e, c in L[i, c_].terms.items():
                        add(acc, self.xt(h, e.index(1), c_), c)
                out.append(self._linear(acc))
        # quadratic rows: one relation per degree d-t-2 monomial
        for beta in self.betas:
            for j in range(p.k):
                acc = {}
                for c_ in range(p.nF):
                    for e, c in L[j, c_].terms.items():
                        l, m = self._split_quadratic(e)
                        add(acc, self.xt(self.z_index[self.shift(beta, l)], m, c_), c)
                out.append(self._linear(acc))
        return out

    @cached_property
    def identification_relations(self) -> list:
        p = self.profile
        out = []
        for beta in self.betas:
            for i in range(p.n + 1):
                for hh in range(i + 1, p.n + 1):
                    a = self.z_index[self.shift(beta, i)]
                    b = self.z_index[self.shift(beta, hh)]
                    for j in range(p.nF):
                        out.append(self._linear({self.xt(a, hh, j): 1, self.xt(b, i, j): -1}))
        return out

    def _rows(self, polys):
        rows = []
        for q in polys:
            rows.append({e.index(1): c for e, c in q.terms.items()})
        return rows

    @cached_property
    def relation_rank(self):
        """``(matrix, rank, is_maximal)`` for the emitted linear relations."""
        rows = self._rows(self.linear_relations)
        n = self.ambient.nvars
        dense = [[r.get(c, 0) for c in range(n)] for r in rows]
        rank = sparse_rank(rows, self.profile.field)
        return dense, rank, rank == len(rows)

    @cached_property
    def full_linear_rank(self) -> int:
        """Rank of the emitted relations together with the identifications."""
        rows = self._rows(self.linear_relations + self.identification_relations)
        return sparse_rank(rows, self.profile.field)

    @cached_property
    def identification_rank(self) -> int:
        return sparse_rank(self._rows(self.identification_relations), self.profile.field)

    # border-row identities

    def border_identities(self) -> list:
        """Expansions of the bordered determinants as sums ``w^b L[i][c] cof_c``.

        Every entry must be the zero polynomial.
        """
        p, hb = self.profile, self.hb
        ring = self.param_ring
        cof = hb.G + hb.F if p.high_k else hb.F
        out = []
        if p.high_k:
            plan = [(beta, i) for beta in self.betas for i in range(p.k)]
        else:
            plan = [(beta, i) for beta in self.z_exps for i in range(p.k, p.t - p.k)]
            plan += [(beta, j) for beta in self.betas for j in range(p.k)]
        for beta, i in plan:
            wb = ring.monomial(beta)
            total = ring.zero
            for c in range(hb.L.ncols):
                total = total + wb * hb.L[i, c] * cof[c]
            out.append(total)
        return out

    def bordered_determinants(self) -> list:
        """Literal determinants of ``L`` with row ``i`` repeated on top (one per row)."""
        L = self.hb.L
        out = []
        for i in range(L.nrows):
            M = FormMatrix([L.row(i)] + [L.row(r) for r in range(L.nrows)], L.ring)
            out.append(minor(M, range(M.nrows), range(M.ncols)))
        return out

    # catalecticant, X, hypermatrix A

    @cached_property
    def z_ring(self) -> PolyRing:
        names = ["z[" + ",".join(map(str, e)) + "]" for e in self.z_exps]
        return PolyRing(names, "degrevlex", self.profile.field)

    def catalecticant(self) -> FormMatrix:
        if self.profile.d - self.profile.t - 1 < 1:
            raise DegenerateDegree("d - t - 1 must be at least 1")
        zs = self.z_ring.gens
        rows = []
        for i in range(self.profile.n + 1):
            rows.append([zs[self.z_index[self.shift(b, i)]] for b in self.betas])
        return FormMatrix(rows, self.z_ring)

    def slot_var(self, h, slot) -> Polynomial:
        p = self.profile
        block = (p.n + 1) * p.nF
        if slot < block:
            i, j = divmod(slot, p.nF)
            return self._agens[self.xt(h, i, j)]
        return self._agens[self.xg(h, slot - block)]

    def X(self) -> FormMatrix:
        p = self.profile
        return FormMatrix([[self.slot_var(h, s) for s in range(p.r)] for h in range(p.u)], self.ambient)

    def build_A(self) -> Hypermatrix:
        p = self.profile
        entries = []
        for i in range(p.n + 1):
            for b in self.betas:
                h = self.z_index[self.shift(b, i)]
                for s in range(p.r):
                    entries.append(self.slot_var(h, s))
        return Hypermatrix((p.n + 1, len(self.betas), p.r), entries, self.ambient)

    def xm_cat_equations(self):
        p = self.profile
        xm = dedup_polys(self.X().minors(2))
        cat = []
        for s in range(p.r):
            rows = []
            for i in range(p.n + 1):
                rows.append([self.slot_var(self.z_index[self.shift(b, i)], s) for b in self.betas])
            cat.extend(FormMatrix(rows, self.ambient).minors(2))
        return xm, dedup_polys(cat)

    @cached_property
    def A_minors(self) -> list:
        return d_minors(self.build_A(), 2)

    # quotient by the linear relations

    @cached_property
    def quotient(self):
        """Coordinates of the linear span of the image.

        Returns ``(ring, to_quotient, parameterization)``: the ring of free
        coordinates, a substitution from ambient polynomials, and the map
        sending free coordinates to their forms of degree d.
        """
        p, f = self.profile, self.profile.field
        gammas = monomials_of_degree(p.n + 1, p.d - p.t)
        ynames = [f"y[{','.join(map(str, g))};{j + 1}]" for g in gammas for j in range(p.nF)]
        xnames = list(self.ambient.names[p.u * (p.n + 1) * p.nF:])
        yidx = {(g, j): a * p.nF + j for a, g in enumerate(gammas) for j in range(p.nF)}
        ny = len(ynames)

        def merged(idx):
            # ambient index -> merged coordinate index
            block = p.u * (p.n + 1) * p.nF
            if idx >= block:
                return ny + idx - block
            h, rest = divmod(idx, (p.n + 1) * p.nF)
            i, j = divmod(rest, p.nF)
            return yidx[(self.shift(self.z_exps[h], i), j)]

        rows = []
        for q in self.linear_relations:
            row = {}
            for e, c in q.terms.items():
                m = merged(e.index(1))
                row[m] = f.add(row.get(m, 0), c)
            rows.append({a: v for a, v in row.items() if not f.is_zero(v)})
        basis = rref(rows, f)
        pivots = {min(r): r for r in basis}
        names = ynames + xnames
        free = [a for a in range(len(names)) if a not in pivots]
        qring = PolyRing([names[a] for a in free], "degrevlex", f)
        pos = {a: k for k, a in enumerate(free)}
        gens = qring.gens

        def image_of(a):
            if a in pivots:
                out = qring.zero
                for b, c in pivots[a].items():
                    if b != a:
                        out = out - gens[pos[b]].scale(c)
                return out
            return gens[pos[a]]

        images = {}
        for idx in range(self.ambient.nvars):
            images[idx] = image_of(merged(idx))
        to_q = Substitution(self.ambient, images, qring)

        ring = self.param_ring
        forms = []
        for a in free:
            if a < ny:
                g, j = divmod(a, p.nF)
                forms.append(ring.monomial(gammas[g]) * self.hb.F[j])
            else:
                h, l = divmod(a - ny, p.h)
                forms.append(ring.monomial(self.z_exps[h]) * self.hb.G[l])
        P = Parameterization(ring, qring, forms)
        return qring, to_q, P

    @cached_property
    def quotient_kernel_dim2(self) -> int:
        return graded_kernel_dim(self.quotient[2], 2)

    # points

    def sample_point(self, w) -> dict:
        """Coordinates of the image of ``w`` (values in the coefficient field)."""
        vals = [t.evaluate(list(w)) for t in self.targets]
        return dict(zip(self.ambient.names, vals))

    def z_values(self, w) -> list:
        f = self.profile.field
        out = []
        for e in self.z_exps:
            v = f.one
            for wi, a in zip(w, e):
                for _ in range(a):
                    v = f.mul(v, f.convert(wi))
            out.append(v)
        return out


# module-level wrappers


def _model(hb: HilbertBurch, profile=None) -> ProjectionModel:
    return ProjectionModel(profile or hb.profile, hb)


def jd_spanning_set(hb: HilbertBurch, profile=None) -> list:
    return _model(hb, profile).jd


def linear_relations(hb: HilbertBurch, profile=None) -> list:
    return _model(hb, profile).linear_relations


def identification_relations(hb: HilbertBurch, profile=None) -> list:
    return _model(hb, profile).identification_relations


def border_identities(hb: HilbertBurch, profile=None) -> list:
    return _model(hb, profile).border_identities()


def bordered_determinants(hb: HilbertBurch, profile=None) -> list:
    return _model(hb, profile).bordered_determinants()


def relation_rank(hb: HilbertBurch, profile=None):
    return _model(hb, profile).relation_rank


def catalecticant(profile: ProjectionProfile) -> FormMatrix:
    if profile.d - profile.t - 1 < 1:
        raise DegenerateDegree("d - t - 1 must be at least 1")
    m = ProjectionModel.__new__(ProjectionModel)
    m.profile = profile
    m.z_exps = profile.z_exponents()
    m.z_index = {e: h for h, e in enumerate(m.z_exps)}
    m.betas = profile.beta_exponents()
    return m.catalecticant()


def build_A(profile: ProjectionProfile, hb: HilbertBurch | None = None) -> Hypermatrix:
    return ProjectionModel(profile, hb).build_A()


def xm_cat_equations(profile: ProjectionProfile, hb: HilbertBurch | None = None):
    return ProjectionModel(profile, hb).xm_cat_equations()


def sample_point(hb: HilbertBurch, w, profile=None) -> dict:
    return _model(hb, profile).sample_point(w)


def rank1_factor(Q: dict, profile: ProjectionProfile) -> list:
    """Recover the point ``a`` with ``X(Q)`` rows proportional to ``a``.

    ``Q`` maps ambient labels to field values.  The result is scaled so that
    the entry of the first nonzero row is 1.
    """
    f = profile.field
    p = profile
    rows = []
    for h in range(p.u):
        row = []
        for i in range(p.n + 1):
            for j in range(p.nF):
                row.append(f.convert(Q.get(f"x[{h + 1};{i},{j + 1}]", 0)))
        for l in range(p.h):
            row.append(f.convert(Q.get(f"x[{h + 1},{l + 1}]", 0)))
        rows.append(row)
    first = next((h for h, r in enumerate(rows) if any(not f.is_zero(v) for v in r)), None)
    if first is None:
        raise ZeroMatrix("X(Q) is the zero matrix")
    ref = rows[first]
    col = next(c for c, v in enumerate(ref) if not f.is_zero(v))
    a = []
    for h, r in enumerate(rows):
        ah = f.div(r[col], ref[col])
        for c, v in enumerate(r):
            if not f.is_zero(f.sub(v, f.mul(ah, ref[c]))):
                raise NotRankOne(f"row {h + 1} is not proportional to row {first + 1}")
        a.append(ah)
    return a


def projectively_equal(a, b, field=QQ) -> bool:
    """True if the vectors span the same line."""
    f = field
    ia = next((i for i, v in enumerate(a) if not f.is_zero(v)), None)
    ib = next((i for i, v in enumerate(b) if not f.is_zero(v)), None)
    if ia is None or ia != ib:
        return False
    return all(
        f.is_zero(f.sub(f.mul(x, b[ib]), f.mul(y, a[ia]))) for x, y in zip(a, b)
    )


# verification driver


def verify_projection(profile: ProjectionProfile, mode="linear-algebra",
                      budget: Budget | None = None, model: ProjectionModel | None = None) -> Report:
    """Run the checks behind the set-theoretic and ideal-theoretic statements.

    (a) pullbacks of XM, Cat, the linear relations and all 2-minors of A;
    containment of XM and Cat in the minors of A; border identities.
    (b) maximal rank of the relation matrix.
    (c) dimension audit against dim J_d.
    (d) degree-2 equality in the quotient by the linear relations, for the
    minors of A and for XM together with Cat.
    (e) Groebner equality (``groebner`` mode, smallest profiles only).
    """
    if mode not in ("linear-algebra", "groebner"):
        raise ValueError(f"unknown mode {mode!r}")
    m = model or ProjectionModel(profile)
    p, hb = profile, m.hb
    rep = Report("projection", p.to_json(), field=p.field.to_json(), seed=p.seed)
    rep.extra["seed_used"] = hb.seed_used
    if hb.trail:
        rep.extra["reseeds"] = hb.trail

    P = m.parameterization
    xm, cat = m.xm_cat_equations()
    minors = m.A_minors
    for name, polys in (("pullback_xm", xm), ("pullback_cat", cat),
                        ("pullback_linear", m.linear_relations),
                        ("pullback_identifications", m.identification_relations),
                        ("pullback_A_minors", minors)):
        ok, wit = pullback_vanishes(polys, P)
        rep.checks.append(Check.truth(name, ok, len(polys), 0,
                                      note=None if ok else f"{wit[0]} survives"))
    mset = set(minors)
    missing = [q for q in xm + cat if q not in mset]
    rep.checks.append(Check.truth("xm_cat_in_A_minors", not missing, len(xm) + len(cat),
                                  len(xm) + len(cat) - len(missing)))
    border = m.border_identities()
    rep.checks.append(Check.truth("border_identities", all(not b for b in border),
                                  len(border), sum(1 for b in border if not b)))

    _, rank, maximal = m.relation_rank
    rep.checks.append(Check.compare("relation_count", len(m.linear_relations),
                                    expected_relation_count(p)))
    rep.checks.append(Check.truth("relation_rank_maximal", maximal, rank, len(m.linear_relations)))

    jd_dim = m.jd_dimension
    audit = coordinate_count(p) - (m.full_linear_rank - m.identification_rank)
    rep.checks.append(Check.compare("dimension_audit", audit, jd_dim))
    rep.checks.append(Check.compare("raw_dimension_audit",
                                    raw_variable_count(p) - m.full_linear_rank, jd_dim))
    formula = comb(p.d + 2, 2) - p.s if p.n == 2 else expected_jd_dim(p)
    rep.checks.append(Check.compare("jd_dimension", jd_dim, formula))

    rep.checks.append(_degree2_check(m))
    rep.checks.append(_xm_cat_span_check(m))
    rep.checks.append(_rank1_roundtrip(m))
    if mode == "groebner":
        rep.checks.append(_projection_groebner(m, budget))
    return rep


def _degree2_check(m: ProjectionModel) -> Check:
    qring, to_q, _ = m.quotient
    k2 = m.quotient_kernel_dim2
    images = [to_q(q) for q in m.A_minors]
    s2 = graded_span_dim(images, 2, stop_at=k2, field=qring.field)
    return Check.compare("degree2_equality", s2, k2,
                         note=f"{qring.nvars} quotient coordinates")


def _xm_cat_span_check(m: ProjectionModel) -> Check:
    # XM and Cat alone already fill the degree-2 kernel modulo the relations
    qring, to_q, _ = m.quotient
    k2 = m.quotient_kernel_dim2
    xm, cat = m.xm_cat_equations()
    images = [to_q(q) for q in xm + cat]
    s2 = graded_span_dim(images, 2, stop_at=k2, field=qring.field)
    return Check.compare("xm_cat_degree2_span", s2, k2)


def _rank1_roundtrip(m: ProjectionModel, samples=3) -> Check:
    p, f = m.profile, m.profile.field
    rng = SplitMix64(p.seed ^ 0x5EED)
    ok = 0
    tried = 0
    while tried < samples:
        w = [rng.randint(-20, 20) for _ in range(p.n + 1)]
        Q = m.sample_point(w)
        try:
            a = rank1_factor(Q, p)
        except ZeroMatrix:
            continue  # w lies on the base scheme
        tried += 1
        if projectively_equal(a, m.z_values(w), f):
            ok += 1
    return Check.compare("rank1_roundtrip", ok, samples)


GROEBNER_MAX_VARS = 12


def _projection_groebner(m: ProjectionModel, budget) -> Check:
    qring, to_q, Pq = m.quotient
    if qring.nvars > GROEBNER_MAX_VARS:
        return Check("groebner_equality", INCONCLUSIVE, None, None,
                     note=f"skipped: {qring.nvars} coordinates exceed {GROEBNER_MAX_VARS}")
    budget = budget or Budget(max_seconds=120)
    gens = dedup_polys(to_q(q) for q in m.A_minors)
    try:
        K = kernel_of_map(Pq.targets, qring, budget)
        eq = ideal_equal(IdealBasis(qring, gens), K, budget)
    except ResourceBudgetExceeded as exc:
        return Check("groebner_equality", INCONCLUSIVE, None, None, note=str(exc))
    return Check("groebner_equality", PASS if eq else FAIL, eq, True)

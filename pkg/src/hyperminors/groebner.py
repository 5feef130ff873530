"""Buchberger's algorithm, normal forms, elimination and kernels of ring maps.

Desk-scale engine: S-pairs are processed by the normal strategy (smallest
lcm degree, then smallest lcm in the monomial order) with the Gebauer-Moller
installation of Buchberger's product and chain criteria.  Output bases are
reduced and monic, hence unique for a given ideal and order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .poly import PolyRing, Polynomial, RegistryMismatch, dedup_polys, sort_polys

__all__ = [
    "ResourceBudgetExceeded",
    "Budget",
    "IdealBasis",
    "groebner_basis",
    "normal_form",
    "ideal_equal",
    "eliminate",
    "kernel_of_map",
    "s_polynomial",
    "is_groebner",
]


class ResourceBudgetExceeded(RuntimeError):
    """Raised when a Groebner computation exceeds its configured budget."""


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 200_000
    max_basis: int = 5_000
    max_seconds: float | None = None


DEFAULT_BUDGET = Budget()


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a, b):
    return all(not (x and y) for x, y in zip(a, b))


class _Engine:
    """Polynomials as plain dicts plus a cached order key."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.field = ring.field
        self._key = ring.key
        self._kc = {}

    def key(self, e):
        k = self._kc.get(e)
        if k is None:
            k = self._kc[e] = self._key(e)
        return k

    def lead(self, f: dict):
        return max(f, key=self.key)

    def monic(self, f: dict):
        F = self.field
        lm = self.lead(f)
        inv = F.inv(f[lm])
        return {e: F.mul(c, inv) for e, c in f.items()}

    def reduce(self, f: dict, basis, full=True):
        """Remainder of ``f`` on division by ``basis`` (list of (lm, poly-dict), monic)."""
        F = self.field
        p = dict(f)
        rem = {}
        key = self.key
        while p:
            e = max(p, key=key)
            c = p[e]
            for lm, g in basis:
                if _divides(lm, e):
                    shift = tuple(a - b for a, b in zip(e, lm))
                    for ge, gc in g.items():
                        t = tuple(a + b for a, b in zip(ge, shift))
                        v = F.sub(p.get(t, 0), F.mul(c, gc))
                        if F.is_zero(v):
                            p.pop(t, None)
                        else:
                            p[t] = v
                    break
            else:
                if not full:
                    rem.update(p)
                    return rem
                rem[e] = c
                del p[e]
        return rem

    def spoly(self, f, lf, g, lg):
        F = self.field
        m = _lcm(lf, lg)
        sf = tuple(a - b for a, b in zip(m, lf))
        sg = tuple(a - b for a, b in zip(m, lg))
        out = {}
        for e, c in f.items():
            out[tuple(a + b for a, b in zip(e, sf))] = c
        for e, c in g.items():
            t = tuple(a + b for a, b in zip(e, sg))
            v = F.sub(out.get(t, 0), c)
            if F.is_zero(v):
                out.pop(t, None)
            else:
                out[t] = v
        return out


def _buchberger(ring: PolyRing, polys, budget: Budget):
    eng = _Engine(ring)
    start = time.monotonic()
    f = []  # all polys ever added (monic dicts)
    lms = []
    G = []  # active indices
    B = set()

    def active_basis():
        return [(lms[i], f[i]) for i in G]

    def update(ih):
        nonlocal G, B
        mh = lms[ih]
        C = list(G)
        D = []
        while C:
            ig = C.pop()
            mg = lms[ig]
            lcm_hg = _lcm(mh, mg)

            def lcm_divides(ip):
                return _divides(_lcm(mh, lms[ip]), lcm_hg)

            if _disjoint(mh, mg) or (
                not any(lcm_divides(ipx) for ipx in C) and not any(lcm_divides(ipx) for ipx in D)
            ):
                D.append(ig)
        E = [ig for ig in D if not _disjoint(mh, lms[ig])]
        B_new = set()
        for ig1, ig2 in B:
            mca = _lcm(lms[ig1], lms[ig2])
            if (
                not _divides(mh, mca)
                or _lcm(lms[ig1], mh) == mca
                or _lcm(mh, lms[ig2]) == mca
            ):
                B_new.add((ig1, ig2))
        for ig in E:
            B_new.add((min(ih, ig), max(ih, ig)))
        G = [ig for ig in G if not _divides(mh, lms[ig])] + [ih]
        B = B_new

    def add(poly):
        p = eng.monic(poly)
        f.append(p)
        lms.append(eng.lead(p))
        if len(f) > budget.max_basis:
            raise ResourceBudgetExceeded(f"basis exceeded {budget.max_basis} elements")
        update(len(f) - 1)

    inputs = sorted(polys, key=lambda d: eng.key(eng.lead(d)))
    for p in inputs:
        r = eng.reduce(p, active_basis())
        if r:
            add(r)

    def pair_key(pr):
        m = _lcm(lms[pr[0]], lms[pr[1]])
        return (sum(m), eng.key(m), pr)

    processed = 0
    while B:
        pr = min(B, key=pair_key)
        B.discard(pr)
        processed += 1
        if processed > budget.max_pairs:
            raise ResourceBudgetExceeded(f"more than {budget.max_pairs} S-pairs")
        if budget.max_seconds is not None and time.monotonic() - start > budget.max_seconds:
            raise ResourceBudgetExceeded(f"exceeded {budget.max_seconds}s")
        i, j = pr
        s = eng.spoly(f[i], lms[i], f[j], lms[j])
        if not s:
            continue
        r = eng.reduce(s, active_basis())
        if r:
            add(r)

    # minimal, then reduced
    basis = [(lms[i], f[i]) for i in G]
    basis.sort(key=lambda t: eng.key(t[0]))
    minimal = []
    for k, (lm, g) in enumerate(basis):
        if not any(_divides(olm, lm) for olm, _ in minimal):
            minimal.append((lm, g))
    reduced = []
    for k, (lm, g) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        tail = {e: c for e, c in g.items() if e != lm}
        rt = eng.reduce(tail, others)
        rt[lm] = g[lm]
        reduced.append(rt)
    return [Polynomial(ring, r) for r in reduced]


class IdealBasis:
    """An ideal given by generators, with an optional cached reduced Groebner basis."""

    def __init__(self, ring: PolyRing, generators=()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring(g)
            if g.ring != ring:
                raise RegistryMismatch("generator outside the ideal's registry")
            gens.append(g)
        self.ring = ring
        self.generators = dedup_polys(gens)
        self.groebner = None
        self.groebner_order = None

    def __repr__(self):
        return f"IdealBasis({len(self.generators)} generators)"

    def __len__(self):
        return len(self.generators)

    def is_zero_ideal(self):
        return not self.generators

    def groebner_basis(self, budget: Budget = DEFAULT_BUDGET) -> list[Polynomial]:
        if self.groebner is None or self.groebner_order != self.ring.order:
            gb = _buchberger(self.ring, [g.terms for g in self.generators], budget)
            self.groebner = sort_polys(gb)
            self.groebner_order = self.ring.order
        return self.groebner

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def graded_piece(self, degree: int):
        """Spanning set of the degree-``degree`` part: generators times monomials."""
        from .poly import monomials_of_degree

        out = []
        for g in self.generators:
            if not g.is_homogeneous():
                raise ValueError("graded_piece needs homogeneous generators")
            dg = g.degree()
            if dg > degree:
                continue
            for m in monomials_of_degree(self.ring.nvars, degree - dg):
                out.append(g.mul_monomial(m))
        return out


def groebner_basis(ideal: IdealBasis, budget: Budget = DEFAULT_BUDGET) -> IdealBasis:
    """Compute (and cache) the reduced Groebner basis; returns ``ideal`` itself."""
    ideal.groebner_basis(budget)
    return ideal


def normal_form(p: Polynomial, ideal: IdealBasis, budget: Budget = DEFAULT_BUDGET) -> Polynomial:
    if p.ring != ideal.ring:
        raise RegistryMismatch("polynomial and ideal live in different registries")
    gb = ideal.groebner_basis(budget)
    eng = _Engine(ideal.ring)
    basis = [(eng.lead(g.terms), g.terms) for g in gb]
    return Polynomial(ideal.ring, eng.reduce(p.terms, basis))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    eng = _Engine(f.ring)
    fm, gm = eng.monic(f.terms), eng.monic(g.terms)
    return Polynomial(f.ring, eng.spoly(fm, eng.lead(fm), gm, eng.lead(gm)))


def is_groebner(polys, ring: PolyRing | None = None) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    polys = [p for p in polys if p]
    if not polys:
        return True
    ring = ring or polys[0].ring
    eng = _Engine(ring)
    basis = []
    for p in polys:
        m = eng.monic(p.terms)
        basis.append((eng.lead(m), m))
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            s = eng.spoly(basis[a][1], basis[a][0], basis[b][1], basis[b][0])
            if s and eng.reduce(s, basis):
                return False
    return True


def ideal_equal(I: IdealBasis, J: IdealBasis, budget: Budget = DEFAULT_BUDGET) -> bool:
    """Equality of ideals via reduced Groebner bases under degrevlex."""
    if I.ring.names != J.ring.names or I.ring.field != J.ring.field:
        raise RegistryMismatch("ideals live in different registries")
    ring = I.ring if I.ring.order == "degrevlex" else I.ring.with_order("degrevlex")
    A = IdealBasis(ring, [ring.from_dict(g.terms) for g in I.generators])
    B = IdealBasis(ring, [ring.from_dict(g.terms) for g in J.generators])
    return set(A.groebner_basis(budget)) == set(B.groebner_basis(budget))


def _permute(p: Polynomial, ring: PolyRing, perm) -> Polynomial:
    return Polynomial(ring, {tuple(e[i] for i in perm): c for e, c in p.terms.items()})


def eliminate(ideal: IdealBasis, drop, budget: Budget = DEFAULT_BUDGET) -> IdealBasis:
    """Generators of ``ideal`` intersected with the subring free of ``drop``.

    The result lives in a degrevlex registry on the retained variables (in
    their original relative order) and carries its reduced Groebner basis.
    """
    ring = ideal.ring
    drop_idx = sorted({ring.var_index(v) for v in drop})
    keep_idx = [i for i in range(ring.nvars) if i not in set(drop_idx)]
    kept_ring = PolyRing([ring.names[i] for i in keep_idx], "degrevlex", ring.field)
    if not drop_idx:
        out = IdealBasis(kept_ring, [kept_ring.from_dict(g.terms) for g in ideal.generators])
        return out
    perm = drop_idx + keep_idx
    block = PolyRing([ring.names[i] for i in perm], ("block", len(drop_idx)), ring.field)
    work = IdealBasis(block, [_permute(g, block, perm) for g in ideal.generators])
    gb = work.groebner_basis(budget)
    k = len(drop_idx)
    kept = []
    for g in gb:
        if all(not any(e[:k]) for e in g.terms):
            kept.append(Polynomial(kept_ring, {e[k:]: c for e, c in g.terms.items()}))
    out = IdealBasis(kept_ring, kept)
    out.groebner = sort_polys(kept)
    out.groebner_order = "degrevlex"
    return out


def kernel_of_map(targets, ambient: PolyRing, budget: Budget = DEFAULT_BUDGET) -> IdealBasis:
    """Ideal of polynomial relations among ``targets``.

    ``targets`` maps each ambient variable (name or index) to a polynomial in
    a common parameter ring, or is a sequence aligned with ``ambient``.
    Targets must be homogeneous of one common degree.
    """
    if isinstance(targets, dict):
        imgs = [None] * ambient.nvars
        for k, v in targets.items():
            imgs[ambient.var_index(k)] = v
    else:
        imgs = list(targets)
    if len(imgs) != ambient.nvars or any(v is None for v in imgs):
        raise ValueError("every ambient variable needs a target")
    params = imgs[0].ring
    if any(v.ring != params for v in imgs):
        raise RegistryMismatch("targets live in different parameter registries")
    degs = {v.degree() for v in imgs if v}
    if any(not v.is_homogeneous() for v in imgs) or len(degs) > 1:
        raise ValueError("targets must be homogeneous of a common degree")
    clash = set(params.names) & set(ambient.names)
    if clash:
        raise ValueError(f"parameter and ambient labels clash: {sorted(clash)}")
    big = PolyRing(params.names + ambient.names, ("block", params.nvars), ambient.field)
    npar = params.nvars
    gens = []
    for i, v in enumerate(imgs):
        x = [0] * big.nvars
        x[npar + i] = 1
        terms = {e + (0,) * ambient.nvars: big.field.neg(big.field.convert(c)) for e, c in v.terms.items()}
        terms[tuple(x)] = big.field.one
        gens.append(Polynomial(big, terms))
    elim = eliminate(IdealBasis(big, gens), range(npar), budget)
    ring = ambient if ambient.order == "degrevlex" else ambient.with_order("degrevlex")
    out = IdealBasis(ring, [Polynomial(ring, g.terms) for g in elim.generators])
    out.groebner = sort_polys(Polynomial(ring, g.terms) for g in elim.groebner)
    out.groebner_order = "degrevlex"
    return out

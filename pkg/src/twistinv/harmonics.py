"""Explicit invariant theory: basic invariants, harmonic module bases,
Gutkin products, discriminant matrices and well-generated structure.

An element of S (x) M* is a tuple of m polynomials, the coefficients on the
basis y_1..y_m of M* dual to the standard basis of M.  g acts by
(g f)(X) = f(g^-1 X) on S and by the inverse transpose on M*.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Optional, Sequence

import numpy as np

from .cyclo import Cyclotomic, RootOfUnity, cyc, lcm, roots_of_unity
from .groups import ReflectionCoset, ReflectionGroup, as_coset, untwisted
from .linalg import CycMatrix, rref_lists
from .molien import (TRIVIAL, VDUAL, V, FactorMismatch, ModuleRep, codegree_factors, module_factors,
                     molien_trace_series, n_of_module, psi_polynomial, v_factors)
from .polys import MultiPoly, monomials, pack


class HarmonicsError(ArithmeticError):
    pass


Element = tuple  # tuple of MultiPoly, one per basis vector of M*


# ----------------------------------------------------------------------------
# sparse echelon form


class Echelon:
    """Incremental row echelon form of sparse vectors {key: Cyclotomic}; pivot = largest key."""

    def __init__(self):
        self.rows: dict = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = {k: c for k, c in v.items() if c}
        bound = None
        while True:
            ks = [k for k in v if k in self.rows and (bound is None or k < bound)]
            if not ks:
                return v
            k = max(ks)
            c = v[k]
            for kk, cc in self.rows[k].items():
                t = v.get(kk)
                t = -c * cc if t is None else t - c * cc
                if t:
                    v[kk] = t
                else:
                    v.pop(kk, None)
            bound = k

    def add(self, v: dict) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        p = max(v)
        inv = v[p].inverse()
        self.rows[p] = {k: c * inv for k, c in v.items()}
        return True


def to_vec(elem: Element) -> dict:
    m = len(elem)
    out = {}
    for k, f in enumerate(elem):
        for key, c in f.terms.items():
            out[key * m + k] = c
    return out


# ----------------------------------------------------------------------------
# actions


def _forms(ginv_rows: Sequence[Sequence[Cyclotomic]], r: int) -> list[MultiPoly]:
    """Images g X_i = sum_j (g^-1)_{ij} X_j."""
    return [MultiPoly.linear(list(row), r) for row in ginv_rows]


def act(elem: Element, g: CycMatrix, M: ModuleRep, W: int) -> Element:
    """g . elem for g in <G, gamma>."""
    g = g.embed(W)
    ginv = g.inverse()
    forms = _forms(ginv.to_lists(), g.rows)
    rho_inv = M.of_matrix(ginv, W).to_lists()
    comps = [f.substitute_linear(forms) if f else f for f in elem]
    m = len(elem)
    out = []
    for l in range(m):
        acc = MultiPoly(g.rows)
        for k in range(m):
            c = rho_inv[k][l]
            if c and comps[k]:
                acc = acc + comps[k].scale(c)
        out.append(acc)
    return tuple(out)


def act_poly(f: MultiPoly, g: CycMatrix, W: int) -> MultiPoly:
    return act((f,), g, TRIVIAL, W)[0]


def is_invariant(elem: Element, G: ReflectionGroup, M: ModuleRep, W: int) -> bool:
    return all(_elem_eq(act(elem, s, M, W), elem) for s in G.generators)


def _elem_eq(a: Element, b: Element) -> bool:
    return all(x == y for x, y in zip(a, b))


# ----------------------------------------------------------------------------
# invariant spaces


def _rho_table(G: ReflectionGroup, M: ModuleRep, W: int) -> list:
    key = ("rho_rows", str(M), W)
    got = G.cache.get(key)
    if got is None:
        got = [(G.stack_at(W)[i].to_lists(), M.of_matrix(G.stack_at(W)[i], W).to_lists())
               for i in range(G.order)]
        G.cache[key] = got
    return got


def molien_dims(G, M: ModuleRep, D: int) -> list[int]:
    """dim (S_d (x) M*)^G for d <= D."""
    C = as_coset(G)
    key = ("molien_dims", str(M))
    got = C.cache.get(key)
    if got is None or len(got) <= D:
        s = molien_trace_series(untwisted(C.group), M, 0, max(D, 2 * len(got or []))).coeffs
        got = []
        for c in s:
            f = c.to_fraction()
            if f.denominator != 1:
                raise HarmonicsError("non-integral Molien coefficient")
            got.append(int(f))
        C.cache[key] = got
    return got[: D + 1]


def _candidate_forms(r: int, W: int, seed: int):
    one, zero = Cyclotomic.one(W), Cyclotomic.zero(W)
    unit = [[one if i == j else zero for i in range(r)] for j in range(r)]
    yield from unit
    for i, j in combinations(range(r), 2):
        yield [a + b for a, b in zip(unit[i], unit[j])]
        yield [a - b for a, b in zip(unit[i], unit[j])]
    for t in range(2, 6):
        yield [Cyclotomic.rational(t ** i) for i in range(r)]
    rng = random.Random(seed)
    while True:
        yield [Cyclotomic.rational(rng.randint(-5, 5)) for _ in range(r)]


def _reynolds_power(G: ReflectionGroup, M: ModuleRep, ell: Sequence[Cyclotomic], d: int, W: int) -> list[Element]:
    """For each k, the average over G of g.(ell^d (x) y_k), grouped by the orbit of ell."""
    r = G.r
    m = M.dim(r)
    table = _rho_table(G, M, W)
    acc: dict = {}
    for h_rows, rho in table:
        # ell h^-1 as g ranges over G equals ell h as h ranges over G
        phi = tuple(_dot_col(ell, h_rows, j) for j in range(r))
        key = tuple((c.num, c.den) for c in phi)
        got = acc.get(key)
        if got is None:
            acc[key] = (phi, [list(row) for row in rho])
        else:
            s = got[1]
            for a in range(m):
                for b in range(m):
                    if rho[a][b]:
                        s[a][b] = s[a][b] + rho[a][b]
    mons = monomials(r, d)
    keys = [pack(a) for a in mons]
    mult = [factorial(d) // _prod_fact(a) for a in mons]
    comps = [[dict() for _ in range(m)] for _ in range(m)]
    for phi, s in acc.values():
        pw = [[Cyclotomic.one(W)] for _ in range(r)]
        for i in range(r):
            for _ in range(d):
                pw[i].append(pw[i][-1] * phi[i])
        coeffs = []
        for a, mu in zip(mons, mult):
            c = Cyclotomic.rational(mu)
            for i, e in enumerate(a):
                if e:
                    c = c * pw[i][e]
                    if not c:
                        break
            coeffs.append(c)
        for k in range(m):
            for l in range(m):
                w = s[k][l]
                if not w:
                    continue
                tgt = comps[k][l]
                for key, c in zip(keys, coeffs):
                    if c:
                        t = tgt.get(key)
                        tgt[key] = c * w if t is None else t + c * w
    scale = Fraction(1, G.order)
    return [tuple(MultiPoly(r, {kk: v * scale for kk, v in comps[k][l].items()}) for l in range(m))
            for k in range(m)]


def _dot_col(ell, rows, j):
    acc = Cyclotomic.zero(ell[0].N)
    for i, c in enumerate(ell):
        if c and rows[i][j]:
            acc = acc + c * rows[i][j]
    return acc


def _prod_fact(a) -> int:
    out = 1
    for e in a:
        out *= factorial(e)
    return out


def invariant_space(G, M: ModuleRep, d: int, W: Optional[int] = None) -> list[Element]:
    """A basis of (S_d (x) M*)^G from Reynolds images of powers of linear forms."""
    C = as_coset(G)
    G = C.group
    W = W or C.N
    key = ("invariant_space", str(M), d, W)
    got = G.cache.get(key)
    if got is not None:
        return got
    target = molien_dims(C, M, d)[d]
    out: list = []
    ech = Echelon()
    if target:
        tries = 0
        for ell in _candidate_forms(G.r, W, seed=d):
            for elem in _reynolds_power(G, M, ell, d, W):
                if ech.add(to_vec(elem)):
                    out.append(elem)
            tries += 1
            if len(out) >= target:
                break
            if tries > 40 + 4 * target:
                raise HarmonicsError(f"invariant space of degree {d}: rank {len(out)} < {target}")
    if len(out) != target:
        raise HarmonicsError(f"invariant space of degree {d}: rank {len(out)} != Molien dimension {target}")
    G.cache[key] = out
    return out


# ----------------------------------------------------------------------------
# gamma-eigen complements


def _gamma_projections(elem: Element, coset: ReflectionCoset, M: ModuleRep, W: int) -> dict:
    """{eps: projection of elem onto the eps-eigenspace of gamma}."""
    n = coset.gamma_order
    g = coset.gamma.embed(W)
    orbit = [elem]
    for _ in range(n - 1):
        orbit.append(act(orbit[-1], g, M, W))
    out = {}
    for eps in roots_of_unity(n):
        acc = None
        for j, e in enumerate(orbit):
            c = (eps ** (-j)).to_cyclotomic(W) * Fraction(1, n)
            term = tuple(f.scale(c) for f in e)
            acc = term if acc is None else tuple(a + b for a, b in zip(acc, term))
        if any(acc):
            out[eps] = acc
    return out


def _select_complement(candidates: Sequence[Element], ech: Echelon, need: int, coset, M, W) -> list:
    """gamma-eigenvectors in span(candidates), independent modulo ech, `need` of them."""
    picked = []
    if need <= 0:
        return picked
    for elem in candidates:
        for eps, proj in sorted(_gamma_projections(elem, coset, M, W).items(), key=lambda t: t[0].sort_key()):
            if ech.add(to_vec(proj)):
                picked.append((eps, proj))
                if len(picked) == need:
                    return picked
    raise HarmonicsError(f"found {len(picked)} of {need} complement vectors")


# ----------------------------------------------------------------------------
# basic invariants


@dataclass
class BasicInvariants:
    polys: list          # MultiPoly
    degrees: list
    eps: list            # RootOfUnity
    jacobian_scalar: Optional[Cyclotomic] = None

    def __len__(self):
        return len(self.polys)

    def pairs(self) -> list[tuple[int, RootOfUnity]]:
        return list(zip(self.degrees, self.eps))


def _p_monomials(degrees: Sequence[int], D: int) -> list[tuple[int, ...]]:
    out = []

    def rec(i, rest, acc):
        if i == len(degrees):
            if rest == 0:
                out.append(tuple(acc))
            return
        for a in range(rest // degrees[i] + 1):
            rec(i + 1, rest - a * degrees[i], acc + [a])

    if degrees:
        rec(0, D, [])
    elif D == 0:
        out.append(())
    return out


class PProducts:
    """Memoized products of basic invariants."""

    def __init__(self, polys: Sequence[MultiPoly], nvars: int):
        self.polys = list(polys)
        self.memo = {tuple(0 for _ in polys): MultiPoly.constant(1, nvars)}

    def get(self, a: tuple) -> MultiPoly:
        got = self.memo.get(a)
        if got is None:
            i = next(k for k, e in enumerate(a) if e)
            b = a[:i] + (a[i] - 1,) + a[i + 1:]
            got = self.get(b) * self.polys[i]
            self.memo[a] = got
        return got


def basic_invariants(coset) -> BasicInvariants:
    coset = as_coset(coset)
    got = coset.cache.get("basic_invariants")
    if got is not None:
        return got
    G, W, r = coset.group, coset.N, coset.r
    polys, degs, eps = [], [], []
    prod = 1
    d = 0
    bound = max(d for d, _ in v_factors(coset).with_degrees())
    while prod < G.order or len(polys) < r:
        d += 1
        if d > bound:
            raise HarmonicsError(f"no complete set of basic invariants up to degree {bound}")
        inv = [e[0] for e in invariant_space(coset, TRIVIAL, d, W)]
        if not inv:
            continue
        ech = Echelon()
        pp = PProducts(polys, r)
        for a in _p_monomials(degs, d):
            ech.add(to_vec((pp.get(a),)))
        need = len(inv) - len(ech)
        for e, (p,) in _select_complement([(f,) for f in inv], ech, need, coset, TRIVIAL, W):
            polys.append(p)
            degs.append(d)
            eps.append(e)
            prod *= d
    if prod != G.order or len(polys) != r:
        raise HarmonicsError(f"degrees {degs} do not multiply to |G| = {G.order}")
    bi = BasicInvariants(polys, degs, eps)
    J = jacobian(polys, r)
    lam = J.proportional_to(psi_polynomial(coset, V))
    if lam is None or not lam:
        raise HarmonicsError("Jacobian of the basic invariants is not a multiple of Psi_V")
    bi.jacobian_scalar = lam
    coset.cache["basic_invariants"] = bi
    return bi


def jacobian(polys: Sequence[MultiPoly], r: int) -> MultiPoly:
    return poly_det([[p.derivative(j) for j in range(r)] for p in polys], r)


def poly_det(rows: Sequence[Sequence[MultiPoly]], nvars: int) -> MultiPoly:
    """Determinant by Laplace expansion along rows with memoized minors."""
    n = len(rows)
    memo: dict = {}

    def minor(i: int, cols: tuple) -> MultiPoly:
        if i == n:
            return MultiPoly.constant(1, nvars)
        got = memo.get(cols)
        if got is not None:
            return got
        acc = MultiPoly(nvars)
        for pos, c in enumerate(cols):
            f = rows[i][c]
            if not f:
                continue
            sub = minor(i + 1, cols[:pos] + cols[pos + 1:])
            if sub:
                t = f * sub
                acc = acc + t if pos % 2 == 0 else acc - t
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(n)))


# ----------------------------------------------------------------------------
# harmonic module bases


@dataclass
class HarmonicBasis:
    module: str
    elements: list        # list of (m, eps, Element)

    def multiset(self) -> list:
        return sorted((m, e.sort_key()) for m, e, _ in self.elements)

    def matrix(self) -> list[list[MultiPoly]]:
        return [list(el) for _, _, el in self.elements]


def harmonic_module_basis(coset, M: ModuleRep) -> HarmonicBasis:
    coset = as_coset(coset)
    key = ("harmonic_basis", str(M))
    got = coset.cache.get(key)
    if got is not None:
        return got
    W, r = coset.N, coset.r
    m = M.dim(r)
    bi = basic_invariants(coset)
    pp = PProducts(bi.polys, r)
    chosen: list = []
    NM = n_of_module(coset, M)
    d = -1
    while len(chosen) < m:
        d += 1
        if d > NM:
            raise HarmonicsError(f"{M}: only {len(chosen)} of {m} generators up to degree {NM}")
        inv = invariant_space(coset, M, d, W)
        if not inv:
            continue
        ech = Echelon()
        for mj, _, u in chosen:
            for a in _p_monomials(bi.degrees, d - mj):
                q = pp.get(a)
                ech.add(to_vec(tuple(q * f for f in u)))
        need = len(inv) - len(ech)
        for e, u in _select_complement(inv, ech, need, coset, M, W):
            chosen.append((d, e, u))
    hb = HarmonicBasis(str(M), chosen)
    if sum(mj for mj, _, _ in chosen) != NM:
        raise FactorMismatch(f"{M}: harmonic exponents sum to {sum(c[0] for c in chosen)}, N(M) = {NM}")
    fs = module_factors(coset, M)
    if hb.multiset() != sorted(fs.multiset()):
        raise FactorMismatch(f"{M}: harmonic basis {hb.multiset()} differs from Molien factors {fs.multiset()}")
    coset.cache[key] = hb
    return hb


# ----------------------------------------------------------------------------
# Gutkin and discriminants


def gutkin_check(G, M: ModuleRep) -> Cyclotomic:
    """lambda with (wedge of the harmonic basis) = lambda * Psi_M."""
    C = as_coset(G)
    hb = harmonic_module_basis(C, M)
    det = poly_det(hb.matrix(), C.r)
    psi = psi_polynomial(C, M)
    lam = det.proportional_to(psi)
    if lam is None or not lam:
        raise HarmonicsError(f"{M}: wedge product is not a nonzero multiple of Psi_M")
    return lam


@dataclass
class DiscReport:
    module: str
    matrix: list          # list of rows of MultiPoly
    row_factors: list     # (m, eps) for M
    col_factors: list     # (m, eps) for M*
    delta: MultiPoly
    scalar: Cyclotomic    # Delta_M = scalar * Psi_M Psi_M*


def disc_matrix(coset, M: ModuleRep) -> DiscReport:
    coset = as_coset(coset)
    key = ("disc", str(M))
    got = coset.cache.get(key)
    if got is not None:
        return got
    G, W, r = coset.group, coset.N, coset.r
    Md = ModuleRep.dual(M) if M.kind != "dual" else M.args[0]
    A = harmonic_module_basis(coset, M)
    B = harmonic_module_basis(coset, Md)
    g = coset.gamma.embed(W)
    mat = []
    for mi, ei, u in A.elements:
        row = []
        for mj, ej, w in B.elements:
            entry = MultiPoly(r)
            for a, b in zip(u, w):
                if a and b:
                    entry = entry + a * b
            if not is_invariant((entry,), G, TRIVIAL, W):
                raise HarmonicsError("pairing entry is not invariant")
            if act_poly(entry, g, W) != entry.scale((ei * ej).to_cyclotomic(W)):
                raise HarmonicsError("gamma does not act on a pairing entry by eps_i eps_j")
            row.append(entry)
        mat.append(row)
    delta = poly_det(mat, r)
    target = psi_polynomial(coset, M) * psi_polynomial(coset, Md)
    lam = delta.proportional_to(target)
    if lam is None or not lam:
        raise HarmonicsError(f"{M}: det of the pairing matrix is not a nonzero multiple of Psi_M Psi_M*")
    rep = DiscReport(str(M), mat, [(m, e) for m, e, _ in A.elements], [(m, e) for m, e, _ in B.elements],
                     delta, lam)
    coset.cache[key] = rep
    return rep


def discriminant(G) -> MultiPoly:
    """prod over hyperplanes of L_H^{e_H}."""
    C = as_coset(G)
    got = C.group.cache.get("discriminant")
    if got is None:
        got = MultiPoly.constant(1, C.r)
        for H in C.group.arrangement:
            got = got * MultiPoly.linear(list(H.normal), C.r) ** H.e
        C.group.cache["discriminant"] = got
    return got


# ----------------------------------------------------------------------------
# expressing invariants in the basic invariants


def express_in_basics(f: MultiPoly, bi: BasicInvariants, check: bool = True) -> dict:
    """{exponent tuple a: c} with f = sum c P^a."""
    r = f.nvars
    if f.is_zero():
        return {}
    if not f.is_homogeneous():
        raise HarmonicsError("f is not homogeneous")
    D = f.degree
    pp = _pprod_cache(bi, r)
    mons = _p_monomials(bi.degrees, D)
    if not mons:
        raise HarmonicsError(f"no monomial in the basic invariants has degree {D}")
    polys = [pp.get(a) for a in mons]
    keys = sorted(set(f.terms).union(*[p.terms.keys() for p in polys]))
    W = lcm(max((c.N for c in f.terms.values()), default=1),
            max((c.N for p in polys for c in p.terms.values()), default=1))
    zero = Cyclotomic.zero(W)
    rows = [[cyc(p.terms.get(k, zero), W) for p in polys] + [cyc(f.terms.get(k, zero), W)] for k in keys]
    red, piv = rref_lists(rows, W, len(mons) + 1)
    if len(mons) in piv:
        raise HarmonicsError("f is not a polynomial in the basic invariants (not invariant?)")
    if len(piv) != len(mons):
        raise HarmonicsError("basic invariants are algebraically dependent")
    sol = {mons[p]: red[i][len(mons)] for i, p in enumerate(piv)}
    sol = {a: c for a, c in sol.items() if c}
    if check:
        acc = MultiPoly(r)
        for a, c in sol.items():
            acc = acc + pp.get(a).scale(c)
        if acc != f:
            raise HarmonicsError("substitution check failed")
    return sol


def _pprod_cache(bi: BasicInvariants, r: int) -> PProducts:
    pp = getattr(bi, "_pp", None)
    if pp is None:
        pp = PProducts(bi.polys, r)
        bi._pp = pp
    return pp


def delta_expression(coset) -> dict:
    coset = as_coset(coset)
    got = coset.cache.get("delta_expr")
    if got is None:
        got = express_in_basics(discriminant(coset), basic_invariants(coset))
        coset.cache["delta_expr"] = got
    return got


def ideal_regular(coset, zeta: RootOfUnity) -> bool:
    """Delta not in the ideal generated by the P_i with eps_i zeta^d_i != 1."""
    coset = as_coset(coset)
    bi = basic_invariants(coset)
    kill = [i for i, (d, e) in enumerate(bi.pairs()) if not (e * zeta ** d).is_one()]
    expr = delta_expression(coset)
    return any(all(a[i] == 0 for i in kill) for a in expr)


def monic_in(expr: dict, i: int, D: int, d: int) -> bool:
    """The expression contains the pure power P_i^(D/d)."""
    if D % d:
        return False
    n = len(next(iter(expr)))
    a = tuple(D // d if k == i else 0 for k in range(n))
    return a in expr


def monic_check(coset) -> bool:
    """If Delta is monic in P_i, every zeta with zeta^d_i = eps_i^-1 is regular and the
    multisets {eps zeta^d} and {(eps* zeta^d*)^-1} agree; and if zeta is regular with
    exactly one eps_i zeta^d_i = 1, Delta is monic in that P_i."""
    from .regularity import is_regular_criterion, regular_set
    coset = as_coset(coset)
    bi = basic_invariants(coset)
    expr = delta_expression(coset)
    D = discriminant(coset).degree
    fd = codegree_factors(coset)
    for i, (d, e) in enumerate(bi.pairs()):
        if not monic_in(expr, i, D, d):
            continue
        n = d * e.order
        for k in range(n):
            z = RootOfUnity.make(n, k)
            if not (z ** d * e).is_one():
                continue
            if not is_regular_criterion(coset, z):
                return False
            a = sorted((ee * z ** dd).sort_key() for dd, ee in bi.pairs())
            b = sorted((ee * z ** dd).inverse().sort_key() for dd, ee in fd.with_degrees())
            if a != b:
                return False
    for z in regular_set(coset, check=False):
        U = [i for i, (d, e) in enumerate(bi.pairs()) if (e * z ** d).is_one()]
        if len(U) == 1 and not monic_in(expr, U[0], D, bi.degrees[U[0]]):
            return False
    return True


# ----------------------------------------------------------------------------
# well-generated structure


def _left_perms(G: ReflectionGroup, idx: Sequence[int]) -> list[np.ndarray]:
    out = []
    for i in idx:
        key = ("left_perm", i)
        p = G.cache.get(key)
        if p is None:
            p = np.array(G.lookup(G.stack.rmatmul(G.element(i))), dtype=np.int64)
            G.cache[key] = p
        out.append(p)
    return out


def generated_order(G: ReflectionGroup, idx: Sequence[int]) -> int:
    perms = _left_perms(G, idx)
    seen = np.zeros(G.order, dtype=bool)
    seen[G.identity_index] = True
    frontier = np.array([G.identity_index], dtype=np.int64)
    while len(frontier):
        nxt = np.unique(np.concatenate([p[frontier] for p in perms]))
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return int(seen.sum())


def min_reflection_generators(G: ReflectionGroup, start: Optional[int] = None,
                              stop: Optional[int] = None) -> Optional[list[int]]:
    """A smallest generating set of reflections, searched by size from `start`."""
    refl = G.reflections
    cls = G.class_of
    reps = sorted({int(cls[i]) for i in refl})
    first = [min(i for i in refl if int(cls[i]) == c) for c in reps]
    k = start or 1
    stop = stop or len(refl)
    while k <= stop:
        for f in first:
            for rest in combinations([i for i in refl if i != f], k - 1):
                idx = [f, *rest]
                if generated_order(G, idx) == G.order:
                    return idx
        k += 1
    return None


@dataclass
class WellGenReport:
    degree_condition: bool
    generators: list
    min_generators: int
    well_generated: bool
    C: Optional[list] = None
    matching: Optional[bool] = None
    regular_top: Optional[bool] = None
    monic: Optional[bool] = None
    notes: list = field(default_factory=list)

    def ok(self) -> bool:
        checks = [x for x in (self.matching, self.regular_top, self.monic) if x is not None]
        return all(checks) and not self.notes


def wellgen_structure(coset, matrix_check: bool = True) -> WellGenReport:
    from .regularity import regularity_report
    coset = as_coset(coset)
    G, W, r = coset.group, coset.N, coset.r
    fv, fd = v_factors(coset), codegree_factors(coset)
    dv = sorted(fv.with_degrees(), key=lambda t: (t[0], t[1].sort_key()))
    dd = sorted(fd.with_degrees(), key=lambda t: (-t[0], t[1].sort_key()))
    dr = dv[-1][0]
    cond = all(a[0] + b[0] == dr for a, b in zip(dv, dd))
    gens = min_reflection_generators(G, start=r)
    rep = WellGenReport(cond, gens or [], len(gens) if gens else -1, False)
    rep.well_generated = gens is not None and len(gens) == r
    if cond != rep.well_generated:
        rep.notes.append("degree condition and reflection count disagree")
        return rep
    if not rep.well_generated:
        return rep
    eps_r = dv[-1][1]
    # sigma matching per degree class
    ok = True
    for d in sorted({a[0] for a in dv}):
        left = sorted((e.inverse() * eps_r).sort_key() for dd_, e in dv if dd_ == d)
        right = sorted(e.sort_key() for dd_, e in dd if dr - dd_ == d)
        ok = ok and left == right
    rep.matching = ok
    # zeta^{d_r} = eps_r^-1 is regular
    n = dr * eps_r.order
    good = True
    for k in range(n):
        z = RootOfUnity.make(n, k)
        if (z ** dr * eps_r).is_one():
            good = good and regularity_report(coset, z).criterion_result
    rep.regular_top = good
    if matrix_check:
        rep.C = _disc_mod_i0(coset, rep)
        rep.monic = monic_check(coset)
    return rep


def _disc_mod_i0(coset, rep: WellGenReport) -> Optional[list]:
    bi = basic_invariants(coset)
    D = disc_matrix(coset, V)
    top = max(range(len(bi.degrees)), key=lambda i: bi.degrees[i])
    dr = bi.degrees[top]
    C = []
    for i, (mi, _) in enumerate(D.row_factors):
        row = []
        for j, (mj, _) in enumerate(D.col_factors):
            entry = D.matrix[i][j]
            expr = express_in_basics(entry, bi) if entry else {}
            kept = {a: c for a, c in expr.items() if all(a[k] == 0 for k in range(len(a)) if k != top)}
            deg = (mi + 1) + (mj - 1)
            if deg == dr:
                a1 = tuple(1 if k == top else 0 for k in range(len(bi.degrees)))
                if set(kept) - {a1}:
                    rep.notes.append(f"entry ({i},{j}) is not a multiple of P_r modulo I0")
                row.append(kept.get(a1, Cyclotomic.zero()))
            else:
                if kept:
                    rep.notes.append(f"entry ({i},{j}) of degree {deg} survives modulo I0")
                row.append(Cyclotomic.zero())
        C.append(row)
    W = coset.N
    M = CycMatrix.from_entries([[cyc(c, W) for c in row] for row in C], W)
    if not M.det():
        rep.notes.append("C is singular")
    # block structure by degree class
    for i, (mi, _) in enumerate(D.row_factors):
        for j, (mj, _) in enumerate(D.col_factors):
            if (mi + 1) + (mj - 1) != dr and C[i][j]:
                rep.notes.append(f"c_{i}{j} nonzero off the degree blocks")
    return C

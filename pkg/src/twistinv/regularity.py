"""Regular eigenvalues of reflection cosets.

Three tests are kept independent: the counting criterion on the M-factors,
a brute-force eigenspace oracle, and the ideal criterion (in harmonics).
The module also checks the polynomial identities relating sums over the
coset to the factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .cyclo import Cyclotomic, RootOfUnity, cyc, divisors, lcm, lcm_all
from .groups import (NotEigenvector, ReflectionCoset, ReflectionGroup, as_coset, coset_new,
                     enumerate_group, general_vector, parabolic, theta_v)
from .linalg import CycMatrix, kernel_lists, rref_lists
from .molien import (VDUAL, V, FactorSet, ModuleRep, class_data, codegree_factors, coset_element_orders,
                     module_factors, product_formula_check, scaled_factors, v_factors, _inverse_series)
from .polys import UniPoly


class RegularityDisagreement(AssertionError):
    """Two regularity tests gave different answers."""


class SearchExhausted(RuntimeError):
    pass


@dataclass
class Witness:
    index: int                 # g in G; the element is g gamma
    basis: list                # basis of V(g gamma, zeta)
    vector: list               # a regular vector in that eigenspace

    def to_json(self) -> dict:
        return {"g": self.index,
                "eigenspace": [[c.to_json() for c in b] for b in self.basis],
                "vector": [c.to_json() for c in self.vector]}


@dataclass
class RegularityReport:
    zeta: RootOfUnity
    criterion_result: bool
    oracle_result: Optional[Witness] = None
    multiset_equal: Optional[bool] = None
    ideal_result: Optional[bool] = None

    @property
    def regular(self) -> bool:
        return self.criterion_result

    def to_json(self) -> dict:
        return {"zeta": self.zeta.to_json(),
                "criterion": self.criterion_result,
                "oracle": None if self.oracle_result is None else self.oracle_result.to_json(),
                "multiset_equal": self.multiset_equal,
                "ideal": self.ideal_result}


# ----------------------------------------------------------------------------
# counting criterion


def shifted_factors(coset, zeta: RootOfUnity) -> tuple[FactorSet, FactorSet]:
    """V- and V*-factors of the coset G (zeta^-1 gamma), by the scaling law."""
    coset = as_coset(coset)
    fv, fd = v_factors(coset), codegree_factors(coset)
    return (scaled_factors(fv, zeta, V.scalar_character(zeta)),
            scaled_factors(fd, zeta, VDUAL.scalar_character(zeta)))


def criterion_details(coset, zeta: RootOfUnity) -> tuple[bool, bool]:
    """(counting criterion, multiset criterion) for zeta.

    Counting: |{i : eps_i zeta^d_i = 1}| = |{j : eps*_j zeta^d*_j = 1}|.
    Multiset: {eps_i^-1} = {eps*_j} for the shifted coset.
    """
    fv, fd = shifted_factors(coset, zeta)
    counting = len(fv.U()) == len(fd.U())
    inv = sorted(e.inverse().sort_key() for e in fv.eps)
    multiset = inv == sorted(e.sort_key() for e in fd.eps)
    return counting, multiset


def is_regular_criterion(coset, zeta: RootOfUnity) -> bool:
    counting, multiset = criterion_details(coset, zeta)
    if counting != multiset:
        raise RegularityDisagreement(f"counting and multiset criteria differ at {zeta}")
    return counting


# ----------------------------------------------------------------------------
# oracle


def _normals_at(G: ReflectionGroup, W: int) -> list[list[Cyclotomic]]:
    key = ("normals", W)
    got = G.cache.get(key)
    if got is None:
        got = [[cyc(c, W) for c in H.normal] for H in G.arrangement]
        G.cache[key] = got
    return got


def _eval(normal: Sequence[Cyclotomic], v: Sequence[Cyclotomic]) -> Cyclotomic:
    acc = Cyclotomic.zero(normal[0].N)
    for a, b in zip(normal, v):
        if a and b:
            acc = acc + a * b
    return acc


def eigenspace(h: CycMatrix, zeta: RootOfUnity, W: int) -> list[list[Cyclotomic]]:
    hh = h.embed(W)
    rows = (hh - CycMatrix.identity(h.rows, W).scale(zeta.to_cyclotomic(W))).to_lists()
    return kernel_lists(rows, W, h.rows)


def _has_regular(G: ReflectionGroup, basis, W: int) -> bool:
    if not basis:
        return False
    for n in _normals_at(G, W):
        if not any(_eval(n, b) for b in basis):
            return False
    return True


def regular_eigenvalues_by_class(coset) -> list[tuple[list[int], set]]:
    """Per twisted class of G gamma: (members, set of regular eigenvalues as sort keys).

    Regularity of an eigenvalue is a class invariant, since G permutes the
    hyperplanes; one representative per class suffices.
    """
    coset = as_coset(coset)
    got = coset.cache.get("regular_by_class")
    if got is not None:
        return got
    G = coset.group
    out = []
    orders = coset_element_orders(coset, 1)
    for c, o in zip(coset.twisted_classes(1), orders):
        h = coset.element(c.rep, 1)
        W = lcm(coset.N, o)
        regs = set()
        for lam in h.eigen_multiset(o):
            if _has_regular(G, eigenspace(h, lam, W), W):
                regs.add(lam.sort_key())
        out.append((sorted(c.members), regs))
    coset.cache["regular_by_class"] = out
    return out


def is_regular_oracle(coset, zeta: RootOfUnity) -> Optional[Witness]:
    """A certified regular zeta-eigenvector of some g gamma, or None.

    The witness is the lowest element index g for which one exists.
    """
    coset = as_coset(coset)
    G = coset.group
    best = None
    for members, regs in regular_eigenvalues_by_class(coset):
        if zeta.sort_key() in regs:
            m = members[0]
            best = m if best is None else min(best, m)
    if best is None:
        return None
    h = coset.element(best, 1)
    W = lcm(coset.N, lcm(h.element_order(cap=G.order * coset.gamma_order), zeta.order))
    basis = eigenspace(h, zeta, W)
    v = general_vector(basis, G.arrangement, W)
    certify_witness(coset, best, zeta, v)
    return Witness(best, basis, v)


def certify_witness(coset, index: int, zeta: RootOfUnity, v) -> None:
    G = coset.group
    h = coset.element(index, 1)
    W = lcm(lcm(h.N, zeta.order), lcm_all(x.N for x in v))
    vv = [cyc(x, W) for x in v]
    z = zeta.to_cyclotomic(W)
    if h.embed(W).apply(vv) != [z * x for x in vv]:
        raise RegularityDisagreement("witness is not an eigenvector")
    if not all(_eval(n, vv) for n in _normals_at(G, W)):
        raise RegularityDisagreement("witness lies on a hyperplane")


# ----------------------------------------------------------------------------
# candidate universe and regular orders


def candidate_bound(coset) -> int:
    """L such that every regular eigenvalue satisfies zeta^L = 1."""
    coset = as_coset(coset)
    fv, fd = v_factors(coset), codegree_factors(coset)
    parts = [coset.gamma_order]
    parts += [d * e.order for d, e in fv.with_degrees()]
    parts += [d * e.order for d, e in fd.with_degrees() if d > 0]
    parts += coset_element_orders(coset, 1)
    return lcm_all(parts)


def regular_set(coset, check: bool = True) -> list[RootOfUnity]:
    """All regular eigenvalues; with check, criterion and oracle must agree on every candidate."""
    coset = as_coset(coset)
    L = candidate_bound(coset)
    out = []
    oracle_keys = set()
    for _, regs in regular_eigenvalues_by_class(coset):
        oracle_keys |= regs
    for k in range(L):
        z = RootOfUnity.make(L, k)
        crit = is_regular_criterion(coset, z)
        if check and crit != (z.sort_key() in oracle_keys):
            raise RegularityDisagreement(f"{coset.label}: criterion {crit}, oracle {not crit} at {z}")
        if crit:
            out.append(z)
    return out


def three_way_disagreements(coset, ideal: bool = True) -> tuple[int, list[str]]:
    """(candidates tried, disagreements) between counting criterion, eigenspace
    oracle and, if asked, the ideal criterion, over every zeta in mu_L."""
    coset = as_coset(coset)
    L = candidate_bound(coset)
    oracle_keys = set()
    for _, regs in regular_eigenvalues_by_class(coset):
        oracle_keys |= regs
    bad = []
    for k in range(L):
        z = RootOfUnity.make(L, k)
        crit, multiset = criterion_details(coset, z)
        votes = {"counting": crit, "multiset": multiset, "oracle": z.sort_key() in oracle_keys}
        if ideal:
            votes["ideal"] = ideal_regularity(coset, z)
        if len(set(votes.values())) > 1:
            bad.append(f"{coset.label} at {z}: " + ", ".join(f"{n}={v}" for n, v in votes.items()))
    return L, bad


def regular_orders(coset, check: bool = True) -> set[int]:
    return {z.order for z in regular_set(coset, check)}


def regularity_report(coset, zeta: RootOfUnity, ideal: bool = False) -> RegularityReport:
    coset = as_coset(coset)
    counting, multiset = criterion_details(coset, zeta)
    rep = RegularityReport(zeta, counting, is_regular_oracle(coset, zeta), multiset)
    if ideal:
        rep.ideal_result = ideal_regularity(coset, zeta)
    if counting != multiset or counting != (rep.oracle_result is not None):
        raise RegularityDisagreement(f"criterion {counting}, multiset {multiset}, "
                                     f"oracle {rep.oracle_result is not None} at {zeta}")
    if rep.ideal_result is not None and rep.ideal_result != counting:
        raise RegularityDisagreement(f"ideal criterion {rep.ideal_result} vs counting {counting} at {zeta}")
    return rep


def ideal_regularity(coset, zeta: RootOfUnity) -> bool:
    from .harmonics import ideal_regular
    return ideal_regular(coset, zeta)


def describe_orders(orders: set[int]) -> str:
    return " ".join(str(o) for o in sorted(orders))


# ----------------------------------------------------------------------------
# identities


@dataclass
class IdentityReport:
    name: str
    ok: bool
    lhs: object
    rhs: object
    detail: dict = field(default_factory=dict)

    def __str__(self) -> str:
        status = "pass" if self.ok else "FAIL"
        if self.ok:
            return f"{self.name}: {status}"
        return f"{self.name}: {status}\n  lhs = {self.lhs}\n  rhs = {self.rhs}"


def class_invariants(coset) -> list[tuple[int, int, Cyclotomic, Cyclotomic]]:
    """(class size, dim V^h, det'(1 - h), det h) for each twisted class of G gamma."""
    coset = as_coset(coset)
    got = coset.cache.get("class_invariants")
    if got is not None:
        return got
    r, W = coset.r, coset.N
    out = []
    for c in coset.twisted_classes(1):
        h = coset.element(c.rep, 1)
        f = h.fixed_dim()
        A = CycMatrix.identity(r, W) - h
        cs = A.char_series().coeffs
        cs = cs + [Cyclotomic.zero(W)] * (r + 1 - len(cs))
        dprime = cyc(cs[r - f], W) * (-1) ** (r - f)
        out.append((c.size, f, dprime, cyc(h.det(), W)))
    coset.cache["class_invariants"] = out
    return out


def galois_units(coset) -> list[int]:
    W = as_coset(coset).N
    return [k for k in range(1, max(W, 2)) if gcd(k, W) == 1]


def _T_plus(c) -> UniPoly:
    return UniPoly([c, 1])


def _product_rhs(U_poly_shift: Sequence[int], sharp_eps: Sequence[RootOfUnity], fv: FactorSet, W: int,
                 sign: int = 1) -> UniPoly:
    """prod (T + sign*a) over a in U_poly_shift * prod (1 - eps^-1) * prod_{U#(gamma)} d/(1 - eps^-1)."""
    out = UniPoly([1])
    for a in U_poly_shift:
        out = out * _T_plus(sign * a)
    for e in sharp_eps:
        out = out * (Cyclotomic.one(W) - e.inverse().to_cyclotomic(W))
    for d, e in fv.with_degrees():
        if not e.is_one():
            out = out * (Cyclotomic.one(W) - e.inverse().to_cyclotomic(W)).inverse() * d
    return out


def _sum_T(terms: Sequence[tuple[int, Cyclotomic]]) -> UniPoly:
    out = UniPoly()
    for k, c in terms:
        out = out + UniPoly.monomial(k, c)
    return out


def check_sigma(coset, k: int = 1, dual: bool = False) -> IdentityReport:
    coset = as_coset(coset)
    W, r = coset.N, coset.r
    fv = v_factors(coset)
    terms = []
    for size, f, dp, dt in class_invariants(coset):
        c = dp.galois(k) * dp.inverse()
        if dual:
            c = c * dt.galois(k).inverse() * (-1) ** (r + f)
        terms.append((f, c * size))
    lhs = _sum_T(terms)
    M = ModuleRep.galois(VDUAL if dual else V, k)
    fs = module_factors(coset, M)
    name = f"{'sigma_dual' if dual else 'sigma'}({k})"
    if len(fv.U()) != len(fs.U()):
        rhs = UniPoly()
    else:
        rhs = _product_rhs([fs.pairs[i][0] for i in fs.U()], [fs.pairs[i][1] for i in fs.U_sharp()], fv, W)
    return IdentityReport(name, lhs == rhs, lhs, rhs)


def check_twistpw(coset) -> IdentityReport:
    coset = as_coset(coset)
    fv = v_factors(coset)
    lhs = _sum_T([(f, Cyclotomic.rational(size)) for size, f, _, _ in class_invariants(coset)])
    rhs = UniPoly([1])
    for d, e in fv.with_degrees():
        rhs = rhs * (_T_plus(d - 1) if e.is_one() else UniPoly([d]))
    return IdentityReport("twistpw", lhs == rhs, lhs, rhs)


def check_lm2form(coset) -> IdentityReport:
    coset = as_coset(coset)
    W, r = coset.N, coset.r
    fv, fd = v_factors(coset), codegree_factors(coset)
    lhs = _sum_T([(f, dt.inverse() * size * (-1) ** (r + f)) for size, f, _, dt in class_invariants(coset)])
    if len(fv.U()) != len(fd.U()):
        rhs = UniPoly()
    else:
        rhs = _product_rhs([d + 1 for d, e in fd.with_degrees() if e.is_one()],
                           [e for e in fd.eps if not e.is_one()], fv, W)
    return IdentityReport("LM2form", lhs == rhs, lhs, rhs)


def check_better_lm2form(coset) -> IdentityReport:
    coset = as_coset(coset)
    W = coset.N
    fv, fd = v_factors(coset), codegree_factors(coset)
    lhs = _sum_T([(f, dt * size) for size, f, _, dt in class_invariants(coset)])
    if len(fv.U()) != len(fd.U()):
        rhs = UniPoly()
    else:
        pre = RootOfUnity.one()
        for e in fv.eps:
            pre = pre * e.inverse()
        rhs = UniPoly([pre.to_cyclotomic(W)])
        for d, e in fd.with_degrees():
            if e.is_one():
                rhs = rhs * _T_plus(-d - 1)
        for d, e in fv.with_degrees():
            if not e.is_one():
                rhs = rhs * d
    return IdentityReport("better_LM2form", lhs == rhs, lhs, rhs)


def check_os2(coset, M: ModuleRep, D: Optional[int] = None) -> IdentityReport:
    """Bivariate twisted Molien identity, compared coefficientwise through x^D."""
    from .molien import n_of_module
    coset = as_coset(coset)
    G, W, r = coset.group, coset.N, coset.r
    nm = n_of_module(coset, M)
    top = n_of_module(coset, ModuleRep.exterior(M, M.dim(r)))
    if top != nm:
        raise ValueError(f"{M}: N(top exterior power) = {top} differs from N(M) = {nm}")
    D = nm if D is None else D
    jj = (-1) % coset.gamma_order
    data = class_data(coset, jj)
    lhs: dict = {}
    for rep, size, p in data:
        ys = M.matrix(coset, rep, jj).char_series().coeffs
        xs = _inverse_series(p, D, W)
        for b, cy in enumerate(ys):
            if not cy:
                continue
            for a in range(D + 1):
                if xs[a]:
                    lhs[(a, b)] = lhs.get((a, b), Cyclotomic.zero(W)) + cy * xs[a] * size
    lhs = {k: v * Fraction(1, G.order) for k, v in lhs.items() if v}
    lhs = {k: v for k, v in lhs.items() if v}
    fs = module_factors(coset, M)
    num: dict = {(0, 0): Cyclotomic.one(W)}
    for m, e in fs.pairs:
        new = dict(num)
        for (a, b), c in num.items():
            if a + m <= D:
                key = (a + m, b + 1)
                new[key] = new.get(key, Cyclotomic.zero(W)) - c * e.to_cyclotomic(W)
        num = new
    rhs = num
    for d, e in v_factors(coset).with_degrees():
        ser = [Cyclotomic.zero(W)] * (D + 1)
        for q in range(0, D // d + 1):
            ser[q * d] = (e ** q).to_cyclotomic(W)
        new: dict = {}
        for (a, b), c in rhs.items():
            for a2 in range(0, D - a + 1):
                if ser[a2]:
                    key = (a + a2, b)
                    new[key] = new.get(key, Cyclotomic.zero(W)) + c * ser[a2]
        rhs = new
    rhs = {k: v for k, v in rhs.items() if v}
    ok = set(lhs) == set(rhs) and all(lhs[k] == rhs[k] for k in lhs)
    return IdentityReport(f"OS2({M},{D})", ok, lhs, rhs)


def check_product_formula(coset) -> IdentityReport:
    rep = product_formula_check(as_coset(coset))
    return IdentityReport("product_formula", rep["ok"], rep.get("first_failure"), None, rep)


def verify_identity(coset, which: str, k: int = 1, M: Optional[ModuleRep] = None,
                    D: Optional[int] = None) -> IdentityReport:
    if which == "sigma":
        return check_sigma(coset, k)
    if which == "sigma_dual":
        return check_sigma(coset, k, dual=True)
    if which == "twistpw":
        return check_twistpw(coset)
    if which == "LM2form":
        return check_lm2form(coset)
    if which == "better_LM2form":
        return check_better_lm2form(coset)
    if which == "OS2":
        return check_os2(coset, M or V, D)
    if which == "product_formula":
        return check_product_formula(coset)
    raise ValueError(f"unknown identity {which!r}")


IDENTITIES = ("sigma", "sigma_dual", "twistpw", "LM2form", "better_LM2form", "OS2", "product_formula")


def identity_suite(coset, galois: Optional[Sequence[int]] = None) -> list[IdentityReport]:
    """Every identity; sigma-type ones and OS2 for every Galois unit of the conductor."""
    coset = as_coset(coset)
    ks = list(galois) if galois is not None else galois_units(coset)
    out = [check_twistpw(coset), check_lm2form(coset), check_better_lm2form(coset), check_product_formula(coset)]
    for k in ks:
        out.append(check_sigma(coset, k))
        out.append(check_sigma(coset, k, dual=True))
        out.append(check_os2(coset, ModuleRep.galois(V, k)))
        out.append(check_os2(coset, ModuleRep.galois(VDUAL, k)))
    return out


def inegalite_check(coset, galois: Optional[Sequence[int]] = None) -> bool:
    """|U*(gamma)| >= 1 unless G is trivial on V; |U(gamma)| <= |U(sigma,gamma)|, |U*(sigma,gamma)|."""
    coset = as_coset(coset)
    u = len(v_factors(coset).U())
    if len(coset.group.fixed_space()) < coset.r and len(codegree_factors(coset).U()) < 1:
        return False
    for k in (galois if galois is not None else galois_units(coset)):
        if u > len(module_factors(coset, ModuleRep.galois(V, k)).U()):
            return False
        if u > len(module_factors(coset, ModuleRep.galois(VDUAL, k)).U()):
            return False
    return True


# ----------------------------------------------------------------------------
# parabolic comparison


def eqlists_check(coset, v: Sequence[Cyclotomic], g_index: Optional[int] = None) -> bool:
    """Compare {eps zeta^m} for (G, gamma') and (G_v, gamma'), gamma' = g gamma, on V and V*."""
    coset = as_coset(coset)
    G = coset.group
    gam = coset.gamma if g_index is None else coset.element(g_index, 1)
    if all(not x for x in v):
        return True
    zeta = theta_v(gam, v).as_root_of_unity()
    if zeta is None:
        raise NotEigenvector("eigenvalue is not a root of unity")
    Gv, _ = parabolic(G, v)
    sub = coset_new(Gv, gam)
    full = coset  # G g gamma = G gamma, and the factors depend only on the coset
    for M in (V, VDUAL):
        a = sorted((zeta ** m * e).sort_key() for m, e in module_factors(full, M).pairs)
        b = sorted((zeta ** m * e).sort_key() for m, e in module_factors(sub, M).pairs)
        if a != b:
            return False
    return True


# ----------------------------------------------------------------------------
# existence


@dataclass
class ExistenceReport:
    method: str                      # "direct", "cyclic" or "shift"
    zeta: Optional[RootOfUnity]      # regular eigenvalue of G gamma (or of z gamma G for "shift")
    g_index: int
    vector: list
    shifts: list = field(default_factory=list)   # scalar z_i on each <G, gamma>-stable block
    gamma: Optional[CycMatrix] = None            # z gamma for "shift"

    def __str__(self) -> str:
        if self.method == "shift":
            return f"shift z = ({', '.join(str(z) for z in self.shifts)}): 1 is regular for z gamma G"
        return f"{self.method}: regular eigenvalue {self.zeta} (g = {self.g_index})"


def _commute(a: CycMatrix, b: CycMatrix) -> bool:
    return a @ b == b @ a


def irreducible_components(G: ReflectionGroup) -> list[list[int]]:
    """Reflections grouped by irreducible component (non-commuting closure)."""
    refl = G.reflections
    mats = [G.element(i) for i in refl]
    parent = list(range(len(refl)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(refl)):
        for j in range(i + 1, len(refl)):
            if find(i) != find(j) and not _commute(mats[i], mats[j]):
                parent[find(i)] = find(j)
    comps: dict = {}
    for i in range(len(refl)):
        comps.setdefault(find(i), []).append(refl[i])
    return sorted(comps.values())


def _span_of_roots(G: ReflectionGroup, refl: Sequence[int]) -> list[list[Cyclotomic]]:
    W, r = G.N, G.r
    rows = []
    for i in refl:
        m = G.element(i) - CycMatrix.identity(r, W)
        rows += m.T.to_lists()
    # column space of the (s - 1) = row space of the transposes
    red, _ = rref_lists(rows, W, r)
    return [row for row in red if any(row)]


def component_blocks(coset) -> tuple[list[list[list[int]]], list]:
    """Components of G grouped into gamma-orbits, each as a list of component reflection lists."""
    coset = as_coset(coset)
    G = coset.group
    comps = irreducible_components(G)
    where = {}
    for ci, c in enumerate(comps):
        for i in c:
            where[i] = ci
    W = coset.N
    g = coset.gamma.embed(W)
    gi = coset.gamma_power(-1)
    img = []
    for c in comps:
        m = g @ G.element(c[0]).embed(W) @ gi
        img.append(where[G.index_of(m)])
    seen, orbits = set(), []
    for ci in range(len(comps)):
        if ci in seen:
            continue
        orb, x = [], ci
        while x not in seen:
            seen.add(x)
            orb.append(x)
            x = img[x]
        orbits.append(orb)
    return [[comps[c] for c in orb] for orb in orbits], img


def _block_coset(G: ReflectionGroup, gamma: CycMatrix, basis: list, P_inv: CycMatrix, P: CycMatrix,
                 lo: int, hi: int, W: int):
    """Restriction of (G, gamma) to the coordinates lo:hi of the adapted basis."""
    def restrict(m: CycMatrix) -> CycMatrix:
        full = (P_inv @ m.embed(W) @ P).to_lists()
        return CycMatrix.from_entries([row[lo:hi] for row in full[lo:hi]], W)
    gens = [restrict(s) for s in G.generators]
    gens = [s for s in gens if not s.is_identity()] or [CycMatrix.identity(hi - lo, W)]
    Gi = enumerate_group(gens, N=W)
    return coset_new(Gi, restrict(gamma))


def existence_check(coset) -> ExistenceReport:
    """A regular eigenvalue of G gamma, or a block scalar z with 1 regular for z gamma G."""
    coset = as_coset(coset)
    G, W, r = coset.group, coset.N, coset.r
    if not G.reflections:
        return ExistenceReport("direct", RootOfUnity.one(), 0, [Cyclotomic.one(W)] * r)
    orbits, img = component_blocks(coset)
    fixed = G.fixed_space()
    if len(orbits) == 1 and not fixed:
        regs = regular_set(coset, check=False)
        if regs:
            z = min(regs, key=lambda x: (x.order, x.sort_key()))
            w = is_regular_oracle(coset, z)
            if w is None:
                raise RegularityDisagreement(f"criterion says {z} is regular, oracle found none")
            rep = ExistenceReport("direct", z, w.index, w.vector)
            if len(orbits[0]) > 1:
                _cyclic_construction(coset, orbits[0])
                rep.method = "cyclic"
            return rep
        raise SearchExhausted(f"no regular eigenvalue of order dividing {candidate_bound(coset)}")
    # reducible: adapted basis blocks, one scalar per <G, gamma>-stable block
    blocks = []
    for orb in orbits:
        refl = [i for comp in orb for i in comp]
        blocks.append(_span_of_roots(G, refl))
    cols = [b for blk in blocks for b in blk] + [list(f) for f in fixed]
    P = CycMatrix.from_entries([[cols[j][i] for j in range(r)] for i in range(r)], W)
    P_inv = P.inverse()
    shifts, lo = [], 0
    for blk in blocks:
        hi = lo + len(blk)
        sub = _block_coset(G, coset.gamma, blk, P_inv, P, lo, hi, W)
        regs = regular_set(sub, check=False)
        if not regs:
            raise SearchExhausted(f"block {lo}:{hi} has no regular eigenvalue")
        shifts.append(min(regs, key=lambda x: (x.order, x.sort_key())).inverse())
        lo = hi
    W2 = lcm(W, lcm_all(z.order for z in shifts))
    diag = []
    for z, blk in zip(shifts, blocks):
        diag += [z.to_cyclotomic(W2)] * len(blk)
    diag += [Cyclotomic.one(W2)] * len(fixed)
    zmat = P.embed(W2) @ CycMatrix.diagonal(diag, W2) @ P_inv.embed(W2)
    new_gamma = zmat @ coset.gamma.embed(W2)
    shifted = coset_new(G, new_gamma)
    w = is_regular_oracle(shifted, RootOfUnity.one())
    if w is None:
        raise SearchExhausted("block shift construction did not give a regular eigenvalue 1")
    return ExistenceReport("shift", RootOfUnity.one(), w.index, w.vector, shifts, new_gamma)


def _cyclic_construction(coset, orbit: list) -> None:
    """Build the regular eigenvector of g gamma from one on the first component (k components
    permuted cyclically by gamma) and certify it."""
    G, W, r = coset.group, coset.N, coset.r
    k = len(orbit)
    blocks = [_span_of_roots(G, comp) for comp in orbit]
    # order components along the gamma-cycle starting at orbit[0]
    cols = [b for blk in blocks for b in blk]
    P = CycMatrix.from_entries([[cols[j][i] for j in range(r)] for i in range(r)], W)
    P_inv = P.inverse()
    n1 = len(blocks[0])
    gk = coset.gamma_power(k)
    sub = _block_coset(G.subgroup(orbit[0]), gk, blocks[0], P_inv, P, 0, n1, W)
    regs = regular_set(sub, check=False)
    if not regs:
        raise SearchExhausted("first component has no regular eigenvalue")
    z1 = min(regs, key=lambda x: (x.order, x.sort_key()))
    w = is_regular_oracle(sub, z1)
    # g_1 acting on the first component only
    g1_block = sub.group.element(w.index).to_lists()
    full = CycMatrix.identity(r, W).to_lists()
    for a in range(n1):
        for b in range(n1):
            full[a][b] = g1_block[a][b]
    W2 = lcm(W, lcm(z1.order * k, lcm_all(x.N for x in w.vector)))
    g1 = P.embed(W2) @ CycMatrix.from_entries(full, W2) @ P_inv.embed(W2)
    idx = G.index_of(g1)
    if idx is None:
        raise SearchExhausted("component element is not in G")
    # lambda^k = z1 and c = lambda^-1
    lam = _kth_root(z1, k)
    c = lam.inverse().to_cyclotomic(W2)
    v1 = [Cyclotomic.zero(W2)] * r
    for a in range(n1):
        v1[a] = cyc(w.vector[a], W2)
    v1 = P.embed(W2).apply(v1)
    g = coset.gamma.embed(W2)
    v = [Cyclotomic.zero(W2)] * r
    cur = v1
    for i in range(k):
        v = [x + y for x, y in zip(v, cur)]
        cur = [c * y for y in g.apply(cur)]
    certify_witness(coset, idx, lam, v)


def _kth_root(z: RootOfUnity, k: int) -> RootOfUnity:
    return RootOfUnity.make(z.order * k, z.exponent_at(z.order))

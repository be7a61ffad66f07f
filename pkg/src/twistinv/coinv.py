"""Graded character of the coinvariant algebra and the induction theorem
for cyclic subgroups <gamma> of G."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclo import Cyclotomic, cyc, lcm, lcm_all
from .groups import NotEigenvector, ReflectionGroup, as_coset, coset_new, general_vector, parabolic, theta_v, untwisted
from .linalg import CycMatrix
from .molien import V, module_factors, v_factors
from .polys import UniPoly


@dataclass
class ClassFunction:
    values: list          # Cyclotomic per conjugacy class of G

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction([a + b for a, b in zip(self.values, other.values)])

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassFunction) and all(a == b for a, b in zip(self.values, other.values)) \
            and len(self.values) == len(other.values)

    def __str__(self) -> str:
        return "[" + ", ".join(str(v) for v in self.values) + "]"


@dataclass
class GradedCharacter:
    degrees: list             # ClassFunction per degree 0..N(V)

    def dims(self) -> list[int]:
        return [int(cf.values[0].to_fraction()) for cf in self.degrees]

    def total(self) -> ClassFunction:
        out = self.degrees[0]
        for cf in self.degrees[1:]:
            out = out + cf
        return out


def _class_index(G: ReflectionGroup) -> int:
    return int(G.class_of[G.identity_index])


def graded_trace(g: CycMatrix, factors: Sequence[tuple[int, Cyclotomic]], W: int) -> UniPoly:
    """prod (1 - eps t^d) / det(1 - t g | V*), which must be a polynomial."""
    num = UniPoly([1])
    for d, e in factors:
        num = num * (UniPoly([1]) - UniPoly.monomial(d, cyc(e, W)))
    den = UniPoly(g.embed(W).inverse().char_series().coeffs)
    q, rem = num.divmod(den)
    if not rem.is_zero():
        raise ArithmeticError("graded trace is not a polynomial")
    return q


def coinvariant_character(G) -> GradedCharacter:
    C = as_coset(G)
    G = C.group
    got = G.cache.get("coinvariant_character")
    if got is not None:
        return got
    W = C.N
    degs = [(d, Cyclotomic.one(W)) for d in v_factors(C).degrees]
    N = sum(d - 1 for d, _ in degs)
    polys = [graded_trace(G.element(c.rep), degs, W) for c in G.classes]
    per_degree = [ClassFunction([cyc(p.coeff(i), W) for p in polys]) for i in range(N + 1)]
    gc = GradedCharacter(per_degree)
    _check_regular(G, gc)
    G.cache["coinvariant_character"] = gc
    return gc


def _check_regular(G: ReflectionGroup, gc: GradedCharacter) -> None:
    tot = gc.total()
    ident = _class_index(G)
    for i, v in enumerate(tot.values):
        want = G.order if i == ident else 0
        if v != want:
            raise ArithmeticError("sum of the graded characters is not the regular character")


def regular_character_holds(G) -> bool:
    try:
        coinvariant_character(G)
    except ArithmeticError:
        return False
    return True


def top_degree_character(G) -> ClassFunction:
    return coinvariant_character(G).degrees[-1]


def poincare(G) -> UniPoly:
    return UniPoly(coinvariant_character(G).dims())


def residue_sum(dims: Sequence[int], d: int, k: int) -> int:
    return sum(x for i, x in enumerate(dims) if (i + k) % d == 0)


def eqdims_check(G, d: int, k: int, l: int) -> bool:
    """dim of the sum of H_i over i = -k mod d equals the one for -l; d must divide a degree."""
    C = as_coset(G)
    degrees = v_factors(C).degrees
    if not any(x % d == 0 for x in degrees):
        raise ValueError(f"{d} divides no degree")
    dims = coinvariant_character(C).dims()
    cyclo_d = UniPoly([1] * d)
    _, rem = UniPoly(dims).divmod(cyclo_d)
    if not rem.is_zero():
        return False
    return residue_sum(dims, d, k) == residue_sum(dims, d, l)


# ----------------------------------------------------------------------------
# induction


def induction_sides(G, gamma_index: int, v: Sequence[Cyclotomic], k: int) -> tuple[ClassFunction, ClassFunction]:
    """(sum of H_i over i = -k mod d, induced character) as class functions of G."""
    C = as_coset(G)
    G = C.group
    gamma = G.element(gamma_index)
    zeta = theta_v(gamma, v).as_root_of_unity()
    if zeta is None:
        raise NotEigenvector("eigenvalue is not a root of unity")
    d = zeta.order
    gc = coinvariant_character(C)
    W = lcm(C.N, lcm(d, lcm_all(x.N for x in v)))
    lhs_vals = [Cyclotomic.zero(W) for _ in G.classes]
    for i, cf in enumerate(gc.degrees):
        if (i + k) % d == 0:
            lhs_vals = [a + cyc(b, W) for a, b in zip(lhs_vals, cf.values)]

    # K = <G_v, gamma> is the union of the G_v gamma^j since gamma normalizes G_v
    Gv, _ = parabolic(G, v)
    gv_idx = G.parent_indices(Gv)
    sub = coset_new(Gv, gamma)
    fv = module_factors(sub, V, shift=1).with_degrees()
    n = sub.gamma_order
    members: dict[int, int] = {}
    gj = G.identity()
    for j in range(n):
        for i in gv_idx:
            idx = G.index_of(G.element(i) @ gj)
            if idx is None:
                raise ArithmeticError("<G_v, gamma> is not inside G")
            members.setdefault(idx, j)
        gj = gj @ gamma
    order_k = len(members)
    _assert_proof_route(G, gamma, v)

    vv = [cyc(x, W) for x in v]
    psi = [Cyclotomic.zero(W) for _ in G.classes]
    for idx, j in members.items():
        x = G.element(idx)
        theta = theta_v(x, vv).as_root_of_unity()
        if j == 0 and not theta.is_one():
            raise ArithmeticError("theta_v is not trivial on G_v")
        facs = [(dd, (e ** j).to_cyclotomic(W)) for dd, e in fv]
        T = graded_trace(x, facs, W)
        c = int(G.class_of[idx])
        psi[c] = psi[c] + (theta ** k).to_cyclotomic(W) * T(theta.to_cyclotomic(W))
    rhs_vals = [s * Fraction(G.order, cl.size * order_k) for cl, s in zip(G.classes, psi)]
    return ClassFunction(lhs_vals), ClassFunction(rhs_vals)


def _assert_proof_route(G: ReflectionGroup, gamma, v) -> None:
    """The eps theta^m multisets of G and of G_v agree for gamma."""
    from .regularity import eqlists_check

    if not eqlists_check(untwisted(G), v, g_index=G.index_of(gamma)):
        raise ArithmeticError("eps theta^m multisets of G and G_v differ")


def induction_check(G, gamma_index: int, v: Sequence[Cyclotomic], k: int) -> bool:
    lhs, rhs = induction_sides(G, gamma_index, v, k)
    return lhs == rhs


@dataclass
class InductionSample:
    label: str
    gamma_index: int
    vector: list
    d: int


def _eigen_samples(G: ReflectionGroup, idx: int, label: str) -> list[InductionSample]:
    from .regularity import eigenspace

    h = G.element(idx)
    o = h.element_order()
    W = lcm(G.N, o)
    out = []
    for lam in sorted(h.eigen_multiset(o)):
        basis = eigenspace(h, lam, W)
        v = general_vector(basis, G.arrangement, W)
        out.append(InductionSample(f"{label}, eigenvalue {lam}", idx, v, lam.order))
    return out


def induction_samples(G) -> list[InductionSample]:
    """Identity, one reflection per conjugacy class, and one element with a regular
    eigenvalue of largest order.  Both sides are class functions, so conjugate
    reflections give the same check."""
    from .regularity import regular_eigenvalues_by_class

    C = as_coset(G)
    G = C.group
    out = _eigen_samples(G, G.identity_index, "identity")
    seen = set()
    for i in G.reflections:
        c = int(G.class_of[i])
        if c not in seen:
            seen.add(c)
            out += _eigen_samples(G, i, f"reflection {i}")
    best = None
    for members, regs in regular_eigenvalues_by_class(untwisted(G)):
        for n, e in regs:
            if n > 1 and (best is None or n > best[0]):
                best = (n, e, members[0])
    if best is not None:
        from .cyclo import RootOfUnity
        from .regularity import eigenspace

        n, e, idx = best
        h = G.element(idx)
        W = lcm(G.N, n)
        v = general_vector(eigenspace(h, RootOfUnity.make(n, e), W), G.arrangement, W)
        out.append(InductionSample(f"regular element {idx}, eigenvalue z{n}^{e}", idx, v, n))
    return out


def induction_suite(G) -> list[tuple[InductionSample, int, bool]]:
    """induction_check over every sample and every k mod d."""
    res = []
    for s in induction_samples(G):
        for k in range(s.d):
            res.append((s, k, induction_check(G, s.gamma_index, s.vector, k)))
    return res

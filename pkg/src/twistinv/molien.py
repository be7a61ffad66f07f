"""Twisted Molien series and the M-factors of a reflection coset.

Conventions: S is the symmetric algebra of V*, and h acts on V* by the
inverse transpose.  Summing Tr(h | M*) / det(1 - x h | V*) over h in G gamma^j
is the same as summing Tr(rho_M(h)) / det(1 - x h) over h in G gamma^-j,
which is what the code does (class by class).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from .cyclo import Cyclotomic, RootOfUnity, cyc, lcm, lcm_all
from .groups import ReflectionCoset, ReflectionGroup, as_coset
from .linalg import CycMatrix, det_lists, eigen_from_traces, newton_char_series
from .polys import MultiPoly, TruncSeries, UniPoly


class FactorMismatch(ArithmeticError):
    """Two computations of the same invariant disagree."""


# ----------------------------------------------------------------------------
# modules


class ModuleRep:
    """A <G, gamma>-module given by a small constructor tree over V."""

    __slots__ = ("kind", "args")

    def __init__(self, kind: str, args: tuple = ()):
        self.kind = kind
        self.args = args

    # constructors
    @staticmethod
    def V() -> "ModuleRep":
        return ModuleRep("V")

    @staticmethod
    def trivial() -> "ModuleRep":
        return ModuleRep("trivial")

    @staticmethod
    def dual(m: "ModuleRep") -> "ModuleRep":
        return ModuleRep("dual", (m,))

    @staticmethod
    def galois(m: "ModuleRep", k: int) -> "ModuleRep":
        return ModuleRep("galois", (m, k))

    @staticmethod
    def exterior(m: "ModuleRep", p: int) -> "ModuleRep":
        return ModuleRep("exterior", (m, p))

    @staticmethod
    def tensor(a: "ModuleRep", b: "ModuleRep") -> "ModuleRep":
        return ModuleRep("tensor", (a, b))

    @staticmethod
    def table(mats: Sequence[CycMatrix], gamma: CycMatrix, name: str = "table") -> "ModuleRep":
        """Explicit matrices for every group element (in element order) and for gamma."""
        return ModuleRep("table", (tuple(mats), gamma, name))

    @staticmethod
    def parse(text: str) -> "ModuleRep":
        t = text.strip()
        if t == "V":
            return ModuleRep.V()
        if t in ("Vdual", "V*"):
            return ModuleRep.dual(ModuleRep.V())
        if t in ("trivial", "1"):
            return ModuleRep.trivial()
        if t.startswith("ext"):
            return ModuleRep.exterior(ModuleRep.V(), int(t[3:]))
        if t.startswith("galois-dual:"):
            return ModuleRep.galois(ModuleRep.dual(ModuleRep.V()), int(t.split(":")[1]))
        if t.startswith("galois:"):
            return ModuleRep.galois(ModuleRep.V(), int(t.split(":")[1]))
        raise ValueError(f"unknown module {text!r}")

    # description
    def __str__(self) -> str:
        k, a = self.kind, self.args
        if k in ("V", "trivial"):
            return k
        if k == "dual":
            return f"({a[0]})*" if a[0].kind != "V" else "V*"
        if k == "galois":
            return f"{a[0]}^(s{a[1]})"
        if k == "exterior":
            return f"ext{a[1]}({a[0]})"
        if k == "tensor":
            return f"({a[0]} x {a[1]})"
        return a[2]

    __repr__ = __str__

    def __eq__(self, other):
        return isinstance(other, ModuleRep) and str(self) == str(other) and self.kind != "table"

    def __hash__(self):
        return hash(str(self))

    def dim(self, r: int) -> int:
        k, a = self.kind, self.args
        if k == "V":
            return r
        if k == "trivial":
            return 1
        if k in ("dual", "galois"):
            return a[0].dim(r)
        if k == "exterior":
            n = a[0].dim(r)
            out = 1
            for i in range(a[1]):
                out = out * (n - i) // (i + 1)
            return out
        if k == "tensor":
            return a[0].dim(r) * a[1].dim(r)
        return a[0][0].rows

    def has_table(self) -> bool:
        if self.kind == "table":
            return True
        return any(isinstance(x, ModuleRep) and x.has_table() for x in self.args)

    def scalar_character(self, zeta: RootOfUnity) -> RootOfUnity:
        """The scalar by which zeta*Id_V acts on M."""
        k, a = self.kind, self.args
        if k == "V":
            return zeta
        if k == "trivial":
            return RootOfUnity.one()
        if k == "dual":
            return a[0].scalar_character(zeta).inverse()
        if k == "galois":
            return a[0].scalar_character(zeta) ** a[1]
        if k == "exterior":
            return a[0].scalar_character(zeta) ** a[1]
        if k == "tensor":
            return a[0].scalar_character(zeta) * a[1].scalar_character(zeta)
        raise ValueError("scalar action unknown for explicit tables")

    # evaluation
    def matrix(self, coset: ReflectionCoset, i: int, j: int = 0) -> CycMatrix:
        """rho_M(g_i gamma^j)."""
        if self.has_table():
            return self._eval_indexed(coset, i, j)
        return self.of_matrix(coset.element(i, j), coset.N)

    def of_matrix(self, h: CycMatrix, W: int) -> CycMatrix:
        k, a = self.kind, self.args
        if k == "V":
            return h.embed(W) if h.N != W else h
        if k == "trivial":
            return CycMatrix.identity(1, W)
        sub = a[0].of_matrix(h, W)
        return self._combine(sub, a[1].of_matrix(h, W) if k == "tensor" else None, W)

    def _eval_indexed(self, coset, i, j) -> CycMatrix:
        k, a = self.kind, self.args
        W = coset.N
        if k == "table":
            mats, gm, _ = a
            m = mats[i].embed(lcm(W, mats[i].N))
            return m @ gm.embed(m.N).power(j % coset.gamma_order) if j % coset.gamma_order else m
        if k == "V":
            return coset.element(i, j)
        if k == "trivial":
            return CycMatrix.identity(1, W)
        sub = a[0]._eval_indexed(coset, i, j)
        other = a[1]._eval_indexed(coset, i, j) if k == "tensor" else None
        return self._combine(sub, other, W)

    def _combine(self, sub: CycMatrix, other: Optional[CycMatrix], W: int) -> CycMatrix:
        k, a = self.kind, self.args
        if k == "dual":
            return sub.inverse().T
        if k == "galois":
            if gcd(a[1], sub.N) != 1:
                raise ValueError(f"Galois exponent {a[1]} is not a unit modulo {sub.N}")
            return sub.galois(a[1])
        if k == "exterior":
            return compound(sub, a[1])
        if k == "tensor":
            return kron(sub, other)
        raise ValueError(k)


def compound(m: CycMatrix, p: int) -> CycMatrix:
    """The p-th exterior power matrix (p x p minors, lexicographic subsets)."""
    n = m.rows
    rows = m.to_lists()
    subsets = list(combinations(range(n), p))
    out = []
    for I in subsets:
        out.append([det_lists([[rows[i][j] for j in J] for i in I], m.N) for J in subsets])
    return CycMatrix.from_entries(out, m.N)


def kron(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    N = lcm(a.N, b.N)
    A, B = a.embed(N).to_lists(), b.embed(N).to_lists()
    rows = []
    for ra in A:
        for rb in B:
            rows.append([x * y for x in ra for y in rb])
    return CycMatrix.from_entries(rows, N)


V = ModuleRep.V()
VDUAL = ModuleRep.dual(ModuleRep.V())
TRIVIAL = ModuleRep.trivial()


# ----------------------------------------------------------------------------
# factor sets


@dataclass
class FactorSet:
    """Multiset of (m, eps) pairs; `shift` converts m to the reported degree."""

    module: str
    pairs: list  # list of (m, RootOfUnity)
    shift: int = 0

    def __post_init__(self):
        self.pairs = sorted(self.pairs, key=lambda p: (p[0], p[1].sort_key()))

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def exponents(self) -> list[int]:
        return [m for m, _ in self.pairs]

    @property
    def eps(self) -> list[RootOfUnity]:
        return [e for _, e in self.pairs]

    @property
    def degrees(self) -> list[int]:
        return [m + self.shift for m, _ in self.pairs]

    def with_degrees(self) -> list[tuple[int, RootOfUnity]]:
        return [(m + self.shift, e) for m, e in self.pairs]

    @property
    def N(self) -> int:
        return sum(self.exponents)

    def U(self) -> list[int]:
        return [i for i, (_, e) in enumerate(self.pairs) if e.is_one()]

    def U_sharp(self) -> list[int]:
        return [i for i, (_, e) in enumerate(self.pairs) if not e.is_one()]

    def multiset(self) -> list[tuple[int, tuple[int, int]]]:
        return [(m, e.sort_key()) for m, e in self.pairs]

    def __eq__(self, other) -> bool:
        return isinstance(other, FactorSet) and self.multiset() == other.multiset()

    def to_json(self) -> list[dict]:
        return [{"m": m, "d": m + self.shift, "eps": e.to_json()} for m, e in self.pairs]

    def __str__(self) -> str:
        return ", ".join(f"({m + self.shift},{e})" for m, e in self.pairs)


# ----------------------------------------------------------------------------
# Molien series


def _inverse_series(p: Sequence[Cyclotomic], D: int, W: int) -> list[Cyclotomic]:
    """Coefficients of 1/p(x) through x^D, p(0) = 1."""
    pp = [cyc(c, W) for c in p]
    out = [Cyclotomic.one(W)]
    for k in range(1, D + 1):
        acc = Cyclotomic.zero(W)
        for i in range(1, min(k, len(pp) - 1) + 1):
            if pp[i] and out[k - i]:
                acc = acc + pp[i] * out[k - i]
        out.append(-acc)
    return out


def class_data(coset: ReflectionCoset, j: int) -> list[tuple[int, int, list[Cyclotomic]]]:
    """(representative, class size, coefficients of det(1 - x h)) per twisted class of G gamma^j."""
    j %= coset.gamma_order
    key = ("class_data", j)
    out = coset.cache.get(key)
    if out is None:
        out = []
        for c in coset.twisted_classes(j):
            h = coset.element(c.rep, j)
            out.append((c.rep, c.size, [cyc(x, coset.N) for x in h.char_series().coeffs]
                        + [Cyclotomic.zero(coset.N)] * (coset.r + 1 - len(h.char_series().coeffs))))
        coset.cache[key] = out
    return out


def _class_inverse_series(coset: ReflectionCoset, j: int, D: int) -> list[list[Cyclotomic]]:
    j %= coset.gamma_order
    key = ("inv_series", j)
    have = coset.cache.get(key)
    if have is None or len(have[0]) < D + 1:
        have = [_inverse_series(p, D, coset.N) for _, _, p in class_data(coset, j)]
        coset.cache[key] = have
    return [s[: D + 1] for s in have]


def module_class_values(coset: ReflectionCoset, M: ModuleRep, j: int, fn) -> list[Cyclotomic]:
    """fn(rho_M(rep)) for each twisted class representative of G gamma^j."""
    return [fn(M.matrix(coset, rep, j)) for rep, _, _ in class_data(coset, j)]


def molien_trace_series(coset, M: ModuleRep, j: int, D: int) -> TruncSeries:
    """Graded trace of gamma^j on (S (x) M*)^G through degree D."""
    coset = as_coset(coset)
    W = coset.N
    jj = (-j) % coset.gamma_order
    data = class_data(coset, jj)
    inv = _class_inverse_series(coset, jj, D)
    traces = module_class_values(coset, M, jj, lambda m: cyc(m.trace(), lcm(W, m.N)))
    W2 = lcm_all([W] + [t.N for t in traces])
    acc = [Cyclotomic.zero(W2) for _ in range(D + 1)]
    for (rep, size, _), t, s in zip(data, traces, inv):
        if not t:
            continue
        w = cyc(t, W2) * size
        for k in range(D + 1):
            if s[k]:
                acc[k] = acc[k] + w * cyc(s[k], W2)
    scale = Fraction(1, coset.group.order)
    return TruncSeries(D, [a * scale for a in acc])


# ----------------------------------------------------------------------------
# degrees from the invariant ring


def _poly_times_factors(coeffs: list[Cyclotomic], factors, j: int, D: int, W: int) -> list[Cyclotomic]:
    """coeffs * prod (1 - eps^j x^d), truncated at D."""
    out = [cyc(c, W) for c in coeffs[: D + 1]]
    for d, e in factors:
        z = (e ** j).to_cyclotomic(W)
        new = list(out)
        for k in range(d, D + 1):
            if out[k - d]:
                new[k] = new[k] - z * out[k - d]
        out = new
    return out


def invariant_factors(coset) -> list[tuple[int, RootOfUnity]]:
    """(d, eps) of the basic invariants, peeled off the trivial Molien series."""
    coset = as_coset(coset)
    got = coset.cache.get("invariant_factors")
    if got is not None:
        return got
    G, n, W, r = coset.group, coset.gamma_order, coset.N, coset.r
    B = len(G.reflections) + 1
    series = [molien_trace_series(coset, TRIVIAL, j, B).coeffs for j in range(n)]
    found: list = []
    for k in range(1, B + 1):
        if len(found) >= r:
            break
        mults = eigen_from_traces([series[j][k] for j in range(n)], n, W)
        new = []
        for eps, mult in mults.items():
            new += [(k, eps)] * mult
        if new:
            found += new
            series = [_poly_times_factors(series[j], new, j, B, W) for j in range(n)]
    prod = 1
    for d, _ in found:
        prod *= d
    if len(found) != r or prod != G.order:
        raise FactorMismatch(f"invariant degrees {[d for d, _ in found]} inconsistent with |G| = {G.order}")
    found.sort(key=lambda p: (p[0], p[1].sort_key()))
    coset.cache["invariant_factors"] = found
    return found


# ----------------------------------------------------------------------------
# N(M)


def n_h_values(G, M: ModuleRep) -> list[int]:
    """N_H(M) for each hyperplane, from the eigenvalues of the distinguished generator on M*."""
    C = as_coset(G)
    G = C.group
    key = ("n_h", str(M)) if not M.has_table() else None
    if key and key in C.cache:
        return C.cache[key]
    by_class: dict = {}
    out = []
    for H in G.arrangement:
        s = H.distinguished
        ck = int(G.class_of[s])
        if ck not in by_class:
            rho = M.matrix(C, s, 0)
            eig = rho.eigen_multiset(order=H.e)
            # eigenvalue zeta_e^a on M gives zeta_e^-a on M*
            by_class[ck] = sum(mult * ((-mu.exponent_at(H.e)) % H.e) for mu, mult in eig.items())
        out.append(by_class[ck])
    if key:
        C.cache[key] = out
    return out


def n_of_module_gutkin(G, M: ModuleRep) -> int:
    return sum(n_h_values(G, M))


def n_of_module_closed(G, M: ModuleRep) -> int:
    """chi(1)|Ref|/2 + sum over reflections of chi(s)/(det(s|V) - 1)."""
    C = as_coset(G)
    G = C.group
    refl = G.reflections
    terms = [Fraction(M.dim(G.r) * len(refl), 2)]
    per_class: dict = {}
    for s in refl:
        ck = int(G.class_of[s])
        if ck not in per_class:
            chi = M.matrix(C, s, 0).trace()
            lam = G.element(s).trace() - (G.r - 1)  # det of a reflection
            W2 = lcm(C.N, chi.N)
            per_class[ck] = cyc(chi, W2) / (cyc(lam, W2) - 1)
        terms.append(per_class[ck])
    W = lcm_all([C.N] + [t.N for t in terms[1:]])
    total = Cyclotomic.zero(W)
    for t in terms:
        total = total + cyc(t, W)
    if not total.is_rational() or total.to_fraction().denominator != 1:
        raise FactorMismatch(f"closed formula gives a non-integer {total}")
    return int(total.to_fraction())


def module_factors(coset, M: ModuleRep, shift: int = 0) -> FactorSet:
    """The multiset {(m, eps)} for (H (x) M*)^G with the action of gamma."""
    coset = as_coset(coset)
    key = ("factors", str(M), shift) if not M.has_table() else None
    if key and key in coset.cache:
        return coset.cache[key]
    n, W = coset.gamma_order, coset.N
    NM = n_of_module_gutkin(coset, M)
    inv = invariant_factors(coset)
    D = NM + max(d for d, _ in inv)
    polys = []
    for j in range(n):
        s = molien_trace_series(coset, M, j, D).coeffs
        W2 = lcm(W, s[0].N)
        p = _poly_times_factors(s, inv, j, D, W2)
        if any(p[k] for k in range(NM + 1, D + 1)):
            raise FactorMismatch(f"graded trace of gamma^{j} on harmonics is not a polynomial of degree <= {NM}")
        polys.append(p)
    W2 = lcm_all([W] + [p[0].N for p in polys])
    pairs = []
    for k in range(NM + 1):
        mults = eigen_from_traces([cyc(polys[j][k], W2) for j in range(n)], n, W2)
        for eps, mult in mults.items():
            pairs += [(k, eps)] * mult
    fs = FactorSet(str(M), pairs, shift)
    dim = M.dim(coset.r)
    if len(fs) != dim or fs.N != NM:
        raise FactorMismatch(f"{M}: {len(fs)} factors with N = {fs.N}, expected {dim} and {NM}")
    if key:
        coset.cache[key] = fs
    return fs


def v_factors(coset, check_product: bool = True) -> FactorSet:
    """Degrees with their eps; cross-checked against the invariant ring and the product formula."""
    coset = as_coset(coset)
    got = coset.cache.get(("v_factors", check_product))
    if got is not None:
        return got
    fs = module_factors(coset, V, shift=1)
    inv = invariant_factors(coset)
    if [(d, e.sort_key()) for d, e in fs.with_degrees()] != [(d, e.sort_key()) for d, e in inv]:
        raise FactorMismatch(f"V-factors {fs} differ from invariant degrees {inv}")
    if check_product and not product_formula_check(coset, fs)["ok"]:
        raise FactorMismatch("product formula fails")
    coset.cache[("v_factors", check_product)] = fs
    return fs


def codegree_factors(coset) -> FactorSet:
    return module_factors(coset, VDUAL, shift=-1)


def n_of_module(G, M: ModuleRep) -> int:
    """N(M) by Gutkin's local sum, by the closed formula and from the factors; all must agree."""
    a = n_of_module_gutkin(G, M)
    b = n_of_module_closed(G, M)
    c = module_factors(as_coset(G), M).N
    if not a == b == c:
        raise FactorMismatch(f"N({M}): Gutkin {a}, closed formula {b}, factors {c}")
    return a


# ----------------------------------------------------------------------------
# product formula


def coset_element_orders(coset: ReflectionCoset, j: int) -> list[int]:
    key = ("orders", j % coset.gamma_order)
    got = coset.cache.get(key)
    if got is None:
        cap = coset.group.order * coset.gamma_order
        got = [coset.element(rep, j).element_order(cap=cap) for rep, _, _ in class_data(coset, j)]
        coset.cache[key] = got
    return got


def product_formula_check(coset, fs: Optional[FactorSet] = None, direct: Optional[bool] = None) -> dict:
    """prod_g det(1 - T g gamma | V*) = prod_i (1 - eps_i T^d_i)^(|G|/d_i).

    The power-sum form compares logarithms: for every k,
    (1/|G|) sum_g Tr((g gamma)^k | V*) = sum over d_i | k of eps_i^(k/d_i).
    Both sides are periodic in k, so one period suffices.  Small cosets also
    expand both products directly.
    """
    coset = as_coset(coset)
    G, W = coset.group, coset.N
    fs = fs or module_factors(coset, V, shift=1)
    degs = fs.with_degrees()
    jj = (-1) % coset.gamma_order
    data = class_data(coset, jj)
    orders = coset_element_orders(coset, jj)
    P = lcm_all(orders + [d * e.order for d, e in degs])
    mats = [coset.element(rep, jj) for rep, _, _ in data]
    powers = [CycMatrix.identity(coset.r, W) for _ in mats]
    ok = True
    bad = None
    for k in range(1, P + 1):
        powers = [p @ m for p, m in zip(powers, mats)]
        lhs = Cyclotomic.zero(W)
        for (rep, size, _), p in zip(data, powers):
            lhs = lhs + p.trace() * size
        lhs = lhs * Fraction(1, G.order)
        rhs = Cyclotomic.zero(W)
        for d, e in degs:
            if k % d == 0:
                rhs = rhs + (e ** (k // d)).to_cyclotomic(W)
        if lhs != rhs:
            ok, bad = False, k
            break
    report = {"ok": ok, "period": P, "first_failure": bad}
    if direct is None:
        direct = coset.r * G.order <= 400
    if direct and ok:
        left = UniPoly([1])
        for rep, size, p in data:
            left = left * (UniPoly(p) ** size)
        right = UniPoly([1])
        for d, e in degs:
            right = right * (UniPoly.monomial(0, 1) - UniPoly.monomial(d, e.to_cyclotomic(W))) ** (G.order // d)
        report["direct"] = left == right
        report["ok"] = report["direct"]
    return report


# ----------------------------------------------------------------------------
# Psi, fake degrees, scaling


def psi_polynomial(G, M: ModuleRep) -> MultiPoly:
    """prod over hyperplanes of L_H^{N_H(M)}."""
    C = as_coset(G)
    out = MultiPoly.constant(Cyclotomic.one(C.group.N), C.r)
    for H, k in zip(C.group.arrangement, n_h_values(C, M)):
        if k:
            out = out * MultiPoly.linear(list(H.normal), C.r) ** k
    return out


def fake_degree(coset, M: ModuleRep) -> UniPoly:
    """sum of eps t^m over the M-factors."""
    coset = as_coset(coset)
    fs = module_factors(coset, M)
    W = coset.N
    out = UniPoly()
    for m, e in fs.pairs:
        out = out + UniPoly.monomial(m, e.to_cyclotomic(W))
    return out


def scaled_factors(fs: FactorSet, zeta: RootOfUnity, zeta_M: RootOfUnity) -> FactorSet:
    """eps(zeta^-1 gamma) = zeta_M zeta^m eps(gamma)."""
    return FactorSet(fs.module, [(m, zeta_M * zeta ** m * e) for m, e in fs.pairs], fs.shift)


def scaling_check(coset, M: ModuleRep, zeta: RootOfUnity) -> bool:
    coset = as_coset(coset)
    fs = module_factors(coset, M)
    shifted = coset.shifted(zeta)
    got = module_factors(shifted, M)
    return got == scaled_factors(fs, zeta, M.scalar_character(zeta))

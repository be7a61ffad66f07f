"""Finite reflection groups and reflection cosets as fully enumerated matrix groups."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .cyclo import Cyclotomic, RootOfUnity, cyc, lcm, lcm_all
from .linalg import CycArray, CycMatrix, NotFiniteOrder, Stack, dot, kernel_lists

DEFAULT_CAP = 2_000_000


class GroupTooLarge(RuntimeError):
    """Closure exceeded the enumeration cap."""


class NotNormalizing(ValueError):
    """gamma does not normalize the group."""


class NotEigenvector(ValueError):
    """The vector is not an eigenvector of the given matrix."""


@dataclass
class Hyperplane:
    normal: tuple  # covector L_H, first nonzero coordinate 1
    e: int  # order of the pointwise stabilizer G_H
    distinguished: int  # element index of the generator with eigenvalue zeta_e
    reflections: list[int] = dfield(default_factory=list)

    def evaluate(self, v: Sequence[Cyclotomic]) -> Cyclotomic:
        return dot(self.normal, v)


@dataclass
class ConjClass:
    rep: int
    members: list[int]

    @property
    def size(self) -> int:
        return len(self.members)


def _canonical_covector(row: Sequence[Cyclotomic]) -> tuple:
    lead = next(x for x in row if x)
    inv = lead.inverse()
    return tuple(x * inv for x in row)


def _components(n: int, edges: Sequence[np.ndarray]) -> list[list[int]]:
    """Connected components of the graph i -- perm[i] for each permutation array."""
    parent = np.arange(n)

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    for perm in edges:
        for i in range(n):
            a, b = find(i), find(int(perm[i]))
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    comps: dict[int, list[int]] = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return sorted(comps.values(), key=lambda c: c[0])


class ReflectionGroup:
    """A finite matrix group with its reflections, arrangement and classes."""

    def __init__(self, generators: Sequence[CycMatrix], stack: Stack, keys: list, r: int):
        self.generators = list(generators)
        self.stack = stack
        self.N = stack.N
        self.r = r
        self.keys = keys
        self.index = {k: i for i, k in enumerate(keys)}
        self._stack_at = {self.N: stack}
        self._keys_at = {self.N: self.index}
        self.cache: dict = {}

    # basic access -------------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.keys)

    def __len__(self) -> int:
        return self.order

    def element(self, i: int) -> CycMatrix:
        return self.stack[i]

    def elements(self) -> list[CycMatrix]:
        return [self.stack[i] for i in range(self.order)]

    def identity(self) -> CycMatrix:
        return CycMatrix.identity(self.r, self.N)

    def stack_at(self, W: int) -> Stack:
        s = self._stack_at.get(W)
        if s is None:
            s = self.stack.embed(W)
            self._stack_at[W] = s
        return s

    def keys_at(self, W: int) -> dict:
        d = self._keys_at.get(W)
        if d is None:
            d = {k: i for i, k in enumerate(self.stack_at(W).element_keys())}
            self._keys_at[W] = d
        return d

    def lookup(self, mats: Stack) -> list[Optional[int]]:
        """Indices of the matrices of a stack (None when not in G)."""
        W = mats.N
        if W % self.N:
            W = lcm(W, self.N)
            mats = mats.embed(W)
        table = self.keys_at(W)
        return [table.get(k) for k in mats.element_keys()]

    def index_of(self, m: CycMatrix) -> Optional[int]:
        return self.lookup(Stack.of([m]))[0]

    def __contains__(self, m: CycMatrix) -> bool:
        return self.index_of(m) is not None

    # derived structure --------------------------------------------------------
    @cached_property
    def inverse_index(self) -> np.ndarray:
        cand = self.stack.galois(-1).transpose() if self.N > 2 else self.stack.transpose()
        idx = self.lookup(cand)
        prods = self.stack.matmul(cand) if all(i is not None for i in idx) else None
        ident = self.index.get(Stack.of([self.identity()], self.N).element_keys()[0])
        out = np.zeros(self.order, dtype=np.int64)
        ok = [False] * self.order
        if prods is not None:
            for i, k in enumerate(prods.element_keys()):
                if self.index.get(k) == ident:
                    out[i] = idx[i]
                    ok[i] = True
        for i in range(self.order):
            if not ok[i]:
                j = self.index_of(self.element(i).inverse())
                out[i] = j
        return out

    @cached_property
    def identity_index(self) -> int:
        return self.index_of(self.identity())

    @cached_property
    def reflections(self) -> list[int]:
        N, r = self.N, self.r
        S = self.stack
        A = Stack(N, S.num - S.den * CycMatrix.identity(r, N).num[None], S.den)
        A2 = A.matmul(A)
        tr = A.traces()
        from .linalg import cyc_product
        tA = cyc_product("...,...ij->...ij", tr.num, A.num, N)
        out = []
        for i in range(self.order):
            if not A.num[i].any() or not tr.num[i].any():
                continue
            lhs = A2.num[i].astype(object) * (tr.den * A.den)
            rhs = tA[i].astype(object) * A2.den
            if np.array_equal(lhs, rhs):
                out.append(i)
        return out

    @cached_property
    def arrangement(self) -> list[Hyperplane]:
        N, r = self.N, self.r
        by_key: dict = {}
        order: list = []
        for i in self.reflections:
            s = self.element(i)
            rows = (s - CycMatrix.identity(r, N)).to_lists()
            row = next(rw for rw in rows if any(rw))
            L = _canonical_covector(row)
            key = tuple(x.key() for x in L)
            if key not in by_key:
                by_key[key] = (L, [])
                order.append(key)
            by_key[key][1].append(i)
        out = []
        for key in order:
            L, refl = by_key[key]
            e = len(refl) + 1
            target = Cyclotomic.zeta(e, 1, lcm(N, e))
            dist = None
            for i in refl:
                lam = self.element(i).trace() - (r - 1)
                if cyc(lam, lcm(N, e)) == target:
                    dist = i
                    break
            if dist is None:
                raise ArithmeticError("pointwise stabilizer of a hyperplane is not cyclic as expected")
            out.append(Hyperplane(L, e, dist, sorted(refl)))
        return out

    def conjugation_perm(self, m: CycMatrix, m_inv: Optional[CycMatrix] = None) -> np.ndarray:
        """Index permutation g -> m g m^-1 (m normalizing G)."""
        m_inv = m.inverse() if m_inv is None else m_inv
        W = lcm(self.N, m.N)
        S = self.stack_at(W).rmatmul(m.embed(W) if m.N != W else m).matmul(m_inv.embed(W) if m_inv.N != W else m_inv)
        idx = self.lookup(S)
        if any(i is None for i in idx):
            raise NotNormalizing("conjugation leaves the group")
        return np.array(idx, dtype=np.int64)

    @cached_property
    def generator_perms(self) -> list[np.ndarray]:
        inv = self.inverse_index
        out = []
        for s in self.generators:
            si = self.index_of(s)
            out.append(self.conjugation_perm(s, self.element(int(inv[si]))))
        return out

    @cached_property
    def classes(self) -> list[ConjClass]:
        comps = _components(self.order, self.generator_perms)
        return [ConjClass(c[0], c) for c in comps]

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=np.int64)
        for ci, c in enumerate(self.classes):
            out[c.members] = ci
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        """Orders of all elements (class invariant, computed on representatives)."""
        out = np.zeros(self.order, dtype=np.int64)
        for c in self.classes:
            out[c.members] = self.element(c.rep).element_order(cap=self.order)
        return out

    @cached_property
    def exponent(self) -> int:
        return lcm_all(int(x) for x in set(self.element_orders.tolist()))

    def is_essential(self) -> bool:
        return len(self.fixed_space()) == 0

    def fixed_space(self) -> list[list[Cyclotomic]]:
        rows = []
        for s in self.generators:
            rows += (s.embed(self.N) - CycMatrix.identity(self.r, self.N)).to_lists()
        return kernel_lists(rows, self.N, self.r)

    # vectors ----------------------------------------------------------------
    def is_regular_vector(self, v: Sequence[Cyclotomic]) -> bool:
        return all(H.evaluate(v) for H in self.arrangement)

    def stabilizer(self, v: Sequence[Cyclotomic]) -> list[int]:
        """Indices of all g with g v = v."""
        W = lcm(self.N, lcm_all(x.N for x in v))
        vv = [cyc(x, W) for x in v]
        imgs = self.stack_at(W).apply(vv)
        out = []
        for i in range(self.order):
            if all(imgs.item(i, k) == vv[k] for k in range(self.r)):
                out.append(i)
        return out

    def subgroup(self, gens_idx: Sequence[int], cap: int = DEFAULT_CAP) -> "ReflectionGroup":
        gens = [self.element(i) for i in gens_idx]
        if not gens:
            gens = [self.identity()]
        return enumerate_group(gens, cap=cap, N=self.N)

    def parent_indices(self, sub: "ReflectionGroup") -> list[int]:
        return [self.index[k] for k in sub.keys] if sub.N == self.N else self.lookup(sub.stack)

    def __repr__(self):
        return f"ReflectionGroup(r={self.r}, order={self.order}, conductor={self.N})"


def enumerate_group(generators: Sequence[CycMatrix], cap: int = DEFAULT_CAP, N: Optional[int] = None) -> ReflectionGroup:
    """Breadth-first closure with canonical-form deduplication."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    r = gens[0].rows
    if any(g.shape != (r, r) for g in gens):
        raise ValueError("generators must be square of equal size")
    if N is None:
        N = lcm_all(g.N for g in gens)
    gens = [g.embed(N) if g.N != N else g for g in gens]
    ident = Stack.of([CycMatrix.identity(r, N)], N)
    keys = list(ident.element_keys())
    seen = {keys[0]: 0}
    levels = [ident]
    frontier = ident
    while len(frontier):
        prods = [frontier.matmul(s) for s in gens]
        pkeys = [p.element_keys() for p in prods]
        new_idx = []
        for i in range(len(frontier)):
            for gi in range(len(gens)):
                k = pkeys[gi][i]
                if k not in seen:
                    seen[k] = len(keys)
                    keys.append(k)
                    new_idx.append((gi, i))
                    if len(keys) > cap:
                        raise GroupTooLarge(f"closure exceeds cap {cap}")
        if not new_idx:
            break
        den = lcm_all(prods[gi].den for gi, _ in new_idx)
        arrs = [prods[gi].num[i] * (den // prods[gi].den) for gi, i in new_idx]
        frontier = Stack(N, np.stack(arrs), den)
        levels.append(frontier)
    den = lcm_all(s.den for s in levels)
    num = np.concatenate([s.num.astype(object) * (den // s.den) if s.num.dtype == object else s.num * (den // s.den)
                          for s in levels])
    stack = Stack(N, num, den)
    return ReflectionGroup(gens, stack, keys, r)


# ----------------------------------------------------------------------------
# parabolic subgroups and eigenvector scalars


def theta_v(m: CycMatrix, v: Sequence[Cyclotomic]) -> Cyclotomic:
    """The scalar theta with m v = theta v."""
    W = lcm(m.N, lcm_all(x.N for x in v))
    mv = m.embed(W).apply([cyc(x, W) for x in v])
    vv = [cyc(x, W) for x in v]
    i = next((k for k, x in enumerate(vv) if x), None)
    if i is None:
        raise NotEigenvector("zero vector")
    theta = mv[i] / vv[i]
    if any(a != theta * b for a, b in zip(mv, vv)):
        raise NotEigenvector("vector is not an eigenvector")
    return theta


def parabolic(G: ReflectionGroup, v: Sequence[Cyclotomic]) -> tuple[ReflectionGroup, list[int]]:
    """(G_v generated by reflections fixing v, all g with g v = v)."""
    fixing = []
    for H in G.arrangement:
        if not H.evaluate(v):
            fixing += H.reflections
    Gv = G.subgroup(sorted(fixing))
    C = G.stabilizer(v)
    return Gv, C


def steinberg_holds(G: ReflectionGroup, v: Sequence[Cyclotomic]) -> bool:
    Gv, C = parabolic(G, v)
    return sorted(G.parent_indices(Gv)) == sorted(C)


def random_flat_vector(G: ReflectionGroup, rng: random.Random) -> list[Cyclotomic]:
    """A random rational combination inside the intersection of a random set of hyperplanes."""
    A = G.arrangement
    k = rng.randint(0, min(len(A), G.r))
    chosen = rng.sample(range(len(A)), k) if A else []
    rows = [list(A[i].normal) for i in chosen]
    basis = kernel_lists(rows, G.N, G.r) if rows else [
        [Cyclotomic.one(G.N) if i == j else Cyclotomic.zero(G.N) for i in range(G.r)] for j in range(G.r)]
    v = [Cyclotomic.zero(G.N) for _ in range(G.r)]
    for b in basis:
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        v = [x + y * c for x, y in zip(v, b)]
    return v


def general_vector(basis: Sequence[Sequence[Cyclotomic]], avoid: Sequence[Hyperplane], N: int) -> list[Cyclotomic]:
    """A vector in span(basis) off every listed hyperplane not containing the span.

    Tries coefficient tuples (1, t, t^2, ...) for t = 2, 3, ...
    """
    r = len(basis[0])
    relevant = [H for H in avoid if any(H.evaluate(b) for b in basis)]
    t = 1
    while True:
        t += 1
        v = [Cyclotomic.zero(N) for _ in range(r)]
        for i, b in enumerate(basis):
            c = t ** i
            v = [x + cyc(y, N) * c for x, y in zip(v, b)]
        if all(H.evaluate(v) for H in relevant):
            return v


# ----------------------------------------------------------------------------
# reflection cosets


class ReflectionCoset:
    """A coset G gamma with gamma of finite order normalizing G."""

    def __init__(self, group: ReflectionGroup, gamma: CycMatrix, gamma_order: int, conductor: int):
        self.group = group
        self.gamma = gamma
        self.gamma_order = gamma_order
        self.N = conductor
        self._stacks: dict = {}
        self._twisted: dict = {}
        self.label = ""
        self.cache: dict = {}

    @property
    def r(self) -> int:
        return self.group.r

    def gamma_power(self, j: int) -> CycMatrix:
        return self.gamma.embed(self.N).power(j % self.gamma_order)

    def coset_stack(self, j: int = 1) -> Stack:
        """The matrices g_i gamma^j in element order, at the coset conductor."""
        j %= self.gamma_order
        s = self._stacks.get(j)
        if s is None:
            base = self.group.stack_at(self.N)
            s = base if j == 0 else base.matmul(self.gamma_power(j))
            self._stacks[j] = s
        return s

    def element(self, i: int, j: int = 1) -> CycMatrix:
        return self.coset_stack(j)[i]

    def twisted_classes(self, j: int = 1) -> list[ConjClass]:
        """Orbits of G acting on G gamma^j by conjugation."""
        j %= self.gamma_order
        out = self._twisted.get(j)
        if out is not None:
            return out
        G = self.group
        if j == 0:
            out = G.classes
        else:
            W = self.N
            gj = self.gamma_power(j)
            gj_inv = self.gamma_power(-j)
            perms = []
            for s in G.generators:
                si = G.index_of(s)
                s_inv = G.element(int(G.inverse_index[si])).embed(W)
                t = gj @ s_inv @ gj_inv  # in G
                S = G.stack_at(W).rmatmul(s.embed(W)).matmul(t)
                idx = G.lookup(S)
                perms.append(np.array(idx, dtype=np.int64))
            out = [ConjClass(c[0], c) for c in _components(G.order, perms)]
        self._twisted[j] = out
        return out

    def shifted(self, zeta: RootOfUnity) -> "ReflectionCoset":
        """The coset G (zeta^-1 gamma)."""
        W = lcm(self.N, zeta.order)
        g2 = self.gamma.embed(W).scale(zeta.inverse().to_cyclotomic(W))
        return coset_new(self.group, g2)

    def __repr__(self):
        return f"ReflectionCoset({self.label or '?'}, |G|={self.group.order}, gamma order {self.gamma_order})"


def coset_new(G: ReflectionGroup, gamma: CycMatrix, cap: int = 100000) -> ReflectionCoset:
    if gamma.shape != (G.r, G.r):
        raise ValueError("gamma has the wrong size")
    n = gamma.element_order(cap=cap)
    W = lcm(lcm(G.N, gamma.N), n)
    g = gamma.embed(W) if gamma.N != W else gamma
    g_inv = g.power(n - 1)
    for s in G.generators:
        if g @ s.embed(W) @ g_inv not in G:
            raise NotNormalizing("gamma does not normalize G")
    return ReflectionCoset(G, gamma, n, W)


def untwisted(G: ReflectionGroup) -> ReflectionCoset:
    C = G.cache.get("untwisted")
    if C is None:
        C = coset_new(G, G.identity())
        G.cache["untwisted"] = C
    return C


def as_coset(obj) -> ReflectionCoset:
    return obj if isinstance(obj, ReflectionCoset) else untwisted(obj)

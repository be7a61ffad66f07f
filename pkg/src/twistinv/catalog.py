"""Concrete reflection groups and cosets: imprimitive families, a few exceptional
rank 2 groups, D4 and F4 with their diagram twists."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Iterator, Optional

from .cyclo import Cyclotomic, lcm
from .groups import (DEFAULT_CAP, GroupTooLarge, ReflectionCoset, ReflectionGroup, coset_new,
                     enumerate_group)
from .linalg import CycMatrix


class UnknownKey(ValueError):
    pass


class CatalogCheckFailed(AssertionError):
    pass


@dataclass(frozen=True)
class CatalogKey:
    family: str  # "imprimitive", "coxeter", "exceptional", "twisted", "swap"
    params: tuple

    def __str__(self) -> str:
        f, p = self.family, self.params
        if f == "imprimitive":
            de, e, r, ep = p
            return f"G({de},{e},{r})" if ep == 1 else f"G({de},{e},{r};zeta={ep})"
        if f == "coxeter":
            return f"{p[0]}{p[1]}"
        if f == "exceptional":
            return f"G{p[0]}"
        if f == "twisted":
            return p[0]
        return "swap"

    @property
    def is_twisted(self) -> bool:
        if self.family == "imprimitive":
            return self.params[3] > 1
        return self.family in ("twisted", "swap")


TWISTED = ("4G333", "2G333", "3G422", "2G5", "2G7", "3D4", "2F4")

_IMPRIMITIVE = re.compile(r"^G\((\d+),(\d+),(\d+)(?:;zeta=(\d+))?\)$")
_COXETER = re.compile(r"^([ABDF])(\d+)$")
_EXCEPTIONAL = re.compile(r"^G(5|7|15)$")


def parse_key(text: str) -> CatalogKey:
    s = text.replace(" ", "")
    m = _IMPRIMITIVE.match(s)
    if m:
        de, e, r = int(m[1]), int(m[2]), int(m[3])
        ep = int(m[4]) if m[4] else 1
        if min(de, e, r, ep) < 1 or de % e or e % ep:
            raise UnknownKey(f"invalid imprimitive parameters in {text!r}")
        return CatalogKey("imprimitive", (de, e, r, ep))
    if s in TWISTED:
        return CatalogKey("twisted", (s,))
    m = _COXETER.match(s)
    if m:
        t, n = m[1], int(m[2])
        if (t == "F" and n != 4) or (t == "D" and n < 4) or (t == "B" and n < 2) or n < 1:
            raise UnknownKey(f"unsupported Coxeter type {text!r}")
        return CatalogKey("coxeter", (t, n))
    m = _EXCEPTIONAL.match(s)
    if m:
        return CatalogKey("exceptional", (int(m[1]),))
    if s == "swap":
        return CatalogKey("swap", ())
    raise UnknownKey(f"unknown catalog key {text!r}")


# ----------------------------------------------------------------------------
# generators


def imprimitive_generators(de: int, e: int, r: int) -> list[CycMatrix]:
    d = de // e
    N = de
    gens = []
    if d > 1:
        gens.append(CycMatrix.diagonal([Cyclotomic.zeta(d, 1, N)] + [1] * (r - 1), N))
    if e > 1 and r > 1:
        z = Cyclotomic.zeta(de, 1, N)
        rows = [[0] * r for _ in range(r)]
        rows[0][1] = z.inverse()
        rows[1][0] = z
        for i in range(2, r):
            rows[i][i] = 1
        gens.append(CycMatrix.from_entries(rows, N))
    for i in range(r - 1):
        perm = list(range(r))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append(CycMatrix.permutation(perm, N))
    if not gens:
        gens.append(CycMatrix.identity(r, N))
    return gens


def imprimitive_order(de: int, e: int, r: int) -> int:
    return de ** r * factorial(r) // e


def imprimitive_degrees(de: int, e: int, r: int) -> list[int]:
    d = de // e
    return sorted([k * de for k in range(1, r)] + [r * d])


def cartan_matrix(t: str, n: int) -> list[list[int]]:
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        C[i][i + 1] = C[i + 1][i] = -1
    if t == "B":
        # last simple root short
        C[n - 2][n - 1] = -2
    elif t == "D":
        C[n - 2][n - 1] = C[n - 1][n - 2] = 0
        C[n - 3][n - 1] = C[n - 1][n - 3] = -1
    elif t == "F":
        C[1][2] = -1
        C[2][1] = -2
    return C


def coxeter_generators(t: str, n: int) -> list[CycMatrix]:
    """Simple reflections in the basis of simple roots: s_i(a_j) = a_j - C_ij a_i."""
    C = cartan_matrix(t, n)
    out = []
    for i in range(n):
        rows = [[int(a == b) for b in range(n)] for a in range(n)]
        for j in range(n):
            rows[i][j] -= C[i][j]
        out.append(CycMatrix.from_entries(rows, 1))
    return out


def coxeter_degrees(t: str, n: int) -> list[int]:
    if t == "A":
        return list(range(2, n + 2))
    if t == "B":
        return [2 * k for k in range(1, n + 1)]
    if t == "D":
        return sorted([2 * k for k in range(1, n)] + [n])
    return [2, 6, 8, 12]


def g5_generators() -> list[CycMatrix]:
    N = 24
    z3, z12 = Cyclotomic.zeta(3, 1, N), Cyclotomic.zeta(12, 1, N)
    z8 = Cyclotomic.zeta(8, 1, N)
    sqrt_m2 = z8 + z8 ** 3
    half = Fraction(1, 2)
    out = []
    for sgn in (1, -1):
        out.append(CycMatrix.from_entries([
            [(sqrt_m2 - 1) * z3 * half, z12 * (sgn * half)],
            [z12 * (sgn * half), (-sqrt_m2 - 1) * z3 * half]], N))
    return out


def _quaternion_units(N: int):
    i4 = Cyclotomic.zeta(4, 1, N)
    qi = CycMatrix.from_entries([[i4, 0], [0, -i4]], N)
    qj = CycMatrix.from_entries([[0, 1], [-1, 0]], N)
    qk = qi @ qj
    return qi, qj, qk


def g7_generators() -> list[CycMatrix]:
    """mu_12 times the binary tetrahedral group."""
    N = 24
    qi, qj, qk = _quaternion_units(N)
    one = CycMatrix.identity(2, N)
    omega = (qi + qj + qk - one).scale(Fraction(1, 2))
    return [qi, omega, one.scale(Cyclotomic.zeta(12, 1, N))]


def g15_generators() -> list[CycMatrix]:
    """mu_12 times the binary octahedral group."""
    N = 24
    qi, _, _ = _quaternion_units(N)
    z8 = Cyclotomic.zeta(8, 1, N)
    sqrt2 = z8 + z8.inverse()
    h = (CycMatrix.identity(2, N) + qi).scale(sqrt2.inverse())
    return g7_generators() + [h]


# ----------------------------------------------------------------------------
# twisting elements


def g333_gamma() -> CycMatrix:
    N = 12
    z3 = Cyclotomic.zeta(3, 1, N)
    sqrt_m3 = z3 * 2 + 1
    pre = -sqrt_m3.inverse()
    m = CycMatrix.from_entries([[z3, 1, z3 ** 2], [1, 1, 1], [z3 ** 2, 1, z3]], N)
    return m.scale(pre)


def g422_gamma() -> CycMatrix:
    N = 12
    z4, z3 = Cyclotomic.zeta(4, 1, N), Cyclotomic.zeta(3, 1, N)
    pre = (z4 + 1) / (z3 * 2)
    return CycMatrix.from_entries([[-1, 1], [z4, z4]], N).scale(pre)


def g422_listed_generators() -> list[CycMatrix]:
    z4 = Cyclotomic.zeta(4, 1, 4)
    return [CycMatrix.from_entries([[-1, 0], [0, 1]], 4),
            CycMatrix.from_entries([[0, -z4], [z4, 0]], 4),
            CycMatrix.from_entries([[0, 1], [1, 0]], 4)]


def d4_triality() -> CycMatrix:
    # a1 -> a3 -> a4 -> a1, a2 fixed (simple-root basis)
    return CycMatrix.permutation([2, 1, 3, 0], 1)


def f4_twist() -> CycMatrix:
    """Isometry exchanging long and short simple roots: a1 -> r a4, a2 -> r a3, a3 -> a2/r, a4 -> a1/r."""
    N = 8
    z8 = Cyclotomic.zeta(8, 1, N)
    r2 = z8 + z8.inverse()
    ir2 = r2.inverse()
    cols = {0: (3, r2), 1: (2, r2), 2: (1, ir2), 3: (0, ir2)}
    rows = [[0] * 4 for _ in range(4)]
    for j, (i, c) in cols.items():
        rows[i][j] = c
    return CycMatrix.from_entries(rows, N)


def block_diagonal(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    N = lcm(a.N, b.N)
    n, m = a.rows, b.rows
    rows = [[Cyclotomic.zero(N)] * (n + m) for _ in range(n + m)]
    for i, row in enumerate(a.to_lists()):
        for j, x in enumerate(row):
            rows[i][j] = x
    for i, row in enumerate(b.to_lists()):
        for j, x in enumerate(row):
            rows[n + i][n + j] = x
    return CycMatrix.from_entries(rows, N)


# ----------------------------------------------------------------------------
# building


@dataclass
class Expected:
    order: int
    nrefl: int


def _expect_from_degrees(degs: list[int]) -> Expected:
    o = 1
    for d in degs:
        o *= d
    return Expected(o, sum(d - 1 for d in degs))


@lru_cache(maxsize=None)
def _group(spec: tuple, cap: int = DEFAULT_CAP) -> ReflectionGroup:
    kind = spec[0]
    if kind == "imprimitive":
        _, de, e, r = spec
        if imprimitive_order(de, e, r) > cap:
            raise GroupTooLarge(f"G({de},{e},{r}) exceeds the cap {cap}")
        return enumerate_group(imprimitive_generators(de, e, r), cap=cap)
    if kind == "coxeter":
        return enumerate_group(coxeter_generators(spec[1], spec[2]), cap=cap)
    if kind == "G5":
        return enumerate_group(g5_generators(), cap=cap)
    if kind == "G7":
        return enumerate_group(g7_generators(), cap=cap)
    if kind == "G15":
        return enumerate_group(g15_generators(), cap=cap)
    if kind == "swap":
        base = imprimitive_generators(3, 1, 2)
        I2 = CycMatrix.identity(2, 3)
        gens = [block_diagonal(g, I2) for g in base] + [block_diagonal(I2, g) for g in base]
        return enumerate_group(gens, cap=cap)
    raise UnknownKey(str(spec))


def _check(G: ReflectionGroup, exp: Expected, label: str) -> None:
    if G.order != exp.order or len(G.reflections) != exp.nrefl:
        raise CatalogCheckFailed(
            f"{label}: order {G.order} with {len(G.reflections)} reflections, "
            f"expected {exp.order} with {exp.nrefl}")


def g7_twist(G7: ReflectionGroup) -> CycMatrix:
    """First order-2 reflection of G15 (in element order) lying outside G7."""
    G15 = _group(("G15",))
    for i in G15.reflections:
        s = G15.element(i)
        if s not in G7 and s.power(2).is_identity():
            return s
    raise CatalogCheckFailed("no order-2 reflection of G15 outside G7")


def group_spec(key: CatalogKey) -> tuple[tuple, Expected]:
    f, p = key.family, key.params
    if f == "imprimitive":
        de, e, r, _ = p
        degs = imprimitive_degrees(de, e, r)
        return ("imprimitive", de, e, r), Expected(imprimitive_order(de, e, r),
                                                    r * (r - 1) // 2 * de + r * (de // e - 1))
    if f == "coxeter":
        return ("coxeter", p[0], p[1]), _expect_from_degrees(coxeter_degrees(p[0], p[1]))
    if f == "exceptional":
        degs = {5: [6, 12], 7: [12, 12], 15: [12, 24]}[p[0]]
        return (f"G{p[0]}",), _expect_from_degrees(degs)
    if f == "swap":
        return ("swap",), Expected(18 ** 2, 2 * 7)
    name = p[0]
    base = {"4G333": parse_key("G(3,3,3)"), "2G333": parse_key("G(3,3,3)"),
            "3G422": parse_key("G(4,2,2)"), "2G5": parse_key("G5"), "2G7": parse_key("G7"),
            "3D4": parse_key("D4"), "2F4": parse_key("F4")}[name]
    return group_spec(base)


def build_group(key: CatalogKey, cap: int = DEFAULT_CAP) -> ReflectionGroup:
    spec, exp = group_spec(key)
    if exp.order > cap:
        raise GroupTooLarge(f"{key} has {exp.order} elements, above the cap {cap}")
    G = _group(spec, cap)
    _check(G, exp, str(key))
    return G


def build(key, cap: int = DEFAULT_CAP, group: Optional[ReflectionGroup] = None) -> ReflectionCoset:
    """The catalog coset for a key (or key string), validated.

    `group` supplies an already enumerated group (e.g. loaded from a cache).
    """
    if isinstance(key, str):
        key = parse_key(key)
    if group is None:
        G = build_group(key, cap)
    else:
        G = group
        _check(G, group_spec(key)[1], str(key))
    f, p = key.family, key.params
    if f == "imprimitive":
        de, e, r, ep = p
        d = de // e
        N = lcm(de, ep * d)
        gamma = CycMatrix.diagonal([Cyclotomic.zeta(ep * d, 1, N)] + [1] * (r - 1), N) if ep > 1 \
            else G.identity()
    elif f in ("coxeter", "exceptional"):
        gamma = G.identity()
    elif f == "swap":
        gamma = CycMatrix.permutation([2, 3, 0, 1], G.N)
    else:
        name = p[0]
        if name == "4G333":
            gamma = g333_gamma()
        elif name == "2G333":
            gamma = g333_gamma().power(2)
        elif name == "3G422":
            gamma = g422_gamma()
        elif name == "2G5":
            gamma = CycMatrix.diagonal([1, -1], 1)
        elif name == "2G7":
            gamma = g7_twist(G)
        elif name == "3D4":
            gamma = d4_triality()
        else:
            gamma = f4_twist()
    C = coset_new(G, gamma)
    C.label = str(key)
    return C


def table_keys(max_order: int = 5000, max_de: Optional[int] = 6, min_rank: int = 2) -> list[CatalogKey]:
    """Twisted and untwisted imprimitive keys with bounded order, then the exceptional rows."""
    out = []
    r = min_rank
    while True:
        if imprimitive_order(1, 1, r) > max_order:
            break
        de = 1
        while True:
            if max_de is not None and de > max_de:
                break
            if imprimitive_order(de, de, r) > max_order:
                break
            for e in range(1, de + 1):
                if de % e or imprimitive_order(de, e, r) > max_order:
                    continue
                if de == 1 and r == 1:
                    continue
                for ep in range(1, e + 1):
                    if e % ep == 0:
                        out.append(CatalogKey("imprimitive", (de, e, r, ep)))
            de += 1
        r += 1
    return out + [parse_key(k) for k in TWISTED]


def catalog_listing() -> list[str]:
    return ["G(de,e,r[;zeta=e'])", *TWISTED, "A<n>", "B<n>", "D<n>", "F4", "G5", "G7", "G15", "swap"]

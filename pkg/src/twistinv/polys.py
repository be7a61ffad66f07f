"""Univariate polynomials, truncated power series and sparse multivariate polynomials
with Cyclotomic coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cyclo import Cyclotomic, cyc

_BITS = 12
_MASK = (1 << _BITS) - 1


def _as_cyc(x) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.rational(x)


def _add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


class UniPoly:
    """Polynomial in one variable; trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_cyc(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    @staticmethod
    def monomial(k: int, c=1) -> "UniPoly":
        return UniPoly([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Cyclotomic:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Cyclotomic.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other) -> "UniPoly":
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        return (-self) + other

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = _as_cyc(other)
            return UniPoly([x * c for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out: list = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    t = a * b
                    out[i + j] = t if out[i + j] is None else out[i + j] + t
        return UniPoly([Cyclotomic.zero() if x is None else x for x in out])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        result = UniPoly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return len(self.coeffs) == len(other.coeffs) and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __call__(self, x):
        acc = Cyclotomic.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead_inv = other.coeffs[-1].inverse()
        q = [Cyclotomic.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + len(other.coeffs) - 1] * lead_inv
            q[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return UniPoly(q), UniPoly(rem)

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly([fn(c) for c in self.coeffs])

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        return format_poly(self.coeffs, "T")

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


def format_poly(coeffs: Sequence[Cyclotomic], var: str = "T") -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        s = str(c)
        if mono:
            if s == "1":
                s = mono
            elif s == "-1":
                s = "-" + mono
            else:
                s = (f"({s})" if (" " in s) else s) + "*" + mono
        parts.append(s)
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


class TruncSeries:
    """Power series known through degree `bound`."""

    __slots__ = ("bound", "coeffs")

    def __init__(self, bound: int, coeffs: Iterable = ()):
        cs = [_as_cyc(c) for c in list(coeffs)[: bound + 1]]
        cs += [Cyclotomic.zero()] * (bound + 1 - len(cs))
        self.bound = bound
        self.coeffs = cs

    @staticmethod
    def from_poly(p: UniPoly, bound: int) -> "TruncSeries":
        return TruncSeries(bound, p.coeffs)

    def _check(self, other: "TruncSeries"):
        if self.bound != other.bound:
            raise ValueError("truncation bounds differ")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(self.bound, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(self.bound, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "TruncSeries":
        c = _as_cyc(c)
        return TruncSeries(self.bound, [x * c for x in self.coeffs])

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, UniPoly):
            other = TruncSeries.from_poly(other, self.bound)
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check(other)
        D = self.bound
        out: list = [None] * (D + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(D + 1 - i):
                b = other.coeffs[j]
                if b:
                    t = a * b
                    out[i + j] = t if out[i + j] is None else out[i + j] + t
        return TruncSeries(D, [Cyclotomic.zero() if x is None else x for x in out])

    def invert(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = c0.inverse()
        D = self.bound
        out = [inv0]
        for k in range(1, D + 1):
            acc = Cyclotomic.zero()
            for i in range(1, k + 1):
                a = self.coeffs[i]
                if a and out[k - i]:
                    acc = acc + a * out[k - i]
            out.append(-acc * inv0)
        return TruncSeries(D, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncSeries) and self.bound == other.bound and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"TruncSeries({format_poly(self.coeffs, 'x')} + O(x^{self.bound + 1}))"


def pack(exps: Sequence[int]) -> int:
    k = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError("exponent out of range")
        k |= e << (_BITS * i)
    return k


def unpack(k: int, nvars: int) -> tuple[int, ...]:
    return tuple((k >> (_BITS * i)) & _MASK for i in range(nvars))


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the given total degree, in lexicographic order (descending)."""
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return out


class MultiPoly:
    """Sparse polynomial in nvars variables X_1..X_nvars."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[dict] = None):
        self.nvars = nvars
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    # construction -----------------------------------------------------------
    @staticmethod
    def from_dict(nvars: int, d: dict) -> "MultiPoly":
        return MultiPoly(nvars, {pack(e): _as_cyc(c) for e, c in d.items()})

    @staticmethod
    def constant(c, nvars: int) -> "MultiPoly":
        return MultiPoly(nvars, {0: _as_cyc(c)})

    @staticmethod
    def variable(i: int, nvars: int) -> "MultiPoly":
        return MultiPoly(nvars, {1 << (_BITS * i): Cyclotomic.one()})

    @staticmethod
    def linear(coeffs: Sequence, nvars: Optional[int] = None) -> "MultiPoly":
        n = len(coeffs) if nvars is None else nvars
        return MultiPoly(n, {1 << (_BITS * i): _as_cyc(c) for i, c in enumerate(coeffs)})

    # queries ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self):
        for k, c in self.terms.items():
            yield unpack(k, self.nvars), c

    def coeff(self, exps: Sequence[int]) -> Cyclotomic:
        return self.terms.get(pack(exps), Cyclotomic.zero())

    def degrees(self) -> set[int]:
        return {sum(e) for e, _ in self.items()}

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __len__(self) -> int:
        return len(self.terms)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.nvars)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            out[k] = c if v is None else v + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.nvars)
        return self + (-other)

    def scale(self, c) -> "MultiPoly":
        c = _as_cyc(c)
        if not c:
            return MultiPoly(self.nvars)
        return MultiPoly(self.nvars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                v = get(k)
                t = ca * cb
                out[k] = t if v is None else v + t
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiPoly":
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.nvars)
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[k] for k, c in self.terms.items())

    def __hash__(self):
        return hash(frozenset(self.terms))

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly(self.nvars, {k: fn(c) for k, c in self.terms.items()})

    # calculus and substitution --------------------------------------------------
    def derivative(self, i: int) -> "MultiPoly":
        out = {}
        unit = 1 << (_BITS * i)
        for k, c in self.terms.items():
            e = (k >> (_BITS * i)) & _MASK
            if e:
                out[k - unit] = c * e
        return MultiPoly(self.nvars, out)

    def evaluate(self, point: Sequence) -> Cyclotomic:
        point = [_as_cyc(x) for x in point]
        cache = [dict() for _ in point]

        def power(i: int, e: int) -> Cyclotomic:
            v = cache[i].get(e)
            if v is None:
                v = point[i] ** e
                cache[i][e] = v
            return v

        acc = Cyclotomic.zero()
        for exps, c in self.items():
            t = c
            for i, e in enumerate(exps):
                if e:
                    t = t * power(i, e)
            acc = acc + t
        return acc

    def substitute_linear(self, forms: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace X_i by the polynomial forms[i] (all with the same number of variables)."""
        nv = forms[0].nvars if forms else self.nvars
        memo: dict = {0: MultiPoly.constant(1, nv)}

        def image(k: int) -> MultiPoly:
            v = memo.get(k)
            if v is not None:
                return v
            exps = unpack(k, self.nvars)
            i = next(j for j, e in enumerate(exps) if e)
            v = image(k - (1 << (_BITS * i))) * forms[i]
            memo[k] = v
            return v

        out: dict = {}
        for k in sorted(self.terms):
            c = self.terms[k]
            for kk, cc in image(k).terms.items():
                t = c * cc
                v = out.get(kk)
                out[kk] = t if v is None else v + t
        return MultiPoly(nv, out)

    def proportional_to(self, other: "MultiPoly") -> Optional[Cyclotomic]:
        """lambda with self = lambda * other, or None."""
        if other.is_zero():
            return Cyclotomic.zero() if self.is_zero() else None
        if self.terms.keys() != other.terms.keys():
            return None
        k0 = next(iter(other.terms))
        lam = self.terms[k0] / other.terms[k0]
        for k, c in other.terms.items():
            if self.terms[k] != lam * c:
                return None
        return lam

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.items(), reverse=True):
            mono = "*".join(f"X{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
            s = str(c)
            if not mono:
                parts.append(s)
            elif s == "1":
                parts.append(mono)
            elif s == "-1":
                parts.append("-" + mono)
            else:
                parts.append((f"({s})" if " " in s else s) + "*" + mono)
        return " + ".join(parts).replace("+ -", "- ")

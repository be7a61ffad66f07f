"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Values are stored in the power basis 1, z, ..., z^(phi(N)-1) reduced modulo the
N-th cyclotomic polynomial, as an integer numerator tuple over a common positive
denominator.  The convention zeta_n = zeta_N^(N/n) is used everywhere, so
zeta_{de}^e = zeta_d holds automatically.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Union

import numpy as np

Number = Union[int, Fraction, "Cyclotomic"]


class ConductorMismatch(ValueError):
    """Raised when two values live in different cyclotomic fields."""


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        if v:
            out = lcm(out, abs(int(v)))
    return out


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        den = cyclotomic_poly(d)
        # exact division by a monic integer polynomial
        q = [0] * (len(num) - len(den) + 1)
        rem = list(num)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + len(den) - 1]
            q[i] = c
            if c:
                for j, b in enumerate(den):
                    rem[i + j] -= c * b
        num = q
    return tuple(num)


class FieldData:
    """Precomputed tables for Q(zeta_N)."""

    def __init__(self, N: int):
        self.N = N
        self.phi = phi = totient(N)
        poly = cyclotomic_poly(N)
        powers = []
        cur = [1] + [0] * (phi - 1)
        for _ in range(N):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(phi):
                    cur[i] -= top * poly[i]
        self.powers: list[tuple[int, ...]] = powers
        self.pow_array = np.array(powers, dtype=np.int64).reshape(N, phi)
        idx = (np.arange(phi)[:, None] + np.arange(phi)[None, :]) % N
        self.mul_tensor = self.pow_array[idx]
        # sparse reductions of z^k for phi <= k <= 2 phi - 2
        self.high = {
            k: tuple((t, c) for t, c in enumerate(powers[k % N]) if c)
            for k in range(phi, 2 * phi - 1)
        }
        self.units = [k for k in range(1, N + 1) if gcd(k, N) == 1] if N > 1 else [1]
        self._power_index = None
        self._galois = {}
        self._embed = {}

    @property
    def power_index(self) -> dict:
        if self._power_index is None:
            self._power_index = {p: k for k, p in enumerate(self.powers)}
        return self._power_index

    def galois_matrix(self, k: int) -> np.ndarray:
        k %= self.N
        m = self._galois.get(k)
        if m is None:
            m = self.pow_array[(np.arange(self.phi) * k) % self.N]
            self._galois[k] = m
        return m

    def embed_matrix(self, N2: int) -> np.ndarray:
        m = self._embed.get(N2)
        if m is None:
            f2 = field(N2)
            m = f2.pow_array[(np.arange(self.phi) * (N2 // self.N)) % N2]
            self._embed[N2] = m
        return m


@lru_cache(maxsize=None)
def field(N: int) -> FieldData:
    if N < 1:
        raise ValueError(f"conductor must be positive, got {N}")
    return FieldData(N)


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as a rational")


class Cyclotomic:
    """An element of Q(zeta_N)."""

    __slots__ = ("N", "num", "den")

    def __init__(self, N: int, num: tuple, den: int = 1):
        # trusted constructor: num is an int tuple of length phi(N)
        self.N = N
        self.num = num
        self.den = den

    # construction -----------------------------------------------------------
    @staticmethod
    def make(N: int, num: Iterable[int], den: int = 1) -> "Cyclotomic":
        num = tuple(int(c) for c in num)
        if den < 0:
            num, den = tuple(-c for c in num), -den
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(num):
            return Cyclotomic(N, num, 1)
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        return Cyclotomic(N, num, den)

    @staticmethod
    def from_coeffs(N: int, coeffs: Iterable) -> "Cyclotomic":
        fr = [_to_fraction(c) for c in coeffs]
        phi = totient(N)
        if len(fr) > phi:
            # allow unreduced input: fold through z^k tables
            F = field(N)
            acc = [Fraction(0)] * phi
            for k, c in enumerate(fr):
                if c:
                    for t, p in enumerate(F.powers[k % N]):
                        if p:
                            acc[t] += c * p
            fr = acc
        fr = fr + [Fraction(0)] * (phi - len(fr))
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        return Cyclotomic.make(N, [c.numerator * (den // c.denominator) for c in fr], den)

    @staticmethod
    def rational(q, N: int = 1) -> "Cyclotomic":
        q = _to_fraction(q)
        phi = totient(N)
        return Cyclotomic(N, (q.numerator,) + (0,) * (phi - 1), q.denominator)

    @staticmethod
    def zero(N: int = 1) -> "Cyclotomic":
        return Cyclotomic(N, (0,) * totient(N), 1)

    @staticmethod
    def one(N: int = 1) -> "Cyclotomic":
        return Cyclotomic(N, (1,) + (0,) * (totient(N) - 1), 1)

    @staticmethod
    def zeta(n: int, k: int = 1, N: Optional[int] = None) -> "Cyclotomic":
        """zeta_n^k at conductor N (default n)."""
        if N is None:
            N = n
        if N % n:
            raise ConductorMismatch(f"zeta_{n} does not live at conductor {N}")
        F = field(N)
        return Cyclotomic(N, F.powers[(k * (N // n)) % N], 1)

    # basic queries ----------------------------------------------------------
    @property
    def coeffs(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __bool__(self) -> bool:
        return any(self.num)

    def __complex__(self) -> complex:
        z = np.exp(2j * np.pi / self.N)
        return complex(sum(c * z**k for k, c in enumerate(self.num)) / self.den)

    # coercion ---------------------------------------------------------------
    def _coerce(self, other) -> Optional["Cyclotomic"]:
        if isinstance(other, Cyclotomic):
            if other.N == self.N:
                return other
            if other.N == 1 or other.is_rational():
                if other.is_rational():
                    return Cyclotomic(self.N, (other.num[0],) + (0,) * (len(self.num) - 1), other.den)
            raise ConductorMismatch(f"conductors {self.N} and {other.N}; embed first")
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.N, (q.numerator,) + (0,) * (len(self.num) - 1), q.denominator)
        return None

    def _widen(self, other: "Cyclotomic") -> "Cyclotomic":
        # self is rational and other has a bigger conductor
        return Cyclotomic(other.N, (self.num[0],) + (0,) * (len(other.num) - 1), self.den)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Cyclotomic) and other.N != self.N and not other.is_rational():
            if self.is_rational():
                return self._widen(other) + other
            L = lcm(self.N, other.N)
            return self.embed(L) + other.embed(L)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Cyclotomic.make(self.N, [a + b for a, b in zip(self.num, o.num)], self.den)
        return Cyclotomic.make(
            self.N, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        if isinstance(other, Cyclotomic) and other.N != self.N and not other.is_rational():
            if self.is_rational():
                return self._widen(other) - other
            L = lcm(self.N, other.N)
            return self.embed(L) - other.embed(L)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Cyclotomic.make(self.N, [a - b for a, b in zip(self.num, o.num)], self.den)
        return Cyclotomic.make(
            self.N, [a * o.den - b * self.den for a, b in zip(self.num, o.num)], self.den * o.den
        )

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Cyclotomic) and other.N != self.N and not other.is_rational():
            if self.is_rational():
                return self._widen(other) * other
            L = lcm(self.N, other.N)
            return self.embed(L) * other.embed(L)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.num, o.num
        if not any(a[1:]):
            c = a[0]
            return Cyclotomic.make(self.N, [c * x for x in b], self.den * o.den)
        if not any(b[1:]):
            c = b[0]
            return Cyclotomic.make(self.N, [c * x for x in a], self.den * o.den)
        return Cyclotomic.make(self.N, _mul_raw(self.N, a, b), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            c = self.num[0]
            sign = -1 if c < 0 else 1
            return Cyclotomic(self.N, (sign * self.den,) + (0,) * (len(self.num) - 1), abs(c))
        F = field(self.N)
        prod = None
        for k in F.units:
            if k == 1:
                continue
            conj = self.galois(k)
            prod = conj if prod is None else prod * conj
        norm = self * prod
        q = norm.to_fraction()
        return prod * Fraction(q.denominator, q.numerator)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            q = Fraction(other)
            return self * Fraction(q.denominator, q.numerator)
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.one(self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # equality and hashing -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other.N == self.N:
            return self.den == other.den and self.num == other.num
        L = lcm(self.N, other.N)
        a, b = self.embed(L), other.embed(L)
        return a.den == b.den and a.num == b.num

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        m = self.descend()
        return hash((m.N, m.num, m.den))

    def key(self) -> tuple:
        return (self.N, self.den, self.num)

    # field maps -------------------------------------------------------------
    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta_N -> zeta_N^k."""
        if gcd(k, self.N) != 1:
            raise ValueError(f"Galois exponent {k} is not coprime to {self.N}")
        if self.is_rational():
            return self
        F = field(self.N)
        k %= self.N
        acc = [0] * F.phi
        for i, c in enumerate(self.num):
            if c:
                for t, p in enumerate(F.powers[(i * k) % self.N]):
                    if p:
                        acc[t] += c * p
        return Cyclotomic(self.N, tuple(acc), self.den)

    def embed(self, N2: int) -> "Cyclotomic":
        if N2 == self.N:
            return self
        if N2 % self.N:
            raise ConductorMismatch(f"{self.N} does not divide {N2}")
        if self.is_rational():
            return Cyclotomic(N2, (self.num[0],) + (0,) * (totient(N2) - 1), self.den)
        F2 = field(N2)
        step = N2 // self.N
        acc = [0] * F2.phi
        for i, c in enumerate(self.num):
            if c:
                for t, p in enumerate(F2.powers[(i * step) % N2]):
                    if p:
                        acc[t] += c * p
        return Cyclotomic.make(N2, acc, self.den)

    def in_subfield(self, M: int) -> bool:
        """True iff the value lies in Q(zeta_M) for M | N."""
        if self.N % M:
            raise ValueError("M must divide the conductor")
        return all(self.galois(k) == self for k in field(self.N).units if k % M == 1 % M)

    def descend(self) -> "Cyclotomic":
        """The same value at the smallest conductor containing it."""
        if self.is_rational():
            return Cyclotomic.rational(self.to_fraction())
        for M in divisors(self.N):
            if M == self.N:
                return self
            if self.in_subfield(M):
                return _solve_descent(self, M)
        return self

    # root-of-unity recognition -------------------------------------------------
    def as_root_of_unity(self) -> Optional["RootOfUnity"]:
        if self.den != 1:
            return None
        F = field(self.N)
        k = F.power_index.get(self.num)
        if k is not None:
            return RootOfUnity.make(self.N, k)
        k = F.power_index.get(tuple(-c for c in self.num))
        if k is not None:
            return RootOfUnity.make(2 * self.N, 2 * k + self.N)
        return None

    # formatting -------------------------------------------------------------
    def __repr__(self):
        return f"Cyclotomic({self.N}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            mono = f"z{self.N}" if k == 1 else f"z{self.N}^{k}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"conductor": self.N, "coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "Cyclotomic":
        return Cyclotomic.from_coeffs(int(obj["conductor"]), obj["coeffs"])


def _mul_raw(N: int, a: tuple, b: tuple) -> list[int]:
    F = field(N)
    phi = F.phi
    conv = [0] * (2 * phi - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    conv[i + j] += x * y
    res = conv[:phi]
    for k in range(phi, 2 * phi - 1):
        c = conv[k]
        if c:
            for t, p in F.high[k]:
                res[t] += c * p
    return res


def _solve_descent(a: Cyclotomic, M: int) -> Cyclotomic:
    # solve sum_j c_j emb(z_M^j) = a over Q by elimination
    E = field(M).embed_matrix(a.N)
    rows = [[Fraction(int(x)) for x in E[j]] for j in range(E.shape[0])]
    target = [Fraction(c, a.den) for c in a.num]
    m, n = len(rows), len(target)
    # columns = coordinates at N; unknowns = c_j; system: sum_j c_j rows[j][t] = target[t]
    aug = [[rows[j][t] for j in range(m)] + [target[t]] for t in range(n)]
    piv_cols, r = [], 0
    for c in range(m):
        p = next((i for i in range(r, n) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    sol = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][m]
    return Cyclotomic.from_coeffs(M, sol)


class RootOfUnity:
    """zeta_order^exp with gcd(exp, order) = 1, or the identity (1, 0)."""

    __slots__ = ("order", "exp")

    def __init__(self, order: int, exp: int):
        self.order = order
        self.exp = exp

    @staticmethod
    def make(n: int, k: int) -> "RootOfUnity":
        if n < 1:
            raise ValueError("order must be positive")
        k %= n
        g = gcd(k, n)
        if k == 0:
            return RootOfUnity(1, 0)
        return RootOfUnity(n // g, k // g)

    @staticmethod
    def one() -> "RootOfUnity":
        return RootOfUnity(1, 0)

    @staticmethod
    def parse(text: str) -> "RootOfUnity":
        """Read 'k/n' (zeta_n^k), 'z<n>^<k>', '1' or '-1'."""
        text = text.strip()
        if text == "1":
            return RootOfUnity.one()
        if text == "-1":
            return RootOfUnity(2, 1)
        if text.startswith("z"):
            body = text[1:]
            n, _, k = body.partition("^")
            return RootOfUnity.make(int(n), int(k) if k else 1)
        k, _, n = text.partition("/")
        return RootOfUnity.make(int(n), int(k))

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        L = lcm(self.order, other.order)
        return RootOfUnity.make(L, self.exp * (L // self.order) + other.exp * (L // other.order))

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity.make(self.order, self.exp * e)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity.make(self.order, -self.exp)

    def is_one(self) -> bool:
        return self.order == 1

    def sort_key(self) -> tuple[int, int]:
        return (self.order, self.exp)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        if isinstance(other, RootOfUnity):
            return self.order == other.order and self.exp == other.exp
        if isinstance(other, int) and other in (1, -1):
            return self == (RootOfUnity.one() if other == 1 else RootOfUnity(2, 1))
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.exp))

    def exponent_at(self, N: int) -> int:
        """k with self = zeta_N^k (requires order | N)."""
        if N % self.order:
            raise ConductorMismatch(f"order {self.order} does not divide {N}")
        return self.exp * (N // self.order)

    def to_cyclotomic(self, N: Optional[int] = None) -> Cyclotomic:
        return Cyclotomic.zeta(self.order, self.exp, self.order if N is None else N)

    def __repr__(self):
        return f"RootOfUnity({self.order}, {self.exp})"

    def __str__(self):
        if self.order == 1:
            return "1"
        return f"z{self.order}^{self.exp}"

    def to_json(self) -> dict:
        return {"order": self.order, "exp": self.exp}

    @staticmethod
    def from_json(obj: dict) -> "RootOfUnity":
        return RootOfUnity.make(int(obj["order"]), int(obj["exp"]))


def roots_of_unity(n: int) -> list[RootOfUnity]:
    """All n-th roots of unity, ordered by (order, exponent)."""
    return sorted({RootOfUnity.make(n, k) for k in range(n)}, key=RootOfUnity.sort_key)


def cyc(x, N: int = 1) -> Cyclotomic:
    """Coerce an int, Fraction or Cyclotomic to a Cyclotomic at conductor N."""
    if isinstance(x, Cyclotomic):
        if x.N == N:
            return x
        if N % x.N == 0:
            return x.embed(N)
        if x.is_rational():
            return Cyclotomic.rational(x.to_fraction(), N)
        raise ConductorMismatch(f"cannot place conductor {x.N} value at {N}")
    return Cyclotomic.rational(x, N)

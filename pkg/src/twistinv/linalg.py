"""Exact matrices over Q(zeta_N), plus batched operations on stacks of matrices.

A CycMatrix keeps an integer tensor of shape (rows, cols, phi(N)) over one
common denominator.  Products are a single einsum against the multiplication
table of the power basis, which keeps group closure fast enough for the
groups of a few thousand elements we care about.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .cyclo import ConductorMismatch, Cyclotomic, RootOfUnity, cyc, field, lcm, lcm_all
from .polys import UniPoly

_LIMIT = 1 << 62


class NotFiniteOrder(ValueError):
    """Raised when a matrix has no finite order within the cap."""


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def _as_object(a: np.ndarray) -> np.ndarray:
    return a.astype(object) if a.dtype != object else a


def _content(a: np.ndarray) -> int:
    if a.dtype == object:
        g = 0
        for x in a.flat:
            if x:
                g = gcd(g, int(x))
                if g == 1:
                    break
        return g
    return int(np.gcd.reduce(a.ravel())) if a.size else 0


def _maybe_int64(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _maxabs(a) < (1 << 40):
        return a.astype(np.int64)
    return a


def cyc_product(spec: str, x: np.ndarray, y: np.ndarray, N: int, inner: int = 1) -> np.ndarray:
    """einsum of two coefficient tensors whose last axes are power-basis coordinates.

    `spec` is written without the coordinate axis, e.g. '...ij,...jk->...ik';
    `inner` is the length of the contracted matrix axis (for the overflow bound).
    """
    F = field(N)
    lhs, out = spec.split("->")
    a, b = lhs.split(",")
    full = f"{a}y,{b}z,yzw->{out}w"
    if F.phi == 1:
        full = f"{a}y,{b}y->{out}y"
        bound = _maxabs(x) * _maxabs(y) * inner
        if x.dtype != object and y.dtype != object and bound < _LIMIT:
            return np.einsum(full, x, y)
        return _maybe_int64(np.einsum(full, _as_object(x), _as_object(y)))
    bound = _maxabs(x) * _maxabs(y) * inner * F.phi * F.phi * int(np.abs(F.mul_tensor).max())
    if x.dtype != object and y.dtype != object and bound < _LIMIT:
        return np.einsum(full, x, y, F.mul_tensor, optimize=True)
    return _maybe_int64(np.einsum(full, _as_object(x), _as_object(y), F.mul_tensor.astype(object)))


def normalize(num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    if den < 0:
        num, den = -num, -den
    g = gcd(_content(num), den)
    if g > 1:
        num = num // g
        den //= g
    if not num.any():
        den = 1
    return num, den


def embed_coeffs(num: np.ndarray, N: int, N2: int) -> np.ndarray:
    if N == N2:
        return num
    if N2 % N:
        raise ConductorMismatch(f"{N} does not divide {N2}")
    E = field(N).embed_matrix(N2)
    if num.dtype == object:
        return _maybe_int64(np.tensordot(num, E.astype(object), axes=([-1], [0])))
    return num @ E


def galois_coeffs(num: np.ndarray, N: int, k: int) -> np.ndarray:
    if gcd(k, N) != 1:
        raise ValueError(f"Galois exponent {k} is not coprime to {N}")
    Gm = field(N).galois_matrix(k)
    if num.dtype == object:
        return np.tensordot(num, Gm.astype(object), axes=([-1], [0]))
    return num @ Gm


class CycMatrix:
    """A dense matrix with entries in Q(zeta_N)."""

    __slots__ = ("N", "num", "den")

    def __init__(self, N: int, num: np.ndarray, den: int = 1, normalized: bool = False):
        self.N = N
        if not normalized:
            num, den = normalize(num, den)
        self.num = num
        self.den = den

    # construction -----------------------------------------------------------
    @staticmethod
    def from_entries(rows: Sequence[Sequence], N: Optional[int] = None) -> "CycMatrix":
        rows = [list(r) for r in rows]
        if N is None:
            N = lcm_all(x.N for r in rows for x in r if isinstance(x, Cyclotomic))
        vals = [[cyc(x, N) for x in r] for r in rows]
        den = lcm_all(x.den for r in vals for x in r)
        phi = field(N).phi
        nr, nc = len(vals), len(vals[0]) if vals else 0
        num = np.zeros((nr, nc, phi), dtype=object)
        for i, r in enumerate(vals):
            for j, x in enumerate(r):
                f = den // x.den
                for t, c in enumerate(x.num):
                    num[i, j, t] = c * f
        return CycMatrix(N, _maybe_int64(num), den)

    @staticmethod
    def identity(n: int, N: int = 1) -> "CycMatrix":
        num = np.zeros((n, n, field(N).phi), dtype=np.int64)
        for i in range(n):
            num[i, i, 0] = 1
        return CycMatrix(N, num, 1, normalized=True)

    @staticmethod
    def zeros(r: int, c: int, N: int = 1) -> "CycMatrix":
        return CycMatrix(N, np.zeros((r, c, field(N).phi), dtype=np.int64), 1, normalized=True)

    @staticmethod
    def diagonal(entries: Sequence, N: Optional[int] = None) -> "CycMatrix":
        n = len(entries)
        rows = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return CycMatrix.from_entries(rows, N)

    @staticmethod
    def permutation(perm: Sequence[int], N: int = 1) -> "CycMatrix":
        """Matrix sending basis vector e_j to e_perm[j]."""
        n = len(perm)
        num = np.zeros((n, n, field(N).phi), dtype=np.int64)
        for j, i in enumerate(perm):
            num[i, j, 0] = 1
        return CycMatrix(N, num, 1, normalized=True)

    # shape and entries --------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.num.shape[0]

    @property
    def cols(self) -> int:
        return self.num.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.num.shape[0], self.num.shape[1])

    def entry(self, i: int, j: int) -> Cyclotomic:
        return Cyclotomic.make(self.N, [int(c) for c in self.num[i, j]], self.den)

    __getitem__ = lambda self, ij: self.entry(*ij)

    def to_lists(self) -> list[list[Cyclotomic]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def column(self, j: int) -> list[Cyclotomic]:
        return [self.entry(i, j) for i in range(self.rows)]

    # arithmetic -------------------------------------------------------------
    def _align(self, other: "CycMatrix") -> tuple["CycMatrix", "CycMatrix"]:
        if self.N == other.N:
            return self, other
        if other.is_rational():
            return self, other.embed(self.N) if self.N % other.N == 0 else other.retarget(self.N)
        if self.is_rational():
            return (self.embed(other.N) if other.N % self.N == 0 else self.retarget(other.N)), other
        raise ConductorMismatch(f"matrices at conductors {self.N} and {other.N}; embed first")

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._align(other)
        if a.cols != b.rows:
            raise ValueError("shape mismatch in matrix product")
        num = cyc_product("ij,jk->ik", a.num, b.num, a.N, a.cols)
        return CycMatrix(a.N, num, a.den * b.den)

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._align(other)
        num = _maybe_int64(_as_object(a.num) * b.den + _as_object(b.num) * a.den)
        return CycMatrix(a.N, num, a.den * b.den)

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return self + (-other)

    def __neg__(self) -> "CycMatrix":
        return CycMatrix(self.N, -self.num, self.den, normalized=True)

    def scale(self, c) -> "CycMatrix":
        c = c if isinstance(c, Cyclotomic) else Cyclotomic.rational(c)
        if c.N != self.N:
            if c.is_rational():
                c = cyc(c.to_fraction(), self.N)
            elif c.N % self.N == 0:
                return self.embed(c.N).scale(c)
            else:
                L = lcm(c.N, self.N)
                return self.embed(L).scale(c.embed(L))
        cnum = np.array(c.num, dtype=np.int64 if _maxabs(np.array(c.num, dtype=object)) < (1 << 40) else object)
        num = cyc_product("ij,->ij", self.num, cnum, self.N)
        return CycMatrix(self.N, num, self.den * c.den)

    @property
    def T(self) -> "CycMatrix":
        return CycMatrix(self.N, np.ascontiguousarray(self.num.transpose(1, 0, 2)), self.den, normalized=True)

    def power(self, e: int) -> "CycMatrix":
        if e < 0:
            return self.inverse().power(-e)
        result = CycMatrix.identity(self.rows, self.N)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    # comparisons --------------------------------------------------------------
    def key(self) -> tuple:
        num = self.num
        if num.dtype == object:
            return (self.N, self.den, tuple(int(x) for x in num.flat), num.shape)
        return (self.N, self.den, num.tobytes(), num.shape)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.N != other.N:
            L = lcm(self.N, other.N)
            return self.embed(L) == other.embed(L)
        return self.den == other.den and np.array_equal(self.num, other.num)

    def __hash__(self):
        return hash(self.key())

    def is_identity(self) -> bool:
        return self == CycMatrix.identity(self.rows, self.N)

    def is_zero(self) -> bool:
        return not self.num.any()

    def is_rational(self) -> bool:
        return not self.num[..., 1:].any()

    def is_scalar(self) -> bool:
        if self.rows != self.cols:
            return False
        d = self.num[np.arange(self.rows), np.arange(self.rows)]
        off = self.num.copy()
        off[np.arange(self.rows), np.arange(self.rows)] = 0
        return not off.any() and bool((d == d[0]).all())

    def is_monomial(self) -> bool:
        nz = self.num.any(axis=2)
        return bool((nz.sum(axis=0) == 1).all() and (nz.sum(axis=1) == 1).all())

    # field maps -------------------------------------------------------------
    def embed(self, N2: int) -> "CycMatrix":
        if N2 == self.N:
            return self
        return CycMatrix(N2, embed_coeffs(self.num, self.N, N2), self.den)

    def retarget(self, N2: int) -> "CycMatrix":
        """Move a rational matrix to any conductor."""
        if not self.is_rational():
            raise ConductorMismatch("only rational matrices can be moved freely")
        num = np.zeros(self.num.shape[:2] + (field(N2).phi,), dtype=self.num.dtype)
        num[..., 0] = self.num[..., 0]
        return CycMatrix(N2, num, self.den, normalized=True)

    def galois(self, k: int) -> "CycMatrix":
        return CycMatrix(self.N, galois_coeffs(self.num, self.N, k % self.N if self.N > 1 else 1), self.den)

    # scalar invariants --------------------------------------------------------
    def trace(self) -> Cyclotomic:
        n = min(self.rows, self.cols)
        t = self.num[np.arange(n), np.arange(n)].sum(axis=0)
        return Cyclotomic.make(self.N, [int(c) for c in t], self.den)

    def det(self) -> Cyclotomic:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return det_lists(self.to_lists(), self.N)

    def char_series(self) -> UniPoly:
        """det(1 - T M) as a polynomial in T."""
        if self.rows != self.cols:
            raise ValueError("char_series of a non-square matrix")
        n = self.rows
        traces = []
        P = self
        for i in range(n):
            traces.append(P.trace())
            if i + 1 < n:
                P = P @ self
        return UniPoly(newton_char_series(traces, self.N))

    def inverse(self) -> "CycMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = self.to_lists()
        aug = [row + [Cyclotomic.one(self.N) if i == j else Cyclotomic.zero(self.N) for j in range(n)]
               for i, row in enumerate(a)]
        rref, pivots = rref_lists(aug, self.N, ncols=n)
        if len(pivots) < n:
            raise ZeroDivisionError("singular matrix")
        return CycMatrix.from_entries([row[n:] for row in rref], self.N)

    def rank(self) -> int:
        return len(rref_lists(self.to_lists(), self.N)[1])

    def kernel(self) -> list[list[Cyclotomic]]:
        return kernel_lists(self.to_lists(), self.N, self.cols)

    def apply(self, v: Sequence) -> list[Cyclotomic]:
        N = self.N
        vals = [cyc(x, N) if not isinstance(x, Cyclotomic) or x.N == N or x.is_rational() else x for x in v]
        rows = self.to_lists()
        out = []
        for r in rows:
            acc = Cyclotomic.zero(N)
            for a, b in zip(r, vals):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def element_order(self, cap: int = 10000) -> int:
        I = CycMatrix.identity(self.rows, self.N)
        P = self
        for n in range(1, cap + 1):
            if P == I:
                return n
            P = P @ self
        raise NotFiniteOrder(f"not of finite order within cap {cap}")

    def eigen_multiset(self, order: Optional[int] = None) -> dict[RootOfUnity, int]:
        """Eigenvalues with multiplicities, by discrete Fourier inversion of traces."""
        n = order if order is not None else self.element_order()
        W = lcm(self.N, n)
        M = self.embed(W)
        traces = []
        P = CycMatrix.identity(self.rows, W)
        for _ in range(n):
            traces.append(P.trace())
            P = P @ M
        return eigen_from_traces(traces, n, W)

    def fixed_dim(self) -> int:
        return self.rows - (self - CycMatrix.identity(self.rows, self.N)).rank()

    # serialization ------------------------------------------------------------
    def to_json(self) -> dict:
        return {"conductor": self.N,
                "entries": [[[str(c) for c in x.coeffs] for x in row] for row in self.to_lists()]}

    @staticmethod
    def from_json(obj: dict) -> "CycMatrix":
        N = int(obj["conductor"])
        return CycMatrix.from_entries(
            [[Cyclotomic.from_coeffs(N, x) for x in row] for row in obj["entries"]], N)

    def __repr__(self):
        return "CycMatrix(" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.to_lists()) + ")"


# ----------------------------------------------------------------------------
# scalar helpers over lists of Cyclotomic


def newton_char_series(traces: Sequence[Cyclotomic], N: int) -> list[Cyclotomic]:
    """Coefficients of prod(1 - lambda T) from power sums p_1..p_n."""
    e = [Cyclotomic.one(N)]
    for k in range(1, len(traces) + 1):
        acc = Cyclotomic.zero(N)
        for i in range(1, k + 1):
            term = e[k - i] * cyc(traces[i - 1], N)
            acc = acc + term if i % 2 else acc - term
        e.append(acc * Fraction(1, k))
    return [x if k % 2 == 0 else -x for k, x in enumerate(e)]


def eigen_from_traces(traces: Sequence[Cyclotomic], n: int, W: int) -> dict[RootOfUnity, int]:
    """Multiplicity of zeta_n^a is (1/n) sum_j zeta_n^{-aj} Tr(M^j)."""
    out = {}
    for a in range(n):
        acc = Cyclotomic.zero(W)
        for j, t in enumerate(traces):
            if t:
                acc = acc + Cyclotomic.zeta(n, -a * j, W) * cyc(t, W)
        m = acc * Fraction(1, n)
        if not m.is_rational() or m.to_fraction().denominator != 1 or m.to_fraction() < 0:
            raise ArithmeticError(f"non-integral eigenvalue multiplicity {m}")
        k = int(m.to_fraction())
        if k:
            mu = RootOfUnity.make(n, a)
            out[mu] = out.get(mu, 0) + k
    return dict(sorted(out.items(), key=lambda kv: kv[0].sort_key()))


def det_lists(a: list[list[Cyclotomic]], N: int) -> Cyclotomic:
    """Bareiss fraction-free elimination."""
    n = len(a)
    if n == 0:
        return Cyclotomic.one(N)
    m = [[cyc(x, N) for x in row] for row in a]
    sign = 1
    prev = Cyclotomic.one(N)
    for k in range(n - 1):
        if not m[k][k]:
            p = next((i for i in range(k + 1, n) if m[i][k]), None)
            if p is None:
                return Cyclotomic.zero(N)
            m[k], m[p] = m[p], m[k]
            sign = -sign
        pinv = prev.inverse()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) * pinv
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def rref_lists(a: list[list[Cyclotomic]], N: int, ncols: Optional[int] = None):
    """Reduced row echelon form; pivots searched in the first ncols columns."""
    m = [list(row) for row in a]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def kernel_lists(a: list[list[Cyclotomic]], N: int, ncols: int) -> list[list[Cyclotomic]]:
    if not a:
        return [[Cyclotomic.one(N) if i == j else Cyclotomic.zero(N) for i in range(ncols)] for j in range(ncols)]
    rref, pivots = rref_lists(a, N)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Cyclotomic.zero(N) for _ in range(ncols)]
        v[f] = Cyclotomic.one(N)
        for i, p in enumerate(pivots):
            v[p] = -rref[i][f]
        basis.append(v)
    return basis


def dot(u: Sequence[Cyclotomic], v: Sequence[Cyclotomic]) -> Cyclotomic:
    acc = None
    for a, b in zip(u, v):
        if a and b:
            t = a * b
            acc = t if acc is None else acc + t
    if acc is None:
        N = max((x.N for x in list(u) + list(v) if isinstance(x, Cyclotomic)), default=1)
        return Cyclotomic.zero(N)
    return acc


# ----------------------------------------------------------------------------
# stacks: (B, r, c, phi) integer tensors over a common denominator


class Stack:
    """A batch of equally shaped matrices over one conductor and one denominator."""

    __slots__ = ("N", "num", "den")

    def __init__(self, N: int, num: np.ndarray, den: int = 1, normalized: bool = False):
        self.N = N
        if not normalized:
            num, den = normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def of(mats: Sequence[CycMatrix], N: Optional[int] = None) -> "Stack":
        if N is None:
            N = lcm_all(m.N for m in mats)
        mats = [m.embed(N) if m.N != N else m for m in mats]
        den = lcm_all(m.den for m in mats)
        arrs = [_as_object(m.num) * (den // m.den) if m.num.dtype == object else m.num * (den // m.den)
                for m in mats]
        return Stack(N, _maybe_int64(np.stack(arrs)), den)

    def __len__(self):
        return self.num.shape[0]

    def __getitem__(self, i) -> CycMatrix:
        return CycMatrix(self.N, self.num[i], self.den)

    def take(self, idx) -> "Stack":
        return Stack(self.N, self.num[np.asarray(idx, dtype=np.int64)], self.den)

    def matmul(self, other) -> "Stack":
        """self @ other, other a Stack of equal length or a single CycMatrix."""
        N = self.N
        if isinstance(other, CycMatrix):
            o = other.embed(lcm(N, other.N)) if other.N != N else other
            if o.N != N:
                return self.embed(o.N).matmul(o)
            return Stack(N, cyc_product("...ij,jk->...ik", self.num, o.num, N, o.num.shape[0]), self.den * o.den)
        if other.N != N:
            L = lcm(N, other.N)
            return self.embed(L).matmul(other.embed(L))
        return Stack(N, cyc_product("...ij,...jk->...ik", self.num, other.num, N, other.num.shape[-3]), self.den * other.den)

    def rmatmul(self, m: CycMatrix) -> "Stack":
        """m @ self."""
        N = self.N
        if m.N != N:
            L = lcm(N, m.N)
            return self.embed(L).rmatmul(m.embed(L))
        return Stack(N, cyc_product("ij,...jk->...ik", m.num, self.num, N, m.num.shape[1]), self.den * m.den)

    def embed(self, N2: int) -> "Stack":
        if N2 == self.N:
            return self
        return Stack(N2, embed_coeffs(self.num, self.N, N2), self.den)

    def galois(self, k: int) -> "Stack":
        if self.N == 1:
            return self
        return Stack(self.N, galois_coeffs(self.num, self.N, k % self.N), self.den)

    def transpose(self) -> "Stack":
        return Stack(self.N, np.ascontiguousarray(np.swapaxes(self.num, 1, 2)), self.den, normalized=True)

    def element_keys(self) -> list[tuple]:
        """Per-element canonical keys (each element normalized on its own)."""
        B = self.num.shape[0]
        flat = self.num.reshape(B, -1)
        if flat.dtype == object:
            keys = []
            for i in range(B):
                g = gcd(_content(flat[i]), self.den) or self.den
                red = np.array([int(x) // g for x in flat[i]], dtype=object)
                if _maxabs(red) < _LIMIT:
                    keys.append((self.den // g, red.astype(np.int64).tobytes()))
                else:
                    keys.append((self.den // g, tuple(int(x) for x in red)))
            return keys
        g = np.gcd(np.gcd.reduce(flat, axis=1), self.den)
        g[g == 0] = self.den
        red = flat // g[:, None]
        dens = self.den // g
        return [(int(dens[i]), red[i].tobytes()) for i in range(B)]

    def apply(self, v: Sequence[Cyclotomic]) -> "CycArray":
        """All products M_b v as a CycArray of shape (B, r)."""
        col = CycMatrix.from_entries([[x] for x in v], self.N)
        out = self.matmul(col)
        return CycArray(self.N, out.num[:, :, 0, :], out.den)

    def traces(self) -> "CycArray":
        n = min(self.num.shape[1], self.num.shape[2])
        t = self.num[:, np.arange(n), np.arange(n)].sum(axis=1)
        return CycArray(self.N, t, self.den)

    def char_series(self) -> "CycArray":
        """Batched det(1 - T M): returns a CycArray of shape (B, r+1)."""
        n = self.num.shape[1]
        pw = []
        P = self
        for i in range(n):
            pw.append(P.traces())
            if i + 1 < n:
                P = P.matmul(self)
        return newton_batched(pw, self.N)


class CycArray:
    """A batch of field elements: integer tensor (..., phi) over one denominator."""

    __slots__ = ("N", "num", "den")

    def __init__(self, N: int, num: np.ndarray, den: int = 1):
        self.N = N
        self.num, self.den = normalize(num, den)

    @staticmethod
    def ones(N: int, shape: tuple) -> "CycArray":
        num = np.zeros(shape + (field(N).phi,), dtype=np.int64)
        num[..., 0] = 1
        return CycArray(N, num, 1)

    def __mul__(self, other: "CycArray") -> "CycArray":
        return CycArray(self.N, cyc_product("...,...->...", self.num, other.num, self.N), self.den * other.den)

    def __add__(self, other: "CycArray") -> "CycArray":
        num = _maybe_int64(_as_object(self.num) * other.den + _as_object(other.num) * self.den)
        return CycArray(self.N, num, self.den * other.den)

    def __neg__(self) -> "CycArray":
        return CycArray(self.N, -self.num, self.den)

    def __sub__(self, other: "CycArray") -> "CycArray":
        return self + (-other)

    def scale_rational(self, q: Fraction) -> "CycArray":
        q = Fraction(q)
        return CycArray(self.N, self.num * q.numerator, self.den * q.denominator)

    def item(self, *idx) -> Cyclotomic:
        return Cyclotomic.make(self.N, [int(c) for c in self.num[idx]], self.den)

    def row_keys(self) -> list[bytes]:
        """Byte keys of the leading-axis slices (valid for comparison within this array)."""
        B = self.num.shape[0]
        if self.num.dtype == object:
            return [repr(tuple(int(x) for x in self.num[i].flat)).encode() for i in range(B)]
        return [self.num[i].tobytes() for i in range(B)]


def newton_batched(power_sums: list[CycArray], N: int) -> CycArray:
    B = power_sums[0].num.shape[0]
    e = [CycArray.ones(N, (B,))]
    for k in range(1, len(power_sums) + 1):
        acc = None
        for i in range(1, k + 1):
            term = e[k - i] * power_sums[i - 1]
            if i % 2 == 0:
                term = -term
            acc = term if acc is None else acc + term
        e.append(acc.scale_rational(Fraction(1, k)))
    coeffs = [x if k % 2 == 0 else -x for k, x in enumerate(e)]
    den = lcm_all(c.den for c in coeffs)
    num = np.stack([_as_object(c.num) * (den // c.den) if c.num.dtype == object else c.num * (den // c.den)
                    for c in coeffs], axis=1)
    return CycArray(N, _maybe_int64(num), den)

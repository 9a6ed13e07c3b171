from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .constants import DEFAULT_FIELD_DEGREE, MAX_FIELD_DEGREE

logger = logging.getLogger(__name__)


class FieldMismatchError(ValueError):
    pass


# --- GF(2)[t] helpers on int bit-vectors -------------------------------------

def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _poly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a and a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _mulmod(a: int, b: int, f: int) -> int:
    return _poly_mod(_clmul(a, b), f)


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out: list[int] = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def is_irreducible(f: int) -> bool:
    """Rabin's test for a polynomial over GF(2) given as a bit-vector."""
    m = f.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if not f & 1:
        return False

    def frob(k: int) -> int:
        r = 2
        for _ in range(k):
            r = _mulmod(r, r, f)
        return r

    if frob(m) != 2:
        return False
    for p in _prime_factors(m):
        if _poly_gcd(f, frob(m // p) ^ 2) != 1:
            return False
    return True


def sieve_modulus(m: int) -> int:
    # coefficient tuples (c0, ..., c_{m-1}) in lexicographic order from the constant term up
    start = 0 if m == 1 else 1 << (m - 1)
    for n in range(start, 1 << m):
        poly = 1 << m
        for i in range(m):
            if (n >> (m - 1 - i)) & 1:
                poly |= 1 << i
        if is_irreducible(poly):
            return poly
    raise ValueError(f"no irreducible polynomial of degree {m}")


def format_modulus(f: int) -> str:
    terms = []
    for i in range(f.bit_length() - 1, -1, -1):
        if (f >> i) & 1:
            terms.append("1" if i == 0 else "t" if i == 1 else f"t^{i}")
    return "+".join(terms)


def parse_modulus(text: str) -> int:
    f = 0
    for raw in text.replace(" ", "").split("+"):
        if raw == "1":
            f ^= 1
        elif raw == "t":
            f ^= 2
        elif raw.startswith("t^") and raw[2:].isdigit():
            f ^= 1 << int(raw[2:])
        else:
            raise ValueError(f"bad modulus term {raw!r}")
    return f


# --- field context ----------------------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    m: int
    modulus: int
    primitive: int = field(compare=False, repr=False)
    exp: np.ndarray = field(compare=False, repr=False)
    log: np.ndarray = field(compare=False, repr=False)
    trace_mask: int = field(compare=False, repr=False)
    as_rows: tuple[tuple[int, int, int], ...] = field(compare=False, repr=False)

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        return self.q - 1

    @property
    def name(self) -> str:
        return f"GF(2^{self.m})"

    def __str__(self) -> str:
        return f"{self.name}:{format_modulus(self.modulus)}"

    # scalar arithmetic on raw ints
    @property
    def gen(self) -> int:
        return _poly_mod(2, self.modulus)

    def element(self, value: int) -> "FieldElement":
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an element of {self.name}")
        return FieldElement(value, self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    @property
    def u(self) -> "FieldElement":
        return FieldElement(self.gen, self)

    @property
    def omega(self) -> int | None:
        """Smaller root of z^2+z+1, the generator of the GF(4) subfield."""
        if self.m % 2:
            return None
        return min(self.solve_quadratic(1, 1))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.order])

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError(f"0 has no inverse in {self.name}")
        return int(self.exp[(-int(self.log[a])) % self.order])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if not a:
            if e < 0:
                raise ZeroDivisionError(f"0 has no inverse in {self.name}")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def square(self, a: int) -> int:
        return self.pow(a, 2)

    frobenius = square

    def sqrt(self, a: int) -> int:
        return self.pow(a, 1 << (self.m - 1))

    def trace(self, a: int) -> int:
        return bin(a & self.trace_mask).count("1") & 1

    def subfield_degree(self, a: int) -> int:
        if a in (0, 1):
            return 1
        la = int(self.log[a])
        for d in divisors(self.m):
            if (la * (1 << d)) % self.order == la:
                return d
        return self.m

    def subfield_elements(self, k: int) -> list[int]:
        if self.m % k:
            raise ValueError(f"GF(2^{k}) is not a subfield of {self.name}")
        step = self.order // ((1 << k) - 1)
        return [0] + sorted(int(v) for v in self.exp[:self.order:step])

    def _artin_schreier(self, e: int) -> int | None:
        """One w with w^2 + w = e, or None."""
        if self.m % 2:
            w, x = 0, e
            for i in range(self.m):
                if i % 2 == 0:
                    w ^= x
                x = self.square(x)
            return w
        w = 0
        for pivot, vec, tag in self.as_rows:
            if (e >> pivot) & 1:
                e ^= vec
                w ^= tag
        return w if e == 0 else None

    def solve_quadratic(self, b: int, c: int) -> list[int]:
        """Roots of z^2 + b z + c in the ambient field, sorted."""
        if b == 0:
            return [self.sqrt(c)]
        e = self.div(c, self.square(b))
        if self.trace(e):
            return []
        w = self._artin_schreier(e)
        if w is None:
            return []
        r = self.mul(b, w)
        return sorted((r, r ^ b))

    def format(self, a: int) -> str:
        if a == 0:
            return "0"
        terms = []
        for i in range(a.bit_length() - 1, -1, -1):
            if (a >> i) & 1:
                terms.append("1" if i == 0 else "u" if i == 1 else f"u^{i}")
        return "+".join(terms)

    # vectorised arithmetic on int64 arrays
    def vmul(self, a: np.ndarray, b: np.ndarray | int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        idx = (self.log[a] + self.log[b]) % self.order
        return np.where((a != 0) & (b != 0), self.exp[idx], 0).astype(np.int64, copy=False)

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        idx = (self.log[a] * e) % self.order
        return np.where(a != 0, self.exp[idx], 0).astype(np.int64, copy=False)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        idx = (-self.log[a]) % self.order
        return np.where(a != 0, self.exp[idx], 0).astype(np.int64, copy=False)

    def vdiv(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vmul(a, self.vinv(b))

    def vsqrt(self, a: np.ndarray) -> np.ndarray:
        return self.vpow(a, 1 << (self.m - 1))

    # linear algebra over the field
    def rank(self, rows: np.ndarray) -> int:
        return len(self.row_reduce(rows)[1])

    def row_reduce(self, rows: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot columns."""
        a = np.array(rows, dtype=np.int64, copy=True)
        if a.ndim != 2 or a.size == 0:
            return a, []
        nrows, ncols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                a[[r, p]] = a[[p, r]]
            a[r] = self.vmul(a[r], self.inv(int(a[r, c])))
            col = a[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                a[hit] ^= self.vmul(col[hit][:, None], a[r][None, :])
            pivots.append(c)
            r += 1
        return a, pivots

    def nullspace(self, rows: np.ndarray) -> list[list[int]]:
        """Basis of {v : rows @ v = 0}."""
        a, pivots = self.row_reduce(rows)
        ncols = a.shape[1]
        basis = []
        for free in (c for c in range(ncols) if c not in pivots):
            v = [0] * ncols
            v[free] = 1
            for i, pc in enumerate(pivots):
                v[pc] = int(a[i, free])
            basis.append(v)
        return basis

    def mat_inv(self, mat: list[list[int]]) -> list[list[int]]:
        n = len(mat)
        aug = np.array([list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)],
                       dtype=np.int64)
        red, pivots = self.row_reduce(aug)
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return [[int(v) for v in red[i, n:]] for i in range(n)]

    def mat_mul(self, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
        out = []
        for row in a:
            new = []
            for j in range(len(b[0])):
                acc = 0
                for k, x in enumerate(row):
                    acc ^= self.mul(x, b[k][j])
                new.append(acc)
            out.append(new)
        return out

    def mat_vec(self, a: list[list[int]], v: Iterable[int]) -> list[int]:
        v = list(v)
        out = []
        for row in a:
            acc = 0
            for x, y in zip(row, v):
                acc ^= self.mul(x, y)
            out.append(acc)
        return out


# --- elements ------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    value: int
    ctx: FieldCtx = field(repr=False)

    def _other(self, other: object) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldMismatchError(f"{self.ctx.name} element combined with {other.ctx.name} element")
            return other.value
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "FieldElement":
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value ^ v, self.ctx)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other: object) -> "FieldElement":
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx.mul(self.value, v), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "FieldElement":
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx.div(self.value, v), self.ctx)

    def __rtruediv__(self, other: object) -> "FieldElement":
        v = self._other(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx.div(v, self.value), self.ctx)

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.ctx.pow(self.value, e), self.ctx)

    def __neg__(self) -> "FieldElement":
        return self

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def inv(self) -> "FieldElement":
        return FieldElement(self.ctx.inv(self.value), self.ctx)

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.ctx.square(self.value), self.ctx)

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.ctx.sqrt(self.value), self.ctx)

    def trace(self) -> int:
        return self.ctx.trace(self.value)

    def subfield_degree(self) -> int:
        return self.ctx.subfield_degree(self.value)

    def __str__(self) -> str:
        return self.ctx.format(self.value)


def _check_ctx(*elements: FieldElement) -> FieldCtx:
    ctx = elements[0].ctx
    for e in elements[1:]:
        if e.ctx != ctx:
            raise FieldMismatchError(f"{ctx.name} element combined with {e.ctx.name} element")
    return ctx


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def frobenius(x: FieldElement) -> FieldElement:
    return x.frobenius()


def sqrt(x: FieldElement) -> FieldElement:
    return x.sqrt()


def trace(x: FieldElement) -> int:
    return x.trace()


def subfield_degree(x: FieldElement) -> int:
    return x.subfield_degree()


def solve_quadratic(b: FieldElement, c: FieldElement) -> set[FieldElement]:
    ctx = _check_ctx(b, c)
    return {FieldElement(r, ctx) for r in ctx.solve_quadratic(b.value, c.value)}


# --- construction ---------------------------------------------------------------------

def _xtime(a: np.ndarray, m: int, f: int) -> np.ndarray:
    a = a << 1
    return a ^ np.where((a >> m) & 1, f, 0)


def _vec_mul_scalar(arr: np.ndarray, c: int, m: int, f: int) -> np.ndarray:
    out = np.zeros_like(arr)
    a = arr.copy()
    while c:
        if c & 1:
            out ^= a
        c >>= 1
        if c:
            a = _xtime(a, m, f)
    return out


def _find_primitive(m: int, f: int) -> int:
    order = (1 << m) - 1
    if order == 1:
        return 1
    factors = _prime_factors(order)

    def powmod(a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = _mulmod(r, a, f)
            a = _mulmod(a, a, f)
            e >>= 1
        return r

    for g in range(2, 1 << m):
        if all(powmod(g, order // p) != 1 for p in factors):
            return g
    raise ValueError("no primitive element")


def _build_tables(m: int, f: int, g: int) -> tuple[np.ndarray, np.ndarray]:
    order = (1 << m) - 1
    exp = np.zeros(order, dtype=np.int64)
    exp[0] = 1
    filled = 1
    while filled < order:
        k = min(filled, order - filled)
        step = _mulmod(int(exp[filled - 1]), g, f)  # g^filled
        exp[filled:filled + k] = _vec_mul_scalar(exp[:k], step, m, f)
        filled += k
    log = np.zeros(1 << m, dtype=np.int64)
    log[exp] = np.arange(order, dtype=np.int64)
    return exp, log


def _artin_schreier_rows(m: int, f: int) -> tuple[tuple[int, int, int], ...]:
    rows: list[tuple[int, int, int]] = []
    for i in range(m):
        basis = 1 << i
        v = _mulmod(basis, basis, f) ^ basis
        tag = basis
        for pivot, vec, t in rows:
            if (v >> pivot) & 1:
                v ^= vec
                tag ^= t
        if v:
            rows.append((v.bit_length() - 1, v, tag))
    return tuple(rows)


@lru_cache(maxsize=None)
def field_new(m: int = DEFAULT_FIELD_DEGREE, modulus: int | None = None) -> FieldCtx:
    if not 1 <= m <= MAX_FIELD_DEGREE:
        raise ValueError(f"field degree must be in 1..{MAX_FIELD_DEGREE}, got {m}")
    if modulus is None:
        modulus = sieve_modulus(m)
    elif modulus.bit_length() - 1 != m or not is_irreducible(modulus):
        raise ValueError(f"{format_modulus(modulus)} is not an irreducible polynomial of degree {m}")
    g = _find_primitive(m, modulus)
    exp, log = _build_tables(m, modulus, g)
    trace_mask = 0
    for i in range(m):
        x, tr = _poly_mod(1 << i, modulus), 0
        for _ in range(m):
            tr ^= x
            x = _mulmod(x, x, modulus)
        if tr & 1:
            trace_mask |= 1 << i
    rows = _artin_schreier_rows(m, modulus)
    logger.debug("built GF(2^%d) with modulus %s and primitive %d", m, format_modulus(modulus), g)
    return FieldCtx(m, modulus, g, exp, log, trace_mask, rows)


def parse_field_spec(text: str) -> FieldCtx:
    """`GF(2^m)` or `GF(2^m):<modulus in t>`."""
    head, _, tail = text.strip().partition(":")
    head = head.replace(" ", "")
    if not (head.startswith("GF(2^") and head.endswith(")")) or not head[5:-1].isdigit():
        raise ValueError(f"bad field spec {text!r}, expected GF(2^m) or GF(2^m):modulus")
    m = int(head[5:-1])
    return field_new(m, parse_modulus(tail) if tail else None)

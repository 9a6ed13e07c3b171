from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
import sympy

from .constants import DEFAULT_SEED
from .ff2k import FieldCtx, FieldElement, FieldMismatchError

Monomial = tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"{message}{where}")


class HomogeneityError(ValueError):
    pass


class NotSingularError(ValueError):
    pass


def _raw(ctx: FieldCtx, c: FieldElement | int) -> int:
    if isinstance(c, FieldElement):
        if c.ctx != ctx:
            raise FieldMismatchError(f"{c.ctx.name} coefficient used with {ctx.name}")
        return c.value
    return int(c)


def monomials(nvars: int, degree: int) -> list[Monomial]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def _order_key(mono: Monomial) -> tuple[int, Monomial]:
    return sum(mono), mono


def var_name(i: int) -> str:
    return f"x{i + 1}"


# --- multivariate polynomials ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class MultiPoly:
    """Sparse polynomial: exponent tuple -> raw nonzero coefficient."""

    ctx: FieldCtx
    nvars: int
    terms: Mapping[Monomial, int] = field(default_factory=dict)
    declared_degree: int | None = None

    def __post_init__(self):
        clean = {tuple(e): int(c) for e, c in self.terms.items() if c}
        for e in clean:
            if len(e) != self.nvars:
                raise ValueError(f"monomial {e} does not have {self.nvars} exponents")
            if self.declared_degree is not None and sum(e) != self.declared_degree:
                raise HomogeneityError(f"monomial {e} is not of degree {self.declared_degree}")
        object.__setattr__(self, "terms", clean)

    # construction helpers
    @classmethod
    def zero(cls, ctx: FieldCtx, nvars: int) -> "MultiPoly":
        return cls(ctx, nvars, {})

    @classmethod
    def constant(cls, ctx: FieldCtx, nvars: int, c: int | FieldElement) -> "MultiPoly":
        return cls(ctx, nvars, {(0,) * nvars: _raw(ctx, c)})

    @classmethod
    def variable(cls, ctx: FieldCtx, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(ctx, nvars, {tuple(e): 1})

    @classmethod
    def linear_form(cls, ctx: FieldCtx, coeffs: Sequence[int | FieldElement]) -> "MultiPoly":
        n = len(coeffs)
        return cls(ctx, n, {tuple(int(i == j) for j in range(n)): _raw(ctx, c) for i, c in enumerate(coeffs)})

    # basic structure
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ctx, self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[tuple[Monomial, int]]:
        for e in sorted(self.terms, key=_order_key, reverse=True):
            yield e, self.terms[e]

    def coefficient(self, mono: Monomial) -> FieldElement:
        return FieldElement(self.terms.get(tuple(mono), 0), self.ctx)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "MultiPoly"]:
        parts: dict[int, dict[Monomial, int]] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: MultiPoly(self.ctx, self.nvars, t) for d, t in sorted(parts.items())}

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def _same(self, other: "MultiPoly") -> None:
        if other.ctx != self.ctx:
            raise FieldMismatchError(f"{self.ctx.name} polynomial combined with {other.ctx.name} polynomial")
        if other.nvars != self.nvars:
            raise ValueError(f"{self.nvars}-variable polynomial combined with {other.nvars}-variable polynomial")

    # ring operations
    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) ^ c
        return MultiPoly(self.ctx, self.nvars, out)

    __sub__ = __add__

    def __mul__(self, other: "MultiPoly | FieldElement | int") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._same(other)
        mul = self.ctx.mul
        out: dict[Monomial, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) ^ mul(c1, c2)
        return MultiPoly(self.ctx, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        result = MultiPoly.constant(self.ctx, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int | FieldElement) -> "MultiPoly":
        c = _raw(self.ctx, c)
        return MultiPoly(self.ctx, self.nvars, {e: self.ctx.mul(v, c) for e, v in self.terms.items()})

    # evaluation
    def evaluate(self, point: Sequence[int | FieldElement]) -> FieldElement:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        vals = [_raw(self.ctx, v) for v in point]
        acc = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = self.ctx.mul(t, self.ctx.pow(v, k))
                    if not t:
                        break
            acc ^= t
        return FieldElement(acc, self.ctx)

    __call__ = evaluate

    def evaluate_many(self, columns: Sequence[np.ndarray | int]) -> np.ndarray:
        """Vectorised evaluation; columns broadcast against each other."""
        ctx = self.ctx
        cols = np.broadcast_arrays(*[np.asarray(c, dtype=np.int64) for c in columns])
        shape = cols[0].shape if cols else ()
        logs = [ctx.log[c] for c in cols]
        zeros = [c == 0 for c in cols]
        acc = np.zeros(shape, dtype=np.int64)
        for e, c in self.terms.items():
            idx = np.full(shape, int(ctx.log[c]), dtype=np.int64)
            alive = np.ones(shape, dtype=bool)
            for v, k in enumerate(e):
                if k:
                    idx = idx + k * logs[v]
                    alive &= ~zeros[v]
            acc ^= np.where(alive, ctx.exp[idx % ctx.order], 0)
        return acc

    # calculus and substitution
    def partial(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i] % 2:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c
        return MultiPoly(self.ctx, self.nvars, out)

    def gradient(self) -> list["MultiPoly"]:
        return [self.partial(i) for i in range(self.nvars)]

    def euler_residual(self) -> "MultiPoly":
        if not self.is_homogeneous():
            raise HomogeneityError("Euler residual needs a homogeneous polynomial")
        acc = MultiPoly.zero(self.ctx, self.nvars)
        for i in range(self.nvars):
            acc = acc + MultiPoly.variable(self.ctx, self.nvars, i) * self.partial(i)
        return acc

    def linear_substitute(self, matrix: Sequence[Sequence[int | FieldElement]]) -> "MultiPoly":
        """p(M y): variable x_i becomes sum_j M[i][j] y_j."""
        rows = [[_raw(self.ctx, v) for v in row] for row in matrix]
        if len(rows) != self.nvars or any(len(r) != self.nvars for r in rows):
            raise ValueError(f"substitution matrix must be {self.nvars}x{self.nvars}")
        self.ctx.mat_inv(rows)
        forms = [MultiPoly.linear_form(self.ctx, r) for r in rows]
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, k: int) -> MultiPoly:
            if (i, k) not in powers:
                powers[i, k] = forms[i] ** k
            return powers[i, k]

        acc = MultiPoly.zero(self.ctx, self.nvars)
        for e, c in self.terms.items():
            term = MultiPoly.constant(self.ctx, self.nvars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def is_square(self) -> "MultiPoly | None":
        if any(k % 2 for e in self.terms for k in e):
            return None
        return MultiPoly(self.ctx, self.nvars,
                         {tuple(k // 2 for k in e): self.ctx.sqrt(c) for e, c in self.terms.items()})

    def coefficient_of(self, i: int, k: int) -> "MultiPoly":
        """Coefficient of x_i^k, as a polynomial in the same variables with x_i absent."""
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                d = list(e)
                d[i] = 0
                out[tuple(d)] = c
        return MultiPoly(self.ctx, self.nvars, out)

    def specialize(self, values: Mapping[int, int | FieldElement]) -> "MultiPoly":
        """Substitute constants for the given variables; those exponents become 0."""
        vals = {i: _raw(self.ctx, v) for i, v in values.items()}
        out: dict[Monomial, int] = {}
        for e, c in self.terms.items():
            d = list(e)
            for i, v in vals.items():
                if d[i]:
                    c = self.ctx.mul(c, self.ctx.pow(v, d[i]))
                    d[i] = 0
            if c:
                key = tuple(d)
                out[key] = out.get(key, 0) ^ c
        return MultiPoly(self.ctx, self.nvars, out)

    def univariate(self, i: int) -> list[int]:
        """Coefficient list (low to high) of a polynomial involving only x_i."""
        coeffs = [0] * (max(self.degree_in(i), 0) + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError(f"polynomial is not univariate in {var_name(i)}")
            coeffs[e[i]] ^= c
        return _ustrip(coeffs)

    def drop_variable(self, i: int) -> "MultiPoly":
        """Forget x_i, which must not occur."""
        if self.degree_in(i) > 0:
            raise ValueError(f"{var_name(i)} still occurs")
        return MultiPoly(self.ctx, self.nvars - 1, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def dehomogenize(self, i: int) -> "MultiPoly":
        return self.specialize({i: 1}).drop_variable(i)

    def add_variable(self, position: int) -> "MultiPoly":
        return MultiPoly(self.ctx, self.nvars + 1,
                         {e[:position] + (0,) + e[position:]: c for e, c in self.terms.items()})

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)!r}, nvars={self.nvars}, {self.ctx.name})"


def elementary_symmetric(i: int, ctx: FieldCtx, nvars: int = 4) -> MultiPoly:
    if not 0 <= i <= nvars:
        raise ValueError(f"no elementary symmetric polynomial of degree {i} in {nvars} variables")
    terms = {}
    for combo in itertools.combinations(range(nvars), i):
        terms[tuple(int(v in combo) for v in range(nvars))] = 1
    return MultiPoly(ctx, nvars, terms)


def random_form(ctx: FieldCtx, nvars: int, degree: int, rng: np.random.Generator,
                density: float = 1.0) -> MultiPoly:
    terms = {}
    for e in monomials(nvars, degree):
        if density >= 1.0 or rng.random() < density:
            terms[e] = int(rng.integers(1, ctx.q)) if ctx.q > 2 else 1
    return MultiPoly(ctx, nvars, terms, declared_degree=degree)


# --- Taylor development at a singular point ---------------------------------------

@dataclass(frozen=True)
class TaylorTriple:
    q: MultiPoly
    g: MultiPoly
    b: MultiPoly
    transform: tuple[tuple[int, ...], ...]
    degree: int

    @property
    def multiplicity(self) -> int:
        """Lowest total degree of the local expansion."""
        for k, part in ((2, self.q), (3, self.g), (4, self.b)):
            if part:
                return k
        return self.degree

    def reassemble(self) -> MultiPoly:
        ctx = self.q.ctx
        z = MultiPoly.variable(ctx, 4, 3)
        acc = MultiPoly.zero(ctx, 4)
        for power, part in ((self.degree - 2, self.q), (self.degree - 3, self.g), (self.degree - 4, self.b)):
            if power >= 0 and part:
                acc = acc + part.add_variable(3) * z ** power
        return acc


def _point_values(point) -> list[int]:
    values = getattr(point, "values", point)
    return [int(v) for v in values]


def singular_at(F: MultiPoly, point) -> bool:
    vals = _point_values(point)
    if F.evaluate(vals):
        return False
    return all(not F.partial(i).evaluate(vals) for i in range(F.nvars))


def taylor_at_singular_point(F: MultiPoly, point) -> TaylorTriple:
    vals = _point_values(point)
    if F.nvars != 4 or not F.is_homogeneous():
        raise HomogeneityError("Taylor development needs a homogeneous polynomial in 4 variables")
    if not any(vals):
        raise ValueError("the zero vector is not a projective point")
    if not singular_at(F, vals):
        raise NotSingularError(f"{vals} is not a singular point of the surface")
    j = next(i for i, v in enumerate(vals) if v)
    columns = [[int(i == k) for i in range(4)] for k in range(4) if k != j] + [vals]
    matrix = tuple(tuple(columns[c][r] for c in range(4)) for r in range(4))
    G = F.linear_substitute(matrix)
    d = F.degree

    def part(k: int) -> MultiPoly:
        if k < 0:
            return MultiPoly.zero(F.ctx, 3)
        return G.coefficient_of(3, k).drop_variable(3)

    return TaylorTriple(part(d - 2), part(d - 3), part(d - 4), matrix, d)


# --- univariate polynomials (coefficient lists, low to high) -----------------------

def _ustrip(a: list[int]) -> list[int]:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _umonic(ctx: FieldCtx, a: list[int]) -> list[int]:
    lead = ctx.inv(a[-1])
    return [ctx.mul(c, lead) for c in a]


def _umul(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] ^= ctx.mul(x, y)
    return _ustrip(out)


def _udivmod(ctx: FieldCtx, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    a = _ustrip(a)
    b = _ustrip(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    inv_lead = ctx.inv(b[-1])
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        f = ctx.mul(a[-1], inv_lead)
        quot[shift] = f
        for i, c in enumerate(b):
            a[i + shift] ^= ctx.mul(c, f)
        a = _ustrip(a)
    return _ustrip(quot), a


def _ugcd(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    a, b = _ustrip(a), _ustrip(b)
    while b:
        a, b = b, _udivmod(ctx, a, b)[1]
    return _umonic(ctx, a) if a else []


def _usquare_mod(ctx: FieldCtx, a: list[int], f: list[int]) -> list[int]:
    sq = [0] * (2 * len(a))
    for i, c in enumerate(a):
        sq[2 * i] = ctx.square(c)
    return _udivmod(ctx, sq, f)[1]


def _x_frobenius(ctx: FieldCtx, f: list[int], k: int) -> list[int]:
    """x^(2^k) mod f."""
    r = _udivmod(ctx, [0, 1], f)[1]
    for _ in range(k):
        r = _usquare_mod(ctx, r, f)
    return r


def _uadd(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return _ustrip([(a[i] if i < len(a) else 0) ^ (b[i] if i < len(b) else 0) for i in range(n)])


def _split_roots(ctx: FieldCtx, g: list[int], rng: np.random.Generator) -> list[int]:
    """Roots of a monic squarefree g that splits into linear factors."""
    deg = len(g) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [g[0]]
    if deg == 2:
        return ctx.solve_quadratic(g[1], g[0])
    while True:
        delta = int(rng.integers(1, ctx.q))
        t = _udivmod(ctx, [0, delta], g)[1]
        acc = list(t)
        for _ in range(ctx.m - 1):
            t = _usquare_mod(ctx, t, g)
            acc = _uadd(acc, t)
        h = _ugcd(ctx, g, acc) if acc else []
        if h and 1 < len(h) < len(g):
            rest = _udivmod(ctx, g, h)[0]
            return _split_roots(ctx, h, rng) + _split_roots(ctx, _umonic(ctx, rest), rng)


def roots_raw(ctx: FieldCtx, coeffs: list[int], seed: int = DEFAULT_SEED,
              subfield: int | None = None) -> list[int]:
    f = _ustrip(coeffs)
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    if len(f) == 1:
        return []
    f = _umonic(ctx, f)
    k = subfield or ctx.m
    split = _ugcd(ctx, f, _uadd(_x_frobenius(ctx, f, k), [0, 1]))
    return sorted(_split_roots(ctx, split, np.random.default_rng(seed)))


def univariate_roots(coeffs: Sequence[FieldElement], seed: int = DEFAULT_SEED,
                     subfield: int | None = None) -> set[FieldElement]:
    if not coeffs:
        raise ValueError("the zero polynomial has every element as a root")
    ctx = coeffs[0].ctx
    return {FieldElement(r, ctx) for r in roots_raw(ctx, [_raw(ctx, c) for c in coeffs], seed, subfield)}


def univariate_gcd(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> list[FieldElement]:
    elems = list(a) + list(b)
    if not elems:
        raise ValueError("gcd of two zero polynomials is undefined")
    ctx = elems[0].ctx
    g = _ugcd(ctx, [_raw(ctx, c) for c in a], [_raw(ctx, c) for c in b])
    if not g:
        raise ValueError("gcd of two zero polynomials is undefined")
    return [FieldElement(c, ctx) for c in g]


# --- text format ------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")
_VARS = {"x1": 0, "x2": 1, "x3": 2, "x4": 3, "z": 3, "w": 3}
_CONSTS = {"u", "omega"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    return tokens


def _check_grammar(tokens: list[tuple[str, str, int]], nvars: int, text: str) -> None:
    expect_operand = True
    depth = 0
    prev = None
    for kind, value, pos in tokens:
        if kind == "name":
            if value in _VARS:
                if _VARS[value] >= nvars:
                    raise ParseError(f"variable {value} not allowed with {nvars} variables", pos)
            elif value not in _CONSTS:
                raise ParseError(f"unknown name {value!r}", pos)
        if expect_operand:
            if kind in ("num", "name"):
                if prev is not None and prev[1] == "^" and kind != "num":
                    raise ParseError("exponent must be a natural number", pos)
                expect_operand = False
            elif value == "(":
                if prev is not None and prev[1] == "^":
                    raise ParseError("exponent must be a natural number", pos)
                depth += 1
            else:
                raise ParseError(f"expected a term, found {value!r}", pos)
        else:
            if value == ")":
                depth -= 1
                if depth < 0:
                    raise ParseError("unbalanced ')'", pos)
            elif value in ("+", "-", "*", "^"):
                expect_operand = True
            else:
                raise ParseError(f"expected an operator, found {value!r}", pos)
        prev = (kind, value, pos)
    if expect_operand:
        raise ParseError("unexpected end of input", len(text))
    if depth:
        raise ParseError("unbalanced '('", len(text))


_SYM_X = sympy.symbols("x1:5")
_SYM_U, _SYM_OMEGA = sympy.symbols("u omega")


def _coefficient_value(ctx: FieldCtx, coeff: sympy.Expr) -> int:
    value = 0
    poly = sympy.Poly(coeff, _SYM_U, _SYM_OMEGA)
    for (i, j), c in poly.terms():
        if int(c) % 2 == 0:
            continue
        term = ctx.pow(ctx.gen, i)
        if j:
            if ctx.omega is None:
                raise ParseError(f"omega needs an even extension degree, field is {ctx.name}")
            term = ctx.mul(term, ctx.pow(ctx.omega, j))
        value ^= term
    return value


def parse(text: str, ctx: FieldCtx, nvars: int = 4, degree: int | None = None,
          homogeneous: bool = False) -> MultiPoly:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)
    _check_grammar(tokens, nvars, text)
    local = {f"x{i + 1}": s for i, s in enumerate(_SYM_X)}
    local.update({"z": _SYM_X[3], "w": _SYM_X[3], "u": _SYM_U, "omega": _SYM_OMEGA})
    source = " ".join(value if value != "^" else "**" for _, value, _ in tokens)
    expr = sympy.expand(sympy.parse_expr(source, local_dict=local, evaluate=True))
    terms: dict[Monomial, int] = {}
    for mono, coeff in sympy.Poly(expr, *_SYM_X).terms():
        c = _coefficient_value(ctx, coeff)
        if c:
            key = tuple(mono[:nvars])
            terms[key] = terms.get(key, 0) ^ c
    poly = MultiPoly(ctx, nvars, terms)
    if homogeneous and not poly.is_homogeneous():
        raise HomogeneityError(f"{text.strip()!r} is not homogeneous")
    if degree is not None and poly and (not poly.is_homogeneous() or poly.degree != degree):
        raise HomogeneityError(f"{text.strip()!r} is not homogeneous of degree {degree}")
    return poly


def parse_element(text: str, ctx: FieldCtx) -> FieldElement:
    poly = parse(text, ctx, nvars=0)
    return FieldElement(poly.terms.get((), 0), ctx)


def format_coefficient(ctx: FieldCtx, c: int) -> str:
    s = ctx.format(c)
    return f"({s})" if "+" in s else s


def format_poly(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for e, c in p.items():
        factors = [var_name(i) if k == 1 else f"{var_name(i)}^{k}" for i, k in enumerate(e) if k]
        if c != 1 or not factors:
            factors.insert(0, format_coefficient(p.ctx, c))
        pieces.append("*".join(factors))
    return " + ".join(pieces)


def read_polynomials(path: str | Path, ctx: FieldCtx, nvars: int = 4) -> list[MultiPoly]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse(line, ctx, nvars, homogeneous=True))
    return out


def infer_nvars(text: str) -> int:
    names = {value for kind, value, _ in _tokenize(text) if kind == "name"}
    if names & {"x4", "z", "w"}:
        return 4
    if "x3" in names:
        return 3
    return 4

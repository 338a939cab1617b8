"""Polynomials over a finite field.

``UniPoly`` is a univariate polynomial; ``ProductPoly`` is a product
g_1(x_1)···g_m(x_m) of univariate factors, one per variable; ``MultiPoly``
holds a dense coefficient tensor, used for reduced representatives modulo the
vanishing ideal of a Cartesian grid. ``CartesianSet`` fixes the grid and the
order in which its points (and therefore code coordinates) are enumerated.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np

from . import gfla
from .errors import BadIndex, BothZero, DenominatorVanishes, DuplicatePoints, FieldMismatch, SpecError
from .gf import Field

NEG_INF = -math.inf


def _same_field(a: Field, b: Field):
    if a != b:
        raise FieldMismatch(f"{a} vs {b}")


@dataclass(frozen=True, eq=False)
class UniPoly:
    field: Field
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # construction helpers
    @classmethod
    def zero(cls, field: Field) -> "UniPoly":
        return cls(field, ())

    @classmethod
    def const(cls, field: Field, c: int) -> "UniPoly":
        return cls(field, (c,))

    @classmethod
    def x(cls, field: Field) -> "UniPoly":
        return cls(field, (0, 1))

    @classmethod
    def from_roots(cls, field: Field, roots) -> "UniPoly":
        out = cls.const(field, 1)
        for r in roots:
            out = out * cls(field, (field.neg(int(r)), 1))
        return out

    # basic properties
    @property
    def degree(self):
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({self.to_str()})"

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            cs = F.format_element(c)
            if mono and cs == "1":
                terms.append(mono)
            else:
                terms.append(cs + mono)
        return " + ".join(terms)

    # arithmetic
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            _same_field(self.field, other.field)
            return other
        return UniPoly.const(self.field, int(other))

    def __add__(self, other):
        o = self._coerce(other)
        F = self.field
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly(F, tuple(F.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return UniPoly(F, tuple(F.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        F = self.field
        if not self.coeffs or not o.coeffs:
            return UniPoly.zero(F)
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return UniPoly(F, tuple(out))

    __rmul__ = __mul__

    def scale(self, c: int) -> "UniPoly":
        F, c = self.field, int(c)
        return UniPoly(F, tuple(F.mul(x, c) for x in self.coeffs))

    def __divmod__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        dq = len(self.coeffs) - len(o.coeffs)
        if dq < 0:
            return UniPoly.zero(F), self
        r = list(self.coeffs)
        ob = o.coeffs
        quo = [0] * (dq + 1)
        inv_lead = F.inv(o.lead)
        for shift in range(dq, -1, -1):
            c = F.mul(r[shift + len(ob) - 1], inv_lead)
            quo[shift] = c
            if c:
                for i, y in enumerate(ob):
                    r[shift + i] = F.sub(r[shift + i], F.mul(y, c))
        return UniPoly(F, tuple(quo)), UniPoly(F, tuple(r[: len(ob) - 1]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        return reduce(lambda a, b: a * b, [self] * k, UniPoly.const(self.field, 1))

    def __call__(self, x):
        """Evaluate at a field element or an array of field elements."""
        F = self.field
        if type(x) is int:
            acc = 0
            for c in reversed(self.coeffs):
                acc = F.add(F.mul(acc, x), c)
            return acc
        X = np.asarray(x, dtype=np.int64)
        acc = np.zeros_like(X)
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, X), c)
        return int(acc) if np.ndim(x) == 0 else acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def divides(self, other: "UniPoly") -> bool:
        return (other % self).is_zero()


def uni_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    _same_field(f.field, g.field)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def uni_lcm(f: UniPoly, g: UniPoly) -> UniPoly:
    _same_field(f.field, g.field)
    if f.is_zero() and g.is_zero():
        raise BothZero("lcm(0, 0) is undefined")
    if f.is_zero() or g.is_zero():
        return UniPoly.zero(f.field)
    return ((f * g) // uni_gcd(f, g)).monic()


def formal_derivative(f: UniPoly) -> UniPoly:
    F = f.field
    return UniPoly(F, tuple(F.mul(c, i % F.p) for i, c in enumerate(f.coeffs))[1:])


def vanishing_L(field: Field, points) -> UniPoly:
    """L(x) = prod_{s in points} (x - s)."""
    pts = [int(s) for s in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoints(f"repeated evaluation points in {pts}")
    return UniPoly.from_roots(field, pts)


def roots(f: UniPoly) -> list[int]:
    if f.is_zero():
        raise ValueError("every element is a root of the zero polynomial")
    codes = f.field.elements()
    return [int(c) for c in codes[f(codes) == 0]]


@functools.lru_cache(maxsize=None)
def _monic_irreducibles(field: Field, d: int) -> tuple[UniPoly, ...]:
    """Monic irreducible polynomials of degree ``d`` (``d >= 2``), by sieving."""
    smaller = [q for k in range(1, d // 2 + 1) for q in _monic_of_degree_irreducible(field, k)]
    out = []
    for tail in itertools.product(range(field.q), repeat=d):
        cand = UniPoly(field, tail + (1,))
        if tail[0] == 0:
            continue
        if all(not (cand % q).is_zero() for q in smaller):
            out.append(cand)
    return tuple(out)


def _monic_of_degree_irreducible(field: Field, d: int) -> tuple[UniPoly, ...]:
    if d == 1:
        return tuple(UniPoly(field, (field.neg(r), 1)) for r in range(field.q))
    return _monic_irreducibles(field, d)


def factor(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Factor into monic irreducibles: root extraction, then trial division.

    Trial division runs over cached irreducibles of degree up to half the
    remaining degree, which is adequate for the small degrees used here.
    """
    if f.is_zero():
        raise ValueError("cannot factor zero")
    F = f.field
    rest = f.monic()
    out: dict[tuple[int, ...], int] = {}

    def strip(cand: UniPoly):
        nonlocal rest
        while rest.degree >= cand.degree:
            qt, rem = divmod(rest, cand)
            if not rem.is_zero():
                break
            rest = qt
            out[cand.coeffs] = out.get(cand.coeffs, 0) + 1

    for r in roots(rest):
        strip(UniPoly(F, (F.neg(r), 1)))
    d = 2
    while rest.degree >= 2 * d:
        for cand in _monic_irreducibles(F, d):
            if rest.degree < 2 * d:
                break
            strip(cand)
        d += 1
    if rest.degree >= 1:
        out[rest.coeffs] = out.get(rest.coeffs, 0) + 1
    return sorted(((UniPoly(F, c), k) for c, k in out.items()), key=lambda t: (len(t[0].coeffs), t[0].coeffs))


def monic_divisors(f: UniPoly) -> list[UniPoly]:
    """Every monic divisor of ``f``, ordered by degree then coefficients."""
    F = f.field
    facs = factor(f)
    out = []
    for exps in itertools.product(*[range(k + 1) for _, k in facs]):
        d = UniPoly.const(F, 1)
        for (p, _), e in zip(facs, exps):
            if e:
                d = d * p**e
        out.append(d)
    return sorted(out, key=lambda p: (len(p.coeffs), p.coeffs))


def parse_poly(field: Field, text: str) -> UniPoly:
    """Parse ``"c0, c1, ..., cd"`` (low to high); entries are codes or ``a^k``."""
    s = text.strip().strip("[]")
    if not s:
        return UniPoly.zero(field)
    try:
        return UniPoly(field, tuple(field.parse_element(tok) for tok in s.split(",")))
    except SpecError as exc:
        raise SpecError(f"bad polynomial {text!r}: {exc}") from None


# -- grids and product-form polynomials ----------------------------------------

@dataclass(frozen=True, eq=False)
class CartesianSet:
    """S = S_1 x ... x S_m, enumerated lexicographically (last coordinate fastest)."""

    field: Field
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        comps = tuple(tuple(int(s) for s in c) for c in self.components)
        if not comps:
            raise SpecError("a Cartesian set needs at least one component")
        for c in comps:
            if not c:
                raise SpecError("empty point set")
            if len(set(c)) != len(c):
                raise DuplicatePoints(f"repeated points in {c}")
            if min(c) < 0 or max(c) >= self.field.q:
                raise SpecError(f"point codes out of range for {self.field}")
        object.__setattr__(self, "components", comps)

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    @property
    def n(self) -> int:
        return math.prod(self.shape)

    @cached_property
    def points(self) -> np.ndarray:
        """(n, m) array of points in enumeration order."""
        return np.array(list(itertools.product(*self.components)), dtype=np.int64).reshape(self.n, self.m)

    def permuted(self, perms) -> "CartesianSet":
        return CartesianSet(self.field, tuple(tuple(c[i] for i in p) for c, p in zip(self.components, perms)))

    def __eq__(self, other):
        return isinstance(other, CartesianSet) and self.field == other.field and self.components == other.components

    def __hash__(self):
        return hash(self.components)


@dataclass(frozen=True, eq=False)
class ProductPoly:
    """g = g_1(x_1) ... g_m(x_m)."""

    factors: tuple[UniPoly, ...]

    def __post_init__(self):
        facs = tuple(self.factors)
        if not facs:
            raise SpecError("a product polynomial needs at least one factor")
        for f in facs[1:]:
            _same_field(facs[0].field, f.field)
        object.__setattr__(self, "factors", facs)

    @classmethod
    def of(cls, *factors: UniPoly) -> "ProductPoly":
        return cls(tuple(factors))

    @property
    def field(self) -> Field:
        return self.factors[0].field

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def degrees(self) -> tuple:
        return tuple(f.degree for f in self.factors)

    @property
    def deg(self) -> int:
        """Product of the factor degrees.

        This is the dimension of the tensor code built from g, and the value
        that the Goppa dimension bounds n - t*deg(g) <= k <= n - deg(g) use.
        """
        return math.prod(self.degrees)

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def __mul__(self, other: "ProductPoly") -> "ProductPoly":
        if other.m != self.m:
            raise BadIndex("factor counts differ")
        return ProductPoly(tuple(a * b for a, b in zip(self.factors, other.factors)))

    def __eq__(self, other):
        return isinstance(other, ProductPoly) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return "ProductPoly(" + " * ".join(f"({f.to_str(f'x{j + 1}')})" for j, f in enumerate(self.factors)) + ")"

    def monic(self) -> "ProductPoly":
        return ProductPoly(tuple(f.monic() for f in self.factors))

    def gcd(self, other: "ProductPoly") -> "ProductPoly":
        return ProductPoly(tuple(uni_gcd(a, b) for a, b in zip(self.factors, other.factors)))

    def lcm(self, other: "ProductPoly") -> "ProductPoly":
        return ProductPoly(tuple(uni_lcm(a, b) for a, b in zip(self.factors, other.factors)))

    def divides(self, other: "ProductPoly") -> bool:
        return all(a.divides(b) for a, b in zip(self.factors, other.factors))

    def __call__(self, point) -> int:
        F = self.field
        out = 1
        for f, x in zip(self.factors, point):
            out = F.mul(out, f(int(x)))
        return out


@dataclass(frozen=True, eq=False)
class MultiPoly:
    """Dense multivariate polynomial; ``coeffs[a_1, ..., a_m]`` multiplies x^a."""

    field: Field
    coeffs: np.ndarray

    @property
    def m(self) -> int:
        return self.coeffs.ndim

    @classmethod
    def from_product(cls, g: ProductPoly) -> "MultiPoly":
        F = g.field
        T = np.ones((), dtype=np.int64)
        for f in g.factors:
            c = np.asarray(f.coeffs or (0,), dtype=np.int64)
            T = np.asarray(F.mul(T[..., None], c), dtype=np.int64)
        return cls(F, T)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly) or other.field != self.field or other.m != self.m:
            return False
        shape = tuple(max(a, b) for a, b in zip(self.coeffs.shape, other.coeffs.shape))
        return np.array_equal(_pad(self.coeffs, shape), _pad(other.coeffs, shape))

    __hash__ = None

    def __call__(self, point) -> int:
        F = self.field
        vals = self.coeffs
        for x in reversed(point):
            acc = np.zeros(vals.shape[:-1], dtype=np.int64)
            for i in range(vals.shape[-1] - 1, -1, -1):
                acc = F.add(F.mul(acc, int(x)), vals[..., i])
            vals = np.asarray(acc)
        return int(vals)


def _pad(T: np.ndarray, shape) -> np.ndarray:
    out = np.zeros(shape, dtype=np.int64)
    out[tuple(slice(0, s) for s in T.shape)] = T
    return out


def _mode_apply(field: Field, T: np.ndarray, M: np.ndarray, axis: int) -> np.ndarray:
    """Contract axis ``axis`` of T with the columns of M (new size = M.shape[0])."""
    Tm = np.moveaxis(T, axis, 0)
    rest = Tm.shape[1:]
    flat = Tm.reshape(Tm.shape[0], -1)
    out = field.matmul(M, flat).reshape((M.shape[0],) + rest)
    return np.moveaxis(out, 0, axis)


def _vandermonde(field: Field, pts, ncols: int) -> np.ndarray:
    P = np.asarray(pts, dtype=np.int64)
    return np.stack([field.pow(P, e) for e in range(ncols)], axis=1).reshape(len(P), ncols)


def big_L(S: CartesianSet) -> ProductPoly:
    """L(x) = prod_j L_j'(x_j), the product of derivatives of the point polynomials."""
    return ProductPoly(tuple(formal_derivative(vanishing_L(S.field, c)) for c in S.components))


def vanishing_factors(S: CartesianSet) -> tuple[UniPoly, ...]:
    return tuple(vanishing_L(S.field, c) for c in S.components)


def evaluate(f, S: CartesianSet) -> np.ndarray:
    """Values of ``f`` at the points of S, in enumeration order."""
    F = S.field
    if isinstance(f, UniPoly):
        if S.m != 1:
            raise BadIndex("a univariate polynomial can only be evaluated on a 1-dimensional grid")
        f = ProductPoly.of(f)
    if isinstance(f, ProductPoly):
        _same_field(f.field, F)
        if f.m != S.m:
            raise BadIndex(f"polynomial has {f.m} variables, grid has {S.m}")
        vals = np.ones((), dtype=np.int64)
        for g, comp in zip(f.factors, S.components):
            vals = np.asarray(F.mul(vals[..., None], g(np.asarray(comp))), dtype=np.int64)
        return vals.reshape(-1)
    if isinstance(f, MultiPoly):
        _same_field(f.field, F)
        if f.m != S.m:
            raise BadIndex(f"polynomial has {f.m} variables, grid has {S.m}")
        T = f.coeffs
        for j, comp in enumerate(S.components):
            T = _mode_apply(F, T, _vandermonde(F, comp, T.shape[j]), j)
        return T.reshape(-1)
    raise TypeError(f"cannot evaluate {type(f).__name__}")


def _reduction_matrix(field: Field, L: UniPoly, size: int) -> np.ndarray:
    """Column e holds the coefficients of x^e mod L (length deg L)."""
    n = L.degree
    R = np.zeros((n, size), dtype=np.int64)
    x = UniPoly.x(field)
    mono = UniPoly.const(field, 1)
    for e in range(size):
        r = mono % L
        R[: len(r.coeffs), e] = r.coeffs
        mono = (mono * x) % L
    return R


def reduce_mod_ideal(f, S: CartesianSet, order=None) -> MultiPoly:
    """Remainder of ``f`` modulo I(S) = (L_1(x_1), ..., L_m(x_m)).

    The result has deg_{x_j} < n_j. ``order`` permutes the variable order of
    the reduction; since the L_j form a Groebner basis the result must not
    depend on it.
    """
    F = S.field
    if isinstance(f, UniPoly):
        f = ProductPoly.of(f)
    if isinstance(f, ProductPoly):
        f = MultiPoly.from_product(f)
    _same_field(f.field, F)
    if f.m != S.m:
        raise BadIndex(f"polynomial has {f.m} variables, grid has {S.m}")
    Ls = vanishing_factors(S)
    T = f.coeffs
    for j in (order if order is not None else range(S.m)):
        T = _mode_apply(F, T, _reduction_matrix(F, Ls[j], T.shape[j]), j)
    return MultiPoly(F, T)


def interpolate(S: CartesianSet, values) -> MultiPoly:
    """The unique reduced polynomial (deg_{x_j} < n_j) taking ``values`` on S."""
    F = S.field
    T = np.asarray(values, dtype=np.int64).reshape(S.shape)
    for j, comp in enumerate(S.components):
        Vinv = gfla.inverse(F, _vandermonde(F, comp, len(comp)))
        T = _mode_apply(F, T, Vinv, j)
    return MultiPoly(F, T)


def ratio_representative(f1, f2, S: CartesianSet) -> MultiPoly:
    """The reduced polynomial r with r(s) = f1(s) / f2(s) for every s in S."""
    F = S.field
    num = evaluate(f1, S)
    den = evaluate(f2, S)
    bad = np.flatnonzero(den == 0)
    if bad.size:
        raise DenominatorVanishes(tuple(int(v) for v in S.points[bad[0]]))
    return interpolate(S, F.div(num, den))


def degree_in_variable(f, j: int):
    """Largest exponent of x_j (``j`` counts from 1) with a nonzero coefficient; ``-inf`` for 0."""
    m = f.m if isinstance(f, (ProductPoly, MultiPoly)) else 1
    if not 1 <= j <= m:
        raise BadIndex(f"variable index {j} out of range 1..{m}")
    j -= 1
    if isinstance(f, UniPoly):
        f = ProductPoly.of(f)
    if isinstance(f, ProductPoly):
        if any(g.is_zero() for g in f.factors):
            return NEG_INF
        return f.factors[j].degree
    if isinstance(f, MultiPoly):
        T = np.moveaxis(f.coeffs, j, 0).reshape(f.coeffs.shape[j], -1)
        nz = np.flatnonzero(T.any(axis=1))
        return int(nz[-1]) if nz.size else NEG_INF
    raise TypeError(f"unsupported polynomial type {type(f).__name__}")

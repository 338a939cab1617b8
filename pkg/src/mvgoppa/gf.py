"""Finite fields GF(p^e) and subfield towers F_q < F_{q^t}.

Elements are plain integers in ``[0, p^e)``: the base-p digits of an element
are the coefficients (low to high) of its polynomial representative modulo
the field's defining polynomial. All arithmetic methods accept python ints or
integer numpy arrays and broadcast like numpy ufuncs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .errors import NonPrimitiveModulusRoot, NotPrime, ReducibleModulus, SpecError

_ADD_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- GF(p)[x] helpers on coefficient lists (low-to-high), used only at setup --

def _gfp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gfp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _gfp_trim(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _gfp_trim(a)
    return a


def _gfp_is_irreducible(m: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    e = len(m) - 1
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _gfp_mod(list(m), list(tail) + [1], p):
                return False
    return True


def _mulmod_table(modulus: list[int], p: int):
    """Return a slow multiply on integer codes (setup only)."""
    e = len(modulus) - 1

    def digits(x):
        return [(x // p**i) % p for i in range(e)]

    def mul(x, y):
        a, b = digits(x), digits(y)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        r = _gfp_mod(prod, modulus, p)
        return sum(c * p**i for i, c in enumerate(r))

    return mul


class Field:
    """The finite field GF(p^e) with a fixed modulus and primitive generator ``a``.

    Build instances with :func:`make_field`; the constructor assumes the modulus
    and generator were already validated.
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...], generator: int):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(modulus)
        self.generator = generator
        self.order = self.q
        q = self.q
        self._pows = np.array([p**i for i in range(e)], dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self._digits = (codes[:, None] // self._pows[None, :]) % p

        if e == 1:
            mul = lambda x, y: x * y % p  # noqa: E731
        else:
            mul = _mulmod_table(list(modulus), p)
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        acc = 1
        for k in range(q - 1):
            exp[k] = acc
            log[acc] = k
            acc = mul(acc, generator)
        exp[q - 1:] = exp[: q - 1]
        self._exp = exp
        self._log = log
        self._neg = self._from_digits((-self._digits) % p)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self._inv = inv
        if e > 1 and q <= _ADD_TABLE_LIMIT:
            self._add_table = self._from_digits(
                (self._digits[:, None, :] + self._digits[None, :, :]) % p
            )
        else:
            self._add_table = None
        self._codes = codes
        # plain-list copies for the scalar fast paths
        self._exp_l = exp.tolist()
        self._log_l = log.tolist()
        self._neg_l = self._neg.tolist()
        self._inv_l = inv.tolist()
        self._add_l = self._add_table.tolist() if self._add_table is not None else None

    # -- identity -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
            and self.generator == other.generator
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus, self.generator))

    def to_dict(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus), "generator": self.generator}

    @classmethod
    def from_dict(cls, d: dict) -> "Field":
        f = make_field(int(d["p"]), int(d["e"]), d.get("modulus"))
        if "generator" in d and int(d["generator"]) != f.generator:
            g = int(d["generator"])
            if f.multiplicative_order(g) != f.q - 1:
                raise NonPrimitiveModulusRoot(f"{g} is not primitive in {f}")
            f = Field(f.p, f.e, f.modulus, g)
        return f

    # -- vectorised arithmetic ------------------------------------------------

    def _from_digits(self, d):
        return np.asarray(d, dtype=np.int64) @ self._pows

    @staticmethod
    def _wrap(result, *inputs):
        if all(np.ndim(x) == 0 for x in inputs):
            return int(result)
        return result

    def elements(self) -> np.ndarray:
        return self._codes.copy()

    def add(self, a, b):
        if type(a) is int and type(b) is int:
            if self.e == 1:
                return (a + b) % self.p
            if self._add_l is not None:
                return self._add_l[a][b]
        A, B = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            r = (A + B) % self.p
        elif self._add_table is not None:
            r = self._add_table[A, B]
        else:
            r = self._from_digits((self._digits[A] + self._digits[B]) % self.p)
        return self._wrap(r, a, b)

    def neg(self, a):
        if type(a) is int:
            return self._neg_l[a]
        return self._wrap(self._neg[np.asarray(a, dtype=np.int64)], a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if type(a) is int and type(b) is int:
            if self.e == 1:
                return a * b % self.p
            if a == 0 or b == 0:
                return 0
            return self._exp_l[self._log_l[a] + self._log_l[b]]
        A, B = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            r = A * B % self.p
        else:
            la, lb = self._log[A], self._log[B]
            r = np.where((la < 0) | (lb < 0), 0, self._exp[np.maximum(la, 0) + np.maximum(lb, 0)])
        return self._wrap(r, a, b)

    def inv(self, a):
        if type(a) is int and a:
            return self._inv_l[a]
        A = np.asarray(a, dtype=np.int64)
        if np.any(A == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._wrap(self._inv[A], a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        A = np.asarray(a, dtype=np.int64)
        la = self._log[A]
        if k == 0:
            r = np.ones_like(A)
        else:
            r = np.where(la < 0, 0, self._exp[(np.maximum(la, 0) * k) % (self.q - 1)])
        return self._wrap(r, a)

    def sum(self, a, axis=None):
        """Field sum along ``axis`` (digit-wise modular addition)."""
        A = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return self._wrap(A.sum(axis=axis) % self.p, A.sum(axis=axis))
        d = self._digits[A]
        ax = axis if axis is None or axis >= 0 else axis - 1
        if axis is None:
            s = d.reshape(-1, self.e).sum(axis=0) % self.p
            return int(self._from_digits(s))
        s = d.sum(axis=ax) % self.p
        return self._from_digits(s)

    def dot(self, a, b):
        """Inner product of two vectors."""
        return self.sum(self.mul(a, b))

    def matmul(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if A.shape[1] != B.shape[0]:
            raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
        if self.e == 1:
            return (A @ B) % self.p
        if A.shape[1] == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        out = np.empty((A.shape[0], B.shape[1]), dtype=np.int64)
        # chunk rows to bound the (rows, inner, cols, e) digit tensor
        step = max(1, 2_000_000 // max(1, A.shape[1] * B.shape[1] * self.e))
        for lo in range(0, A.shape[0], step):
            prod = self.mul(A[lo:lo + step, :, None], B[None, :, :])
            out[lo:lo + step] = self.sum(prod, axis=1)
        return out

    def multiplicative_order(self, x: int) -> int:
        x = int(x)
        if x == 0:
            return 0
        k = int(self._log[x])
        n = self.q - 1
        from math import gcd

        return n // gcd(n, k)

    def power_of_generator(self, k: int) -> int:
        return int(self._exp[k % (self.q - 1)])

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("log of zero")
        return int(self._log[int(x)])

    # -- text I/O -----------------------------------------------------------

    def parse_element(self, text: str) -> int:
        """Parse ``7``, ``-1``, ``a``, ``a^5`` or ``2a^3`` (scalar multiple in GF(p))."""
        s = text.strip().replace(" ", "")
        m = re.fullmatch(r"(-?\d*)\*?a(?:\^(-?\d+))?", s)
        if m:
            c, k = m.group(1), m.group(2)
            val = self.power_of_generator(int(k) if k is not None else 1)
            if c in ("", "+"):
                return val
            if c == "-":
                return self.neg(val)
            return self.mul(int(c) % self.p, val)
        if re.fullmatch(r"-?\d+", s):
            v = int(s)
            if self.e == 1:
                return v % self.p
            if v < 0:
                return self.neg((-v) % self.p)
            if v >= self.q:
                raise SpecError(f"element code {v} out of range for {self}")
            return v
        raise SpecError(f"cannot parse field element {text!r}")

    def format_element(self, x: int) -> str:
        x = int(x)
        if x == 0:
            return "0"
        if x == 1:
            return "1"
        if self.e == 1:
            return str(x)
        if x < self.p:
            return str(x)
        k = self.log(x)
        return "a" if k == 1 else f"a^{k}"


def make_field(p: int, e: int = 1, modulus=None, *, require_primitive: bool = False) -> Field:
    """Construct GF(p^e).

    Without ``modulus`` the defining polynomial is the smallest monic irreducible
    (tails ordered by their base-p integer code) whose root is primitive, and the
    generator is that root. For ``e == 1`` the generator is the smallest primitive
    root mod p and the modulus is ``x - generator``.

    With an explicit modulus whose root is not primitive the generator falls back
    to the smallest primitive element, unless ``require_primitive`` is set.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    q = p**e
    factors = prime_factors(q - 1)

    def primitive(x, mul):
        if x == 0:
            return False
        if q == 2:
            return x == 1
        for r in factors:
            acc, k, n = 1, x, (q - 1) // r
            while n:
                if n & 1:
                    acc = mul(acc, k)
                k = mul(k, k)
                n >>= 1
            if acc == 1:
                return False
        return True

    if e == 1:
        mul = lambda x, y: x * y % p  # noqa: E731
        if modulus is None:
            g = next(x for x in range(1, p) if primitive(x, mul))
            return Field(p, 1, ((-g) % p, 1), g)
        mod = [int(c) % p for c in modulus]
        if len(mod) != 2 or mod[1] != 1:
            raise ReducibleModulus(f"modulus {modulus} is not monic of degree 1")
        root = (-mod[0]) % p
        if primitive(root, mul):
            return Field(p, 1, tuple(mod), root)
        if require_primitive:
            raise NonPrimitiveModulusRoot(f"root {root} of {modulus} is not primitive")
        g = next(x for x in range(1, p) if primitive(x, mul))
        return Field(p, 1, tuple(mod), g)

    if modulus is None:
        for code in range(q):
            tail = [(code // p**i) % p for i in range(e)]
            mod = tail + [1]
            if tail[0] == 0 or not _gfp_is_irreducible(mod, p):
                continue
            if primitive(p, _mulmod_table(mod, p)):
                return Field(p, e, tuple(mod), p)
        raise AssertionError("no primitive polynomial found")  # pragma: no cover

    mod = [int(c) % p for c in modulus]
    if len(mod) != e + 1 or mod[-1] != 1:
        raise ReducibleModulus(f"modulus {list(modulus)} is not monic of degree {e}")
    if not _gfp_is_irreducible(mod, p):
        raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
    mul = _mulmod_table(mod, p)
    if primitive(p, mul):
        return Field(p, e, tuple(mod), p)
    if require_primitive:
        raise NonPrimitiveModulusRoot(f"root of {list(modulus)} is not primitive")
    g = next(x for x in range(2, q) if primitive(x, mul))
    return Field(p, e, tuple(mod), g)


def irreducible_moduli(p: int, e: int, primitive_only: bool = False) -> list[tuple[int, ...]]:
    """All monic irreducible degree-e polynomials over GF(p), in code order."""
    out = []
    for code in range(p**e):
        tail = [(code // p**i) % p for i in range(e)]
        mod = tail + [1]
        if (e > 1 and tail[0] == 0) or not _gfp_is_irreducible(mod, p):
            continue
        if primitive_only:
            try:
                make_field(p, e, mod, require_primitive=True)
            except NonPrimitiveModulusRoot:
                continue
        out.append(tuple(mod))
    return out


@dataclass(frozen=True, eq=False)
class FieldTower:
    """The pair F_q = ``base`` inside F_{q^t} = ``ext``.

    ``embed[c]`` is the image of base element ``c`` in ``ext``; ``basis`` is the
    F_q-basis (1, a, ..., a^{t-1}) of ``ext`` built from the extension generator.
    """

    base: Field
    ext: Field
    t: int
    embed: np.ndarray = dc_field(repr=False)
    basis: tuple[int, ...]
    _project: np.ndarray = dc_field(repr=False)
    _expand: np.ndarray = dc_field(repr=False)

    @property
    def q(self) -> int:
        return self.base.q

    def project(self, x):
        """Inverse of ``embed`` on the subfield; raises if ``x`` is outside it."""
        r = self._project[np.asarray(x, dtype=np.int64)]
        if np.any(r < 0):
            raise ValueError("element not in the base field")
        return Field._wrap(r, x)

    def to_dict(self) -> dict:
        return {"base": self.base.to_dict(), "ext": self.ext.to_dict(), "t": self.t}

    @cached_property
    def frobenius_fixed(self) -> np.ndarray:
        codes = self.ext.elements()
        return codes[self.ext.pow(codes, self.q) == codes]


def make_tower(base: Field, t: int, ext_modulus=None) -> FieldTower:
    """Build F_q < F_{q^t} where ``base`` is F_q."""
    if t < 1:
        raise ValueError("tower degree must be >= 1")
    if t == 1:
        ext = base
    else:
        ext = make_field(base.p, base.e * t, ext_modulus)
    if base.e == 1 or t == 1:
        embed = np.arange(base.q, dtype=np.int64)
    else:
        # smallest root of the base modulus inside ext; GF(p) constants share codes
        codes = ext.elements()
        val = np.zeros_like(codes)
        for c in reversed(base.modulus):
            val = ext.add(ext.mul(val, codes), c)
        gamma = int(codes[val == 0][0])
        embed = np.zeros(base.q, dtype=np.int64)
        gpow = [ext.pow(gamma, i) for i in range(base.e)]
        for i in range(base.e):
            embed = ext.add(embed, ext.mul(base._digits[:, i], gpow[i]))
    project = np.full(ext.q, -1, dtype=np.int64)
    project[embed] = np.arange(base.q)

    basis = tuple(ext.pow(ext.generator, i) for i in range(t)) if t > 1 else (1,)
    grid = np.indices((base.q,) * t).reshape(t, -1).T  # (q^t, t) base coefficient vectors
    x = np.zeros(grid.shape[0], dtype=np.int64)
    for i, b in enumerate(basis):
        x = ext.add(x, ext.mul(embed[grid[:, i]], b))
    expand = np.full((ext.q, t), -1, dtype=np.int64)
    expand[x] = grid
    if np.any(expand < 0):
        raise AssertionError("basis does not span the extension")  # pragma: no cover
    return FieldTower(base=base, ext=ext, t=t, embed=embed, basis=basis, _project=project, _expand=expand)


def trace(tower: FieldTower, x):
    """tr(x) = x + x^q + ... + x^{q^(t-1)}, returned as a base-field element."""
    ext = tower.ext
    X = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(X)
    y = X
    for _ in range(tower.t):
        acc = ext.add(acc, y)
        y = ext.pow(y, tower.q)
    return Field._wrap(tower._project[acc], x)


def basis_expand(tower: FieldTower, x):
    """Coordinates of ``x`` over ``tower.basis`` as base-field codes, shape ``(..., t)``."""
    r = tower._expand[np.asarray(x, dtype=np.int64)]
    return tuple(int(c) for c in r) if np.ndim(x) == 0 else r


def basis_combine(tower: FieldTower, coeffs) -> int:
    ext = tower.ext
    C = np.asarray(coeffs, dtype=np.int64)
    acc = np.zeros(C.shape[:-1], dtype=np.int64)
    for i, b in enumerate(tower.basis):
        acc = ext.add(acc, ext.mul(tower.embed[C[..., i]], b))
    return int(acc) if C.ndim == 1 else acc


def is_in_subfield(tower: FieldTower, x):
    X = np.asarray(x, dtype=np.int64)
    r = tower.ext.pow(X, tower.q) == X
    return bool(r) if np.ndim(x) == 0 else r

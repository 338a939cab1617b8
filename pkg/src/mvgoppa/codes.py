"""Linear codes and the evaluation-code families built on Cartesian grids.

Every code is stored by its canonical (RREF) generator matrix, so two codes
are equal exactly when their ``gen`` arrays match. Columns always follow the
enumeration order of the :class:`~mvgoppa.poly.CartesianSet` they came from.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import gfla
from .errors import (
    BadDimension,
    DenominatorVanishes,
    ExponentOutOfFootprint,
    FieldMismatch,
    GeneratorVanishes,
    ShapeMismatch,
)
from .gf import Field, FieldTower, basis_expand, trace
from .poly import CartesianSet, ProductPoly, UniPoly, big_L, evaluate, ratio_representative


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: Field
    gen: np.ndarray

    def __post_init__(self):
        G = gfla.as_matrix(self.gen)
        if G.size and (G.min() < 0 or G.max() >= self.field.q):
            raise FieldMismatch("generator entries out of range for the field")
        B = gfla.row_basis(self.field, G)
        B.setflags(write=False)
        object.__setattr__(self, "gen", B)

    @classmethod
    def zero(cls, field: Field, n: int) -> "LinearCode":
        return cls(field, np.zeros((0, n), dtype=np.int64))

    @classmethod
    def full(cls, field: Field, n: int) -> "LinearCode":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.gen.shape[1])

    @property
    def k(self) -> int:
        return int(self.gen.shape[0])

    def parity_check(self) -> np.ndarray:
        return gfla.kernel(self.field, self.gen)

    def contains(self, other: "LinearCode") -> bool:
        """True when ``other`` is a subcode of this code."""
        self._compatible(other)
        return gfla.rowspace_contains(self.field, self.gen, other.gen)

    def contains_word(self, word) -> bool:
        w = gfla.as_matrix(word, cols=self.n)
        return gfla.rowspace_contains(self.field, self.gen, w)

    def _compatible(self, other: "LinearCode"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.n != other.n:
            raise ShapeMismatch(f"lengths differ: {self.n} vs {other.n}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode) or self.field != other.field or self.n != other.n:
            return False
        return self.gen.shape == other.gen.shape and bool(np.array_equal(self.gen, other.gen))

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.field})"

    def permute(self, perm) -> "LinearCode":
        return LinearCode(self.field, self.gen[:, list(perm)])


@dataclass(frozen=True)
class ExponentSet:
    shape: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        shape = tuple(int(s) for s in self.shape)
        mem = tuple(tuple(int(a) for a in t) for t in self.members)
        for a in mem:
            if len(a) != len(shape) or any(not 0 <= x < s for x, s in zip(a, shape)):
                raise ExponentOutOfFootprint(f"exponent {a} outside the footprint {shape}")
        if len(set(mem)) != len(mem):
            raise ExponentOutOfFootprint("repeated exponent tuples")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "members", mem)

    @property
    def m(self) -> int:
        return len(self.shape)

    @classmethod
    def box(cls, shape, upper=None) -> "ExponentSet":
        """Exponents with a_j < upper_j (defaults to the whole footprint)."""
        upper = shape if upper is None else upper
        return cls(tuple(shape), tuple(itertools.product(*[range(u) for u in upper])))

    @classmethod
    def augmented_cartesian(cls, shape, kvec) -> "ExponentSet":
        """Footprint minus the corner box prod {k_j, ..., n_j - 1}."""
        kvec = tuple(int(k) for k in kvec)
        mem = [a for a in itertools.product(*[range(n) for n in shape]) if any(x < k for x, k in zip(a, kvec))]
        return cls(tuple(shape), tuple(mem))


# -- GRS and tensor products ---------------------------------------------------

def _check_k(k: int, n: int):
    if not 0 <= k <= n:
        raise BadDimension(f"dimension {k} outside [0, {n}]")


def _grs_matrix(field: Field, points, k: int, g: UniPoly) -> np.ndarray:
    pts = np.asarray(points, dtype=np.int64)
    _check_k(k, len(pts))
    vals = g(pts)
    bad = np.flatnonzero(vals == 0)
    if bad.size:
        raise GeneratorVanishes((int(pts[bad[0]]),), f"g vanishes at {int(pts[bad[0]])}")
    w = field.inv(vals)
    rows = [field.mul(field.pow(pts, a), w) for a in range(k)]
    return np.asarray(rows, dtype=np.int64).reshape(k, len(pts))


def grs(field: Field, points, k: int, g: UniPoly | None = None) -> LinearCode:
    """GRS(S, k, g): evaluations of f / g for deg f < k."""
    g = UniPoly.const(field, 1) if g is None else g
    return LinearCode(field, _grs_matrix(field, points, k, g))


def _tensor_matrix(S: CartesianSet, kvec, g: ProductPoly) -> np.ndarray:
    kvec = tuple(int(k) for k in kvec)
    if len(kvec) != S.m or g.m != S.m:
        raise BadDimension(f"expected {S.m} components, got kvec of {len(kvec)} and {g.m} factors")
    if g.field != S.field:
        raise FieldMismatch(f"{g.field} vs {S.field}")
    mats = [_grs_matrix(S.field, comp, k, gj) for comp, k, gj in zip(S.components, kvec, g.factors)]
    M = mats[0]
    for B in mats[1:]:
        M = gfla.kronecker(S.field, M, B)
    return M


def tensor_grs(S: CartesianSet, kvec, g: ProductPoly | None = None) -> LinearCode:
    """Tensor product of GRS(S_j, k_j, g_j); columns in the grid enumeration order."""
    if g is None:
        g = ProductPoly(tuple(UniPoly.const(S.field, 1) for _ in range(S.m)))
    return LinearCode(S.field, _tensor_matrix(S, kvec, g))


def tensor_goppa(S: CartesianSet, g: ProductPoly) -> LinearCode:
    """T(S, g): the tensor GRS code with k_j = deg g_j."""
    degs = g.degrees
    if any(d == -math.inf for d in degs):
        raise GeneratorVanishes((), "the zero polynomial vanishes everywhere")
    return tensor_grs(S, degs, g)


# -- monomial-Cartesian and augmented Cartesian codes --------------------------

def _weights(S: CartesianSet, h) -> np.ndarray:
    if h is None:
        return np.ones(S.n, dtype=np.int64)
    vals = evaluate(h, S)
    bad = np.flatnonzero(vals == 0)
    if bad.size:
        raise DenominatorVanishes(tuple(int(v) for v in S.points[bad[0]]))
    return S.field.inv(vals)


def monomial_cartesian(S: CartesianSet, A: ExponentSet, h=None) -> LinearCode:
    """Rows (h(s)^-1 s^a) for a in A."""
    F = S.field
    if A.shape != S.shape:
        raise ExponentOutOfFootprint(f"exponent footprint {A.shape} does not match grid {S.shape}")
    w = _weights(S, h)
    if not A.members:
        return LinearCode.zero(F, S.n)
    E = np.asarray(A.members, dtype=np.int64)  # (|A|, m)
    P = S.points  # (n, m)
    rows = np.ones((len(E), S.n), dtype=np.int64)
    for j in range(S.m):
        pw = np.stack([F.pow(P[:, j], e) for e in range(S.shape[j])])
        rows = F.mul(rows, pw[E[:, j]])
    return LinearCode(F, F.mul(rows, w[None, :]))


def acar(S: CartesianSet, kvec, h=None) -> LinearCode:
    """Augmented Cartesian code ACar(S, k, h)."""
    kvec = tuple(int(k) for k in kvec)
    if len(kvec) != S.m:
        raise BadDimension(f"expected {S.m} entries in kvec")
    for k, n in zip(kvec, S.shape):
        _check_k(k, n)
    return monomial_cartesian(S, ExponentSet.augmented_cartesian(S.shape, kvec), h)


def acar_g(S: CartesianSet, g: ProductPoly) -> LinearCode:
    """ACar(S, g) := ACar(S, (n_j - deg g_j), L/g)."""
    kvec = []
    for d, n in zip(g.degrees, S.shape):
        if d == -math.inf:
            raise GeneratorVanishes((), "the zero polynomial vanishes everywhere")
        if d > n:
            raise BadDimension(f"deg g_j = {d} exceeds n_j = {n}")
        kvec.append(n - d)
    try:
        h = ratio_representative(big_L(S), g, S)
    except DenominatorVanishes as exc:
        raise GeneratorVanishes(exc.point) from None
    return acar(S, kvec, h)


# -- base-field constructions ---------------------------------------------------

def _require_ext(tower: FieldTower, field: Field):
    if field != tower.ext:
        raise FieldMismatch(f"expected a code over {tower.ext}, got {field}")


def expand_rows(tower: FieldTower, M) -> np.ndarray:
    """Replace every row over F_{q^t} by its t coordinate rows over F_q."""
    A = gfla.as_matrix(M)
    r, n = A.shape
    E = basis_expand(tower, A).reshape(r, n, tower.t)
    return np.ascontiguousarray(E.transpose(0, 2, 1)).reshape(r * tower.t, n)


def subfield_subcode(tower: FieldTower, C: LinearCode) -> LinearCode:
    """C_q = C ∩ F_q^n via the base-field kernel of an expanded parity check."""
    _require_ext(tower, C.field)
    H = expand_rows(tower, C.parity_check())
    if H.shape[0] == 0:
        return LinearCode.full(tower.base, C.n)
    return LinearCode(tower.base, gfla.kernel(tower.base, H))


def trace_code(tower: FieldTower, C: LinearCode) -> LinearCode:
    """tr(C): the F_q-span of the entrywise traces of the codewords of C."""
    _require_ext(tower, C.field)
    E = tower.ext
    if C.k == 0:
        return LinearCode.zero(tower.base, C.n)
    basis = np.asarray(tower.basis, dtype=np.int64)
    scaled = E.mul(basis[:, None, None], C.gen[None, :, :]).reshape(-1, C.n)
    return LinearCode(tower.base, trace(tower, scaled))


def embed_code(tower: FieldTower, C: LinearCode) -> LinearCode:
    """The F_{q^t}-span of a base-field code."""
    if C.field != tower.base:
        raise FieldMismatch(f"expected a code over {tower.base}, got {C.field}")
    return LinearCode(tower.ext, np.asarray(tower.embed, dtype=np.int64)[C.gen])


def goppa_parity(tower: FieldTower, S: CartesianSet, g: ProductPoly) -> LinearCode:
    """Γ(S, g) as the F_q-kernel of a generator matrix of T(S, g)."""
    _require_ext(tower, S.field)
    T = tensor_goppa(S, g)
    if T.k == 0:
        return LinearCode.full(tower.base, S.n)
    return LinearCode(tower.base, gfla.kernel(tower.base, expand_rows(tower, T.gen)))


def goppa_subfield(tower: FieldTower, S: CartesianSet, g: ProductPoly) -> LinearCode:
    """Γ(S, g) as the subfield subcode of ACar(S, g)."""
    _require_ext(tower, S.field)
    return subfield_subcode(tower, acar_g(S, g))


# -- duals, hulls, parameters ---------------------------------------------------

def dual(C: LinearCode) -> LinearCode:
    return LinearCode(C.field, C.parity_check())


def hull(C: LinearCode) -> LinearCode:
    if C.k == 0:
        return C
    return LinearCode(C.field, gfla.rowspace_intersect(C.field, C.gen, C.parity_check()))


def intersect(A: LinearCode, B: LinearCode) -> LinearCode:
    A._compatible(B)
    if A.k == 0 or B.k == 0:
        return LinearCode.zero(A.field, A.n)
    return LinearCode(A.field, gfla.rowspace_intersect(A.field, A.gen, B.gen))


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int | None
    exact: bool

    def __str__(self) -> str:
        if self.d is None:
            return f"[{self.n}, {self.k}, -]"
        return f"[{self.n}, {self.k}, {self.d}]" if self.exact else f"[{self.n}, {self.k}, >={self.d}]"


def code_params(C: LinearCode, cap: int | None = None, **kwargs) -> CodeParams:
    """Length, dimension and minimum distance; the zero code gets ``d=None``."""
    if C.k == 0:
        return CodeParams(C.n, 0, None, True)
    d, exact = gfla.min_distance(C.field, C.gen, cap, **kwargs)
    return CodeParams(C.n, C.k, d, exact)


def code_to_dict(C: LinearCode, params: CodeParams | None = None, **extra) -> dict:
    out = gfla.matrix_to_dict(C.field, C.gen)
    out["n"] = C.n
    out["k"] = C.k
    out["d"] = params.d if params else None
    out["d_exact"] = bool(params.exact) if params and params.d is not None else False
    out.update(extra)
    return out


def code_from_dict(d: dict) -> LinearCode:
    field, A = gfla.matrix_from_dict(d)
    return LinearCode(field, A)

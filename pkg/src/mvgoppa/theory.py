"""Theorem-level checks: subcodes, intersections, dual partners, hulls, EAQECCs.

Each operation computes the structured answer a theorem predicts and also the
direct linear-algebra answer, and raises :class:`MismatchDetected` when the two
disagree. Coordinate indices (``j_star``) count from 1.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .codes import (
    CodeParams,
    LinearCode,
    acar_g,
    code_params,
    dual,
    goppa_parity,
    hull,
    intersect,
    tensor_goppa,
    tensor_grs,
)
from .errors import (
    BadDimension,
    CertificateInvalid,
    DegenerateCode,
    GeneratorVanishes,
    HypothesisViolated,
    MismatchDetected,
    PreconditionViolated,
)
from .gf import Field, FieldTower, make_tower
from .poly import (
    CartesianSet,
    MultiPoly,
    ProductPoly,
    UniPoly,
    big_L,
    degree_in_variable,
    evaluate,
    formal_derivative,
    interpolate,
    monic_divisors,
    ratio_representative,
    uni_gcd,
    vanishing_L,
)


def _mismatch(what: str):
    raise MismatchDetected(f"theorem check failed: {what}")


def _check_nonvanishing(S: CartesianSet, *polys: ProductPoly):
    for g in polys:
        vals = evaluate(g, S)
        bad = np.flatnonzero(vals == 0)
        if bad.size:
            raise GeneratorVanishes(tuple(int(v) for v in S.points[bad[0]]))


def _check_j(S: CartesianSet, j_star: int):
    if not 1 <= j_star <= S.m:
        raise PreconditionViolated(f"j_star={j_star} outside 1..{S.m}")


# -- subcodes and intersections -------------------------------------------------

@dataclass(frozen=True)
class SubcodeReport:
    tensor: bool
    goppa: bool
    acar: bool

    @property
    def ok(self) -> bool:
        return self.tensor and self.goppa and self.acar


def check_subcode_relations(
    S: CartesianSet, g: ProductPoly, gp: ProductPoly, tower: FieldTower | None = None
) -> SubcodeReport:
    """T(g) ⊆ T(gg'), Γ(gg') ⊆ Γ(g) and ACar(gg') ⊆ ACar(g), each tested by rank."""
    tower = tower or make_tower(S.field, 1)
    _check_nonvanishing(S, g, gp)
    ggp = g * gp
    return SubcodeReport(
        tensor=tensor_goppa(S, ggp).contains(tensor_goppa(S, g)),
        goppa=goppa_parity(tower, S, g).contains(goppa_parity(tower, S, ggp)),
        acar=acar_g(S, g).contains(acar_g(S, ggp)),
    )


def _check_degree_hypothesis(S: CartesianSet, g: ProductPoly, gp: ProductPoly):
    for j, (a, b, n) in enumerate(zip(g.factors, gp.factors, S.shape), start=1):
        if a.degree + b.degree > n:
            raise HypothesisViolated(f"deg(g_{j} g'_{j}) = {a.degree + b.degree} exceeds n_{j} = {n}")


def intersect_tensor(S: CartesianSet, g: ProductPoly, gp: ProductPoly) -> LinearCode:
    """T(S, g) ∩ T(S, g') = T(S, gcd(g, g'))."""
    _check_nonvanishing(S, g, gp)
    _check_degree_hypothesis(S, g, gp)
    predicted = tensor_goppa(S, g.gcd(gp))
    if predicted != intersect(tensor_goppa(S, g), tensor_goppa(S, gp)):
        _mismatch("T(g) ∩ T(g') != T(gcd)")
    return predicted


def intersect_goppa(tower: FieldTower, S: CartesianSet, g: ProductPoly, gp: ProductPoly) -> LinearCode:
    """Γ(S, g) ∩ Γ(S, g') = Γ(S, lcm(g, g')).

    Both sides are F_q-kernels, of T(g) + T(g') and of T(lcm) respectively.
    The first space always lies in the second and, since T(g) ∩ T(g') = T(gcd),
    they agree exactly when Π deg g_j + Π deg g'_j - Π deg gcd_j = Π deg lcm_j.
    That always holds for m = 1. For m >= 2 it can fail under the degree
    hypothesis alone (coprime g, g' on a 2 x 2 grid), and the identity is then
    refused with HypothesisViolated.
    """
    _check_nonvanishing(S, g, gp)
    _check_degree_hypothesis(S, g, gp)
    gcd, lcm = g.gcd(gp), g.lcm(gp)
    if g.deg + gp.deg - gcd.deg != lcm.deg:
        raise HypothesisViolated(
            f"T(g) + T(g') has dimension {g.deg + gp.deg - gcd.deg}, T(lcm) has {lcm.deg}; "
            "the lcm identity needs them equal"
        )
    predicted = goppa_parity(tower, S, lcm)
    if predicted != intersect(goppa_parity(tower, S, g), goppa_parity(tower, S, gp)):
        _mismatch("Γ(g) ∩ Γ(g') != Γ(lcm)")
    return predicted


@dataclass(frozen=True)
class AcarIntersectionReport:
    lcm_in_intersection: bool
    sum_is_gcd: bool
    dim_identity: bool


def check_acar_intersection(S: CartesianSet, g: ProductPoly, gp: ProductPoly) -> AcarIntersectionReport:
    """ACar(lcm) ⊆ ACar(g) ∩ ACar(g') and ACar(g) + ACar(g') = ACar(gcd)."""
    _check_nonvanishing(S, g, gp)
    _check_degree_hypothesis(S, g, gp)
    A, B = acar_g(S, g), acar_g(S, gp)
    inter = intersect(A, B)
    total = LinearCode(S.field, np.vstack([A.gen, B.gen]))
    rep = AcarIntersectionReport(
        lcm_in_intersection=inter.contains(acar_g(S, g.lcm(gp))),
        sum_is_gcd=total == acar_g(S, g.gcd(gp)),
        dim_identity=A.k + B.k == total.k + inter.k,
    )
    if not (rep.lcm_in_intersection and rep.sum_is_gcd and rep.dim_identity):
        _mismatch(f"ACar intersection relations: {rep}")
    return rep


def check_scalar_equivalence(S: CartesianSet, kvec, f: ProductPoly, F: ProductPoly, j_star: int) -> bool:
    """deg_{x_j*}(F/f) = 0 exactly when T(S, k, f) = T(S, k, F).

    ``kvec`` must be full (k_j = n_j) away from ``j_star`` and satisfy
    1 <= k_{j*} < n_{j*}. At k_{j*} = 0 both codes are {0}, so the equivalence
    is only claimed for positive k.
    """
    _check_j(S, j_star)
    kvec = tuple(int(k) for k in kvec)
    for j, (k, n) in enumerate(zip(kvec, S.shape), start=1):
        if j == j_star and not 1 <= k < n:
            raise BadDimension(f"k_{j} = {k} must satisfy 1 <= k < n_{j} = {n}")
        if j != j_star and k != n:
            raise BadDimension(f"k_{j} = {k} must equal n_{j} = {n}")
    _check_nonvanishing(S, f, F)
    predicate = degree_in_variable(ratio_representative(F, f, S), j_star) == 0
    equal = tensor_grs(S, kvec, f) == tensor_grs(S, kvec, F)
    if predicate != equal:
        _mismatch(f"scalar-equivalence predicate {predicate} but code equality {equal}")
    return predicate


# -- dual partners ---------------------------------------------------------------

@dataclass(frozen=True)
class DualPartnerCertificate:
    j_star: int
    f: ProductPoly
    p: MultiPoly
    cond_degree_star: bool
    cond_degree_rest: bool
    cond_ratio: bool

    @property
    def valid(self) -> bool:
        return self.cond_degree_star and self.cond_degree_rest and self.cond_ratio


def _certificate(S: CartesianSet, g: ProductPoly, f: ProductPoly, j_star: int) -> DualPartnerCertificate:
    js = j_star - 1
    c1 = f.factors[js].degree + g.factors[js].degree == S.shape[js]
    c2 = all(
        f.factors[j].degree == g.factors[j].degree == S.shape[j] for j in range(S.m) if j != js
    )
    p = ratio_representative(f * g, big_L(S), S)
    c3 = degree_in_variable(p, j_star) == 0
    return DualPartnerCertificate(j_star, f, p, c1, c2, c3)


def _dual_equals(S: CartesianSet, g: ProductPoly, f: ProductPoly) -> bool:
    try:
        Tf = tensor_goppa(S, f)
    except BadDimension:
        return False
    return dual(tensor_goppa(S, g)) == Tf


def dual_partner_check(S: CartesianSet, g: ProductPoly, f: ProductPoly, j_star: int | None = None) -> DualPartnerCertificate:
    """Evaluate the dual-partner conditions for (g, f).

    With ``j_star=None`` every coordinate is tried and the first passing
    certificate is returned (or the failing one for coordinate 1). When T(S, g)
    is neither {0} nor the full space, the verdict is cross-checked against
    T(S, g)^⊥ = T(S, f) computed directly.
    """
    if g.m != S.m or f.m != S.m:
        raise PreconditionViolated("polynomial factor counts must match the grid")
    _check_nonvanishing(S, g, f)
    if j_star is not None:
        _check_j(S, j_star)
        cert = _certificate(S, g, f, j_star)
        any_valid = cert.valid or any(
            _certificate(S, g, f, j).valid for j in range(1, S.m + 1) if j != j_star
        )
    else:
        certs = [_certificate(S, g, f, j) for j in range(1, S.m + 1)]
        cert = next((c for c in certs if c.valid), certs[0])
        any_valid = cert.valid
    if 0 < g.deg < S.n and all(d >= 0 for d in g.degrees):
        if any_valid != _dual_equals(S, g, f):
            _mismatch(f"certificate says {any_valid} but direct dual comparison disagrees")
    return cert


def _partner_star(S_j, g_j: UniPoly) -> list[tuple[int, UniPoly]]:
    """All (mu, f_j) with f_j g_j = L + mu L' (monic f_j), mu ranging over F*."""
    F = g_j.field
    L = vanishing_L(F, S_j)
    dL = formal_derivative(L)
    out = []
    for mu in range(1, F.q):
        P = L + dL.scale(mu)
        quo, rem = divmod(P, g_j)
        if rem.is_zero():
            out.append((mu, quo.monic()))
    return out


def _partner_full(S_j, g_j: UniPoly) -> UniPoly:
    """A monic f_j of degree n_j with f_j g_j ≡ lambda L' (mod L) for some lambda in F*.

    A choice with f_j = monic(g_j) is preferred when one exists, since it keeps
    gcd(f_j, g_j) of full degree.
    """
    F = g_j.field
    L = vanishing_L(F, S_j)
    dL = formal_derivative(L)
    pts = np.asarray(S_j, dtype=np.int64)
    ratio = F.div(dL(pts), g_j(pts))
    first = None
    for lam in range(1, F.q):
        vals = F.mul(ratio, lam)
        r = UniPoly(F, tuple(interpolate(CartesianSet(F, (tuple(S_j),)), vals).coeffs))
        f_j = r + L
        if f_j == g_j.monic():
            return f_j
        if first is None:
            first = f_j
    return first


def find_dual_partner(S: CartesianSet, g: ProductPoly, j_star: int) -> ProductPoly | None:
    """Search for f with T(S, g)^⊥ = T(S, f), following the two-step recipe.

    At ``j_star``: f_{j*} g_{j*} = lambda L' + beta L with beta != 0.
    Elsewhere: f_j g_j = lambda L' + p L with deg p = n_j.
    Returns ``None`` when no scalar works at ``j_star``.
    """
    _check_j(S, j_star)
    js = j_star - 1
    for j, (gj, n) in enumerate(zip(g.factors, S.shape)):
        if j == js and not 0 <= gj.degree < n:
            raise PreconditionViolated(f"need 0 <= deg g_{j + 1} < n_{j + 1} = {n}")
        if j != js and gj.degree != n:
            raise PreconditionViolated(f"need deg g_{j + 1} = n_{j + 1} = {n}")
    _check_nonvanishing(S, g)
    star = _partner_star(S.components[js], g.factors[js])
    if not star:
        return None
    factors = [
        star[0][1] if j == js else _partner_full(S.components[j], g.factors[j]) for j in range(S.m)
    ]
    f = ProductPoly(tuple(factors))
    cert = dual_partner_check(S, g, f, j_star)
    if not cert.valid:
        _mismatch("constructed dual partner fails its own certificate")
    return f


# -- hulls -----------------------------------------------------------------------

def _require_certificate(S, g, f, j_star) -> DualPartnerCertificate:
    cert = dual_partner_check(S, g, f, j_star)
    if not cert.valid:
        raise CertificateInvalid(
            f"dual-partner conditions fail at j*={cert.j_star}: "
            f"(i)={cert.cond_degree_star} (ii)={cert.cond_degree_rest} (iii)={cert.cond_ratio}"
        )
    return cert


def _require_hull_domain(S: CartesianSet, g: ProductPoly, f: ProductPoly, j_star: int):
    """The gcd hull formula needs gcd(f_j, g_j) of full degree n_j away from j*.

    Otherwise the intersection in coordinate j is the whole space F^{n_j}
    while T(S, gcd) keeps only gcd_j-many dimensions there.
    """
    for j in range(S.m):
        if j == j_star - 1:
            continue
        if uni_gcd(f.factors[j], g.factors[j]).degree != S.shape[j]:
            raise HypothesisViolated(
                f"gcd(f_{j + 1}, g_{j + 1}) must have degree n_{j + 1} = {S.shape[j]} for the hull formula"
            )


def hull_tensor(S: CartesianSet, g: ProductPoly, f: ProductPoly, j_star: int | None = None) -> LinearCode:
    """Hull(T(S, g)) = T(S, gcd(f, g)) = Hull(ACar(S, g))."""
    cert = _require_certificate(S, g, f, j_star)
    _require_hull_domain(S, g, f, cert.j_star)
    predicted = tensor_goppa(S, f.gcd(g))
    if predicted.k != f.gcd(g).deg:
        _mismatch("dim T(S, gcd) != deg gcd")
    if predicted != hull(tensor_goppa(S, g)):
        _mismatch("Hull(T(S, g)) != T(S, gcd(f, g))")
    if predicted != hull(acar_g(S, g)):
        _mismatch("Hull(ACar(S, g)) != T(S, gcd(f, g))")
    return predicted


@dataclass(frozen=True)
class HullGoppaReport:
    subcode: LinearCode
    hull: LinearCode
    equal: bool
    lower_bound: int


def hull_goppa_bound(
    tower: FieldTower, S: CartesianSet, g: ProductPoly, f: ProductPoly, j_star: int | None = None
) -> HullGoppaReport:
    """Γ(S, lcm(f, g)) ⊆ Hull(Γ(S, g)), with equality when t = 1."""
    cert = _require_certificate(S, g, f, j_star)
    _require_hull_domain(S, g, f, cert.j_star)
    lcm = f.lcm(g)
    sub = goppa_parity(tower, S, lcm)
    H = hull(goppa_parity(tower, S, g))
    bound = S.n - tower.t * lcm.deg
    if not H.contains(sub):
        _mismatch("Γ(S, lcm(f, g)) is not inside Hull(Γ(S, g))")
    if sub.k < bound:
        _mismatch("dim Γ(S, lcm) below n - t deg(lcm)")
    equal = sub == H
    if tower.t == 1 and not equal:
        _mismatch("Hull(Γ(S, g)) != Γ(S, lcm(f, g)) at t = 1")
    return HullGoppaReport(sub, H, equal, bound)


# -- EAQECC parameters -------------------------------------------------------------

@dataclass(frozen=True)
class EaqeccParams:
    n: int
    k: int
    d: int
    c: int
    q: int
    d_exact: bool = True

    def __post_init__(self):
        if self.k < 0 or not 0 <= self.c <= self.n - 1:
            raise DegenerateCode(f"invalid EAQECC parameters {self}")

    @property
    def mds(self) -> bool:
        return is_mds_eaqecc(self)

    def __str__(self) -> str:
        d = str(self.d) if self.d_exact else f">={self.d}"
        return f"[[{self.n}, {self.k}, {d}; {self.c}]]_{self.q}"


def is_mds_eaqecc(p: EaqeccParams) -> bool:
    """Equality in n + c - k >= 2(d - 1).

    A lower bound on d that already meets the bound forces equality, so a
    non-exact ``d`` can still certify MDS.
    """
    if p.d < 1:
        raise DegenerateCode("minimum distance must be positive")
    return p.n + p.c - p.k == 2 * (p.d - 1)


def eaqecc_from_code(
    C: LinearCode,
    d: CodeParams | int | None = None,
    d_dual: CodeParams | int | None = None,
) -> tuple[EaqeccParams, EaqeccParams]:
    """[[n, k-h, d; n-k-h]] and [[n, n-k-h, d(C^⊥); k-h]] with h = dim Hull(C)."""
    n, k = C.n, C.k
    if not 0 < k < n:
        raise DegenerateCode(f"need a nonzero proper code, got [{n}, {k}]")

    def resolve(x, code):
        if x is None:
            x = code_params(code)
        if isinstance(x, CodeParams):
            return x.d, x.exact
        return int(x), True

    d1, e1 = resolve(d, C)
    d2, e2 = resolve(d_dual, dual(C))
    h = hull(C).k
    q = C.field.q
    return (
        EaqeccParams(n, k - h, d1, n - k - h, q, e1),
        EaqeccParams(n, n - k - h, d2, k - h, q, e2),
    )


def eaqecc_tensor(
    S: CartesianSet, g: ProductPoly, f: ProductPoly, j_star: int | None = None
) -> tuple[EaqeccParams, EaqeccParams]:
    """The closed-form pair for T(S, g) over F_{q^t}.

    [[n, deg g - deg gcd, deg f_{j*} + 1; deg f - deg gcd]] and the mirror with
    f and g swapped. Dimensions are cross-checked against the computed hull.
    """
    cert = _require_certificate(S, g, f, j_star)
    _require_hull_domain(S, g, f, cert.j_star)
    js = cert.j_star - 1
    gcd = f.gcd(g).deg
    n, q = S.n, S.field.q
    first = EaqeccParams(n, g.deg - gcd, f.factors[js].degree + 1, f.deg - gcd, q)
    second = EaqeccParams(n, f.deg - gcd, g.factors[js].degree + 1, g.deg - gcd, q)
    T = tensor_goppa(S, g)
    h = hull(T).k
    if (T.k - h, n - T.k - h) != (first.k, first.c) or (n - T.k - h, T.k - h) != (second.k, second.c):
        _mismatch("closed-form EAQECC dimensions disagree with the computed hull")
    return first, second


@dataclass(frozen=True)
class BoundedEaqecc:
    """Closed-form bounds (k <= k_max, d >= d_min, c <= c_max) next to computed values."""

    bound_k: int
    bound_d: int
    bound_c: int
    computed: EaqeccParams

    @property
    def dims_ok(self) -> bool:
        return self.computed.k <= self.bound_k and self.computed.c <= self.bound_c

    @property
    def distance_ok(self) -> bool | None:
        """``None`` when d is only a lower bound that does not reach the bound."""
        c = self.computed
        if c.d >= self.bound_d:
            return True
        return False if c.d_exact else None

    @property
    def respects_bounds(self) -> bool:
        return self.dims_ok and self.distance_ok is True


def eaqecc_goppa(
    tower: FieldTower,
    S: CartesianSet,
    g: ProductPoly,
    f: ProductPoly,
    j_star: int | None = None,
    *,
    d_cap: int | None = None,
) -> tuple[BoundedEaqecc, BoundedEaqecc]:
    """EAQECC pair from Γ(S, g) with the closed-form bounds and the computed values.

    The first entry uses the construction applied to C = Γ(S, g) that encodes
    n - k - h qudits, the second the one encoding k - h. At t = 1 the bounds
    are equalities and the pair coincides with :func:`eaqecc_tensor`.
    """
    cert = _require_certificate(S, g, f, j_star)
    _require_hull_domain(S, g, f, cert.j_star)
    js = cert.j_star - 1
    t = tower.t
    n = S.n
    lcm = f.lcm(g).deg
    G = goppa_parity(tower, S, g)
    if not 0 < G.k < n:
        raise DegenerateCode(f"Γ(S, g) is [{n}, {G.k}]; need a proper nonzero code")
    p_code = code_params(G, d_cap)
    p_dual = code_params(dual(G), d_cap)
    lemma_a, lemma_b = eaqecc_from_code(G, p_code, p_dual)
    first = BoundedEaqecc(t * (lcm + g.deg) - n, f.factors[js].degree + 1, t * lcm - g.deg, lemma_b)
    second = BoundedEaqecc(t * lcm - g.deg, g.factors[js].degree + 1, t * (lcm + g.deg) - n, lemma_a)
    if t == 1:
        tens = eaqecc_tensor(S, g, f, cert.j_star)
        for b, p in zip((first, second), tens):
            got = b.computed
            if (got.k, got.c) != (p.k, p.c) or (b.bound_k, b.bound_c, b.bound_d) != (p.k, p.c, p.d):
                _mismatch("Goppa and tensor EAQECC parameters differ at t = 1")
            if got.d_exact and got.d != p.d:
                _mismatch("Goppa EAQECC distance differs from the tensor value at t = 1")
    return first, second


# -- classification ----------------------------------------------------------------

LCD = "LCD"
SELF_ORTHOGONAL = "self-orthogonal"
SELF_DUAL = "self-dual"
NONE = "none"


def classify(C: LinearCode) -> str:
    """LCD, self-orthogonal, self-dual or none. The zero code counts as LCD."""
    if C.k == 0:
        return LCD
    H = hull(C)
    if H.k == C.k:
        return SELF_DUAL if 2 * C.k == C.n else SELF_ORTHOGONAL
    if H.k == 0:
        return LCD
    return NONE


# -- family search -----------------------------------------------------------------

KINDS = (LCD, "SO", "SD")
_EXPECTED = {LCD: {LCD}, "SO": {SELF_ORTHOGONAL}, "SD": {SELF_DUAL}}


@dataclass(frozen=True)
class Witness:
    kind: str
    field: dict
    S1: tuple[int, ...]
    S2: tuple[int, ...]
    f1: tuple[int, ...]
    g1: tuple[int, ...]
    f2: tuple[int, ...]
    g2: tuple[int, ...]
    lambda1: int
    beta1: int
    lambda2: int
    p: tuple[int, ...]
    classification: tuple[str, ...] = ()
    params: tuple[tuple, ...] = ()

    def key(self) -> tuple:
        return (self.S1, self.S2, self.g1, self.f1, self.g2, self.lambda2)

    def to_json(self) -> dict:
        d = asdict(self)
        for k in ("S1", "S2", "f1", "g1", "f2", "g2", "p", "classification"):
            d[k] = list(d[k])
        d["params"] = [list(x) for x in self.params]
        return d


@dataclass
class SearchResult:
    witnesses: list[Witness]
    truncated: bool
    s1_hits: int
    s2_hits: int
    summary: dict = field(default_factory=dict)


def _affine_canonical(F: Field, subset: tuple[int, ...]) -> bool:
    """True when ``subset`` is the smallest member of its orbit under x -> ux + v."""
    pts = np.asarray(subset, dtype=np.int64)
    for u in range(1, F.q):
        up = F.mul(pts, u)
        for v in range(F.q):
            img = tuple(sorted(int(x) for x in F.add(up, v)))
            if img < subset:
                return False
    return True


def _s1_hits(F: Field, n1: int, kind: str, candidates, affine: bool):
    out = []
    subsets = candidates if candidates is not None else itertools.combinations(range(F.q), n1)
    for S1 in subsets:
        S1 = tuple(int(s) for s in S1)
        if affine and candidates is None and not _affine_canonical(F, S1):
            continue
        L = vanishing_L(F, S1)
        dL = formal_derivative(L)
        for mu in range(1, F.q):
            P = L + dL.scale(mu)  # beta = 1, lambda = mu after making P monic
            for g1 in monic_divisors(P):
                if not 1 <= g1.degree <= n1 - 1:
                    continue
                f1 = P // g1
                if kind == LCD:
                    ok = uni_gcd(f1, g1).degree == 0
                elif kind == "SO":
                    ok = g1.divides(f1) and f1 != g1
                else:
                    ok = f1 == g1
                if ok:
                    out.append((S1, f1, g1, mu, 1))
    return out


def _sqrt_table(F: Field) -> dict[int, list[int]]:
    elems = F.elements()
    sq = F.mul(elems, elems)
    table: dict[int, list[int]] = {}
    for x, s in zip(elems, sq):
        table.setdefault(int(s), []).append(int(x))
    return table


def _s2_hits(F: Field, n2: int, candidates):
    """(S2, g2, lambda2, p) with g2^2 = lambda2 L' + p L, g2 monic of degree n2."""
    roots = _sqrt_table(F)
    out = []
    subsets = candidates if candidates is not None else itertools.combinations(range(F.q), n2)
    for S2 in subsets:
        S2 = tuple(int(s) for s in S2)
        grid = CartesianSet(F, (S2,))
        L = vanishing_L(F, S2)
        dL = formal_derivative(L)
        base = dL(np.asarray(S2, dtype=np.int64))
        for lam in range(1, F.q):
            target = F.mul(base, lam)
            choices = [roots.get(int(v), []) for v in target]
            if not all(choices):
                continue
            seen = set()
            for vals in itertools.product(*choices):
                r = UniPoly(F, tuple(interpolate(grid, np.asarray(vals)).coeffs))
                g2 = r + L
                if g2.coeffs in seen:
                    continue
                seen.add(g2.coeffs)
                quo, rem = divmod(g2 * g2 - dL.scale(lam), L)
                if not rem.is_zero() or quo.degree != n2:
                    _mismatch("square-root construction did not give an exact quotient")
                out.append((S2, g2, lam, quo))
    return out


def family_code(F: Field, S1, S2, h1: UniPoly, h2: UniPoly, m: int) -> LinearCode:
    """T(S, h1 · h2(x_2) ··· h2(x_{m+1})) on S = S1 × S2^m."""
    S = CartesianSet(F, (tuple(S1),) + (tuple(S2),) * m)
    return tensor_goppa(S, ProductPoly((h1,) + (h2,) * m))


def _verify(args) -> Witness:
    w, F, verify_m = args
    cls, params = [], []
    for m in verify_m:
        C = family_code(F, w.S1, w.S2, UniPoly(F, w.g1), UniPoly(F, w.g2), m)
        c = classify(C)
        if c not in _EXPECTED[w.kind]:
            _mismatch(f"witness {w.key()} classifies as {c} at m={m}, expected {w.kind}")
        pr = code_params(C)
        cls.append(c)
        params.append((pr.n, pr.k, pr.d))
    return Witness(**{**w.__dict__, "classification": tuple(cls), "params": tuple(params)})


def family_search(
    F: Field,
    n1: int,
    n2: int,
    kind: str,
    budget: int = 100,
    *,
    jobs: int = 1,
    affine: bool = False,
    S1_candidates=None,
    S2_candidates=None,
    verify_m=(0, 1),
) -> SearchResult:
    """Search for (S1, S2, f1, g1, f2 = g2, p) with the requested hull behaviour.

    Coordinate 1 uses f1 g1 = lambda1 L1' + beta1 L1 and coordinate 2 uses
    g2^2 = lambda2 L2' + p L2 with deg p = n2. Hits are filtered by
    gcd(f1, g1) = 1 (LCD), g1 | f1 with f1 != g1 (SO) or f1 = g1 (SD), then
    the codes T(S, g1 · g2(x_2)···g2(x_{m+1})) are rebuilt and classified for
    every m in ``verify_m``.

    ``budget`` caps the number of witnesses verified and returned; when more
    candidates remain the result is flagged ``truncated``. Output order is the
    lexicographic order of candidates and does not depend on ``jobs``.
    """
    if kind not in KINDS:
        raise PreconditionViolated(f"kind must be one of {KINDS}")
    if not (1 <= n1 <= F.q and 1 <= n2 <= F.q):
        return SearchResult([], False, 0, 0, {"kind": kind, "count": 0, "truncated": False})
    h1 = _s1_hits(F, n1, kind, S1_candidates, affine)
    h2 = _s2_hits(F, n2, S2_candidates) if h1 else []
    pairs = itertools.product(h1, h2)
    chosen = list(itertools.islice(pairs, budget + 1))
    truncated = len(chosen) > budget
    chosen = chosen[:budget]
    raw = [
        Witness(
            kind=kind,
            field=F.to_dict(),
            S1=S1,
            S2=S2,
            f1=f1.coeffs,
            g1=g1.coeffs,
            f2=g2.coeffs,
            g2=g2.coeffs,
            lambda1=mu,
            beta1=beta,
            lambda2=lam,
            p=p.coeffs,
        )
        for (S1, f1, g1, mu, beta), (S2, g2, lam, p) in chosen
    ]
    tasks = [(w, F, tuple(verify_m)) for w in raw]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            verified = list(ex.map(_verify, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        verified = [_verify(t) for t in tasks]
    verified.sort(key=Witness.key)
    summary = {"kind": kind, "count": len(verified), "truncated": truncated, "s1_hits": len(h1), "s2_hits": len(h2)}
    return SearchResult(verified, truncated, len(h1), len(h2), summary)

"""Random instance generators and brute-force oracles shared by the tests.

The oracles deliberately avoid the library's code constructions: they work
from definitions (enumerate words, evaluate sums of fractions) and only lean on
field arithmetic.
"""

from __future__ import annotations

import itertools

import numpy as np

from mvgoppa.codes import LinearCode
from mvgoppa.gf import Field, FieldTower, make_field, make_tower
from mvgoppa.gfla import kernel, rank, row_basis
from mvgoppa.poly import CartesianSet, ProductPoly, UniPoly, formal_derivative, monic_divisors, vanishing_L

F9_PINNED = (2, 2, 1)

# acceptance criterion -> [(part, ok, detail)], printed by conftest at the end of the run
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, part: str, ok: bool, detail: str) -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((part, bool(ok), detail))
    return ok

# every GF(q^t) / GF(q) pair with q^t <= 9 and a prime base field
SMALL_TOWERS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)]


def tower_for(p: int, t: int) -> FieldTower:
    base = make_field(p)
    return make_tower(base, t, F9_PINNED if (p, t) == (3, 2) else None)


def f9() -> Field:
    return make_field(3, 2, F9_PINNED)


# -- random objects ------------------------------------------------------------------

def rand_subset(rng, F: Field, size: int, exclude=()) -> tuple[int, ...]:
    pool = [x for x in range(F.q) if x not in exclude]
    idx = rng.choice(len(pool), size=size, replace=False)
    return tuple(int(pool[i]) for i in idx)


def rand_grid(rng, F: Field, m: int, nmax: int, total_max: int = 12, nmin: int = 1, cap: int | None = None) -> CartesianSet:
    """Random S_1 x ... x S_m with n_j <= min(nmax, cap or q) and n <= total_max."""
    top = min(nmax, cap if cap is not None else F.q)
    while True:
        shape = [int(rng.integers(nmin, top + 1)) for _ in range(m)]
        if int(np.prod(shape)) <= total_max:
            break
    return CartesianSet(F, tuple(rand_subset(rng, F, n) for n in shape))


def rand_poly(rng, F: Field, deg: int, monic: bool = False) -> UniPoly:
    if deg < 0:
        return UniPoly.zero(F)
    c = [int(x) for x in rng.integers(0, F.q, size=deg + 1)]
    c[-1] = 1 if monic else int(rng.integers(1, F.q))
    return UniPoly(F, tuple(c))


def nonvanishing_poly(rng, F: Field, deg: int, points, monic: bool = False, tries: int = 2000) -> UniPoly | None:
    pts = np.asarray(points, dtype=np.int64)
    for _ in range(tries):
        g = rand_poly(rng, F, deg, monic)
        if deg == 0 or np.all(g(pts) != 0):
            return g
    return None


def rand_product(rng, S: CartesianSet, degrees, monic: bool = False) -> ProductPoly | None:
    facs = []
    for d, Sj in zip(degrees, S.components):
        g = nonvanishing_poly(rng, S.field, d, Sj, monic)
        if g is None:
            return None
        facs.append(g)
    return ProductPoly(tuple(facs))


def rand_matrix(rng, F: Field, k: int, n: int) -> np.ndarray:
    return rng.integers(0, F.q, size=(k, n)).astype(np.int64)


def cert_instance(rng, F: Field, shape, j_star: int):
    """(S, g, f) passing the dual-partner certificate with gcd(f_j, g_j) = g_j off j*.

    At j*: f g = L + mu L' split over a random monic divisor. Elsewhere
    f_j = g_j of degree n_j. Returns None when the draw is unusable.
    """
    comps, gs, fs = [], [], []
    for j, n in enumerate(shape, start=1):
        Sj = rand_subset(rng, F, n)
        comps.append(Sj)
        if j == j_star:
            L = vanishing_L(F, Sj)
            mu = int(rng.integers(1, F.q))
            P = L + formal_derivative(L).scale(mu)
            divs = [d for d in monic_divisors(P) if 1 <= d.degree <= n - 1]
            if not divs:
                return None
            gj = divs[int(rng.integers(len(divs)))]
            gs.append(gj)
            fs.append(P // gj)
        else:
            gj = nonvanishing_poly(rng, F, n, Sj, monic=True)
            if gj is None:
                return None
            gs.append(gj)
            fs.append(gj)
    return CartesianSet(F, tuple(comps)), ProductPoly(tuple(gs)), ProductPoly(tuple(fs))


# -- oracles ----------------------------------------------------------------------

def all_codewords(F: Field, G) -> np.ndarray:
    """Every codeword of the row space of G (q^k rows)."""
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    if k == 0:
        return np.zeros((1, n), dtype=np.int64)
    coeffs = np.array(list(itertools.product(range(F.q), repeat=k)), dtype=np.int64)
    return F.matmul(coeffs, G)


def brute_min_weight(F: Field, G) -> int:
    words = all_codewords(F, G)
    w = (words != 0).sum(axis=1)
    return int(w[w > 0].min())


def subfield_elements(tower: FieldTower) -> np.ndarray:
    """Elements x of the extension with x^q = x, found by direct powering."""
    E, q = tower.ext, tower.base.q
    xs = E.elements()
    return xs[np.array([E.pow(int(x), q) == int(x) for x in xs])]


def brute_subfield_subcode(tower: FieldTower, C: LinearCode) -> LinearCode:
    """Span of all words of C with entries in F_q, by running over F_q^n."""
    E = tower.ext
    sub = subfield_elements(tower)  # extension codes of the base field
    base_of = {int(tower.embed[c]): c for c in range(tower.base.q)}
    H = C.parity_check()
    words = np.array(list(itertools.product(sub.tolist(), repeat=C.n)), dtype=np.int64)
    if H.shape[0]:
        words = words[np.all(E.matmul(words, H.T) == 0, axis=1)]
    base_words = np.vectorize(base_of.get)(words) if words.size else words
    return LinearCode(tower.base, row_basis(tower.base, base_words.reshape(-1, C.n)))


def brute_trace_code(tower: FieldTower, C: LinearCode) -> LinearCode:
    """Span of tr(c) over every c in C, with tr(x) = sum of x^{q^i}."""
    E, q, t = tower.ext, tower.base.q, tower.t
    words = all_codewords(E, C.gen)
    tr = np.zeros_like(words)
    y = words.copy()
    for _ in range(t):
        tr = E.add(tr, y)
        y = np.vectorize(lambda v: E.pow(int(v), q))(y)
    base_of = {int(tower.embed[c]): c for c in range(tower.base.q)}
    base_words = np.vectorize(base_of.get)(tr)
    return LinearCode(tower.base, row_basis(tower.base, base_words))


def _inverse_mod(g: UniPoly, s: int) -> UniPoly:
    """(x - s)^{-1} mod g, via (g(x) - g(s)) / (x - s) scaled by -1/g(s)."""
    F = g.field
    gs = int(g(s))
    quo = (g - UniPoly.const(F, gs)) // UniPoly(F, (F.neg(s), 1))
    return quo.scale(F.neg(F.inv(gs)))


def syndrome_goppa(tower: FieldTower, S: CartesianSet, g: ProductPoly) -> LinearCode:
    """Γ(S, g) from its definition: sum_i c_i prod_j 1/(x_j - s_ij) = 0 mod (g_1, ..., g_m).

    Coordinates of the extension over a prime base are read off the base-p
    digits of the element codes, independently of the library's basis code.
    """
    E, base = tower.ext, tower.base
    assert base.e == 1
    cols = []
    for pt in S.points:
        vec = np.ones(1, dtype=np.int64)
        for gj, s in zip(g.factors, pt):
            u = _inverse_mod(gj, int(s))
            cu = np.zeros(gj.degree, dtype=np.int64)
            cu[: len(u.coeffs)] = u.coeffs
            vec = E.mul(vec[:, None], cu[None, :]).reshape(-1)
        cols.append(vec)
    M = np.array(cols, dtype=np.int64).T  # (prod deg g_j) x n over E
    p = base.p
    rows = []
    for r in M:
        digits = np.array([[(int(v) // p**i) % p for v in r] for i in range(E.e)])
        rows.extend(digits)
    A = np.array(rows, dtype=np.int64).reshape(-1, S.n)
    return LinearCode(base, kernel(base, A))


def same_space(F: Field, A, B) -> bool:
    A, B = np.atleast_2d(A), np.atleast_2d(B)
    ra, rb = rank(F, A), rank(F, B)
    return ra == rb == rank(F, np.vstack([A, B]))

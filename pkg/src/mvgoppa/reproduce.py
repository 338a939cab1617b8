"""Golden reproductions of the worked examples.

Each entry returns a list of ``Check`` items (a description and whether it
held). The F_9 examples use the modulus x^2 + 2x + 2, i.e. a^2 = a + 1: it is
the only choice of primitive element (up to conjugation) under which every
printed polynomial identity of the code families holds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .codes import acar, code_params, goppa_parity, goppa_subfield, hull
from .gf import Field, make_field, make_tower
from .poly import CartesianSet, ProductPoly, UniPoly, formal_derivative, parse_poly, uni_gcd, vanishing_L
from .theory import LCD, SELF_DUAL, SELF_ORTHOGONAL, classify, family_code

F9_MODULUS = (2, 2, 1)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        return f"[{mark}] {self.name}" + (f"  ({self.detail})" if self.detail else "")


def f9(modulus=F9_MODULUS) -> Field:
    return make_field(3, 2, modulus)


def _powers(F: Field, exps) -> tuple[int, ...]:
    return tuple(F.pow(F.generator, k) for k in exps)


def goppa_64_56_4() -> list[Check]:
    base = make_field(3)
    tower = make_tower(base, 2, F9_MODULUS)
    F = tower.ext
    S1 = _powers(F, range(1, 9))
    S = CartesianSet(F, (S1, S1))
    g1 = parse_poly(F, "a,0,1")
    g = ProductPoly.of(g1, g1)
    t0 = time.perf_counter()
    G = goppa_parity(tower, S, g)
    pr = code_params(G)
    elapsed = time.perf_counter() - t0
    return [
        Check("length 64", G.n == 64),
        Check("dimension 56", G.k == 56, f"k={G.k}"),
        Check("minimum distance 4 (exact)", pr.d == 4 and pr.exact, f"{pr}, {elapsed:.2f}s"),
        Check("dimension within [n - t deg g, n - deg g] = [56, 60]", 64 - 2 * g.deg <= G.k <= 64 - g.deg),
        Check("parity-check and subfield-subcode constructions agree", G == goppa_subfield(tower, S, g)),
    ]


def acar_f17() -> list[Check]:
    F = make_field(17)
    S = CartesianSet(F, (tuple(range(6)), tuple(range(7))))
    t0 = time.perf_counter()
    C = acar(S, (2, 2))
    pr = code_params(C)
    elapsed = time.perf_counter() - t0
    return [
        Check("dimension 42 - 4*5 = 22", C.k == 22, f"k={C.k}"),
        Check("minimum distance min(5, 6) = 5 (exact)", pr.d == 5 and pr.exact, f"{pr}, {elapsed:.2f}s"),
    ]


@dataclass(frozen=True)
class FamilyData:
    name: str
    S1: tuple[int, ...]
    S2: tuple[int, ...]
    f1: UniPoly
    g1: UniPoly
    g2: UniPoly
    lam1: int
    beta1: int
    lam2: int
    p: UniPoly
    code_factor: UniPoly  # first factor of the code polynomial
    expected: str
    length: int  # n1
    dim: int  # deg of the code factor in coordinate 1


def family_data(name: str, modulus=F9_MODULUS) -> FamilyData:
    F = f9(modulus)
    P = lambda s: parse_poly(F, s)  # noqa: E731
    A = lambda k: F.pow(F.generator, k)  # noqa: E731
    S2 = (1, A(5), A(7))
    g2 = P("0,2,a,1")
    p = P("a^6,a^2,a^5,1")
    if name == "lcd-family":
        f1, g1 = P("1,1"), P("1,a^5,a^5,2")
        return FamilyData(name, (0, 1, A(1), A(7)), S2, f1, g1, g2, 2, 2, A(2), p, f1, LCD, 4, 1)
    if name == "so-family":
        f1, g1 = P("a,a^7,2,a"), P("1,a^2")
        return FamilyData(name, (0, 1, 2, A(1)), S2, f1, g1, g2, 1, A(3), A(2), p, g1, SELF_ORTHOGONAL, 4, 1)
    if name == "sd-family":
        f1 = P("2,2,0,1")
        return FamilyData(name, _powers(F, (1, 2, 3, 5, 6, 7)), S2, f1, f1, g2, 1, 1, A(2), p, f1, SELF_DUAL, 6, 3)
    raise KeyError(name)


def family_identities(d: FamilyData) -> list[Check]:
    F = d.f1.field
    out = []
    for label, S, lhs, lam, beta in (
        ("f1 g1 = lambda1 L1' + beta1 L1", d.S1, d.f1 * d.g1, d.lam1, UniPoly.const(F, d.beta1)),
        ("f2 g2 = lambda2 L2' + p L2", d.S2, d.g2 * d.g2, d.lam2, d.p),
    ):
        L = vanishing_L(F, S)
        out.append(Check(label, lhs == formal_derivative(L).scale(lam) + L * beta))
    if d.expected == LCD:
        out.append(Check("gcd(f1, g1) = 1", uni_gcd(d.f1, d.g1).degree == 0))
    elif d.expected == SELF_ORTHOGONAL:
        out.append(Check("g1 divides f1", d.g1.divides(d.f1)))
    else:
        out.append(Check("f1 = g1", d.f1 == d.g1))
    return out


def family_checks(name: str, m_max: int) -> list[Check]:
    d = family_data(name)
    F = d.f1.field
    out = family_identities(d)
    for m in range(m_max + 1):
        C = family_code(F, d.S1, d.S2, d.code_factor, d.g2, m)
        n_exp = d.length * 3**m
        k_exp = d.dim * 3**m
        cls = classify(C)
        out.append(
            Check(
                f"m={m}: {d.expected} [{n_exp}, {k_exp}]",
                cls == d.expected and (C.n, C.k) == (n_exp, k_exp),
                f"got {cls} [{C.n}, {C.k}], hull dim {hull(C).k}",
            )
        )
    return out


def modulus_scan() -> list[Check]:
    """Which primitive F_9 modulus makes every printed family identity hold."""
    out = []
    for mod in ((2, 1, 1), (2, 2, 1)):
        ok = all(c.ok for name in CATALOG_FAMILIES for c in family_identities(family_data(name, mod))[:2])
        out.append(Check(f"identities under modulus {list(mod)}", ok == (mod == F9_MODULUS), f"hold={ok}"))
    return out


CATALOG_FAMILIES = ("lcd-family", "so-family", "sd-family")
DEFAULT_M = {"lcd-family": 2, "so-family": 2, "sd-family": 1}


def run(name: str, m: int | None = None) -> list[Check]:
    if name == "goppa-64-56-4":
        return goppa_64_56_4()
    if name == "acar-f17":
        return acar_f17()
    if name in CATALOG_FAMILIES:
        return family_checks(name, DEFAULT_M[name] if m is None else m)
    if name == "f9-modulus":
        return modulus_scan()
    raise KeyError(name)


CATALOG = ("goppa-64-56-4", "acar-f17") + CATALOG_FAMILIES + ("f9-modulus",)

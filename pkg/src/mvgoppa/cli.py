"""Command-line front end.

Examples::

    mvgoppa params --field 3 --tower 2 --ext-modulus 2,2,1 \\
        --S1 units --S2 units --g a,0,1 --g a,0,1 --family goppa --dmax 5
    mvgoppa classify --field 3^2:2,2,1 --family tensor \\
        --S1 a,a^2,a^3,a^5,a^6,a^7 --S2 1,a^5,a^7 --g 2,2,0,1 --g 0,2,a,1
    mvgoppa search --field 3^2:2,2,1 --kind SD --sizes 6,3 --budget 5
    mvgoppa reproduce lcd-family --m 2

Exit codes: 0 ok, 2 malformed input, 3 mathematical precondition violated,
4 internal consistency check failed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from . import reproduce
from .codes import (
    LinearCode,
    acar,
    acar_g,
    code_from_dict,
    code_params,
    code_to_dict,
    dual,
    goppa_parity,
    grs,
    hull,
    tensor_goppa,
    tensor_grs,
)
from .errors import MismatchDetected, PreconditionError, SpecError
from .gf import Field, FieldTower, make_field, make_tower
from .gfla import matrix_to_dict
from .poly import CartesianSet, ProductPoly, UniPoly
from .theory import (
    KINDS,
    classify,
    eaqecc_from_code,
    eaqecc_goppa,
    eaqecc_tensor,
    family_search,
    hull_tensor,
)

EXIT_OK, EXIT_SPEC, EXIT_PRECONDITION, EXIT_MISMATCH = 0, 2, 3, 4
FAMILIES = ("grs", "tensor", "acar", "goppa")

_S_FLAG = re.compile(r"--S(\d+)(?:=(.*))?$")


# -- parsing ---------------------------------------------------------------------

def parse_field(text: str) -> Field:
    """``p``, ``p^e`` or ``p^e:c0,c1,...`` (full monic modulus, low to high)."""
    m = re.fullmatch(r"\s*(\d+)(?:\^(\d+))?(?::([\d,\s]+))?\s*", text)
    if not m:
        raise SpecError(f"--field: cannot parse {text!r}; expected p^e[:c0,c1,...]")
    p, e = int(m.group(1)), int(m.group(2) or 1)
    modulus = _int_list(m.group(3), "--field modulus") if m.group(3) else None
    try:
        return make_field(p, e, modulus)
    except ValueError as exc:  # not prime, reducible modulus, e = 0
        raise SpecError(f"--field {text!r}: {exc}") from None


def _int_list(text: str, where: str) -> list[int]:
    out = []
    col = 1
    for tok in text.split(","):
        if not re.fullmatch(r"\s*-?\d+\s*", tok):
            raise SpecError(f"{where}: column {col}: expected an integer, got {tok.strip()!r}")
        out.append(int(tok))
        col += len(tok) + 1
    return out


def _elements(F: Field, text: str, where: str) -> tuple[int, ...]:
    """Comma list of elements with 1-based column numbers in error messages."""
    s = text.strip().strip("[]")
    if not s:
        return ()
    out = []
    col = 1
    for tok in s.split(","):
        try:
            out.append(F.parse_element(tok))
        except SpecError as exc:
            raise SpecError(f"{where}: column {col}: {exc}") from None
        col += len(tok) + 1
    return tuple(out)


def parse_points(F: Field, text: str, where: str) -> tuple[int, ...]:
    key = text.strip().lower()
    if key == "all":
        return tuple(range(F.q))
    if key == "units":
        return tuple(F.power_of_generator(i) for i in range(1, F.q))
    return _elements(F, text, where)


def parse_poly_arg(F: Field, text: str, where: str) -> UniPoly:
    return UniPoly(F, _elements(F, text, where))


def split_point_flags(argv: list[str]) -> tuple[list[str], dict[int, str]]:
    """Pull ``--S<j> VALUE`` pairs out of argv (argparse cannot declare them all)."""
    rest, sets = [], {}
    i = 0
    while i < len(argv):
        m = _S_FLAG.match(argv[i])
        if not m:
            rest.append(argv[i])
            i += 1
            continue
        j = int(m.group(1))
        if m.group(2) is not None:
            val = m.group(2)
            i += 1
        else:
            if i + 1 >= len(argv):
                raise SpecError(f"{argv[i]}: missing value")
            val = argv[i + 1]
            i += 2
        if j < 1 or j in sets:
            raise SpecError(f"--S{j}: index must be >= 1 and given once")
        sets[j] = val
    return rest, sets


@dataclass
class Job:
    """Validated tower, point grid and polynomials for one command."""

    tower: FieldTower
    S: CartesianSet | None
    g: ProductPoly | None
    f: ProductPoly | None
    kvec: tuple[int, ...] | None

    @property
    def field(self) -> Field:
        return self.tower.ext


def build_job(args, sets: dict[int, str]) -> Job:
    if args.field is None and getattr(args, "code", None) and not sets:
        with open(args.code) as fh:
            base = Field.from_dict(json.load(fh)["field"])
        return Job(make_tower(base, 1), None, None, None, None)
    if args.field is None:
        raise SpecError("--field is required")
    base = parse_field(args.field)
    ext_mod = _int_list(args.ext_modulus, "--ext-modulus") if args.ext_modulus else None
    if args.tower < 1:
        raise SpecError("--tower must be >= 1")
    tower = make_tower(base, args.tower, ext_mod)
    F = tower.ext
    S = None
    if sets:
        m = max(sets)
        missing = [j for j in range(1, m + 1) if j not in sets]
        if missing:
            raise SpecError(f"point sets must be numbered 1..{m}; missing --S{missing[0]}")
        S = CartesianSet(F, tuple(parse_points(F, sets[j], f"--S{j}") for j in range(1, m + 1)))

    def product(values, flag):
        if not values:
            return None
        polys = tuple(parse_poly_arg(F, v, f"{flag} #{i}") for i, v in enumerate(values, 1))
        if S is not None and len(polys) != S.m:
            raise SpecError(f"{flag}: got {len(polys)} factors for {S.m} point sets")
        return ProductPoly(polys)

    kvec = None
    if args.k:
        kvec = tuple(x for v in args.k for x in _int_list(v, "--k"))
        if S is not None and len(kvec) != S.m:
            raise SpecError(f"--k: got {len(kvec)} entries for {S.m} point sets")
    return Job(tower, S, product(args.g, "--g"), product(args.f, "--f"), kvec)


def build_code(args, job: Job) -> LinearCode:
    if args.code:
        with open(args.code) as fh:
            return code_from_dict(json.load(fh))
    if job.S is None:
        raise SpecError("give point sets --S1 ... or --code FILE")
    fam, S = args.family, job.S
    if fam == "grs":
        if S.m != 1:
            raise SpecError("grs takes a single point set --S1")
        if job.kvec is None:
            raise SpecError("grs needs --k")
        g = job.g.factors[0] if job.g else None
        return grs(job.field, S.components[0], job.kvec[0], g)
    if fam == "tensor":
        if job.kvec is not None:
            return tensor_grs(S, job.kvec, job.g)
        return tensor_goppa(S, _need(job.g, "--g"))
    if fam == "acar":
        if job.g is not None and job.kvec is None:
            return acar_g(S, job.g)
        return acar(S, _need(job.kvec, "--k"))
    return goppa_parity(job.tower, S, _need(job.g, "--g"))


def _need(x, flag):
    if x is None:
        raise SpecError(f"{flag} is required here")
    return x


# -- commands ----------------------------------------------------------------------

def _emit(args, payload: dict):
    text = json.dumps(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_build(args, job: Job) -> int:
    C = build_code(args, job)
    pr = code_params(C, args.dmax) if args.dmax is not None and C.k else None
    _emit(args, code_to_dict(C, pr, family=args.family))
    return EXIT_OK


def cmd_params(args, job: Job) -> int:
    C = build_code(args, job)
    pr = code_params(C, args.dmax)
    d = "-" if pr.d is None else str(pr.d)
    print(f"{pr.n} {pr.k} {d} {'true' if pr.exact else 'false'}")
    return EXIT_OK


def cmd_hull(args, job: Job) -> int:
    C = build_code(args, job)
    H = hull(C)
    print(f"n={C.n} k={C.k} hull_dim={H.k}")
    if job.f is not None and args.family == "tensor" and not args.code:
        T = hull_tensor(job.S, job.g, job.f, args.j_star)
        if T != H:
            raise MismatchDetected("hull of T(S, g) differs from T(S, gcd(f, g))")
        print(f"hull = T(S, gcd(f, g)) with deg gcd = {job.f.gcd(job.g).deg}")
    return EXIT_OK


def cmd_eaqecc(args, job: Job) -> int:
    if job.f is not None and not args.code and args.family == "tensor":
        pair = eaqecc_tensor(job.S, job.g, job.f, args.j_star)
        for name, p in zip(("from T", "from T (swapped)"), pair):
            print(f"{name:18s} {p}  mds={'true' if p.mds else 'false'}")
        return EXIT_OK
    if job.f is not None and not args.code and args.family == "goppa":
        pair = eaqecc_goppa(job.tower, job.S, job.g, job.f, args.j_star, d_cap=args.dmax)
        for name, b in zip(("first", "second"), pair):
            print(
                f"{name:7s} computed {b.computed}  bounds k<={b.bound_k} d>={b.bound_d} c<={b.bound_c}"
                f"  dims_ok={str(b.dims_ok).lower()} distance_ok={str(b.distance_ok).lower()}"
            )
        return EXIT_OK
    C = build_code(args, job)
    p_code = code_params(C, args.dmax) if C.k else None
    p_dual = code_params(dual(C), args.dmax) if C.k < C.n else None
    for name, p in zip(("C", "C^perp"), eaqecc_from_code(C, p_code, p_dual)):
        print(f"{name:7s} {p}  mds={'true' if p.mds else 'false'}")
    return EXIT_OK


def cmd_classify(args, job: Job) -> int:
    C = build_code(args, job)
    print(f"{classify(C)} [{C.n},{C.k}]")
    return EXIT_OK


def cmd_export(args, job: Job) -> int:
    C = build_code(args, job)
    M = C.gen if args.matrix == "generator" else C.parity_check()
    _emit(args, matrix_to_dict(C.field, M))
    return EXIT_OK


def cmd_search(args, job: Job) -> int:
    sizes = _int_list(args.sizes, "--sizes")
    if len(sizes) != 2:
        raise SpecError("--sizes takes n1,n2")
    res = family_search(
        job.field, sizes[0], sizes[1], args.kind, args.budget, jobs=args.jobs, affine=args.affine
    )
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for w in res.witnesses:
            out.write(json.dumps(w.to_json()) + "\n")
    finally:
        if args.out:
            out.close()
    print("# " + json.dumps(res.summary), file=sys.stderr)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    checks = reproduce.run(args.name, args.m)
    for c in checks:
        print(c)
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if not failed else EXIT_MISMATCH


# -- argument parser ---------------------------------------------------------------

def _spec_args(p: argparse.ArgumentParser, family: bool = True):
    p.add_argument("--field", help="base field p^e[:c0,c1,...]")
    p.add_argument("--tower", type=int, default=1, help="extension degree t (codes live over F_{q^t})")
    p.add_argument("--ext-modulus", help="modulus of F_{q^t} over F_p, c0,c1,...")
    p.add_argument("--g", action="append", help="factor g_j as c0,c1,... (repeat once per coordinate)")
    p.add_argument("--f", action="append", help="dual partner factor f_j (repeat once per coordinate)")
    p.add_argument("--k", action="append", help="dimension vector, e.g. 2,2")
    p.add_argument("--j-star", type=int, default=None, help="1-based coordinate of the scalar factor")
    p.add_argument("--dmax", type=int, default=None, help="stop the distance search at this weight")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--code", help="read a code JSON written by 'build' instead of --S/--g")
    if family:
        p.add_argument("--family", choices=FAMILIES, default="tensor")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mvgoppa",
        description="Multivariate Goppa, tensor GRS and augmented Cartesian codes. "
        "Point sets are given as --S1 VALUES --S2 VALUES ... (comma lists, 'all' or 'units').",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("build", "write the code as JSON"),
        ("params", "print 'n k d exact'"),
        ("hull", "hull dimension"),
        ("eaqecc", "entanglement-assisted quantum code parameters"),
        ("classify", "LCD / self-orthogonal / self-dual"),
        ("export", "export a generator or parity-check matrix"),
    ):
        p = sub.add_parser(name, help=helptext)
        _spec_args(p)
        if name == "export":
            p.add_argument("--matrix", choices=("generator", "parity"), default="generator")
    p = sub.add_parser("search", help="search for LCD / SO / SD code families (JSONL)")
    p.add_argument("--field", required=True)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--sizes", required=True, help="n1,n2")
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--affine", action="store_true", help="keep one S1 per affine orbit")
    p.add_argument("--out")
    p = sub.add_parser("reproduce", help="re-check a worked example")
    p.add_argument("name", choices=reproduce.CATALOG)
    p.add_argument("--m", type=int, default=None, help="largest family power to check")
    return ap


COMMANDS = {
    "build": cmd_build,
    "params": cmd_params,
    "hull": cmd_hull,
    "eaqecc": cmd_eaqecc,
    "classify": cmd_classify,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = make_parser()
    try:
        rest, sets = split_point_flags(argv)
        args = parser.parse_args(rest)
        if args.command == "reproduce":
            return cmd_reproduce(args)
        if args.command == "search":
            args.tower, args.ext_modulus, args.g, args.f, args.k = 1, None, None, None, None
            if args.budget < 0 or args.jobs < 1:
                raise SpecError("--budget must be >= 0 and --jobs >= 1")
            return cmd_search(args, build_job(args, {}))
        job = build_job(args, sets)
        return COMMANDS[args.command](args, job)
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except MismatchDetected as exc:
        print(f"MISMATCH: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())

"""Multivariate Goppa codes, tensor GRS codes and augmented Cartesian codes.

Exact arithmetic over GF(p^e) towers, duals, hulls, EAQECC parameters and
LCD / self-orthogonal / self-dual families.
"""

from __future__ import annotations

from .codes import (
    CodeParams,
    ExponentSet,
    LinearCode,
    acar,
    acar_g,
    code_params,
    dual,
    goppa_parity,
    goppa_subfield,
    grs,
    hull,
    intersect,
    monomial_cartesian,
    subfield_subcode,
    tensor_goppa,
    tensor_grs,
    trace_code,
)
from .errors import GoppaError, MismatchDetected, PreconditionError, SpecError
from .gf import Field, FieldTower, make_field, make_tower, trace
from .poly import CartesianSet, MultiPoly, ProductPoly, UniPoly, parse_poly
from .theory import (
    classify,
    dual_partner_check,
    eaqecc_goppa,
    eaqecc_tensor,
    family_search,
    find_dual_partner,
    hull_goppa_bound,
    hull_tensor,
)

__version__ = "0.1.0"

__all__ = [
    "CodeParams",
    "ExponentSet",
    "LinearCode",
    "acar",
    "acar_g",
    "code_params",
    "dual",
    "goppa_parity",
    "goppa_subfield",
    "grs",
    "hull",
    "intersect",
    "monomial_cartesian",
    "subfield_subcode",
    "tensor_goppa",
    "tensor_grs",
    "trace_code",
    "classify",
    "dual_partner_check",
    "eaqecc_goppa",
    "eaqecc_tensor",
    "family_search",
    "find_dual_partner",
    "hull_goppa_bound",
    "hull_tensor",
    "GoppaError",
    "MismatchDetected",
    "PreconditionError",
    "SpecError",
    "Field",
    "FieldTower",
    "make_field",
    "make_tower",
    "trace",
    "CartesianSet",
    "MultiPoly",
    "ProductPoly",
    "UniPoly",
    "parse_poly",
]

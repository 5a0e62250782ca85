"""Machine-readable reports for the CLI and independent certificate checks.

A report is a JSON object::

    {"command": [...], "algebra": name, "property": ..., "verdict": true|false|null,
     "certificate": {...}, "reason": "...", "anchor": "...", "timing_seconds": t}

Certificates carry witnesses (ideal bases, inverses, unit decompositions,
pattern matrices, center bases) that ``verify_certificate`` re-checks with
direct multiplications and ranks, without rerunning the decision procedure.
Field elements are encoded as strings ``"n"`` or ``"n/d"``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .algebra import AlgebraError, GradedAlgebra
from .grade_group import GroupElement
from .linalg import Subspace, rank
from .structure import (DEFAULT_MAX_ENUM, Decision, base_vectors, brute_force_graded_simple, center,
                        check_base, is_graded_central_simple, is_graded_division_ring, is_graded_field,
                        is_graded_simple)

ANCHORS = {
    "simple": "graded simplicity: no graded two-sided ideal other than 0 and A",
    "central-simple": "graded central simplicity: graded simple with center equal to the designated base",
    "division": "graded division ring: every nonzero homogeneous element is invertible",
    "field": "graded field: commutative graded division ring",
    "azumaya": "graded Azumaya: graded free over the base and the sandwich map is a graded isomorphism",
    "azumaya-center": "Azumaya over the center: projective over Z(A) and the sandwich map is bijective",
    "strongly-graded": "strong grading: A_g A_h = A_(g+h), equivalently 1 in A_g A_(-g) for all g",
}


def jsonable(x: Any) -> Any:
    """Recursively convert field elements, group elements and tuples to JSON data."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, GroupElement):
        return list(x.coords)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        n, d = int(x.numerator), int(x.denominator)
        return str(n) if d == 1 else f"{n}/{d}"
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    return x


def _scalar(A: GradedAlgebra, s):
    return A.field(Fraction(s)) if isinstance(s, str) else A.field(s)


def _vector(A: GradedAlgebra, v) -> list:
    if not isinstance(v, list) or len(v) != A.dim:
        raise AlgebraError(f"certificate vector must have {A.dim} coordinates")
    return [_scalar(A, s) for s in v]


# ----------------------------------------------------------------- checks

def _azumaya_decision(A: GradedAlgebra, max_enum: int) -> Decision:
    from .azumaya import is_graded_azumaya
    rep = is_graded_azumaya(A)
    cert = dict(rep.certificate)
    cert.update({"kind": "azumaya_ranks", "faithfully_projective": rep.faithfully_projective,
                 "psi_bijective": rep.psi_bijective, "psi_graded": rep.psi_graded})
    return Decision(rep.verdict, cert, rep.reason)


def _azumaya_center_decision(A: GradedAlgebra, max_enum: int) -> Decision:
    from .azumaya import azumaya_over_center
    rep = azumaya_over_center(A)
    cert = {"kind": "center_azumaya", "projective": rep.projective, "blocks": rep.blocks,
            "tensor_dim": rep.tensor_dim, "end_dim": rep.end_dim, "psi_rank": rep.psi_rank}
    return Decision(rep.verdict, cert, "" if rep.verdict else "not Azumaya over its center")


def _strong(A: GradedAlgebra, max_enum: int) -> Decision:
    from .k0 import is_strongly_graded
    return is_strongly_graded(A)


CHECKS: dict[str, Callable[[GradedAlgebra, int], Decision]] = {
    "simple": lambda A, m: is_graded_simple(A),
    "central-simple": is_graded_central_simple,
    "division": is_graded_division_ring,
    "field": is_graded_field,
    "azumaya": _azumaya_decision,
    "azumaya-center": _azumaya_center_decision,
    "strongly-graded": _strong,
}


def run_check(A: GradedAlgebra, prop: str, *, max_enum: int = DEFAULT_MAX_ENUM,
              command: list[str] | None = None) -> dict:
    if prop not in CHECKS:
        raise AlgebraError(f"unknown property {prop!r}; choose from {sorted(CHECKS)}")
    t0 = time.perf_counter()
    dec = CHECKS[prop](A, max_enum)
    return {"command": command or ["check", prop], "algebra": A.name, "property": prop,
            "verdict": dec.verdict, "certificate": jsonable(dec.certificate), "reason": dec.reason,
            "anchor": ANCHORS[prop], "timing_seconds": round(time.perf_counter() - t0, 6)}


# ---------------------------------------------------------- verification

@dataclass
class CertificateCheck:
    status: str  # "verified" | "rejected" | "unverifiable"
    claimed: bool | None
    detail: str

    def to_json(self) -> dict:
        return {"status": self.status, "claimed_verdict": self.claimed, "detail": self.detail}


def _closed_graded_ideal(A: GradedAlgebra, basis: list[list]) -> str | None:
    """None when ``basis`` spans a proper nonzero graded two-sided ideal, else the defect."""
    S = Subspace(A.field, A.dim, basis)
    if S.dim == 0 or S.dim == A.dim:
        return f"span has dimension {S.dim}, not a proper nonzero subspace"
    for v in S.basis:
        for i in range(A.dim):
            b = A.basis_vector(i)
            if A.mul(b, v) not in S or A.mul(v, b) not in S:
                return "span is not closed under multiplication by A"
        for idx in A.components.values():
            proj = [v[k] if k in idx else A.field.zero for k in range(A.dim)]
            if proj not in S:
                return "span is not graded"
    return None


def _is_unit_of(A: GradedAlgebra, x, y) -> bool:
    return A.mul(x, y) == A.unit and A.mul(y, x) == A.unit


def verify_certificate(A: GradedAlgebra, report: dict, *, max_enum: int = DEFAULT_MAX_ENUM) -> CertificateCheck:
    """Re-check a report's certificate against the algebra."""
    cert = report.get("certificate") or {}
    claimed = report.get("verdict")
    prop = report.get("property")
    kind = cert.get("kind")
    try:
        return _verify(A, prop, kind, cert, claimed, max_enum)
    except (AlgebraError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        return CertificateCheck("rejected", claimed, f"malformed certificate: {exc}")


def _verify(A, prop, kind, cert, claimed, max_enum) -> CertificateCheck:
    ok = lambda msg: CertificateCheck("verified", claimed, msg)
    bad = lambda msg: CertificateCheck("rejected", claimed, msg)
    F = A.field
    if kind == "graded_ideal":
        if prop not in ("simple", "central-simple") or claimed is not False:
            return bad("an ideal witness only supports a 'not simple' verdict")
        defect = _closed_graded_ideal(A, [_vector(A, v) for v in cert["basis"]])
        return bad(defect) if defect else ok("proper nonzero graded ideal confirmed")
    if kind == "non_invertible":
        v = _vector(A, cert["element"])
        if not any(c != 0 for c in v) or A.degree_of(v) is None:
            return bad("witness is zero or not homogeneous")
        if rank(F, A.left_matrix(v), A.dim) == A.dim:
            return bad("witness is invertible")
        return ok("nonzero homogeneous element with singular left multiplication")
    if kind == "inverses":
        inv = {int(k): _vector(A, v) for k, v in cert["inverses"].items()}
        if any(len(idx) != 1 for idx in A.components.values()):
            return bad("inverse lists certify division only when every component is 1-dimensional")
        for idx in A.components.values():
            if idx[0] not in inv or not _is_unit_of(A, A.basis_vector(idx[0]), inv[idx[0]]):
                return bad(f"basis element {idx[0]} lacks a valid inverse")
        if prop == "field" and not A.is_commutative():
            return bad("algebra is not commutative")
        return ok("every homogeneous basis element has a two-sided inverse")
    if kind == "noncommutative":
        for i in range(A.dim):
            for j in range(A.dim):
                if A.mul(A.basis_vector(i), A.basis_vector(j)) != A.mul(A.basis_vector(j), A.basis_vector(i)):
                    return ok(f"basis elements {i} and {j} do not commute")
        return bad("the algebra is commutative")
    if kind == "center":
        R = Subspace(F, A.dim, check_base(A))
        Z = [_vector(A, v) for v in cert["center_basis"]]
        for z in Z:
            if any(A.mul(z, A.basis_vector(i)) != A.mul(A.basis_vector(i), z) for i in range(A.dim)):
                return bad("a listed element is not central")
        if all(z in R for z in Z):
            return bad("listed central elements lie in the base")
        return ok("a central element outside the base exists")
    if kind == "missing_degree":
        g = A.group(cert["degree"])
        if not A.group.is_finite and g not in A.components:
            return ok(f"A_{g} = 0")
        P = Subspace(F, A.dim, [A.mul(A.basis_vector(i), A.basis_vector(j))
                                for i in A.components.get(g, []) for j in A.components.get(-g, [])])
        return bad("1 lies in A_g A_-g") if A.unit in P else ok(f"1 is not in A_{g} A_{-g}")
    if kind == "unit_decompositions":
        if not A.group.is_finite:
            return bad("strong grading over an infinite group cannot be certified")
        seen = set()
        for w in cert["witnesses"]:
            g = A.group(w["degree"])
            total = A.zero()
            for i, j, num, den in w["terms"]:
                if A.degrees[i] != g or A.degrees[j] != -g:
                    return bad(f"term ({i}, {j}) has the wrong degrees for {g}")
                total = A.add(total, A.scale(F((num, den)), A.mul(A.basis_vector(i), A.basis_vector(j))))
            if total != A.unit:
                return bad(f"decomposition for {g} does not sum to 1")
            seen.add(g)
        if seen != set(A.group.elements()):
            return bad("some degree lacks a decomposition")
        return ok("1 = sum a_i b_i with a_i in A_g, b_i in A_-g for every g")
    if kind == "pattern_matrix":
        from .modules import PatternMatrix, verify_shift_witness
        w = cert["witness"]
        m = PatternMatrix(A, [[_vector(A, x) if isinstance(x[0], str) else [F(tuple(c)) for c in x] for x in row]
                              for row in w["entries"]], w["row_shifts"], w["col_shifts"])
        return ok("invertible pattern matrix") if verify_shift_witness(m) else bad("witness fails")
    if kind == "azumaya_ranks":
        from .azumaya import psi_matrix
        P = psi_matrix(A)
        same = (P.k_rank == cert["k_rank"] and P.k_domain_dim == cert["domain_dim"]
                and P.k_end_dim == cert["end_dim"] and P.graded == cert["psi_graded"])
        if not same:
            return bad("recorded ranks do not match the sandwich map")
        return ok("sandwich-map ranks match") if (P.bijective and P.graded) == bool(claimed) else \
            bad("ranks contradict the claimed verdict")
    if kind in ("graded_simple", "enumeration", "graded_central_simple"):
        # absence claims have no finite witness; fall back to the brute-force oracle
        if F.is_finite and kind == "graded_simple":
            o = brute_force_graded_simple(A, max_enum)
            if o is None:
                return CertificateCheck("unverifiable", claimed, "oracle budget exceeded")
            return ok("brute-force oracle agrees") if o == claimed else bad("brute-force oracle disagrees")
        return CertificateCheck("unverifiable", claimed, f"no finite witness for {kind!r} over {F!r}")
    return CertificateCheck("unverifiable", claimed, f"unsupported certificate kind {kind!r}")

"""JSON documents.  Every rational is a ``"p/q"`` or ``"p"`` string."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import Matrix, StructureConstants, as_rational, format_rational, matrix
from .contraction import ContractionSpec, Monomial, Signature
from .multiplicative import MultiplicativeCertificate, MultiplicativeSystem, RadicalProduct
from .signature import InfeasibilityCertificateS, MixedLinearSystem


class DocumentError(ValueError):
    pass


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DocumentError(f"{where}: rationals must be strings like \"p/q\", got {value!r}")
    try:
        return as_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _index(value, dim: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not 1 <= value <= dim:
        raise DocumentError(f"{where}: index must be an integer in 1..{dim}, got {value!r}")
    return value


def _require(doc, key, where):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"{where}: missing key {key!r}")
    return doc[key]


def loads(text: str) -> Any:
    """``json.loads`` that reports the failing position as a DocumentError."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


# -- algebra --------------------------------------------------------------------

def algebra_to_doc(c: StructureConstants) -> dict:
    return {
        "dim": c.dim,
        "brackets": [{"i": i, "j": j, "k": k, "c": format_rational(v)} for (i, j, k), v in c.items()],
    }


def algebra_from_doc(doc) -> StructureConstants:
    dim = _require(doc, "dim", "algebra")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise DocumentError(f"algebra: dim must be a positive integer, got {dim!r}")
    brackets = doc.get("brackets", [])
    if not isinstance(brackets, list):
        raise DocumentError("algebra: brackets must be a list")
    entries = {}
    for pos, b in enumerate(brackets):
        where = f"algebra bracket #{pos}"
        i, j, k = (_index(_require(b, key, where), dim, where) for key in "ijk")
        if i >= j:
            raise DocumentError(f"{where}: only i < j entries are accepted, got ({i},{j},{k})")
        if (i, j, k) in entries:
            raise DocumentError(f"{where}: duplicate entry ({i},{j},{k})")
        entries[(i, j, k)] = _rational(_require(b, "c", where), where)
    return StructureConstants(dim, entries)


# -- matrices and contraction specs -----------------------------------------------

def matrix_to_doc(m: Matrix) -> list:
    return [[format_rational(x) for x in row] for row in m]


def matrix_from_doc(doc, dim: int, where: str) -> Matrix:
    if not isinstance(doc, list) or len(doc) != dim or any(
            not isinstance(row, list) or len(row) != dim for row in doc):
        raise DocumentError(f"{where}: expected a {dim}x{dim} matrix")
    return matrix([[_rational(x, where) for x in row] for row in doc])


def limits_to_doc(limits) -> list:
    return [{"i": i, "j": j, "k": k, "F": format_rational(v)} for (i, j, k), v in sorted(limits.items())]


def family_to_doc(family) -> dict:
    if isinstance(family, Signature):
        return {"kind": "signature", "exponents": [format_rational(a) for a in family]}
    if isinstance(family, dict):
        return {"kind": "limits", "limits": limits_to_doc(family)}
    return {"kind": "monomial",
            "entries": [{"coef": format_rational(f.coef), "exp": format_rational(f.exp)} for f in family]}


def family_from_doc(doc, dim: int):
    kind = _require(doc, "kind", "family")
    if kind == "signature":
        exps = _require(doc, "exponents", "family")
        if not isinstance(exps, list) or len(exps) != dim:
            raise DocumentError(f"family: expected {dim} exponents")
        return Signature([_rational(a, "family exponent") for a in exps])
    if kind == "monomial":
        entries = _require(doc, "entries", "family")
        if not isinstance(entries, list) or len(entries) != dim:
            raise DocumentError(f"family: expected {dim} entries")
        out = []
        for pos, e in enumerate(entries):
            where = f"family entry #{pos}"
            coef = _rational(_require(e, "coef", where), where)
            if coef == 0:
                raise DocumentError(f"{where}: coefficient must be nonzero")
            out.append(Monomial(coef, _rational(_require(e, "exp", where), where)))
        return tuple(out)
    if kind == "limits":
        limits = {}
        for pos, e in enumerate(_require(doc, "limits", "family")):
            where = f"limit #{pos}"
            t = tuple(_index(_require(e, key, where), dim, where) for key in "ijk")
            if t[0] >= t[1]:
                raise DocumentError(f"{where}: only i < j entries are accepted")
            if t in limits:
                raise DocumentError(f"{where}: duplicate entry {t}")
            limits[t] = _rational(_require(e, "F", where), where)
        return limits
    raise DocumentError(f"family: unknown kind {kind!r}")


def spec_to_doc(spec: ContractionSpec) -> dict:
    doc = {}
    if spec.A is not None:
        doc["A"] = matrix_to_doc(spec.A)
    doc["family"] = family_to_doc(spec.family)
    if spec.P is not None:
        doc["P"] = matrix_to_doc(spec.P)
    return doc


def spec_from_doc(doc, dim: int) -> ContractionSpec:
    if not isinstance(doc, dict):
        raise DocumentError("contraction spec must be an object")
    A = matrix_from_doc(doc["A"], dim, "A") if doc.get("A") is not None else None
    P = matrix_from_doc(doc["P"], dim, "P") if doc.get("P") is not None else None
    return ContractionSpec(A, family_from_doc(_require(doc, "family", "spec"), dim), P)


# -- gamma and certificates ---------------------------------------------------------

def radical_to_doc(r: RadicalProduct) -> dict:
    return {"sign": r.sign,
            "factors": [{"base": str(p), "exp": format_rational(e)} for p, e in r.powers]}


def radical_from_doc(doc) -> RadicalProduct:
    sign = _require(doc, "sign", "gamma")
    if sign not in (1, -1):
        raise DocumentError("gamma: sign must be 1 or -1")
    factors = []
    for f in doc.get("factors", []):
        base = _rational(_require(f, "base", "gamma factor"), "gamma factor")
        if base <= 0:
            raise DocumentError("gamma factor: base must be positive")
        factors.append((base, _rational(_require(f, "exp", "gamma factor"), "gamma factor")))
    return RadicalProduct(sign, factors)


def linear_certificate_to_doc(cert: InfeasibilityCertificateS, sys: MixedLinearSystem) -> dict:
    doc = {"kind": "linear", "equations": [], "inequalities": [], "signs": []}
    for row, m in enumerate(cert.eq_coeffs):
        if m:
            doc["equations"].append({"row": row, "triple": list(sys.eq_triples[row]) if sys.eq_triples else None,
                                     "coef": m})
    for row, m in enumerate(cert.ineq_coeffs):
        if m:
            doc["inequalities"].append({"row": row, "triple": list(sys.ineq_triples[row]) if sys.ineq_triples else None,
                                        "coef": m})
    for j, m in sorted(cert.sign_coeffs.items()):
        doc["signs"].append({"index": j, "relation": sys.sign_constraints[j], "coef": m})
    return doc


def linear_certificate_from_doc(doc, sys: MixedLinearSystem) -> InfeasibilityCertificateS:
    if _require(doc, "kind", "certificate") != "linear":
        raise DocumentError("certificate: expected kind 'linear'")
    eq = [0] * len(sys.eq_rows)
    ineq = [0] * len(sys.ineq_rows)
    for item in doc.get("equations", []):
        eq[item["row"]] = item["coef"]
    for item in doc.get("inequalities", []):
        ineq[item["row"]] = item["coef"]
    signs = {item["index"]: item["coef"] for item in doc.get("signs", [])}
    return InfeasibilityCertificateS(tuple(eq), tuple(ineq), signs)


_KINDS = {"unit_mismatch", "negative_square"}


def multiplicative_certificate_to_doc(cert: MultiplicativeCertificate, sys: MultiplicativeSystem) -> dict:
    return {"kind": cert.kind, "m": list(cert.m), "triples": [list(t) for t in sys.triples]}


def multiplicative_certificate_from_doc(doc) -> MultiplicativeCertificate:
    kind = _require(doc, "kind", "certificate")
    if kind not in _KINDS:
        raise DocumentError(f"certificate: unknown kind {kind!r}")
    return MultiplicativeCertificate(kind, tuple(_require(doc, "m", "certificate")))


def certificate_to_doc(cert, sys) -> dict:
    if isinstance(cert, MultiplicativeCertificate):
        return multiplicative_certificate_to_doc(cert, sys)
    return linear_certificate_to_doc(cert, sys)


# -- integerization bundle ---------------------------------------------------------

def result_to_doc(result) -> dict:
    a_tilde = result.A_tilde
    report = result.report
    return {
        "A": matrix_to_doc(result.A),
        "gamma": [radical_to_doc(g) for g in result.gamma],
        "A_tilde": matrix_to_doc(a_tilde) if a_tilde is not None else None,
        "alpha": list(result.alpha),
        "P": matrix_to_doc(result.P),
        "contracted": algebra_to_doc(result.contracted),
        "report": None if report is None else {
            "ok": report.ok,
            "gamma_ok": report.gamma_ok,
            "alpha_ok": report.alpha_ok,
            "contraction_ok": report.contraction_ok,
            "derivation_ok": report.derivation_ok,
            "mismatches": [list(t) for t in report.mismatches],
            "errors": list(report.errors),
        },
    }


def result_from_doc(doc):
    from .pipeline import IntegerizedContraction, VerificationReport

    contracted = algebra_from_doc(_require(doc, "contracted", "result"))
    n = contracted.dim
    rep = doc.get("report")
    report = None
    if rep is not None:
        report = VerificationReport(rep["gamma_ok"], rep["alpha_ok"], rep["contraction_ok"],
                                    rep["derivation_ok"], [tuple(t) for t in rep["mismatches"]],
                                    list(rep["errors"]))
    alpha = _require(doc, "alpha", "result")
    if not isinstance(alpha, list) or any(isinstance(a, bool) or not isinstance(a, int) for a in alpha):
        raise DocumentError("result: alpha must be a list of integers")
    return IntegerizedContraction(
        matrix_from_doc(_require(doc, "A", "result"), n, "A"),
        tuple(radical_from_doc(g) for g in _require(doc, "gamma", "result")),
        tuple(alpha),
        matrix_from_doc(_require(doc, "P", "result"), n, "P"),
        contracted,
        None,
        report,
    )

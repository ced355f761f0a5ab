"""Replace a diagonal contraction by an equivalent one with integer exponents.

Given ``U_eps = A diag(f_1, ..., f_n) P``, the result is
``A diag(gamma) diag(eps**alpha) P`` where ``gamma`` solves the
multiplicative system built from the nonzero limits and ``alpha`` is an
integer solution of the mixed exponent system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .algebra import (
    Matrix,
    StructureConstants,
    Triple,
    diagonal,
    identity,
    inverse,
    is_derivation,
    matmul,
    transform,
)
from .contraction import (
    ContractionError,
    Signature,
    TripleClassification,
    apply_classification,
    classify,
    classify_triples,
    exponent_sum,
)
from .multiplicative import (
    MultiplicativeCertificate,
    MultiplicativeSystem,
    RadicalProduct,
    solve_gamma,
    verify_gamma,
)
from .signature import (
    InfeasibilityCertificateS,
    MixedLinearSystem,
    build_system,
    solve_integer_signature,
)

SignMode = Union[None, str, Mapping[int, str]]

_INDEX_MODES = {"+": ">=0", "-": "<0"}


def sign_constraints(mode: SignMode, n: int) -> dict[int, str]:
    """Translate a sign mode into per-index relations.

    ``"nonneg"`` asks for every exponent ``>= 0``, ``"positive"`` for ``> 0``;
    a mapping ``{j: "+"}`` / ``{j: "-"}`` asks for a nonnegative / negative
    ``j``-th exponent.  Explicit relations such as ``">0"`` pass through.
    """
    if mode is None:
        return {}
    if mode == "nonneg":
        return {j: ">=0" for j in range(1, n + 1)}
    if mode == "positive":
        return {j: ">0" for j in range(1, n + 1)}
    if isinstance(mode, str):
        raise ValueError(f"unknown sign mode {mode!r}")
    return {int(j): _INDEX_MODES.get(rel, rel) for j, rel in mode.items()}


class InconsistentLimitsError(ContractionError):
    """No diagonal contraction produces the given limits."""

    def __init__(self, certificate, system):
        kind = getattr(certificate, "kind", "linear")
        super().__init__(f"limit data is inconsistent ({kind} certificate)")
        self.certificate = certificate
        self.system = system


def integerize_signature(
    c: StructureConstants, alpha: Sequence[object], sign_mode: SignMode = None
) -> Union[tuple[int, ...], InfeasibilityCertificateS]:
    cls = classify_triples(c, alpha)
    return solve_integer_signature(build_system(c, cls, sign_constraints(sign_mode, c.dim)))


@dataclass
class VerificationReport:
    gamma_ok: bool = True
    alpha_ok: bool = True
    contraction_ok: bool = True
    derivation_ok: bool = True
    mismatches: list[Triple] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.gamma_ok and self.alpha_ok and self.contraction_ok
                and self.derivation_ok and not self.errors)


@dataclass
class IntegerizedContraction:
    A: Matrix
    gamma: tuple[RadicalProduct, ...]
    alpha: tuple[int, ...]
    P: Matrix
    contracted: StructureConstants
    classification: TripleClassification | None = None
    report: VerificationReport | None = None

    @property
    def gamma_rational(self) -> bool:
        return all(g.is_rational() for g in self.gamma)

    @property
    def A_tilde(self) -> Matrix | None:
        """``A diag(gamma)`` when every ``gamma_i`` is rational, else ``None``."""
        if not self.gamma_rational:
            return None
        return matmul(self.A, diagonal([g.to_fraction() for g in self.gamma]))


def realize(
    c: StructureConstants,
    A: Matrix,
    gamma: Sequence[RadicalProduct],
    alpha: Sequence[object],
    P: Matrix,
) -> StructureConstants:
    """Limit of ``A diag(gamma) diag(eps**alpha) P`` acting on ``c``.

    ``gamma`` may be irrational; the surviving constants must come out rational.
    """
    n = c.dim
    alpha = Signature(alpha).exponents
    moved = transform(c, A)
    out = {}
    for t in moved.nonzero_triples():
        s = exponent_sum(alpha, t)
        if s < 0:
            raise ContractionError("signature violates validity constraint", t)
        if s > 0:
            continue
        i, j, k = t
        factor = gamma[i - 1] * gamma[j - 1] / gamma[k - 1]
        if not factor.is_rational():
            raise ContractionError("contracted constant is irrational", t)
        out[t] = moved(*t) * factor.to_fraction()
    return transform(StructureConstants(n, out), P)


def verify_integerization(
    c: StructureConstants, result: IntegerizedContraction, target: StructureConstants
) -> VerificationReport:
    report = VerificationReport()
    try:
        realized = realize(c, result.A, result.gamma, result.alpha, result.P)
    except ContractionError as exc:
        report.contraction_ok = False
        report.errors.append(str(exc))
        if exc.triple is not None:
            report.mismatches.append(exc.triple)
        realized = None
    if realized is not None and realized != target:
        report.contraction_ok = False
        report.mismatches = sorted(
            t for t in set(realized.nonzero_triples()) | set(target.nonzero_triples())
            if realized(*t) != target(*t)
        )
    before_p = transform(target, inverse(result.P))
    report.derivation_ok = is_derivation(before_p, result.alpha)
    return report


def integerize_diagonal(
    c: StructureConstants,
    A: Matrix | None,
    family,
    P: Matrix | None = None,
    sign_mode: SignMode = None,
) -> IntegerizedContraction:
    """Integer-signature realization of a diagonal contraction.

    ``family`` is a :class:`Signature`, a sequence of monomial entries, or
    limit data keyed by the nonzero brackets of ``c`` moved by ``A``.
    Raises :class:`InconsistentLimitsError` carrying a certificate when no
    diagonal contraction has these limits.
    """
    n = c.dim
    A = identity(n) if A is None else A
    P = identity(n) if P is None else P
    inverse(P)
    moved = transform(c, A)
    cls = classify(moved, family)
    target = transform(apply_classification(moved, cls), P)

    msys = MultiplicativeSystem.from_classification(moved, cls)
    gamma = solve_gamma(msys)
    if isinstance(gamma, MultiplicativeCertificate):
        raise InconsistentLimitsError(gamma, msys)

    ssys = build_system(moved, cls, sign_constraints(sign_mode, n))
    alpha = solve_integer_signature(ssys)
    if isinstance(alpha, InfeasibilityCertificateS):
        raise InconsistentLimitsError(alpha, ssys)

    result = IntegerizedContraction(A, gamma, alpha, P, target, cls)
    report = verify_integerization(c, result, target)
    report.gamma_ok = verify_gamma(msys, gamma)
    report.alpha_ok = ssys.satisfied_by(alpha)
    result.report = report
    return result


def mixed_system_for(c: StructureConstants, A: Matrix | None, family, sign_mode: SignMode = None
                     ) -> MixedLinearSystem:
    moved = transform(c, identity(c.dim) if A is None else A)
    return build_system(moved, classify(moved, family), sign_constraints(sign_mode, c.dim))

"""Built-in algebras with contractions whose results are known exactly."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import StructureConstants, validate_algebra
from .contraction import ContractionError, ContractionSpec, contract_full
from .jsonio import algebra_from_doc, spec_from_doc


def _alg(dim, *brackets):
    return {"dim": dim, "brackets": [{"i": i, "j": j, "k": k, "c": c} for i, j, k, c in brackets]}


def _sig(*exps, **extra):
    return {"family": {"kind": "signature", "exponents": [str(a) for a in exps]}, **extra}


def _mono(*pairs, **extra):
    return {"family": {"kind": "monomial",
                       "entries": [{"coef": str(c), "exp": str(e)} for c, e in pairs]}, **extra}


BUILTIN = {
    "entries": [
        {"name": "a2", "algebra": _alg(2), "contractions": [{"spec": _sig(1, 1), "expected": "a2"}]},
        {"name": "a3", "algebra": _alg(3), "contractions": [{"spec": _sig(1, 2, 3), "expected": "a3"}]},
        {"name": "a4", "algebra": _alg(4), "contractions": [{"spec": _sig(0, 1, 0, 1), "expected": "a4"}]},
        {"name": "r2", "algebra": _alg(2, (1, 2, 2, "1")),
         "contractions": [{"spec": _sig(1, 0), "expected": "a2"},
                          {"spec": _sig(0, 1), "expected": "r2"}]},
        {"name": "h3", "algebra": _alg(3, (1, 2, 3, "1")),
         "contractions": [
             {"spec": _sig(1, 1, 1), "expected": "a3"},
             {"spec": _sig(1, 1, 2), "expected": "h3"},
             {"spec": _mono((1, 1), (2, 1), (1, 2), P=[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "2"]]),
              "expected": "h3"},
             {"spec": _mono((1, 1), (1, 1), (1, "1/2")), "expected": "a3"},
         ]},
        {"name": "so3", "algebra": _alg(3, (1, 2, 3, "1"), (2, 3, 1, "1"), (1, 3, 2, "-1")),
         "contractions": [
             {"spec": _sig(1, 1, 0), "expected": "e2"},
             {"spec": _sig(1, 1, 2), "expected": "h3"},
             {"spec": _sig("1/2", "1/2", "1/2"), "expected": "a3"},
         ]},
        {"name": "e2", "algebra": _alg(3, (2, 3, 1, "1"), (1, 3, 2, "-1")),
         "contractions": [
             {"spec": _sig(1, 1, 0), "expected": "e2"},
             {"spec": _sig(1, 1, 1), "expected": "a3"},
         ]},
        {"name": "sl2", "algebra": _alg(3, (1, 2, 2, "2"), (1, 3, 3, "-2"), (2, 3, 1, "1")),
         "contractions": [
             {"spec": _sig(0, 1, 1), "expected": "p11"},
             {"spec": _mono((3, 1), (-2, 1), (5, 1)), "expected": "a3"},
         ]},
        {"name": "p11", "algebra": _alg(3, (1, 2, 2, "2"), (1, 3, 3, "-2")),
         "contractions": [{"spec": _sig(1, 0, 0), "expected": "a3"}]},
        {"name": "n4", "algebra": _alg(4, (1, 2, 3, "1"), (1, 3, 4, "1")),
         "contractions": [
             {"spec": _sig(1, 1, 2, 3), "expected": "n4"},
             {"spec": _sig(1, 1, 2, 2), "expected": "h3a1"},
             {"spec": _sig(1, 0, 0, 0), "expected": "a4"},
         ]},
        {"name": "h3a1", "algebra": _alg(4, (1, 2, 3, "1")),
         "contractions": [{"spec": _sig(1, 1, 1, 1), "expected": "a4"}]},
    ]
}


@dataclass
class CorpusEntry:
    name: str
    algebra: StructureConstants
    known_contractions: list[tuple[ContractionSpec, str]] = field(default_factory=list)


def load_corpus(doc=None) -> list[CorpusEntry]:
    doc = BUILTIN if doc is None else doc
    out = []
    for e in doc["entries"]:
        alg = algebra_from_doc(e["algebra"])
        out.append(CorpusEntry(
            e["name"], alg,
            [(spec_from_doc(k["spec"], alg.dim), k["expected"]) for k in e.get("contractions", [])],
        ))
    return out


def by_name(entries: Sequence[CorpusEntry]) -> dict[str, CorpusEntry]:
    return {e.name: e for e in entries}


@dataclass
class CorpusRow:
    name: str
    index: int
    expected: str
    ok: bool
    message: str = ""


def run_corpus(entries: Sequence[CorpusEntry], names: Sequence[str] | None = None) -> list[CorpusRow]:
    """Check every known contraction of the selected entries.

    A row passes when the algebra is valid, the contraction reproduces the
    expected entry exactly, and the integer-signature realization verifies.
    """
    from .pipeline import integerize_diagonal

    table = by_name(entries)
    rows = []
    for entry in entries:
        if names is not None and entry.name not in names:
            continue
        valid = validate_algebra(entry.algebra).ok
        for idx, (spec, expected) in enumerate(entry.known_contractions):
            if not valid:
                rows.append(CorpusRow(entry.name, idx, expected, False, "algebra fails validation"))
                continue
            target = table.get(expected)
            if target is None:
                rows.append(CorpusRow(entry.name, idx, expected, False, "unknown expected algebra"))
                continue
            try:
                got = contract_full(entry.algebra, spec)
                result = integerize_diagonal(entry.algebra, spec.A, spec.family, spec.P)
            except ContractionError as exc:
                rows.append(CorpusRow(entry.name, idx, expected, False, str(exc)))
                continue
            if got != target.algebra:
                rows.append(CorpusRow(entry.name, idx, expected, False, f"contracted to {got}"))
            elif result.contracted != got or not result.report.ok:
                rows.append(CorpusRow(entry.name, idx, expected, False, "integerization failed to verify"))
            else:
                rows.append(CorpusRow(entry.name, idx, expected, True,
                                      f"alpha={list(result.alpha)}"))
    return rows

"""JSON curve input documents and report output documents."""

from __future__ import annotations

import json
import warnings
from pathlib import Path

from .arith import is_prime
from .congruence import Candidate, CongruenceReport, Conjecture1Verdict
from .curves import CurveRecord
from .errors import InputError, OldcongError

CURVE_KEYS = {"label", "level", "ainvs", "modular_degree", "tamagawa", "torsion_order"}
REPORT_KEYS = (
    "level", "sturm_bound", "method", "candidates", "congruence_primes", "witnesses",
    "congruence_exponent", "oldspace_saturated", "conjecture1", "notes",
)
JSON_SAFE = 2**53


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _positive(doc, key):
    x = doc[key]
    if not _is_int(x) or x < 1:
        raise InputError(f"field {key!r} must be a positive integer, got {x!r}")
    return x


def parse_curve(doc) -> CurveRecord:
    if not isinstance(doc, dict):
        raise InputError("curve document must be a JSON object")
    unknown = sorted(set(doc) - CURVE_KEYS)
    if unknown:
        warnings.warn(f"ignoring unknown curve fields: {', '.join(unknown)}", stacklevel=2)
    for key in ("level", "ainvs"):
        if key not in doc:
            raise InputError(f"missing required field {key!r}")
    level = _positive(doc, "level")
    ainvs = doc["ainvs"]
    if not isinstance(ainvs, list) or len(ainvs) != 5 or not all(map(_is_int, ainvs)):
        raise InputError("field 'ainvs' must be an array of 5 integers")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise InputError("field 'label' must be a string")
    degree = _positive(doc, "modular_degree") if doc.get("modular_degree") is not None else None
    torsion = _positive(doc, "torsion_order") if doc.get("torsion_order") is not None else None
    tamagawa = None
    if doc.get("tamagawa") is not None:
        raw = doc["tamagawa"]
        if not isinstance(raw, dict):
            raise InputError("field 'tamagawa' must be an object mapping primes to integers")
        tamagawa = {}
        for k, v in raw.items():
            if not k.isdigit() or not is_prime(int(k)):
                raise InputError(f"field 'tamagawa' has non-prime key {k!r}")
            if not _is_int(v) or v < 1:
                raise InputError(f"field 'tamagawa' value for {k} must be a positive integer")
            if level % int(k):
                raise InputError(f"field 'tamagawa' key {k} does not divide the level {level}")
            tamagawa[int(k)] = v
    try:
        return CurveRecord(
            level=level, ainvs=tuple(ainvs), label=label, modular_degree=degree,
            tamagawa=tamagawa, torsion_order=torsion,
        )
    except OldcongError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc)) from exc


def load_curve(path) -> CurveRecord:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_curve(doc)


def _num(x: int):
    return x if abs(x) < JSON_SAFE else str(x)


def report_to_doc(report: CongruenceReport) -> dict:
    doc = {
        "level": report.level,
        "sturm_bound": report.sturm_bound,
        "method": report.method,
        "candidates": [{"p": _num(c.p), "provenance": list(c.provenance)} for c in report.candidates],
        "congruence_primes": [_num(p) for p in report.congruence_primes],
        "witnesses": {str(p): [_num(x) for x in w] for p, w in sorted(report.witnesses.items())},
        "congruence_exponent": None if report.congruence_exponent is None else _num(report.congruence_exponent),
        "oldspace_saturated": report.oldspace_saturated,
        "conjecture1": None if report.conjecture1 is None else [
            {"ell": _num(v.ell), "verdict": v.verdict, "reason": v.reason} for v in report.conjecture1
        ],
        "notes": list(report.notes),
    }
    return {k: doc[k] for k in REPORT_KEYS}


def dumps_report(report: CongruenceReport) -> str:
    return json.dumps(report_to_doc(report), indent=2) + "\n"


def _int(x, what):
    if isinstance(x, str) and x.lstrip("-").isdigit():
        return int(x)
    if _is_int(x):
        return x
    raise InputError(f"report field {what!r} holds a non-integer {x!r}")


def parse_report(doc) -> CongruenceReport:
    """Validate a report document and rebuild the report (without matrices)."""
    if not isinstance(doc, dict) or list(doc) != list(REPORT_KEYS):
        raise InputError(f"report keys must be exactly {REPORT_KEYS} in order")
    cands = [Candidate(_int(c["p"], "candidates"), list(c["provenance"])) for c in doc["candidates"]]
    primes = [_int(p, "congruence_primes") for p in doc["congruence_primes"]]
    if primes != sorted(primes) or [c.p for c in cands] != sorted(c.p for c in cands):
        raise InputError("report prime lists must be ascending")
    if not set(primes) <= {c.p for c in cands}:
        raise InputError("congruence primes must be candidates")
    conj = doc["conjecture1"]
    return CongruenceReport(
        level=_int(doc["level"], "level"),
        sturm_bound=_int(doc["sturm_bound"], "sturm_bound"),
        method=doc["method"],
        candidates=cands,
        congruence_primes=primes,
        witnesses={int(k): [_int(x, "witnesses") for x in v] for k, v in doc["witnesses"].items()},
        congruence_exponent=None if doc["congruence_exponent"] is None else _int(doc["congruence_exponent"], "congruence_exponent"),
        conjecture1=None if conj is None else [
            Conjecture1Verdict(_int(v["ell"], "ell"), v["verdict"], v["reason"]) for v in conj
        ],
        oldspace_saturated=bool(doc["oldspace_saturated"]),
        notes=list(doc["notes"]),
    )

"""Input documents, report serialization and CSV emission.

All structured text is JSON.  Rationals travel as exact "p/q" (or integer)
strings everywhere; decimals appear only inside CSV profiles, printed with 12
significant digits so identical inputs re-emit byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence, Union

from .domain import EXACT, FLOAT, IntervalSet, build_interval_set
from .enclosure import RationalEnclosure
from .errors import ParseError
from .verify import CheckResult, PeriodicSpectrum, VerificationReport, Witness


def parse_rational(text: str, where: str = "") -> Fraction:
    """Exact rational from 'p/q', integer, or exact decimal strings."""
    if not isinstance(text, str):
        raise ParseError(f"{where}: expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"{where}: malformed rational {text!r}: {e}") from None


def format_rational(x: Union[Fraction, int]) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _require_keys(doc: dict, allowed: set[str], where: str) -> None:
    unknown = set(doc) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}")


def load_interval_set(path: Union[str, Path]) -> IntervalSet:
    """Read {"intervals": [["a","b"], ...]} with optional "mode"/"normalize"."""
    doc = _load_json(path)
    _require_keys(doc, {"intervals", "mode", "normalize"}, str(path))
    if "intervals" not in doc:
        raise ParseError(f"{path}: missing field 'intervals'")
    mode = doc.get("mode", EXACT)
    if mode not in (EXACT, FLOAT):
        raise ParseError(f"{path}: mode must be 'exact' or 'float', got {mode!r}")
    normalize = bool(doc.get("normalize", False))
    pairs = []
    for i, pair in enumerate(doc["intervals"]):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ParseError(f"{path}: intervals[{i}] must be a two-element list")
        where = f"{path}: intervals[{i}]"
        if mode == EXACT:
            pairs.append((parse_rational(pair[0], where), parse_rational(pair[1], where)))
        else:
            try:
                pairs.append((float(Fraction(str(pair[0]))), float(Fraction(str(pair[1])))))
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"{where}: {e}") from None
    return build_interval_set(pairs, normalize=normalize, mode=mode)


def load_spectrum(path: Union[str, Path]):
    """Read a candidate: periodic {"period","offsets"} or finite {"points"}.

    Returns a PeriodicSpectrum or a list of Fraction points.
    """
    doc = _load_json(path)
    if "period" in doc or "offsets" in doc:
        _require_keys(doc, {"period", "offsets"}, str(path))
        if "period" not in doc or "offsets" not in doc:
            raise ParseError(f"{path}: periodic spectra need both 'period' and 'offsets'")
        T = parse_rational(str(doc["period"]), f"{path}: period")
        if T.denominator != 1 or T <= 0:
            raise ParseError(f"{path}: period must be a positive integer, got {T}")
        offsets = [
            parse_rational(s, f"{path}: offsets[{i}]") for i, s in enumerate(doc["offsets"])
        ]
        try:
            return PeriodicSpectrum.from_rationals(int(T), offsets)
        except ValueError as e:
            raise ParseError(f"{path}: {e}") from None
    if "points" in doc:
        _require_keys(doc, {"points"}, str(path))
        return [
            parse_rational(s, f"{path}: points[{i}]") for i, s in enumerate(doc["points"])
        ]
    raise ParseError(f"{path}: expected 'period'+'offsets' or 'points'")


def _load_json(path: Union[str, Path]) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"{path}: {e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top-level value must be an object")
    return doc


def spectrum_to_dict(spect: PeriodicSpectrum) -> dict:
    offsets = []
    for o in spect.offsets:
        ex = o.exact()
        offsets.append(format_rational(ex) if ex is not None else repr(float(o)))
    return {"period": str(spect.T), "offsets": offsets}


def report_to_dict(report: VerificationReport) -> dict:
    return report.to_dict()


def report_from_dict(doc: dict) -> VerificationReport:
    def check(d: dict) -> CheckResult:
        w = d.get("witness")
        witness = Witness(w["kind"], dict(w["detail"])) if w else None
        return CheckResult(d["status"], witness, dict(d.get("info", {})))

    return VerificationReport(
        orthogonality=check(doc["orthogonality"]),
        packing=check(doc["packing"]),
        completeness=check(doc["completeness"]),
        overall=doc["overall"],
        reason=doc.get("reason", ""),
    )


def dump_structured(doc: dict) -> str:
    """Canonical JSON: sorted keys, stable separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def profile_csv(rows: Sequence[tuple[float, float, float, float]]) -> str:
    """CSV with fixed header x,sum,lo,hi; 12 significant digits."""
    lines = ["x,sum,lo,hi"]
    for x, s, lo, hi in rows:
        lines.append(f"{x:.12g},{s:.12g},{lo:.12g},{hi:.12g}")
    return "\n".join(lines) + "\n"

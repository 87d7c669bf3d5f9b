"""Command-line front end.

Exit codes: 0 success / spectrum-confirmed, 1 refuted or failed check,
2 parse or usage error, 3 inconclusive.  Structured output is canonical JSON
(rationals as "p/q" strings); CSV appears only in `profile`.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import fileio
from .alphabet import build_alphabet, min_gap, spectral_gap
from .domain import EXACT, autocorrelation
from .errors import (
    ConfigError,
    GapBoundConflict,
    ParseError,
    SpeclabError,
    WindowTooSmall,
)
from .search import RIGHT_ONLY, TWO_SIDED, SearchConfig, search_spectra
from .verify import (
    CONFIRMED,
    INCONCLUSIVE,
    PASS,
    PeriodicSpectrum,
    REFUTED,
    check_tiling_by_omega,
    numeric_tiling_profile,
    verify_spectrum,
)
from .zeros import zero_set

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_PARSE = 2
EXIT_INCONCLUSIVE = 3

HUMAN = "human"
STRUCTURED = "structured"


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: command, paths, tolerances, output format."""

    command: str
    input_path: str
    output_format: str = HUMAN
    seed: int = 0  # reserved for randomized auxiliary checks
    zero_cert_tol: float = 1e-10
    packing_tol: float = 1e-9
    dual_tol: float = 1e-10
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("zero_cert_tol", "packing_tol", "dual_tol"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")


def _enc_dict(e) -> dict:
    ex = e.exact()
    if ex is not None:
        return {"kind": "rational", "value": fileio.format_rational(ex)}
    from .enclosure import AlgebraicAngleEnclosure, FloatEnclosure

    if isinstance(e, AlgebraicAngleEnclosure):
        return {
            "kind": "algebraic-angle",
            "poly": list(e.poly),
            "index": e.index,
            "branch": e.branch,
            "approx": repr(float(e)),
        }
    if isinstance(e, FloatEnclosure):
        return {"kind": "float", "mid": repr(e.mid), "radius": repr(e.rad)}
    return {"kind": "combination", "approx": repr(float(e))}


def _emit(doc: dict, human_lines: list[str], fmt: str) -> None:
    if fmt == STRUCTURED:
        sys.stdout.write(fileio.dump_structured(doc))
    else:
        for line in human_lines:
            print(line)


def cmd_analyze(args) -> int:
    omega = fileio.load_interval_set(args.file)
    doc: dict = {
        "set": [
            [fileio.format_rational(Fraction(a)), fileio.format_rational(Fraction(b))]
            for a, b in omega.intervals
        ]
        if omega.mode == EXACT
        else [[repr(a), repr(b)] for a, b in omega.intervals],
        "mode": omega.mode,
        "measure": fileio.format_rational(Fraction(omega.measure)) if omega.mode == EXACT else repr(omega.measure),
        "n": omega.n,
        "diameter": fileio.format_rational(Fraction(omega.diameter)) if omega.mode == EXACT else repr(omega.diameter),
    }
    lines = [
        f"set       : {omega}",
        f"measure   : {doc['measure']}",
        f"intervals : n = {omega.n}",
        f"diameter  : {doc['diameter']}",
    ]
    if omega.mode != EXACT:
        doc["note"] = "float mode: exact analysis (q, zeros, alphabet) disabled"
        lines.append("note      : float mode — certified analysis unavailable")
        _emit(doc, lines, args.format)
        return EXIT_OK
    zs = zero_set(omega)
    doc["q"] = omega.q
    doc["delta"] = _enc_dict(min_gap(zs))
    gap = spectral_gap(omega)
    doc["spectral_gap_a"] = fileio.format_rational(gap.a)
    lines.append(f"q         : {omega.q}")
    lines.append(f"delta     : {_fmt_enc(min_gap(zs))}  (min gap)")
    lines.append(f"a(set)    : {fileio.format_rational(gap.a)}  (first zero of autocorrelation)")
    try:
        alphabet = build_alphabet(omega, zs)
        doc["Delta"] = repr(alphabet.Delta)
        doc["sigma"] = [_enc_dict(s) for s in alphabet.symbols]
        doc["k"] = alphabet.k
        lines.append(f"Delta     : {alphabet.Delta:.9g}  (max-gap bound)")
        lines.append(
            "sigma     : {" + ", ".join(_fmt_enc(s) for s in alphabet.symbols) + "}"
            + f"  (k = {alphabet.k})"
        )
    except GapBoundConflict as e:
        doc["Delta"] = None
        doc["sigma"] = []
        doc["k"] = 0
        doc["no_spectrum_certificate"] = str(e)
        lines.append(f"Delta     : below delta — {e}")
    _emit(doc, lines, args.format)
    if args.plot:
        from .plotting import save_analysis_figure

        save_analysis_figure(omega, zs, args.plot)
    return EXIT_OK


def _fmt_enc(e) -> str:
    ex = e.exact()
    return fileio.format_rational(ex) if ex is not None else f"{float(e):.12g}"


def cmd_zeros(args) -> int:
    omega = fileio.load_interval_set(args.file)
    B = float(Fraction(args.max))
    if omega.mode == EXACT:
        zs = zero_set(omega)
        listed = zs.enumerate_up_to(Fraction(args.max))
        doc = {
            "mode": "exact",
            "q": zs.q,
            "fundamental": [_enc_dict(e) for e in zs.fundamental],
            "zeros_up_to_max": [_enc_dict(e) for e in listed],
            "certified": True,
        }
        lines = [f"q-periodic zero set, q = {zs.q}; fundamental domain (0, q]:"]
        lines += [f"  {_fmt_enc(e)}" for e in zs.fundamental]
        lines.append(f"zeros in (0, {args.max}]:")
        lines += [f"  {_fmt_enc(e)}" for e in listed]
    else:
        zs = zero_set(omega, B)
        doc = {
            "mode": "float",
            "zeros_up_to_max": [_enc_dict(e) for e in zs.fundamental],
            "certified": False,
            "note": "float mode results are numeric, not certified",
        }
        lines = [f"numeric (non-certified) zeros in (0, {args.max}]:"]
        lines += [f"  {float(e):.12g}" for e in zs.fundamental]
    _emit(doc, lines, args.format)
    return EXIT_OK


def cmd_alphabet(args) -> int:
    omega = fileio.load_interval_set(args.file)
    zs = zero_set(omega)
    try:
        alphabet = build_alphabet(omega, zs)
    except GapBoundConflict as e:
        _emit(
            {"sigma": [], "k": 0, "no_spectrum_certificate": str(e)},
            [f"no admissible gaps: {e}"],
            args.format,
        )
        return EXIT_OK
    doc = {
        "delta": _enc_dict(alphabet.delta),
        "Delta": repr(alphabet.Delta),
        "k": alphabet.k,
        "sigma": [_enc_dict(s) for s in alphabet.symbols],
    }
    lines = [repr(alphabet)]
    _emit(doc, lines, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    omega = fileio.load_interval_set(args.file)
    candidate = fileio.load_spectrum(args.spectrum)
    cfg = RunConfig(command="verify", input_path=args.file, output_format=args.format)
    report = verify_spectrum(omega, candidate, packing_tol=cfg.packing_tol)
    doc = fileio.report_to_dict(report)
    if isinstance(candidate, PeriodicSpectrum):
        doc["candidate"] = fileio.spectrum_to_dict(candidate)
    else:
        doc["candidate"] = {"points": [fileio.format_rational(p) for p in candidate]}
    lines = [
        f"orthogonality : {report.orthogonality.status}",
        f"packing       : {report.packing.status} (max sum {report.packing.info.get('max_sum', 0):.9g})",
        f"completeness  : {report.completeness.status}",
        f"overall       : {report.overall}" + (f" ({report.reason})" if report.reason else ""),
    ]
    if report.orthogonality.witness:
        lines.insert(1, f"  witness     : {report.orthogonality.witness.detail}")
    if report.completeness.witness:
        lines.append(f"  witness     : {report.completeness.witness.detail}")
    _emit(doc, lines, args.format)
    if report.overall == CONFIRMED:
        return EXIT_OK
    if report.overall == REFUTED:
        return EXIT_REFUTED
    return EXIT_INCONCLUSIVE


def cmd_search(args) -> int:
    omega = fileio.load_interval_set(args.file)
    cfg = SearchConfig(
        L=Fraction(args.length),
        max_results=args.max_results,
        direction=TWO_SIDED if args.two_sided else RIGHT_ONLY,
        node_budget=args.node_budget,
    )
    outcome = search_spectra(omega, cfg)
    results_doc = []
    lines = []
    for r in outcome.results:
        entry = {
            "status": r.status,
            "gaps": r.word.gap_strings(),
        }
        if r.closure is not None:
            entry["closure"] = fileio.spectrum_to_dict(r.closure)
        if r.report is not None:
            entry["report"] = fileio.report_to_dict(r.report)
        if r.reject_reason:
            entry["reject_reason"] = r.reject_reason
        results_doc.append(entry)
        tail = ""
        if r.closure is not None:
            tail = f" -> T={r.closure.T}, offsets {fileio.spectrum_to_dict(r.closure)['offsets']}"
        lines.append(f"[{r.status}] gaps ({', '.join(r.word.gap_strings())}){tail}")
    doc = {
        "results": results_doc,
        "nodes_visited": outcome.nodes,
        "budget_exhausted": outcome.budget_exhausted,
        "confirmed_count": len(outcome.confirmed),
    }
    header = (
        f"{len(outcome.results)} result(s), {len(outcome.confirmed)} confirmed; "
        f"{outcome.nodes} nodes visited"
        + (" (budget exhausted, results partial)" if outcome.budget_exhausted else "")
    )
    _emit(doc, [header] + lines, args.format)
    return EXIT_OK


def cmd_tilecheck(args) -> int:
    omega = fileio.load_interval_set(args.file)
    result = check_tiling_by_omega(omega, args.level)
    doc = result.to_dict()
    doc["level"] = args.level
    lines = [f"tiling at level {args.level} under (1/{args.level})Z translates: {result.status}"]
    if result.witness:
        lines.append(f"  witness: {result.witness.detail}")
    _emit(doc, lines, args.format)
    return EXIT_OK if result.status == PASS else EXIT_REFUTED


def cmd_profile(args) -> int:
    omega = fileio.load_interval_set(args.file)
    candidate = fileio.load_spectrum(args.spectrum)
    lo, hi, step, R = (
        float(Fraction(args.from_)),
        float(Fraction(args.to)),
        float(Fraction(args.step)),
        float(Fraction(args.radius)),
    )
    if step <= 0:
        print("error: --step must be positive", file=sys.stderr)
        return EXIT_PARSE
    if isinstance(candidate, PeriodicSpectrum):
        window = candidate.points_in(lo - R - 1.0, hi + R + 1.0)
    else:
        window = candidate
    profile = numeric_tiling_profile(omega, window, (lo, hi, step), R)
    csv_text = fileio.profile_csv(profile.rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(csv_text)
        print(f"wrote {len(profile.rows)} rows to {args.output}")
    else:
        sys.stdout.write(csv_text)
    if args.plot:
        from .plotting import save_profile_figure

        save_profile_figure(profile.rows, profile.band, args.plot)
    return EXIT_OK


def cmd_shiftspace(args) -> int:
    from .shiftspace import (
        SymbolWord,
        determination_witness,
        extract_period,
        minimal_determining_window,
    )

    def parse_word(text: str, k: int) -> SymbolWord:
        try:
            symbols = tuple(int(t) for t in text.split(",") if t.strip() != "")
        except ValueError:
            raise ParseError(f"malformed word {text!r}: use comma-separated indices")
        kk = k if k > 0 else (max(symbols) + 1 if symbols else 1)
        return SymbolWord(kk, symbols)

    if args.shift_command == "witness":
        samples = [parse_word(s, args.alphabet_size) for s in args.samples]
        w = determination_witness(samples, args.window)
        if w is None:
            print(f"consistent: windows of size {args.window} determine the next symbol")
            return EXIT_OK
        print(
            f"witness: block {','.join(map(str, w.block))} at sample{w.first} and "
            f"sample{w.second} has successors {w.successors[0]} vs {w.successors[1]}"
        )
        return EXIT_REFUTED
    if args.shift_command == "window":
        samples = [parse_word(s, args.alphabet_size) for s in args.samples]
        print(minimal_determining_window(samples))
        return EXIT_OK
    if args.shift_command == "period":
        word = parse_word(args.word, args.alphabet_size)
        p = extract_period(word, args.window)
        if p is None:
            print("none: no shift-consistent period in the pigeonhole range")
            return EXIT_INCONCLUSIVE
        print(p)
        return EXIT_OK
    raise ConfigError(f"unknown shiftspace subcommand {args.shift_command!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="speclab",
        description=(
            "Analyze finite unions of intervals: certified transform zeros, gap "
            "alphabets, spectrum search and verification, tiling checks."
        ),
    )
    ap.add_argument(
        "--format", choices=[HUMAN, STRUCTURED], default=HUMAN,
        help="output format (default: human)",
    )
    ap.add_argument(
        "--seed", type=int, default=0,
        help="seed for randomized auxiliary checks (reserved)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="measure, q, zeros summary, alphabet, spectral gap")
    p.add_argument("file")
    p.add_argument("--plot", metavar="PATH", help="also render a figure to PATH")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("zeros", help="list certified transform zeros")
    p.add_argument("file")
    p.add_argument("--max", required=True, help="upper bound B: list zeros in (0, B]")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("alphabet", help="gap alphabet Σ = zeros in (0, Δ]")
    p.add_argument("file")
    p.set_defaults(func=cmd_alphabet)

    p = sub.add_parser("verify", help="verify a candidate spectrum")
    p.add_argument("file")
    p.add_argument("--spectrum", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="enumerate and verify candidate spectra")
    p.add_argument("file")
    p.add_argument("--length", required=True, help="window length L")
    p.add_argument("--max-results", type=int, default=64)
    p.add_argument("--two-sided", action="store_true")
    p.add_argument("--node-budget", type=int, default=10_000_000)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("tilecheck", help="exact tiling check at an integer level")
    p.add_argument("file")
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(func=cmd_tilecheck)

    p = sub.add_parser("profile", help="CSV tiling profile with rigorous tail band")
    p.add_argument("file")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--step", required=True)
    p.add_argument("--radius", required=True)
    p.add_argument("--output", metavar="CSV", help="write CSV here instead of stdout")
    p.add_argument("--plot", metavar="PATH", help="also render a figure to PATH")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("shiftspace", help="finite-word symbolic dynamics utilities")
    shift_sub = p.add_subparsers(dest="shift_command", required=True)
    pw = shift_sub.add_parser("witness", help="window-determination check on samples")
    pw.add_argument("--samples", action="append", required=True, metavar="W",
                    help="comma-separated symbol indices (repeatable)")
    pw.add_argument("--window", type=int, required=True)
    pw.add_argument("--alphabet-size", type=int, default=0)
    pm = shift_sub.add_parser("window", help="minimal determining window size")
    pm.add_argument("--samples", action="append", required=True, metavar="W")
    pm.add_argument("--alphabet-size", type=int, default=0)
    pp = shift_sub.add_parser("period", help="pigeonhole period extraction")
    pp.add_argument("--word", required=True)
    pp.add_argument("--window", type=int, required=True)
    pp.add_argument("--alphabet-size", type=int, default=0)
    p.set_defaults(func=cmd_shiftspace)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except WindowTooSmall as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except SpeclabError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

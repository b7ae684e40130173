"""Command-line interface.

Exit codes: 0 success, 2 parse or validation error, 3 unachievable
structure, 4 census ceiling exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Sequence

from prolifera.catalog import GTShape, catalog, catalog_R_general
from prolifera.census import CensusTooLarge, census, census_paths, verify_catalog, write_census_files
from prolifera.classify import Unachievable, are_equivalent, canonical_representative, class_table, equivalence_class, realize
from prolifera.engine import cycle_decomposition, format_cycles, lcm, orbit, pp_from_pair, pp_from_transform
from prolifera.pitch import Kind, Series, SeriesError, TransformSpec

EXIT_USAGE = 2
EXIT_UNACHIEVABLE = 3
EXIT_CEILING = 4

NOTE_NAMES = ("C", "C#", "D", "Eb", "E", "F", "F#", "G", "Ab", "A", "Bb", "B")
_LETTERS = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
_NAME_RE = re.compile(r"^([A-Ga-g])([#b]*)$")


class ParseError(SeriesError):
    pass


def note_class(name: str) -> int:
    """Absolute 12-EDO pitch class of a note name such as ``F#`` or ``Bb`` (C = 0)."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise ParseError(f"not a note name: {name!r}")
    letter, acc = m.groups()
    return (_LETTERS[letter.upper()] + acc.count("#") - acc.count("b")) % 12


def _tokens(text: str) -> list[str]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    return [tok for tok in re.split(r"[,\s]+", body) if tok]


@dataclass
class ParsedSeries:
    series: Series
    named: bool
    reference: int | None  # absolute pitch class numbered 0, for named input


def parse_series(text: str, reference: int | None = None) -> ParsedSeries:
    """Parse ``0,3,4,...`` or note names ``A,F#,G,...``.

    Note names are numbered relative to ``reference`` (an absolute pitch
    class), which defaults to the first note of this series.
    """
    tokens = _tokens(text)
    if not tokens:
        raise ParseError("empty series")
    if all(re.fullmatch(r"-?\d+", tok) for tok in tokens):
        try:
            return ParsedSeries(Series(int(tok) for tok in tokens), False, None)
        except SeriesError as exc:
            raise ParseError(str(exc)) from None
    classes = []
    for pos, tok in enumerate(tokens):
        try:
            classes.append(note_class(tok))
        except ParseError:
            raise ParseError(f"token {pos + 1} ({tok!r}) is neither an integer nor a note name") from None
    if len(classes) != 12:
        raise ParseError(f"note names describe 12-note series, got {len(classes)} notes")
    ref = classes[0] if reference is None else reference
    try:
        return ParsedSeries(Series((c - ref) % 12 for c in classes), True, ref)
    except SeriesError as exc:
        raise ParseError(str(exc)) from None


def parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in _tokens(text)]
    except ValueError:
        raise ParseError(f"{what} must be a comma-separated list of integers, got {text!r}") from None


class Renderer:
    def __init__(self, names: bool, tonic: int):
        self.names = names
        self.tonic = tonic

    def label(self, x: int) -> str:
        return NOTE_NAMES[(x + self.tonic) % 12] if self.names else str(x)

    def series(self, s: Series) -> str:
        return "[" + ", ".join(self.label(x) for x in s) + "]"

    def cycles(self, cycles) -> str:
        n = sum(len(c) for c in cycles)
        return format_cycles(cycles, [self.label(x) for x in range(max(n, max(map(max, cycles)) + 1))])


def _structure(s) -> str:
    return "[" + ", ".join(map(str, s)) + "]"


def _renderer(args, parsed: ParsedSeries | None, n: int) -> Renderer:
    names = bool(getattr(args, "names", False)) or (parsed is not None and parsed.named)
    if names and n != 12:
        raise ParseError("note names are only available for n = 12")
    if args.tonic is not None:
        tonic = note_class(args.tonic)
    elif parsed is not None and parsed.reference is not None:
        tonic = parsed.reference
    else:
        tonic = 0
    return Renderer(names, tonic)


def _emit(args, payload, text_lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


# -- commands -----------------------------------------------------------------


def cmd_proliferate(args) -> int:
    first = parse_series(args.series)
    if args.second:
        second = parse_series(args.second, reference=first.reference)
        if second.named != first.named:
            raise ParseError("both series must use the same notation")
        p = pp_from_pair(first.series, second.series)
        how = {"second": second.series.notes}
    else:
        spec = TransformSpec(Kind.parse(args.kind), args.t)
        p = pp_from_transform(first.series, spec)
        how = {"kind": spec.kind.value, "t": spec.t}
    render = _renderer(args, first, first.series.n)
    members = orbit(first.series, p)
    dec = cycle_decomposition(p, first.series)
    payload = {
        "n": first.series.n,
        **how,
        "orbit": [list(s) for s in members],
        "order": p.order(),
        "structure": list(dec.structure),
        "cycles": [list(c) for c in dec.cycles],
        "central_cycle": None if dec.central is None else list(dec.central_cycle),
    }
    lines = [render.series(s) for s in members]
    lines += [f"Order: {p.order()}", f"Structure: {_structure(dec.structure)}", f"Cycles: {render.cycles(dec.cycles)}"]
    if dec.central is not None:
        lines.append(f"Central cycle: {render.cycles([dec.central_cycle])}")
    _emit(args, payload, lines)
    return 0


def cmd_catalog(args) -> int:
    kind = Kind.parse(args.kind)
    if args.gt:
        if kind is not Kind.R:
            raise ParseError("--gt is only meaningful for R")
        entries = catalog_R_general(args.n, GTShape(parse_ints(args.gt, "--gt")))
    else:
        if args.t is None:
            raise ParseError("catalog needs --t (or --gt for R)")
        entries = catalog(kind, args.n, args.t)
    payload = [{"order": e.order, "structure": list(e.structure)} for e in entries]
    lines = [f"{e.order:>5}  {_structure(e.structure)}" for e in entries]
    lines.append(f"{len(entries)} structures")
    _emit(args, payload, lines)
    return 0


def cmd_census(args) -> int:
    kind = Kind.parse(args.kind)
    ts = range(args.n) if args.t is None else [args.t]
    summaries = []
    lines = []
    for t in ts:
        result = census(kind, args.n, t, workers=args.workers, raw_counts=args.raw)
        paths = write_census_files(result, args.out)
        diff = verify_catalog(kind, args.n, t, result)
        if args.plot:
            from prolifera.plotting import plot_census

            figure = census_paths(args.out, kind, args.n, t)["Data_Orders"].parents[1] / "Figures" / f"transposition{t}.png"
            plot_census(result, figure)
        summaries.append(
            {
                "kind": kind.value,
                "n": args.n,
                "t": t,
                "total_series": result.total_series,
                "counts_include_transpositions": not args.raw,
                "orders": {str(k): v for k, v in result.order_counts.items()},
                "structures": len(result.structure_counts),
                "missing_from_catalog": [list(s) for s in diff.missing],
                "not_observed": [list(s) for s in diff.extra],
                "files": {k: str(v) for k, v in paths.items()},
            }
        )
        lines.append(
            f"{kind.value} n={args.n} t={t}: {result.total_series} series, "
            f"{len(result.order_counts)} orders, {len(result.structure_counts)} structures"
        )
        lines.append(f"  {diff}")
    _emit(args, summaries, lines)
    return 0


def cmd_realize(args) -> int:
    kind = Kind.parse(args.kind)
    structure = parse_ints(args.structure, "--structure")
    s = realize(structure, kind, args.n, args.t)
    spec = TransformSpec(kind, args.t)
    got = pp_from_transform(s, spec).structure()
    render = _renderer(args, None, args.n)
    payload = {"kind": kind.value, "n": args.n, "t": args.t, "series": list(s), "structure": list(got)}
    _emit(args, payload, [render.series(s), f"Verified structure: {_structure(got)}"])
    return 0


def cmd_classify(args) -> int:
    kind = Kind.parse(args.kind)
    spec = TransformSpec(kind, args.t)
    parsed = [parse_series(args.series)]
    for other in args.series_more or []:
        parsed.append(parse_series(other, reference=parsed[0].reference))
    render = _renderer(args, parsed[0], parsed[0].series.n)
    payload, lines = [], []
    reps = []
    for p in parsed:
        s = p.series
        structure = pp_from_transform(s, spec).structure()
        rep = canonical_representative(s, spec)
        distance = None
        if s.n <= 8:
            distance = equivalence_class(rep, spec).get(s)
        reps.append(rep)
        payload.append(
            {"series": list(s), "structure": list(structure), "representative": list(rep), "op_distance": distance}
        )
        lines += [
            f"Series: {render.series(s)}",
            f"Structure: {_structure(structure)}",
            f"Representative: {render.series(rep)}",
        ]
        if distance is not None:
            lines.append(f"Op distance: {distance}")
    if len(parsed) > 1:
        same = all(are_equivalent(parsed[0].series, p.series, spec) for p in parsed[1:])
        lines.append(f"Equivalent: {'yes' if same else 'no'}")
    _emit(args, payload if len(payload) > 1 else payload[0], lines)
    return 0


def cmd_classes(args) -> int:
    kind = Kind.parse(args.kind)
    table = class_table(kind, args.n, args.t)
    if args.min_order:
        table = [c for c in table if lcm(c.structure) >= args.min_order]
    render = _renderer(args, None, args.n)
    payload = [
        {"order": lcm(c.structure), "structure": list(c.structure), "representative": list(c.representative), "size": c.size}
        for c in table
    ]
    lines = [f"{lcm(c.structure):>5}  {_structure(c.structure):<24} {render.series(c.representative)}" for c in table]
    lines.append(f"{len(table)} classes")
    _emit(args, payload, lines)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prolifera", description="Proliferating series and their permutations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, names=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--tonic", help="note name rendered for pitch class 0 (default: first note, or C)")
        if names:
            p.add_argument("--names", action="store_true", help="render 12-note series as note names")

    p = sub.add_parser("proliferate", help="print the orbit, order and structure of a PP")
    p.add_argument("--series", required=True)
    p.add_argument("--second", help="second series; the PP maps --series onto it")
    p.add_argument("--kind", default="P")
    p.add_argument("--t", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_proliferate)

    p = sub.add_parser("catalog", help="list achievable structures")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--gt", help="R only: generalized transposition cycle lengths, e.g. 3,2,2")
    common(p, names=False)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("census", help="enumerate all series and write the census files")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, help="default: every t in 0..n-1")
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--raw", action="store_true", help="count canonical series once instead of n times")
    p.add_argument("--plot", action="store_true", help="also write an order histogram under Figures/")
    common(p, names=False)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("realize", help="build a series with a given PP structure")
    p.add_argument("--structure", required=True)
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("classify", help="structure and class representative of a series")
    p.add_argument("--series", required=True)
    p.add_argument("series_more", nargs="*", metavar="SERIES", help="more series to compare")
    p.add_argument("--kind", required=True)
    p.add_argument("--t", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("classes", help="one representative per equivalence class")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--min-order", type=int, default=0, help="hide classes of smaller order")
    common(p)
    p.set_defaults(func=cmd_classes)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Unachievable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNACHIEVABLE
    except CensusTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except SeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

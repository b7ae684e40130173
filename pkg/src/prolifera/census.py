"""Exhaustive census of every series starting at 0, used as ground truth for the catalogs."""

from __future__ import annotations

import logging
import os
import warnings
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path

from prolifera.catalog import catalog
from prolifera.engine import Structure, lcm
from prolifera.pitch import Kind, SeriesError, check_modulus

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 10
WARN_ABOVE_N = 9
SUBDIRS = ("Data_Structures", "CompleteList", "Data_Orders")


class CensusTooLarge(RuntimeError):
    pass


def max_n() -> int:
    """Census ceiling; the ``PROLIFERA_MAX_N`` environment variable overrides the default."""
    raw = os.environ.get("PROLIFERA_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise SeriesError(f"PROLIFERA_MAX_N must be an integer, got {raw!r}") from None


def transformed(kind: Kind, series: tuple[int, ...], t: int, n: int) -> list[int]:
    seq = series[::-1] if kind.retrogrades else series
    if kind.inverts:
        return [(t - x) % n for x in seq]
    return [(x + t) % n for x in seq]


def pp_structure(kind: Kind, series: tuple[int, ...], t: int, n: int) -> tuple[int, Structure]:
    """Order and sorted cycle lengths of the PP of ``series``; no validation, hot path."""
    image = [0] * n
    for a, b in zip(series, transformed(kind, series, t, n)):
        image[a] = b
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        k, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = image[x]
            k += 1
        lengths.append(k)
    lengths.sort()
    return lcm(lengths), tuple(lengths)


@dataclass
class CensusResult:
    """Tallies over all series starting at 0.

    With ``multiplier == n`` (the default) each canonical series counts once
    for each of its n transpositions, so ``total_series == n * (n-1)!``.
    """

    kind: Kind
    n: int
    t: int
    multiplier: int
    order_counts: dict[int, int] = field(default_factory=dict)
    structure_counts: dict[tuple[int, Structure], int] = field(default_factory=dict)
    lines: list[str] = field(default_factory=list, repr=False)

    @property
    def total_series(self) -> int:
        return sum(self.order_counts.values())

    @property
    def structures(self) -> set[Structure]:
        return {s for _, s in self.structure_counts}


def _chunk(args: tuple[Kind, int, int, int | None, bool]) -> tuple[Counter, list[str]]:
    kind, n, t, first, keep_lines = args
    tally: Counter = Counter()
    lines: list[str] = []
    if first is None:
        suffixes = [()]
    else:
        rest = [x for x in range(1, n) if x != first]
        suffixes = ((first,) + p for p in permutations(rest))
    for suffix in suffixes:
        series = (0,) + suffix
        key = pp_structure(kind, series, t, n)
        tally[key] += 1
        if keep_lines:
            lines.append(f"{series} --> {key[0]}\n")
    return tally, lines


def census(
    kind: "Kind | str",
    n: int,
    t: int,
    *,
    workers: int = 1,
    raw_counts: bool = False,
    keep_lines: bool = True,
) -> CensusResult:
    """Enumerate every series ``(0,) + p`` for ``p`` a permutation of ``1..n-1`` in lexicographic order.

    ``workers > 1`` splits the enumeration by the second note into contiguous
    chunks that are merged back in order, so results do not depend on it.
    """
    kind = Kind.parse(kind)
    check_modulus(n)
    if not 0 <= t < n:
        raise SeriesError(f"transposition {t} out of range for n={n}")
    ceiling = max_n()
    if n > ceiling:
        raise CensusTooLarge(f"census for n={n} exceeds the ceiling n<={ceiling} (set PROLIFERA_MAX_N to raise it)")
    if n > WARN_ABOVE_N:
        warnings.warn(f"census for n={n} enumerates {n - 1}! series and may take a long time", RuntimeWarning)

    tasks = [(kind, n, t, first, keep_lines) for first in (range(1, n) if n > 1 else [None])]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk, tasks))
    else:
        parts = [_chunk(task) for task in tasks]

    multiplier = 1 if raw_counts else n
    tally: Counter = Counter()
    lines: list[str] = []
    for part_tally, part_lines in parts:
        tally.update(part_tally)
        lines.extend(part_lines)
    orders: Counter = Counter()
    for (order, _), count in tally.items():
        orders[order] += count * multiplier
    return CensusResult(
        kind=kind,
        n=n,
        t=t,
        multiplier=multiplier,
        order_counts=dict(sorted(orders.items())),
        structure_counts={k: v * multiplier for k, v in sorted(tally.items())},
        lines=lines,
    )


def census_paths(root: "str | os.PathLike", kind: "Kind | str", n: int, t: int) -> dict[str, Path]:
    base = Path(root) / Kind.parse(kind).value / f"Proliferations_{n}_notes"
    return {name: base / name / f"transposition{t}.txt" for name in SUBDIRS}


def write_census_files(result: CensusResult, root: "str | os.PathLike") -> dict[str, Path]:
    """Write the three data files for ``result`` under ``root`` and return their paths."""
    paths = census_paths(root, result.kind, result.n, result.t)
    contents = {
        "CompleteList": "".join(result.lines),
        "Data_Orders": "".join(f"{k}: {v}\n" for k, v in sorted(result.order_counts.items())),
        "Data_Structures": "".join(f"{k}: {v}\n" for k, v in sorted(result.structure_counts.items())),
    }
    for name, path in paths.items():
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="ascii", newline="\n") as fh:
                fh.write(contents[name])
        except OSError as exc:
            raise OSError(f"could not write census file {path}: {exc}") from exc
    return paths


@dataclass
class CatalogDiff:
    kind: Kind
    n: int
    t: int
    missing: list[Structure]
    extra: list[Structure]

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra

    def __str__(self) -> str:
        head = f"{self.kind.value} n={self.n} t={self.t}:"
        if self.ok:
            return f"{head} catalog matches census"
        return f"{head} missing from catalog {[list(s) for s in self.missing]}, not observed {[list(s) for s in self.extra]}"


def verify_catalog(kind: "Kind | str", n: int, t: int, result: CensusResult | None = None) -> CatalogDiff:
    """Compare the census structure set with the catalog; ``missing`` are census-only structures."""
    kind = Kind.parse(kind)
    if result is None:
        result = census(kind, n, t, keep_lines=False)
    observed = result.structures
    listed = {e.structure for e in catalog(kind, n, t)}
    return CatalogDiff(kind, n, t, sorted(observed - listed), sorted(listed - observed))


def transposition_invariant(kind: "Kind | str", n: int, t: int) -> bool:
    """Check that transposed copies of each series give PPs of the same structure.

    Inversions are taken about each copy's own first note. This is what the
    ``x n`` multiplier in the census counts relies on.
    """
    kind = Kind.parse(kind)
    for suffix in permutations(range(1, n)):
        series = (0,) + suffix
        base = pp_structure(kind, series, t, n)[1]
        for k in range(1, n):
            moved = tuple((x + k) % n for x in series)
            target = transformed(kind, series, t, n)
            target = [(x + k) % n for x in target]
            image = [0] * n
            for a, b in zip(moved, target):
                image[a] = b
            if _lengths(image) != base:
                return False
    return True


def _lengths(image: list[int]) -> Structure:
    n = len(image)
    seen = [False] * n
    out = []
    for s in range(n):
        if not seen[s]:
            k, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = image[x]
                k += 1
            out.append(k)
    return tuple(sorted(out))

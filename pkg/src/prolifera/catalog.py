"""Which cycle structures a proliferating permutation can have.

Every PP for a retrograde-type transformation factors as ``g o m`` where ``m``
is the mirror involution of the generating series (position ``i`` swapped
with ``n-1-i``) and ``g`` is the note map applied afterwards: ``x -> x + t``
for R and ``x -> t - x`` for RI. P and I have series-independent PPs.

R with an arbitrary transposition has no closed form, so its catalog comes
from an induction over *generalized transpositions* (GTs): the series grows
one note at a time at the middle position and ``g`` is allowed to be any
permutation of a given cycle shape while it grows.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from prolifera.engine import Structure, lcm
from prolifera.pitch import Kind, SeriesError, check_modulus


@dataclass(frozen=True, order=True)
class CatalogEntry:
    order: int
    structure: Structure

    @classmethod
    def of(cls, structure: Iterable[int]) -> "CatalogEntry":
        structure = tuple(sorted(structure))
        return cls(lcm(structure), structure)

    def __str__(self) -> str:
        return f"({self.order}, {list(self.structure)})"


def _catalog(structures: Iterable[Iterable[int]]) -> list[CatalogEntry]:
    return sorted({CatalogEntry.of(s) for s in structures})


def _check_t(n: int, t: int) -> None:
    check_modulus(n)
    if not 0 <= t < n:
        raise SeriesError(f"transposition {t} out of range for n={n}")


# -- partitions ---------------------------------------------------------------


def partitions(total: int, max_part: int | None = None) -> list[Structure]:
    """All partitions of ``total`` with parts ``<= max_part``, parts descending."""
    if total < 0:
        raise ValueError("cannot partition a negative number")
    if max_part is None:
        max_part = total
    return list(_partitions(total, min(max_part, total)))


@lru_cache(maxsize=None)
def _partitions(total: int, max_part: int) -> tuple[Structure, ...]:
    if total == 0:
        return ((),)
    out = []
    for first in range(min(total, max_part), 0, -1):
        out.extend((first,) + rest for rest in _partitions(total - first, first))
    return tuple(out)


def doubled(parts: Iterable[int]) -> Structure:
    return tuple(p for p in parts for _ in range(2))


# -- closed forms -------------------------------------------------------------


def catalog_P(n: int, t: int) -> list[CatalogEntry]:
    _check_t(n, t)
    g = math.gcd(n, t)
    return _catalog([(n // g,) * g])


def catalog_I(n: int, t: int) -> list[CatalogEntry]:
    _check_t(n, t)
    fixed = sum(1 for x in range(n) if (2 * x - t) % n == 0)
    return _catalog([(1,) * fixed + (2,) * ((n - fixed) // 2)])


def _anchor_lengths(n: int, t: int) -> range | None:
    """Allowed lengths of the RI cycle through the self-inverse notes, or None if there is none."""
    if n % 2 == 0:
        return None if t % 2 else range(2, n + 1, 2)
    return range(3 if t == 0 else 1, n + 1, 2)


def catalog_RI(n: int, t: int) -> list[CatalogEntry]:
    _check_t(n, t)
    if n == 1:
        return _catalog([(1,)])
    anchors = _anchor_lengths(n, t)
    if anchors is None:
        return _catalog(doubled(p) for p in partitions(n // 2))
    return _catalog((k,) + doubled(p) for k in anchors for p in partitions((n - k) // 2))


def even_cycle_parity(n: int) -> int:
    """Parity (0 or 1) of the number of even-length cycles of any R PP with gcd(n, t) = 1."""
    return 0 if n % 4 in (1, 2) else 1


def catalog_R_coprime(n: int) -> list[CatalogEntry]:
    """R catalog for any transposition coprime to ``n``.

    A partition qualifies when it has at most ``n/2 + 1`` parts and its number
    of even parts has the parity given by :func:`even_cycle_parity`.
    """
    check_modulus(n)
    if n == 1:
        return _catalog([(1,)])
    want = even_cycle_parity(n)
    return _catalog(
        p for p in partitions(n) if 2 * len(p) <= n + 2 and sum(1 for c in p if c % 2 == 0) % 2 == want
    )


# -- generalized transpositions -----------------------------------------------


@dataclass(frozen=True)
class GTShape:
    """Cycle lengths of a generalized transposition, sorted ascending."""

    lengths: tuple[int, ...]

    def __init__(self, lengths: Iterable[int]):
        lengths = tuple(sorted(int(x) for x in lengths))
        if any(x < 1 for x in lengths):
            raise SeriesError(f"GT cycle lengths must be positive, got {list(lengths)}")
        object.__setattr__(self, "lengths", lengths)

    @classmethod
    def from_transposition(cls, n: int, t: int) -> "GTShape":
        _check_t(n, t)
        g = math.gcd(n, t)
        return cls([n // g] * g)

    @property
    def n(self) -> int:
        return sum(self.lengths)

    def shrink(self, length: int) -> "GTShape":
        """Remove one note from a cycle of the given length."""
        rest = list(self.lengths)
        rest.remove(length)
        if length > 1:
            rest.append(length - 1)
        return GTShape(rest)


@dataclass(frozen=True)
class LabeledStructure:
    """PP cycles written as sequences of GT-cycle labels.

    ``central`` is the cycle through the middle note (odd n only), written
    from the image of the middle note round to the middle note itself, so
    its rotation is fixed. Other cycles are compared up to rotation.
    """

    cycles: tuple[tuple[int, ...], ...]
    central: tuple[int, ...] | None = None

    @property
    def structure(self) -> Structure:
        lengths = [len(c) for c in self.cycles]
        if self.central is not None:
            lengths.append(len(self.central))
        return tuple(sorted(lengths))


def _min_rotation(seq: tuple[int, ...]) -> tuple[int, ...]:
    return min(seq[i:] + seq[:i] for i in range(len(seq))) if seq else seq


def canonical_labeled(ls: LabeledStructure, gt_length: dict[int, int]) -> LabeledStructure:
    """A normal form under rotation, cycle reordering and renaming of equal-length GT cycles.

    Labels are renamed to ``(gt length, rank of first appearance)`` after
    ordering the cycles; this is repeated until it stops changing. Equal
    outputs always mean equivalent inputs. Equivalent inputs usually, but
    not provably always, give equal outputs, which only costs duplicates.
    """
    central, cycles = ls.central, ls.cycles
    length_of = dict(gt_length)
    for _ in range(8):
        cycles = tuple(sorted((_min_rotation(c) for c in cycles), key=lambda c: (len(c), c)))
        rename: dict[int, tuple[int, int]] = {}
        seen: Counter = Counter()
        for c in ((central,) if central is not None else ()) + cycles:
            for x in c:
                if x not in rename:
                    k = length_of[x]
                    rename[x] = (k, seen[k])
                    seen[k] += 1
        flat = {v: i for i, v in enumerate(sorted(rename.values()))}
        new = {x: flat[v] for x, v in rename.items()}
        new_central = None if central is None else tuple(new[x] for x in central)
        new_cycles = tuple(tuple(new[x] for x in c) for c in cycles)
        length_of = {new[x]: length_of[x] for x in rename}
        if new_central == central and new_cycles == cycles:
            break
        central, cycles = new_central, new_cycles
    cycles = tuple(sorted((_min_rotation(c) for c in cycles), key=lambda c: (len(c), c)))
    return LabeledStructure(cycles, central)


def labeled_equivalent(a: LabeledStructure, b: LabeledStructure, gt_length: dict[int, int]) -> bool:
    """Exact equivalence by trying every renaming of equal-length GT labels (small cases only)."""
    from itertools import permutations, product

    if a.structure != b.structure or (a.central is None) != (b.central is None):
        return False
    groups: dict[int, list[int]] = {}
    for label, k in sorted(gt_length.items()):
        groups.setdefault(k, []).append(label)

    def key(ls: LabeledStructure, rename: dict[int, int]):
        central = None if ls.central is None else tuple(rename[x] for x in ls.central)
        cycles = sorted(_min_rotation(tuple(rename[x] for x in c)) for c in ls.cycles)
        return central, cycles

    target = key(b, {x: x for x in gt_length})
    labels = list(groups.values())
    for choice in product(*(permutations(g) for g in labels)):
        rename = {old: new for g, perm in zip(labels, choice) for old, new in zip(g, perm)}
        if key(a, rename) == target:
            return True
    return False


@dataclass(frozen=True)
class Witness:
    """A concrete (GT, mirror) pair on the abstract notes ``0..n-1``.

    ``gt[x]`` is the GT image of ``x``; ``mirror`` is an involution with a
    fixed point exactly when n is odd (the middle note). The PP is
    ``gt o mirror``.
    """

    gt: tuple[int, ...]
    mirror: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.gt)

    def pp(self) -> tuple[int, ...]:
        return tuple(self.gt[self.mirror[x]] for x in range(self.n))

    def middle(self) -> int | None:
        if self.n % 2 == 0:
            return None
        return next(x for x in range(self.n) if self.mirror[x] == x)

    def gt_labels(self) -> tuple[list[int], dict[int, int]]:
        """GT cycle label of each note and the length of each labeled cycle."""
        label = [-1] * self.n
        length: dict[int, int] = {}
        for x in range(self.n):
            if label[x] >= 0:
                continue
            k = len(length)
            y, size = x, 0
            while label[y] < 0:
                label[y] = k
                y = self.gt[y]
                size += 1
            length[k] = size
        return label, length

    def labeled(self) -> tuple[LabeledStructure, dict[int, int]]:
        label, length = self.gt_labels()
        pp = self.pp()
        middle = self.middle()
        seen = [False] * self.n
        central = None
        if middle is not None:
            cyc, x = [], pp[middle]
            while True:
                cyc.append(x)
                seen[x] = True
                if x == middle:
                    break
                x = pp[x]
            central = tuple(label[x] for x in cyc)
        cycles = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc, x = [], start
            while not seen[x]:
                seen[x] = True
                cyc.append(label[x])
                x = pp[x]
            cycles.append(tuple(cyc))
        return LabeledStructure(tuple(cycles), central), length

    def key(self) -> LabeledStructure:
        ls, length = self.labeled()
        return canonical_labeled(ls, length)

    def structure(self) -> Structure:
        return self.labeled()[0].structure


def _grow(w: Witness, target_length: int) -> Iterator[Witness]:
    """All one-note extensions of ``w`` whose new note lands in a GT cycle of ``target_length``.

    The new note ``c = n`` goes to the middle position (n even) or next to
    the old middle note (n odd). It is spliced into the GT right after some
    note ``b`` lying in a cycle of length ``target_length - 1``, or becomes
    a GT fixed point when ``target_length == 1``.
    """
    n = w.n
    c = n
    label, length = w.gt_labels()
    if target_length == 1:
        predecessors = [None]
    else:
        predecessors = [b for b in range(n) if length[label[b]] == target_length - 1]
    for b in predecessors:
        gt = list(w.gt) + [c]
        if b is not None:
            gt[c] = w.gt[b]
            gt[b] = c
        mirror = list(w.mirror) + [c]
        if n % 2 == 1:
            a = w.middle()
            mirror[a] = c
            mirror[c] = a
        yield Witness(tuple(gt), tuple(mirror))


@lru_cache(maxsize=None)
def _witnesses(shape: GTShape) -> tuple[Witness, ...]:
    """One witness per distinct labeled structure reachable for GTs of ``shape``."""
    n = shape.n
    if n == 0:
        return (Witness((), ()),)
    # For odd n the removed middle note may sit in any GT cycle; for even n
    # any note can be removed, so one cycle length suffices.
    lengths = sorted(set(shape.lengths))
    if n % 2 == 0:
        lengths = lengths[:1]
    found: dict[LabeledStructure, Witness] = {}
    for k in lengths:
        for w in _witnesses(shape.shrink(k)):
            for grown in _grow(w, k):
                found.setdefault(grown.key(), grown)
    return tuple(found[key] for key in sorted(found, key=_sort_key))


def _sort_key(ls: LabeledStructure):
    return (ls.structure, ls.central or (), ls.cycles)


def gt_witnesses(shape: GTShape) -> tuple[Witness, ...]:
    return _witnesses(shape)


def catalog_R_general(n: int, gt: "GTShape | int") -> list[CatalogEntry]:
    """R catalog by the GT induction; an int ``gt`` is read as a transposition."""
    check_modulus(n)
    if isinstance(gt, int):
        gt = GTShape.from_transposition(n, gt)
    if gt.n != n:
        raise SeriesError(f"GT cycle lengths {list(gt.lengths)} sum to {gt.n}, not {n}")
    return _catalog(w.structure() for w in _witnesses(gt))


def catalog_R(n: int, t: int) -> list[CatalogEntry]:
    _check_t(n, t)
    if math.gcd(n, t) == 1:
        return catalog_R_coprime(n)
    return catalog_R_general(n, t)


def catalog(kind: "Kind | str", n: int, t: int) -> list[CatalogEntry]:
    kind = Kind.parse(kind)
    return {
        Kind.P: catalog_P,
        Kind.I: catalog_I,
        Kind.RI: catalog_RI,
        Kind.R: catalog_R,
    }[kind](n, t)


def is_achievable(structure: Sequence[int], kind: "Kind | str", n: int, t: int) -> bool:
    structure = tuple(sorted(structure))
    if sum(structure) != n:
        raise SeriesError(f"structure {list(structure)} does not sum to n={n}")
    return any(e.structure == structure for e in catalog(kind, n, t))

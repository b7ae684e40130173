"""Structure-preserving rewrites of series, equivalence classes, and realization of structures.

Series are always kept starting at 0. A rewrite that relabels notes may
move 0 elsewhere; it is then moved back to position 0 by exchanging whole
mirror pairs of positions, which leaves the PP itself unchanged.
"""

from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from prolifera.catalog import GTShape, _anchor_lengths, catalog, even_cycle_parity, gt_witnesses
from prolifera.engine import Structure, lcm, pp_from_transform
from prolifera.pitch import Kind, Series, SeriesError, TransformSpec, as_series, self_inverses

EXACT_MAX_N = 8


class Unachievable(SeriesError):
    """The requested structure cannot be produced by the given transformation."""


# -- pairings -----------------------------------------------------------------


@dataclass(frozen=True)
class InversePairing:
    pairs: tuple[tuple[int, int], ...]
    self_inverses: tuple[int, ...]

    @classmethod
    def of(cls, n: int, t: int) -> "InversePairing":
        fixed = tuple(self_inverses(n, t))
        pairs = sorted({tuple(sorted((x, (t - x) % n))) for x in range(n) if x not in fixed})
        return cls(tuple(pairs), fixed)


@dataclass(frozen=True)
class MirrorPairing:
    pairs: tuple[tuple[int, int], ...]
    center: int | None

    @classmethod
    def of(cls, n: int) -> "MirrorPairing":
        return cls(tuple((i, n - 1 - i) for i in range(n // 2)), (n - 1) // 2 if n % 2 else None)


def transposition_cycles(n: int, t: int) -> list[tuple[int, ...]]:
    out, seen = [], set()
    for start in range(n):
        if start in seen:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = (x + t) % n
        out.append(tuple(cyc))
    return out


# -- operations ---------------------------------------------------------------


@dataclass(frozen=True)
class SwapPositionPairs:
    """Exchange mirror pairs ``(i, n-1-i)`` and ``(j, n-1-j)``; ``i, j`` index the left half."""

    i: int
    j: int


@dataclass(frozen=True)
class SwapWithinPositionPair:
    i: int


@dataclass(frozen=True)
class SwapInversePairs:
    """Relabel ``x <-> y`` together with their partners.

    For RI the partners are the inverses ``t-x`` and ``t-y``. For R the
    whole transposition cycles through ``x`` and ``y`` are exchanged,
    ``x + k t <-> y + k t``.
    """

    x: int
    y: int


@dataclass(frozen=True)
class SwapWithinInversePair:
    """Relabel ``x <-> t-x`` (RI), or give x's transposition cycle a half turn (R, even cycle length)."""

    x: int


EquivalenceOp = Union[SwapPositionPairs, SwapWithinPositionPair, SwapInversePairs, SwapWithinInversePair]


def _check_spec(spec: TransformSpec, n: int) -> None:
    spec.check(n)
    if spec.kind not in (Kind.R, Kind.RI):
        raise SeriesError(f"equivalence operations are defined for R and RI, not {spec.kind.value}")


def _relabeling(op: EquivalenceOp, n: int, spec: TransformSpec) -> dict[int, int]:
    t = spec.t
    if spec.kind is Kind.RI:
        fixed = set(self_inverses(n, t))
        for z in (op.x, op.y) if isinstance(op, SwapInversePairs) else (op.x,):
            if not 0 <= z < n:
                raise SeriesError(f"pitch class {z} out of range for n={n}")
            if z in fixed:
                raise SeriesError(f"{z} is self-inverse for t={t}; it belongs to no inverse pair")
        if isinstance(op, SwapWithinInversePair):
            return {op.x: (t - op.x) % n, (t - op.x) % n: op.x}
        x, y = op.x, op.y
        xs, ys = {x, (t - x) % n}, {y, (t - y) % n}
        if xs == ys:
            raise SeriesError(f"{x} and {y} belong to the same inverse pair")
        return {x: y, y: x, (t - x) % n: (t - y) % n, (t - y) % n: (t - x) % n}

    cycles = {z: c for c in transposition_cycles(n, t) for z in c}
    for z in (op.x, op.y) if isinstance(op, SwapInversePairs) else (op.x,):
        if not 0 <= z < n:
            raise SeriesError(f"pitch class {z} out of range for n={n}")
    length = len(cycles[op.x])
    if isinstance(op, SwapWithinInversePair):
        if length % 2:
            raise SeriesError(f"the transposition cycle of {op.x} has odd length {length}; it has no half turn")
        shift = (length // 2) * t
        return {z: (z + shift) % n for z in cycles[op.x]}
    if cycles[op.x] == cycles[op.y]:
        raise SeriesError(f"{op.x} and {op.y} lie in the same transposition cycle")
    mapping = {}
    for k in range(length):
        a, b = (op.x + k * t) % n, (op.y + k * t) % n
        mapping[a], mapping[b] = b, a
    return mapping


def _anchor(notes: list[int]) -> list[int]:
    """Bring 0 back to position 0 with a position involution that respects mirror pairs."""
    n = len(notes)
    p = notes.index(0)
    if p == 0:
        return notes
    if n % 2 and p == (n - 1) // 2:
        raise SeriesError("this relabeling would put 0 at the centre position, where it cannot be moved back")
    q = n - 1 - p
    swap = {0: p, p: 0, n - 1: q, q: n - 1}
    return [notes[swap.get(i, i)] for i in range(n)]


def apply_op(op: EquivalenceOp, s: "Series | Sequence[int]", spec: TransformSpec) -> Series:
    """Rewrite ``s`` with ``op``; the PP structure under ``spec`` is unchanged."""
    s = as_series(s)
    n = s.n
    _check_spec(spec, n)
    if s[0] != 0:
        raise SeriesError("equivalence operations act on series starting at 0")
    notes = list(s)
    half = n // 2
    if isinstance(op, (SwapPositionPairs, SwapWithinPositionPair)):
        idx = (op.i, op.j) if isinstance(op, SwapPositionPairs) else (op.i,)
        for i in idx:
            if not 1 <= i < half:
                centre = " (the centre has no pair)" if n % 2 and i == half else ""
                raise SeriesError(
                    f"position pair {i} is not available{centre}; usable pairs are 1..{half - 1}, pair 0 holds the anchor note 0"
                )
        if isinstance(op, SwapPositionPairs):
            i, j = op.i, op.j
            if i == j:
                raise SeriesError("SwapPositionPairs needs two different pairs")
            notes[i], notes[j] = notes[j], notes[i]
            notes[n - 1 - i], notes[n - 1 - j] = notes[n - 1 - j], notes[n - 1 - i]
        else:
            i = op.i
            notes[i], notes[n - 1 - i] = notes[n - 1 - i], notes[i]
        return Series(notes)
    mapping = _relabeling(op, n, spec)
    return Series(_anchor([mapping.get(z, z) for z in notes]))


def candidate_ops(n: int, spec: TransformSpec) -> list[EquivalenceOp]:
    """Every op whose arguments are well formed for ``(n, spec)``; some may still fail on a given series."""
    _check_spec(spec, n)
    half = n // 2
    ops: list[EquivalenceOp] = []
    for i in range(1, half):
        ops.append(SwapWithinPositionPair(i))
        ops.extend(SwapPositionPairs(i, j) for j in range(i + 1, half))
    t = spec.t
    if spec.kind is Kind.RI:
        pairs = InversePairing.of(n, t).pairs
        for a, (x, xp) in enumerate(pairs):
            ops.append(SwapWithinInversePair(x))
            for y, yp in pairs[a + 1 :]:
                ops.extend([SwapInversePairs(x, y), SwapInversePairs(x, yp)])
    else:
        cycles = transposition_cycles(n, t)
        for a, ca in enumerate(cycles):
            if len(ca) % 2 == 0:
                ops.append(SwapWithinInversePair(ca[0]))
            for cb in cycles[a + 1 :]:
                ops.extend(SwapInversePairs(ca[0], y) for y in cb)
    return ops


def neighbours(s: Series, spec: TransformSpec, ops: Sequence[EquivalenceOp] | None = None) -> Iterator[Series]:
    for op in ops if ops is not None else candidate_ops(s.n, spec):
        try:
            yield apply_op(op, s, spec)
        except SeriesError:
            continue


def equivalence_class(s: "Series | Sequence[int]", spec: TransformSpec) -> dict[Series, int]:
    """Every series reachable from ``s``, with its op distance (breadth-first)."""
    s = as_series(s)
    ops = candidate_ops(s.n, spec)
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in neighbours(u, spec, ops):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def _greedy_representative(s: Series, spec: TransformSpec) -> Series:
    ops = candidate_ops(s.n, spec)
    current = s
    improved = True
    while improved:
        improved = False
        for v in neighbours(current, spec, ops):
            if v.notes < current.notes:
                current, improved = v, True
    return current


def canonical_representative(s: "Series | Sequence[int]", spec: TransformSpec) -> Series:
    """Lexicographically least member of the class of ``s``.

    Exact (full class search) for n <= 8. Above that a greedy descent is
    used, which may stop at a local minimum.
    """
    s = as_series(s)
    _check_spec(spec, s.n)
    if s[0] != 0:
        raise SeriesError("classification works on series starting at 0")
    if s.n > EXACT_MAX_N:
        return _greedy_representative(s, spec)
    return min(equivalence_class(s, spec), key=lambda x: x.notes)


def are_equivalent(s1: "Series | Sequence[int]", s2: "Series | Sequence[int]", spec: TransformSpec) -> bool:
    s1, s2 = as_series(s1), as_series(s2)
    if s1.n != s2.n:
        return False
    if s1 == s2:
        return True
    if s1.n > EXACT_MAX_N:
        return s2 in equivalence_class(s1, spec)
    return canonical_representative(s1, spec) == canonical_representative(s2, spec)


# -- realization --------------------------------------------------------------


def _series_from_mirror(mirror: dict[int, int], n: int) -> Series:
    """Lay out an involution as mirror pairs of positions, 0 first, other pairs by smallest note."""
    notes: list[int | None] = [None] * n
    fixed = [x for x in range(n) if mirror[x] == x]
    if n % 2:
        notes[(n - 1) // 2] = fixed[0]
    pairs = sorted({tuple(sorted((x, mirror[x]))) for x in range(n) if mirror[x] != x})
    pairs.sort(key=lambda p: (0 not in p, p))
    for i, (a, b) in enumerate(pairs):
        if b == 0:
            a, b = b, a
        notes[i], notes[n - 1 - i] = a, b
    return Series(notes)


def _ri_rule(n: int, t: int) -> str:
    if n % 2 == 0 and t % 2:
        return f"RI with n={n} even and t={t} odd: every cycle is paired with an inverse cycle of the same length"
    if n % 2 == 0:
        return (
            f"RI with n={n} and t={t} even: one cycle of even length holds both self-inverses, "
            "every other cycle is paired with an inverse cycle of the same length"
        )
    if t == 0:
        return (
            f"RI with n={n} odd and t=0: the cycle through 0 (the only self-inverse) has odd length >= 3, "
            "every other cycle is paired with an inverse cycle of the same length"
        )
    return (
        f"RI with n={n} odd and t={t}: the cycle through the self-inverse has odd length, "
        "every other cycle is paired with an inverse cycle of the same length"
    )


def _split_anchor(structure: Structure, n: int, t: int) -> tuple[int | None, list[int]]:
    """Split an RI structure into the self-inverse cycle length and the halves of the paired cycles."""
    counts = Counter(structure)
    odd = sorted(k for k, c in counts.items() if c % 2)
    anchors = _anchor_lengths(n, t)
    rule = _ri_rule(n, t)
    if anchors is None:
        if odd:
            raise Unachievable(f"{rule}; lengths {odd} appear an odd number of times")
        anchor = None
    else:
        if len(odd) != 1:
            found = f"lengths {odd} appear an odd number of times" if odd else "no cycle is left unpaired"
            raise Unachievable(f"{rule}; {found}")
        anchor = odd[0]
        if anchor not in anchors:
            raise Unachievable(f"{rule}; the unpaired cycle has length {anchor}")
        counts[anchor] -= 1
    halves = sorted(k for k, c in counts.items() for _ in range(c // 2))
    return anchor, halves


def _realize_RI(structure: Structure, n: int, t: int) -> Series:
    if n == 1:
        return Series([0])
    anchor, halves = _split_anchor(structure, n, t)
    pairing = InversePairing.of(n, t)
    inv = {x: (t - x) % n for x in range(n)}
    pool = list(pairing.pairs)
    pp: dict[int, int] = {}

    def close(cycle: list[int]) -> None:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            pp[a] = b

    if anchor is not None:
        fixed = list(pairing.self_inverses)
        m = (anchor - len(fixed)) // 2
        chain = [pool.pop(0)[0] for _ in range(m)]
        if len(fixed) == 2:
            x, y = fixed
            close([x] + chain + [y] + [inv[c] for c in reversed(chain)])
        else:
            x = fixed[0]
            # the last chain note becomes the centre note, which must not be 0
            if chain and chain[-1] == 0:
                chain[-1] = inv[0]
            close([x] + chain + [inv[c] for c in reversed(chain)])
    for k in halves:
        chain = [pool.pop(0)[0] for _ in range(k)]
        close(chain)
        close([inv[c] for c in reversed(chain)])
    mirror = {x: inv[pp[x]] for x in range(n)}
    return _series_from_mirror(mirror, n)


def _realize_R(structure: Structure, n: int, t: int) -> Series:
    shape = GTShape.from_transposition(n, t)
    for w in gt_witnesses(shape):
        if w.structure() != structure:
            continue
        # send the witness GT onto the real transposition x -> x + t
        relabel = [0] * n
        g = math.gcd(n, t)
        seen = [False] * n
        offset = 0
        for start in range(n):
            if seen[start]:
                continue
            x, k = start, 0
            while not seen[x]:
                seen[x] = True
                relabel[x] = (offset + k * t) % n
                x = w.gt[x]
                k += 1
            offset += 1
        assert offset == g
        mirror = {relabel[x]: relabel[w.mirror[x]] for x in range(n)}
        if n % 2 and mirror[0] == 0 and n > 1:
            # translations commute with the transposition, so shift 0 off the centre
            mirror = {(a + 1) % n: (b + 1) % n for a, b in mirror.items()}
        return _series_from_mirror(mirror, n)
    raise Unachievable(_why_not_R(structure, n, t))


def _why_not_R(structure: Structure, n: int, t: int) -> str:
    if math.gcd(n, t) == 1 and n > 1:
        evens = sum(1 for c in structure if c % 2 == 0)
        if 2 * len(structure) > n + 2:
            return f"condition 1 fails: {len(structure)} cycles exceed n/2 + 1 = {n / 2 + 1:g}"
        if evens % 2 != even_cycle_parity(n):
            want = "even" if even_cycle_parity(n) == 0 else "odd"
            return f"condition 2 fails: n={n} needs an {want} number of even-length cycles, found {evens}"
    return f"structure {list(structure)} is not reachable for R with n={n}, t={t} (gcd {math.gcd(n, t)})"


def realize(structure: Sequence[int], kind: "Kind | str", n: int, t: int) -> Series:
    """A series starting at 0 whose PP under ``(kind, t)`` has exactly ``structure``."""
    kind = Kind.parse(kind)
    structure = tuple(sorted(int(c) for c in structure))
    TransformSpec(kind, t).check(n)
    if any(c < 1 for c in structure) or sum(structure) != n:
        raise SeriesError(f"structure {list(structure)} must be positive lengths summing to n={n}")
    spec = TransformSpec(kind, t)
    if kind in (Kind.P, Kind.I):
        if structure not in {e.structure for e in catalog(kind, n, t)}:
            only = catalog(kind, n, t)[0].structure
            raise Unachievable(f"{kind.value} with n={n}, t={t} always gives structure {list(only)}")
        result = Series(range(n))
    elif kind is Kind.RI:
        result = _realize_RI(structure, n, t)
    else:
        result = _realize_R(structure, n, t)
    got = pp_from_transform(result, spec).structure()
    if got != structure:
        raise AssertionError(f"realized {result} gives {list(got)}, wanted {list(structure)}")
    return result


# -- class tables -------------------------------------------------------------


@dataclass(frozen=True)
class ClassInfo:
    structure: Structure
    representative: Series
    size: int


def class_table(kind: "Kind | str", n: int, t: int, *, exhaustive: bool | None = None) -> list[ClassInfo]:
    """One entry per equivalence class, sorted by (order, structure, representative).

    For RI the classes match the structures one to one, so above n=8 the
    table is built from :func:`realize` (``size`` is then 0, unknown).
    R tables need the exhaustive search and are limited to n <= 8.
    """
    kind = Kind.parse(kind)
    spec = TransformSpec(kind, t)
    _check_spec(spec, n)
    if exhaustive is None:
        exhaustive = n <= EXACT_MAX_N
    if not exhaustive:
        if kind is not Kind.RI:
            raise SeriesError(f"R class tables need exhaustive search, limited to n <= {EXACT_MAX_N}")
        return [ClassInfo(e.structure, realize(e.structure, kind, n, t), 0) for e in catalog(kind, n, t)]
    from itertools import permutations

    seen: set[Series] = set()
    out = []
    for suffix in permutations(range(1, n)):
        s = Series((0,) + suffix)
        if s in seen:
            continue
        members = equivalence_class(s, spec)
        seen.update(members)
        rep = min(members, key=lambda x: x.notes)
        out.append(ClassInfo(pp_from_transform(rep, spec).structure(), rep, len(members)))
    return sorted(out, key=lambda c: (_order(c.structure), c.structure, c.representative.notes))


def _order(structure: Structure) -> int:
    return lcm(structure)


def random_op(rng: random.Random, s: Series, spec: TransformSpec) -> tuple[EquivalenceOp, Series] | None:
    """A random op that applies to ``s``, with its result; None if none applies."""
    ops = candidate_ops(s.n, spec)
    rng.shuffle(ops)
    for op in ops:
        try:
            return op, apply_op(op, s, spec)
        except SeriesError:
            continue
    return None

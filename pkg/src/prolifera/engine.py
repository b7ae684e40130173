"""Proliferating permutations: construction, cycle decomposition, order and orbit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from prolifera.pitch import Series, SeriesError, TransformSpec, apply_transform, as_series

Structure = tuple[int, ...]


def lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``0..n-1``; ``image[x]`` is where ``x`` goes."""

    image: tuple[int, ...]

    def __init__(self, image: Iterable[int]):
        image = tuple(int(x) for x in image)
        if sorted(image) != list(range(len(image))):
            raise SeriesError(f"{list(image)} is not a permutation of 0..{len(image) - 1}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __len__(self) -> int:
        return len(self.image)

    def apply(self, s: "Series | Sequence[int]") -> Series:
        """Map every note of ``s`` through the permutation, position by position."""
        s = as_series(s)
        if s.n != self.n:
            raise SeriesError(f"series of {s.n} notes cannot be permuted by a permutation on {self.n}")
        return Series(self.image[x] for x in s)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` after ``other``: ``x -> self(other(x))``."""
        if other.n != self.n:
            raise SeriesError("cannot compose permutations of different sizes")
        return Permutation(self.image[y] for y in other.image)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self.image):
            inv[y] = x
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.image))

    def conjugate(self, relabel: "Permutation") -> "Permutation":
        """``relabel o self o relabel^-1``."""
        return relabel.compose(self).compose(relabel.inverse())

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, each rotated to start at its minimum, sorted by minimum."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            x = self.image[start]
            while x != start:
                cycle.append(x)
                seen[x] = True
                x = self.image[x]
            out.append(tuple(cycle))
        return tuple(out)

    def structure(self) -> Structure:
        return tuple(sorted(len(c) for c in self.cycles()))

    def order(self) -> int:
        return lcm(len(c) for c in self.cycles())

    def __str__(self) -> str:
        return format_cycles(self.cycles())


def format_cycles(cycles: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> str:
    label = (lambda x: names[x]) if names is not None else str
    return "".join("(" + " ".join(label(x) for x in c) + ")" for c in cycles)


@dataclass(frozen=True)
class CycleDecomposition:
    """Canonical disjoint-cycle form of a PP.

    ``central`` is the index into ``cycles`` of the cycle holding the note at
    the middle position of the generating series; it is only set for odd n
    when a generating series is known.
    """

    cycles: tuple[tuple[int, ...], ...]
    central: int | None = None

    @property
    def structure(self) -> Structure:
        return tuple(sorted(len(c) for c in self.cycles))

    @property
    def central_cycle(self) -> tuple[int, ...] | None:
        return None if self.central is None else self.cycles[self.central]

    def __str__(self) -> str:
        return format_cycles(self.cycles)


def pp_from_pair(s1: "Series | Sequence[int]", s2: "Series | Sequence[int]") -> Permutation:
    """The permutation sending ``s1[i]`` to ``s2[i]`` for every position ``i``."""
    s1, s2 = as_series(s1), as_series(s2)
    if s1.n != s2.n:
        raise SeriesError(f"series have different moduli ({s1.n} and {s2.n})")
    image = [0] * s1.n
    for a, b in zip(s1, s2):
        image[a] = b
    return Permutation(image)


def pp_from_transform(s: "Series | Sequence[int]", spec: TransformSpec) -> Permutation:
    s = as_series(s)
    return pp_from_pair(s, apply_transform(spec, s))


def cycle_decomposition(p: Permutation, generator: "Series | Sequence[int] | None" = None) -> CycleDecomposition:
    """Decompose ``p``; with an odd-length ``generator`` series, mark the central cycle."""
    cycles = p.cycles()
    central = None
    if generator is not None:
        g = as_series(generator)
        if g.n != p.n:
            raise SeriesError("generator series does not match the permutation size")
        if g.n % 2 == 1:
            middle = g[(g.n - 1) // 2]
            central = next(i for i, c in enumerate(cycles) if middle in c)
    return CycleDecomposition(cycles, central)


def order(p: Permutation) -> int:
    return p.order()


def orbit(s: "Series | Sequence[int]", p: Permutation) -> list[Series]:
    """``[s, p(s), p(p(s)), ...]`` up to, not including, the return to ``s``."""
    s = as_series(s)
    out = [s]
    current = p.apply(s)
    while current != s:
        out.append(current)
        current = p.apply(current)
    return out

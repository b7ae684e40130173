"""Pitch classes mod n, series, and the four classical serial transformations."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class SeriesError(ValueError):
    """Raised for malformed series or transformation arguments."""


class Kind(str, enum.Enum):
    P = "P"
    I = "I"  # noqa: E741
    R = "R"
    RI = "RI"

    @classmethod
    def parse(cls, value: "str | Kind") -> "Kind":
        if isinstance(value, Kind):
            return value
        try:
            return cls(value.strip().upper())
        except ValueError:
            raise SeriesError(f"unknown transformation kind {value!r}; expected P, I, R or RI") from None

    @property
    def inverts(self) -> bool:
        return "I" in self.value

    @property
    def retrogrades(self) -> bool:
        return "R" in self.value


def check_modulus(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SeriesError(f"modulus must be a positive integer, got {n!r}")
    return n


@dataclass(frozen=True)
class Series:
    """An ordering of all ``n`` pitch classes ``0..n-1``.

    The modulus is the length of the series, so it is not stored separately.
    """

    notes: tuple[int, ...]

    def __init__(self, notes: Iterable[int]):
        notes = tuple(int(x) for x in notes)
        n = len(notes)
        if n == 0:
            raise SeriesError("a series needs at least one note")
        if sorted(notes) != list(range(n)):
            raise SeriesError(f"{list(notes)} is not an ordering of the pitch classes 0..{n - 1}")
        object.__setattr__(self, "notes", notes)

    @property
    def n(self) -> int:
        return len(self.notes)

    def __len__(self) -> int:
        return len(self.notes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.notes)

    def __getitem__(self, i: int) -> int:
        return self.notes[i]

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.notes)) + "]"

    def position(self, pitch: int) -> int:
        return self.notes.index(pitch)

    def transpose(self, t: int) -> "Series":
        return Series((x + t) % self.n for x in self.notes)

    def retrograde(self) -> "Series":
        return Series(reversed(self.notes))

    def invert(self) -> "Series":
        """Negate every pitch class mod n (inversion about 0)."""
        return Series((-x) % self.n for x in self.notes)


def as_series(s: "Series | Sequence[int]") -> Series:
    return s if isinstance(s, Series) else Series(s)


def normalize_to_zero(s: "Series | Sequence[int]") -> Series:
    """Transpose ``s`` so that its first note is 0."""
    s = as_series(s)
    return s.transpose(-s[0])


@dataclass(frozen=True)
class TransformSpec:
    kind: Kind
    t: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        if not isinstance(self.t, int) or self.t < 0:
            raise SeriesError(f"transposition must be a non-negative integer, got {self.t!r}")

    def check(self, n: int) -> None:
        if self.t >= n:
            raise SeriesError(f"transposition {self.t} out of range for n={n} (expected 0 <= t < n)")

    def __str__(self) -> str:
        return f"{self.kind.value}{self.t}"


def apply_transform(spec: TransformSpec, s: "Series | Sequence[int]") -> Series:
    """Apply ``spec`` to ``s``.

    RI is inversion followed by retrograde. I and RI are only defined for
    series whose first note is 0; use :func:`normalize_to_zero` first.
    """
    s = as_series(s)
    spec.check(s.n)
    if spec.kind.inverts:
        if s[0] != 0:
            raise SeriesError(
                f"{spec.kind.value} needs a series starting at 0 (got first note {s[0]}); normalize it first"
            )
        s = s.invert()
    s = s.transpose(spec.t)
    if spec.kind.retrogrades:
        s = s.retrograde()
    return s


def retrograde_inversion_dual(s: "Series | Sequence[int]", t: int) -> Series:
    """Retrograde first, then invert, then transpose by ``t`` (the IR ordering).

    The retrograde no longer starts at the original first note, so the
    inversion fixes the retrograde's own first note. With this convention
    ``retrograde_inversion_dual(apply_transform(RI t, s), n - t) == s``.
    """
    s = as_series(s)
    TransformSpec(Kind.P, t).check(s.n)
    r = s.retrograde()
    return Series((2 * r[0] - x + t) % s.n for x in r)


def self_inverses(n: int, t: int) -> list[int]:
    """Pitch classes fixed by ``x -> t - x`` mod n."""
    return [x for x in range(n) if (2 * x - t) % n == 0]

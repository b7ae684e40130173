"""Brute-force reference computations, written without the library."""

import math
from itertools import permutations


def transform(kind, series, t, n):
    """Direct reading of the four transformations on a series starting at 0."""
    out = list(series)
    if "I" in kind:
        out = [(n - x) % n for x in out]
    out = [(x + t) % n for x in out]
    if "R" in kind:
        out = out[::-1]
    return out


def pp(series, target):
    return {a: b for a, b in zip(series, target)}


def power_order(mapping):
    """Smallest k >= 1 with mapping^k = identity, by iteration."""
    current = dict(mapping)
    k = 1
    while any(current[x] != x for x in current):
        current = {x: mapping[current[x]] for x in current}
        k += 1
    return k


def structure(mapping):
    """Cycle lengths: for every element, the first return time; each cycle counted once per member."""
    lengths = []
    for x in mapping:
        y, k = mapping[x], 1
        while y != x:
            y, k = mapping[y], k + 1
        lengths.append(k)
    # a cycle of length L contributes L copies of L
    out = []
    for L in sorted(set(lengths)):
        out += [L] * (lengths.count(L) // L)
    return tuple(sorted(out))


def all_series(n):
    for suffix in permutations(range(1, n)):
        yield (0,) + suffix


def census_structures(kind, n, t):
    return {structure(pp(s, transform(kind, s, t, n))) for s in all_series(n)}


def census_histogram(kind, n, t):
    counts = {}
    for s in all_series(n):
        key = structure(pp(s, transform(kind, s, t, n)))
        counts[key] = counts.get(key, 0) + 1
    return counts


def partitions_bruteforce(total, max_part):
    """Multisets of parts <= max_part summing to total, by filtering all compositions."""
    found = set()

    def rec(remaining, prefix):
        if remaining == 0:
            found.add(tuple(sorted(prefix, reverse=True)))
            return
        for p in range(1, min(remaining, max_part) + 1):
            rec(remaining - p, prefix + [p])

    rec(total, [])
    return found


def count_series(n):
    """Series starting at 0, i.e. (n-1)!."""
    return math.factorial(n - 1)

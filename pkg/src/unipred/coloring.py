"""Greedy prefix-free partition of an enumeration of tree nodes.

Items are tuples (finite data sequences, or any tuples ordered by the prefix
relation).  Each item receives the smallest color not already used by an
earlier comparable item, so every color class is an antichain.  If no path
carries more than ``colors`` items, the greedy rule never runs out.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence


class ColorExhausted(RuntimeError):
    def __init__(self, item: tuple, path: list[tuple], colors: int):
        self.item = item
        self.path = path
        super().__init__(
            f"all {colors} colors are used by items comparable with {item!r} "
            f"(comparable items: {len(path)})"
        )


class GreedyPartition:
    """Incremental form of :func:`prefix_free_partition`."""

    def __init__(self, colors: int):
        if colors < 1:
            raise ValueError("need at least one color")
        self.colors = colors
        self.assigned: dict[tuple, int] = {}
        self._below: dict[tuple, set[int]] = {}  # node -> colors used strictly below it

    def forbidden(self, item: tuple) -> set[int]:
        used = set(self._below.get(item, ()))
        for i in range(len(item) + 1):
            c = self.assigned.get(item[:i])
            if c is not None:
                used.add(c)
        return used

    def add(self, item: tuple) -> int:
        item = tuple(item)
        if item in self.assigned:
            return self.assigned[item]
        used = self.forbidden(item)
        color = next((c for c in range(self.colors) if c not in used), None)
        if color is None:
            path = [item[:i] for i in range(len(item)) if item[:i] in self.assigned]
            path += [s for s in self.assigned if len(s) > len(item) and s[: len(item)] == item]
            raise ColorExhausted(item, path, self.colors)
        self.assigned[item] = color
        for i in range(len(item)):
            self._below.setdefault(item[:i], set()).add(color)
        return color


def prefix_free_partition(items: Iterable[tuple], colors: int) -> dict[tuple, int]:
    """Greedy coloring in enumeration order; raises :class:`ColorExhausted`."""
    partition = GreedyPartition(colors)
    for item in items:
        partition.add(item)
    return dict(partition.assigned)


def color_classes(coloring: dict[tuple, int]) -> dict[int, list[tuple]]:
    classes: dict[int, list[tuple]] = {}
    for item, c in coloring.items():
        classes.setdefault(c, []).append(item)
    return classes


def max_chain(items: Iterable[tuple]) -> int:
    """Largest number of pairwise comparable items (items on one path)."""
    members = set(map(tuple, items))
    best = 0
    for s in members:
        best = max(best, sum(1 for i in range(len(s) + 1) if s[:i] in members))
    return best


def _comparable(a: tuple, b: tuple) -> bool:
    n = min(len(a), len(b))
    return a[:n] == b[:n]


def exact_coloring(items: Sequence[tuple], colors: int) -> dict[tuple, int] | None:
    """Oracle: backtracking search for a proper coloring with ``colors`` colors.

    Independent of the greedy rule: it explores every assignment (with the
    usual symmetry cut on the first use of a new color).
    """
    items = [tuple(s) for s in items]
    neighbours: list[list[int]] = [
        [j for j in range(len(items)) if j != i and _comparable(items[i], items[j])] for i in range(len(items))
    ]
    # most constrained first
    order = sorted(range(len(items)), key=lambda i: -len(neighbours[i]))
    assignment: dict[int, int] = {}

    def search(pos: int, used: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        taken = {assignment[j] for j in neighbours[i] if j in assignment}
        for c in range(min(colors, used + 1)):
            if c in taken:
                continue
            assignment[i] = c
            if search(pos + 1, max(used, c + 1)):
                return True
            del assignment[i]
        return False

    if not search(0, 0):
        return None
    return {items[i]: c for i, c in assignment.items()}


def chromatic_number(items: Sequence[tuple], limit: int = 64) -> int:
    items = list(items)
    if not items:
        return 0
    for k in range(1, limit + 1):
        if exact_coloring(items, k) is not None:
            return k
    raise ValueError("chromatic number above limit")


def is_antichain(items: Iterable[Hashable]) -> bool:
    members = list(items)
    return not any(
        _comparable(a, b) for i, a in enumerate(members) for b in members[i + 1 :]
    )

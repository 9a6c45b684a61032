"""Plane partitions, r-colored plane partitions and their torus characters."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import CapExceeded, InvalidPartition, MalformedInput

__all__ = [
    "PlanePartition",
    "ColoredPartition",
    "DEFAULT_CAP",
    "enumerate_plane_partitions",
    "enumerate_colored",
    "compositions",
    "ideal_character",
    "partition_from_json",
    "colored_from_json",
]

DEFAULT_CAP = 12

_UNIT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _predecessors(box):
    i, j, k = box
    out = []
    if i:
        out.append((i - 1, j, k))
    if j:
        out.append((i, j - 1, k))
    if k:
        out.append((i, j, k - 1))
    return out


@dataclass(frozen=True, order=True)
class PlanePartition:
    """A finite downward-closed set of boxes, stored as a sorted tuple.

    Checking the three immediate predecessors of every box is enough for
    downward closure, by induction on ``i + j + k``.
    """

    boxes: tuple = ()

    def __post_init__(self):
        raw = list(self.boxes)
        norm = []
        for b in raw:
            if len(b) != 3 or not all(isinstance(x, int) and not isinstance(x, bool) for x in b):
                raise InvalidPartition(f"box {b!r} is not an integer triple")
            if min(b) < 0:
                raise InvalidPartition(f"box {tuple(b)} has a negative coordinate")
            norm.append(tuple(b))
        boxes = tuple(sorted(set(norm)))
        if len(boxes) != len(norm):
            raise InvalidPartition("duplicate boxes")
        present = set(boxes)
        for b in boxes:
            for pred in _predecessors(b):
                if pred not in present:
                    raise InvalidPartition(f"box {b} is present but {pred} is not")
        object.__setattr__(self, "boxes", boxes)

    def __len__(self):
        return len(self.boxes)

    def __iter__(self):
        return iter(self.boxes)

    def __contains__(self, box):
        return tuple(box) in set(self.boxes)

    @property
    def size(self) -> int:
        return len(self.boxes)

    def to_json(self) -> list:
        return [list(b) for b in self.boxes]

    def __str__(self):
        return "{" + ", ".join(f"({i},{j},{k})" for i, j, k in self.boxes) + "}"


@dataclass(frozen=True)
class ColoredPartition:
    """An ordered r-tuple of plane partitions."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(p if isinstance(p, PlanePartition) else PlanePartition(tuple(p)) for p in self.parts)
        if not parts:
            raise InvalidPartition("a colored partition needs at least one color")
        object.__setattr__(self, "parts", parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(len(p) for p in self.parts)

    def __len__(self):
        return self.size

    def to_json(self) -> list:
        return [p.to_json() for p in self.parts]

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


def _addable(present: set, boxes: list) -> list:
    if not present:
        return [(0, 0, 0)]
    cands = set()
    for b in boxes:
        for e in _UNIT:
            c = (b[0] + e[0], b[1] + e[1], b[2] + e[2])
            if c not in present and all(p in present for p in _predecessors(c)):
                cands.add(c)
    return sorted(cands)


@lru_cache(maxsize=None)
def _plane_partitions(n: int) -> tuple:
    out = []
    boxes: list = []
    present: set = set()

    # Every lexicographically sorted prefix of a downward-closed set is itself
    # downward closed, so growing only by boxes larger than the last one added
    # reaches each partition along exactly one path.
    def grow():
        if len(boxes) == n:
            out.append(PlanePartition(tuple(boxes)))
            return
        last = boxes[-1] if boxes else None
        for c in _addable(present, boxes):
            if last is not None and c <= last:
                continue
            boxes.append(c)
            present.add(c)
            grow()
            present.remove(c)
            boxes.pop()

    grow()
    out.sort()
    return tuple(out)


def enumerate_plane_partitions(n: int, cap: int = DEFAULT_CAP) -> list:
    """All plane partitions with ``n`` boxes, sorted by their box lists.

    >>> len(enumerate_plane_partitions(4))
    13
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"size must be a non-negative integer, got {n!r}")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the enumeration cap {cap}")
    return list(_plane_partitions(n))


def compositions(n: int, r: int) -> Iterator[tuple]:
    """Weak compositions of ``n`` into ``r`` parts, first part descending."""
    if r == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, r - 1):
            yield (first,) + rest


def enumerate_colored(r: int, n: int, cap: int = DEFAULT_CAP) -> Iterator[ColoredPartition]:
    """Stream every r-tuple of plane partitions with ``n`` boxes in total."""
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"number of colors must be a positive integer, got {r!r}")
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"size must be a non-negative integer, got {n!r}")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the enumeration cap {cap}")
    for comp in compositions(n, r):
        yield from _product(comp)


def _product(comp):
    lists = [_plane_partitions(k) for k in comp]

    def rec(idx, acc):
        if idx == len(lists):
            yield ColoredPartition(tuple(acc))
            return
        for p in lists[idx]:
            acc.append(p)
            yield from rec(idx + 1, acc)
            acc.pop()

    yield from rec(0, [])


def ideal_character(pi: PlanePartition, r: int = 0):
    """The character ``Q = sum t1^i t2^j t3^k`` over the boxes of ``pi``.

    ``r`` fixes the width of the (all zero) framing exponent vector.
    """
    from .characters import Monomial, VirtualCharacter

    if not isinstance(pi, PlanePartition):
        pi = PlanePartition(tuple(pi))
    zero_w = (0,) * r
    return VirtualCharacter({Monomial((2 * i, 2 * j, 2 * k), zero_w): 1 for i, j, k in pi.boxes}, width=r)


def partition_from_json(obj) -> PlanePartition:
    """Parse ``[[i,j,k], ...]`` (a JSON value or string) into a PlanePartition."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, list):
        raise MalformedInput("a partition literal must be a list of [i,j,k] triples")
    boxes = []
    for b in obj:
        if not isinstance(b, list) or len(b) != 3:
            raise MalformedInput(f"box {b!r} is not a triple")
        boxes.append(tuple(b))
    return PlanePartition(tuple(boxes))


def colored_from_json(obj) -> ColoredPartition:
    """Parse a list of r partition literals."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, list) or not obj:
        raise MalformedInput("a colored partition literal must be a non-empty list of partitions")
    return ColoredPartition(tuple(partition_from_json(p) for p in obj))

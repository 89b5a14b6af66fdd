"""Integer partitions, conjugation, and the staircase exponent vector."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Partition:
    """A non-increasing tuple of positive integers.

    Trailing zeros are accepted on input and normalized away.  The empty
    partition is allowed (weight 0).
    """

    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int] = ()):
        parts = tuple(parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be non-increasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be non-negative: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(p) for p in text.split(",")))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """The i-th part (0-based), zero beyond the length."""
        return self.parts[i] if 0 <= i < len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        return Partition(
            tuple(
                sum(1 for p in self.parts if p > j) for j in range(self.parts[0])
            )
        )

    def contains(self, other: "Partition") -> bool:
        return all(other.part(i) <= self.part(i) for i in range(other.length))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


def staircase(n: int) -> tuple[int, ...]:
    """The strictly decreasing exponent vector (n-1, n-2, ..., 1, 0)."""
    if n < 1:
        raise ValueError("need at least one variable")
    return tuple(range(n - 1, -1, -1))


def partitions_of(d: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of d with parts bounded by max_part, largest part first."""
    max_part = d if max_part is None else min(max_part, d)
    if d == 0:
        yield ()
        return

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for first in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - first, first, prefix + (first,))

    yield from rec(d, max_part, ())


def partitions_up_to_weight(max_weight: int) -> Iterator[Partition]:
    """All partitions with 0 < weight <= max_weight."""
    for d in range(1, max_weight + 1):
        for parts in partitions_of(d):
            yield Partition(parts)

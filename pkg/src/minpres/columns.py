"""Sparse GF(2) column representations.

Every realization stores a set of row indices and supports the same small
interface, so the reduction code is generic in the column type. The three
realizations mirror the classic choices from single-parameter persistence
libraries: a sorted dynamic array, a lazily cancelled max-heap, and a dense
bit-set with a cached maximum.
"""

from __future__ import annotations

import heapq
from collections import Counter
from bisect import bisect_left
from abc import ABC, abstractmethod
from typing import Iterable, Iterator


class Column(ABC):
    """A set of row indices over GF(2)."""

    kind: str = ""

    @abstractmethod
    def is_empty(self) -> bool: ...

    @abstractmethod
    def pivot(self) -> int:
        """Largest row index, or -1 for the empty column."""

    @abstractmethod
    def add(self, other: "Column") -> None:
        """In-place symmetric difference with ``other``."""

    @abstractmethod
    def contains(self, index: int) -> bool: ...

    @abstractmethod
    def entries(self) -> list[int]:
        """Row indices in ascending order."""

    @abstractmethod
    def copy(self) -> "Column": ...

    def iter_descending(self) -> Iterator[int]:
        return reversed(self.entries())

    def pop_pivot(self) -> int:
        p = self.pivot()
        if p >= 0:
            self.add(type(self)((p,)))
        return p

    def clear(self) -> None:
        self.add(self.copy())

    def __len__(self) -> int:
        return len(self.entries())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Column):
            return NotImplemented
        return self.entries() == other.entries()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.entries()})"


class VectorColumn(Column):
    """Sorted Python list; pivot is the last element."""

    kind = "vector"
    __slots__ = ("data",)

    def __init__(self, indices: Iterable[int] = ()):
        self.data = sorted(set(indices))

    @classmethod
    def _from_sorted(cls, data: list[int]) -> "VectorColumn":
        col = cls.__new__(cls)
        col.data = data
        return col

    def is_empty(self) -> bool:
        return not self.data

    def pivot(self) -> int:
        return self.data[-1] if self.data else -1

    def add(self, other: Column) -> None:
        src = other.data if isinstance(other, VectorColumn) else other.entries()
        if not src:
            return
        if not self.data:
            self.data = list(src)
            return
        self.data = sorted(set(self.data).symmetric_difference(src))

    def contains(self, index: int) -> bool:
        k = bisect_left(self.data, index)
        return k < len(self.data) and self.data[k] == index

    def entries(self) -> list[int]:
        return list(self.data)

    def copy(self) -> "VectorColumn":
        return VectorColumn._from_sorted(list(self.data))

    def iter_descending(self) -> Iterator[int]:
        return reversed(self.data)

    def pop_pivot(self) -> int:
        return self.data.pop() if self.data else -1

    def clear(self) -> None:
        self.data = []

    def __len__(self) -> int:
        return len(self.data)


class HeapColumn(Column):
    """Max-heap of row indices in which equal entries cancel lazily.

    Additions only push; duplicate pairs are discarded when the top of the
    heap is inspected. The heap is compacted once it grows to twice the size
    it had after the last compaction.
    """

    kind = "heap"
    __slots__ = ("heap", "_limit")

    def __init__(self, indices: Iterable[int] = ()):
        self.heap = [-i for i in set(indices)]
        heapq.heapify(self.heap)
        self._limit = 2 * len(self.heap) + 16

    def _settle(self) -> None:
        h = self.heap
        while h:
            top = heapq.heappop(h)
            if h and h[0] == top:
                heapq.heappop(h)
            else:
                heapq.heappush(h, top)
                return

    def _compact(self) -> None:
        self.heap = [v for v, c in Counter(self.heap).items() if c & 1]
        heapq.heapify(self.heap)
        self._limit = 2 * len(self.heap) + 16

    def is_empty(self) -> bool:
        self._settle()
        return not self.heap

    def pivot(self) -> int:
        self._settle()
        return -self.heap[0] if self.heap else -1

    def add(self, other: Column) -> None:
        if isinstance(other, HeapColumn):
            other._compact()
            for v in list(other.heap):
                heapq.heappush(self.heap, v)
        else:
            for i in other.entries():
                heapq.heappush(self.heap, -i)
        if len(self.heap) > self._limit:
            self._compact()

    def contains(self, index: int) -> bool:
        return sum(1 for v in self.heap if v == -index) % 2 == 1

    def entries(self) -> list[int]:
        self._compact()
        return sorted(-v for v in self.heap)

    def copy(self) -> "HeapColumn":
        self._compact()
        col = HeapColumn.__new__(HeapColumn)
        col.heap = list(self.heap)
        col._limit = self._limit
        return col

    def pop_pivot(self) -> int:
        self._settle()
        return -heapq.heappop(self.heap) if self.heap else -1

    def clear(self) -> None:
        self.heap = []
        self._limit = 16


class BitsetColumn(Column):
    """Python integer used as a bit-set, with a lazily refreshed cached maximum."""

    kind = "bitset"
    __slots__ = ("bits", "_max", "_dirty")

    def __init__(self, indices: Iterable[int] = ()):
        bits = 0
        for i in set(indices):
            bits |= 1 << i
        self.bits = bits
        self._max = bits.bit_length() - 1
        self._dirty = False

    def is_empty(self) -> bool:
        return self.bits == 0

    def pivot(self) -> int:
        if self._dirty:
            self._max = self.bits.bit_length() - 1
            self._dirty = False
        return self._max

    def add(self, other: Column) -> None:
        if isinstance(other, BitsetColumn):
            self.bits ^= other.bits
        else:
            for i in other.entries():
                self.bits ^= 1 << i
        self._dirty = True

    def contains(self, index: int) -> bool:
        return (self.bits >> index) & 1 == 1

    def iter_descending(self) -> Iterator[int]:
        b = self.bits
        while b:
            top = b.bit_length() - 1
            yield top
            b ^= 1 << top

    def entries(self) -> list[int]:
        out = list(self.iter_descending())
        out.reverse()
        return out

    def copy(self) -> "BitsetColumn":
        col = BitsetColumn.__new__(BitsetColumn)
        col.bits = self.bits
        col._max = self._max
        col._dirty = self._dirty
        return col

    def pop_pivot(self) -> int:
        p = self.pivot()
        if p >= 0:
            self.bits ^= 1 << p
            self._dirty = True
        return p

    def clear(self) -> None:
        self.bits = 0
        self._max = -1
        self._dirty = False

    def __len__(self) -> int:
        return bin(self.bits).count("1")


COLUMN_TYPES: dict[str, type[Column]] = {
    "vector": VectorColumn,
    "heap": HeapColumn,
    "bitset": BitsetColumn,
}


def column_class(kind: str) -> type[Column]:
    try:
        return COLUMN_TYPES[kind]
    except KeyError:
        raise ValueError(f"unknown column type {kind!r}; choose from {sorted(COLUMN_TYPES)}") from None


def add_column(target: Column, source: Column) -> None:
    target.add(source)

"""
Binary min-heap of external degrees with a position table for decrease-key.
"""

from typing import List, Tuple


class ExternalDegreeHeap:
    """
    Min-heap of (d_ext, vertex) pairs.

    Ordering is by key, then by vertex id, so among equal external degrees the
    lower id is popped first. The position table maps a vertex id to its heap
    slot (-1 when absent) and is sized to the id space.
    """

    def __init__(self, num_vertices: int):
        self._keys: List[int] = []
        self._ids: List[int] = []
        self._pos: List[int] = [-1] * num_vertices

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, vertex: int) -> bool:
        return self._pos[vertex] >= 0

    def key(self, vertex: int) -> int:
        return self._keys[self._pos[vertex]]

    def members(self) -> List[int]:
        return list(self._ids)

    def _less(self, i: int, j: int) -> bool:
        ki, kj = self._keys[i], self._keys[j]
        return ki < kj or (ki == kj and self._ids[i] < self._ids[j])

    def _swap(self, i: int, j: int) -> None:
        keys, ids, pos = self._keys, self._ids, self._pos
        keys[i], keys[j] = keys[j], keys[i]
        ids[i], ids[j] = ids[j], ids[i]
        pos[ids[i]] = i
        pos[ids[j]] = j

    def _sift_up(self, idx: int) -> None:
        while idx > 0:
            parent = (idx - 1) >> 1
            if not self._less(idx, parent):
                break
            self._swap(idx, parent)
            idx = parent

    def _sift_down(self, idx: int) -> None:
        n = len(self._ids)
        while True:
            left = 2 * idx + 1
            if left >= n:
                return
            smallest = left
            right = left + 1
            if right < n and self._less(right, left):
                smallest = right
            if not self._less(smallest, idx):
                return
            self._swap(idx, smallest)
            idx = smallest

    def push(self, vertex: int, key: int) -> None:
        """Insert a vertex that is not yet in the heap."""
        if self._pos[vertex] >= 0:
            raise KeyError(f"vertex {vertex} already in heap")
        self._keys.append(key)
        self._ids.append(vertex)
        self._pos[vertex] = len(self._ids) - 1
        self._sift_up(len(self._ids) - 1)

    def decrease_key(self, vertex: int, delta: int = 1) -> None:
        """Lower a member's key by delta and restore the heap property."""
        idx = self._pos[vertex]
        if idx < 0:
            raise KeyError(f"vertex {vertex} not in heap")
        self._keys[idx] -= delta
        self._sift_up(idx)

    def peek(self) -> Tuple[int, int]:
        return self._ids[0], self._keys[0]

    def pop(self) -> Tuple[int, int]:
        """Remove and return (vertex, key) with the smallest key."""
        if not self._ids:
            raise IndexError("pop from empty heap")
        vertex, key = self._ids[0], self._keys[0]
        last = len(self._ids) - 1
        if last > 0:
            self._swap(0, last)
        self._keys.pop()
        self._ids.pop()
        self._pos[vertex] = -1
        if self._ids:
            self._sift_down(0)
        return vertex, key

    def clear(self) -> None:
        for v in self._ids:
            self._pos[v] = -1
        self._keys.clear()
        self._ids.clear()

    def check(self) -> bool:
        """Verify the heap property and the position table."""
        for i in range(len(self._ids)):
            if self._pos[self._ids[i]] != i:
                return False
            for child in (2 * i + 1, 2 * i + 2):
                if child < len(self._ids) and self._less(child, i):
                    return False
        return True

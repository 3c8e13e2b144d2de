"""
Tests for the external-degree min-heap.
"""

import pytest

from hep_partitioner.nepp import ExternalDegreeHeap


class TestExternalDegreeHeap:
    """Test heap ordering and decrease-key."""

    def test_pops_in_key_order(self):
        heap = ExternalDegreeHeap(10)
        for v, key in [(0, 95), (1, 43), (2, 66), (3, 29), (4, 21), (5, 14), (6, 56), (7, 33)]:
            heap.push(v, key)
        keys = [heap.pop()[1] for _ in range(len(heap))]
        assert keys == sorted(keys)

    def test_ties_pop_lower_id(self):
        heap = ExternalDegreeHeap(10)
        for v in (7, 3, 9, 1):
            heap.push(v, 2)
        assert [heap.pop()[0] for _ in range(4)] == [1, 3, 7, 9]

    def test_lowest_external_degree_first(self):
        heap = ExternalDegreeHeap(4)
        heap.push(0, 3)
        heap.push(1, 1)
        assert heap.pop() == (1, 1)

    def test_decrease_key(self):
        heap = ExternalDegreeHeap(5)
        heap.push(0, 5)
        heap.push(1, 3)
        heap.push(2, 4)
        heap.decrease_key(0, 3)
        assert heap.key(0) == 2
        assert heap.check()
        assert heap.pop() == (0, 2)

    def test_membership_and_clear(self):
        heap = ExternalDegreeHeap(5)
        heap.push(2, 1)
        heap.push(4, 0)
        assert 2 in heap and 3 not in heap
        heap.clear()
        assert len(heap) == 0
        assert 2 not in heap
        heap.push(2, 7)
        assert heap.peek() == (2, 7)

    def test_errors(self):
        heap = ExternalDegreeHeap(3)
        with pytest.raises(IndexError):
            heap.pop()
        heap.push(1, 1)
        with pytest.raises(KeyError):
            heap.push(1, 2)
        with pytest.raises(KeyError):
            heap.decrease_key(2)

    def test_positions_consistent_under_mixed_operations(self):
        heap = ExternalDegreeHeap(50)
        for v in range(50):
            heap.push(v, (v * 37) % 11)
        for v in range(0, 50, 3):
            if v in heap:
                heap.decrease_key(v, 1)
            if v % 2 == 0:
                heap.pop()
            assert heap.check()
        previous = (-10**9, -1)
        while heap:
            v, key = heap.pop()
            assert (key, v) > previous
            previous = (key, v)

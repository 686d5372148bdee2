from __future__ import annotations

from ..pc.collector import Collector, consistency_tests, evaluate_bracketing
from ..pc.presentation import vector_word

TailElement = tuple[tuple[int, ...], tuple[int, ...]]


class TailArithmetic:
    """Group law of the extension where every relation of a pc presentation carries a free central tail.

    Elements are ``(vector, tails)``; a product is collected in the base
    presentation and every relation used on the way adds one to its tail.
    Associativity holds modulo the consistency rows.
    """

    def __init__(self, collector: Collector):
        self.collector = collector
        self.size = collector.relation_count
        self.identity: TailElement = (collector.identity, (0,) * self.size)

    def unit(self, i: int) -> TailElement:
        return (self.collector.unit(i), (0,) * self.size)

    def mul(self, x: TailElement, y: TailElement) -> TailElement:
        vec = list(x[0])
        counts = [a + b for a, b in zip(x[1], y[1])]
        self.collector.collect_into(vec, vector_word(y[0]), counts)
        return tuple(vec), tuple(counts)

    def inv(self, x: TailElement) -> TailElement:
        counts = [0] * self.size
        vec = self.collector.inverse_into(x[0], counts)
        return tuple(vec), tuple(-(a + b) for a, b in zip(x[1], counts))

    def power(self, x: TailElement, k: int) -> TailElement:
        if k < 0:
            return self.power(self.inv(x), -k)
        result, base = self.identity, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def consistency_rows(self) -> list[list[int]]:
        """Tail differences of the two bracketings of every consistency test"""
        rows = []
        for test in consistency_tests(self.collector.presentation):
            left = [0] * self.size
            right = [0] * self.size
            lv = evaluate_bracketing(self.collector, test.left, left)
            rv = evaluate_bracketing(self.collector, test.right, right)
            if lv != rv:
                raise AssertionError(f"base presentation fails consistency test {test.label}")
            row = [a - b for a, b in zip(left, right)]
            if any(row):
                rows.append(row)
        return rows

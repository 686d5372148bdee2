"""Collection from the left over a power-commutator presentation.

Elements are exponent vectors ``e`` with ``0 <= e_i < m_i`` standing for the
normal form ``g_1^{e_1} ... g_n^{e_n}``. Multiplying a collected vector by a
generator ``g_i`` uses

    (u * s) * g_i = (u * g_i) * s^{g_i},    g_j^{g_i} = g_j [g_j, g_i]

where ``u`` is the prefix on generators <= i and ``s`` the suffix on
generators > i. Everything pushed back lives on generators > i, so the
process terminates for presentations of nilpotent shape.

Every use of a relation can be counted; the nilpotent quotient step relies on
these counts to track central tails.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .presentation import ExponentVector, PcPresentation, Word, vector_word

Tokens = Sequence[tuple[int, int]]


class Collector:
    def __init__(self, presentation: PcPresentation):
        self.presentation = presentation
        self.n = presentation.length
        self.m = list(presentation.rel_orders)
        n = self.n
        self.power_letters: list[tuple[tuple[int, int], ...]] = [tuple(t) for t in presentation.power_tails]
        tails = presentation.comm_tails
        # relation ids: power relation of g_i -> i, commutator (j, i) -> running index
        self.comm_id = [[-1] * n for _ in range(n)]
        self.conj_letters: list[list[tuple[tuple[int, int], ...]]] = [[()] * n for _ in range(n)]
        rid = n
        for j in range(n):
            for i in range(j):
                self.comm_id[j][i] = rid
                rid += 1
                self.conj_letters[j][i] = ((j, 1),) + tuple(tails.get((j, i), ()))
        self.relation_count = rid
        self._inverse_letters: list[Word] | None = None

    @property
    def identity(self) -> ExponentVector:
        return (0,) * self.n

    def unit(self, i: int) -> ExponentVector:
        vec = [0] * self.n
        vec[i] = 1
        return tuple(vec)

    def collect_into(self, vec: list[int], tokens: Tokens, counts: list[int] | None = None) -> None:
        """Multiply the collected vector ``vec`` in place by the positive-exponent tokens"""
        m = self.m
        n = self.n
        stack = [tok for tok in reversed(tokens) if tok[1]]
        while stack:
            i, c = stack.pop()
            suffix = [j for j in range(i + 1, n) if vec[j]]
            if not suffix:
                q, r = divmod(vec[i] + c, m[i])
                vec[i] = r
                if q:
                    if counts is not None:
                        counts[i] += q
                    letters = self.power_letters[i]
                    if letters:
                        for _ in range(q):
                            stack.extend(reversed(letters))
                continue
            if c > 1:
                stack.append((i, c - 1))
            conjugated: list[tuple[int, int]] = []
            for j in suffix:
                e = vec[j]
                vec[j] = 0
                letters = self.conj_letters[j][i]
                if len(letters) == 1:
                    conjugated.append((j, e))
                else:
                    conjugated.extend(letters * e)
                if counts is not None:
                    counts[self.comm_id[j][i]] += e
            stack.extend(reversed(conjugated))
            if vec[i] + 1 == m[i]:
                vec[i] = 0
                if counts is not None:
                    counts[i] += 1
                stack.extend(reversed(self.power_letters[i]))
            else:
                vec[i] += 1

    def inverse_into(self, vec: Sequence[int], counts: list[int] | None = None) -> list[int]:
        """Normal form v with vec * v = 1, solved generator by generator"""
        current = list(vec)
        result = [0] * self.n
        for i in range(self.n):
            b = (-current[i]) % self.m[i]
            if b:
                self.collect_into(current, ((i, b),), counts)
                result[i] = b
        return result

    @property
    def inverse_letters(self) -> list[Word]:
        if self._inverse_letters is None:
            self._inverse_letters = [vector_word(self.inverse_into(self.unit(i))) for i in range(self.n)]
        return self._inverse_letters

    def collect(self, word: Word | Tokens, start: Sequence[int] | None = None) -> ExponentVector:
        """Normal form of ``start * word``; negative exponents are allowed"""
        vec = list(start) if start is not None else [0] * self.n
        for gen, exp in word:
            if exp > 0:
                self.collect_into(vec, ((gen, exp),))
            else:
                letters = self.inverse_letters[gen]
                for _ in range(-exp):
                    self.collect_into(vec, letters)
        return tuple(vec)

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> ExponentVector:
        vec = list(u)
        self.collect_into(vec, vector_word(v))
        return tuple(vec)

    def inverse(self, u: Sequence[int]) -> ExponentVector:
        return tuple(self.inverse_into(u))

    def power(self, u: Sequence[int], k: int) -> ExponentVector:
        if k < 0:
            return self.power(self.inverse(u), -k)
        result: ExponentVector = self.identity
        base = tuple(u)
        while k:
            if k & 1:
                result = self.multiply(result, base)
            k >>= 1
            if k:
                base = self.multiply(base, base)
        return result

    def conjugate(self, u: Sequence[int], h: Sequence[int]) -> ExponentVector:
        """u^h = h^-1 u h"""
        return self.multiply(self.multiply(self.inverse(h), u), h)

    def commutator(self, u: Sequence[int], v: Sequence[int]) -> ExponentVector:
        """[u, v] = u^-1 v^-1 u v"""
        return self.multiply(self.inverse(self.multiply(v, u)), self.multiply(u, v))


@dataclass(frozen=True)
class ConsistencyTest:
    label: str
    left: tuple[Tokens, Tokens]
    right: tuple[Tokens, Tokens]


@dataclass(frozen=True)
class ConsistencyViolation:
    label: str
    left: ExponentVector
    right: ExponentVector

    def __str__(self) -> str:
        return f"{self.label}: {self.left} != {self.right}"


def consistency_tests(presentation: PcPresentation) -> Iterator[ConsistencyTest]:
    """The associativity words whose two bracketings must collect to the same normal form"""
    names = presentation.names
    m = presentation.rel_orders
    n = presentation.length
    for k in range(n):
        for j in range(k):
            for i in range(j):
                yield ConsistencyTest(
                    f"({names[k]} {names[j]}) {names[i]}",
                    (((k, 1), (j, 1)), ((i, 1),)),
                    (((k, 1),), ((j, 1), (i, 1))),
                )
    for j in range(n):
        for i in range(j):
            yield ConsistencyTest(
                f"{names[j]}^{m[j]} {names[i]}",
                (((j, m[j] - 1), (j, 1)), ((i, 1),)),
                (((j, m[j] - 1),), ((j, 1), (i, 1))),
            )
            yield ConsistencyTest(
                f"{names[j]} {names[i]}^{m[i]}",
                (((j, 1),), ((i, m[i] - 1), (i, 1))),
                (((j, 1), (i, m[i] - 1)), ((i, 1),)),
            )
    for i in range(n):
        yield ConsistencyTest(
            f"{names[i]}^{m[i] + 1}",
            (((i, m[i] - 1), (i, 1)), ((i, 1),)),
            (((i, m[i] - 1),), ((i, 1), (i, 1))),
        )


def evaluate_bracketing(collector: Collector, blocks: tuple[Tokens, Tokens],
                        counts: list[int] | None = None) -> ExponentVector:
    """Collect each block on its own, then multiply the collected blocks"""
    first = [0] * collector.n
    collector.collect_into(first, blocks[0], counts)
    second = [0] * collector.n
    collector.collect_into(second, blocks[1], counts)
    collector.collect_into(first, vector_word(second), counts)
    return tuple(first)


def consistency_check(presentation: PcPresentation) -> ConsistencyViolation | None:
    """None when every consistency test collects both ways to the same normal form"""
    collector = Collector(presentation)
    for test in consistency_tests(presentation):
        left = evaluate_bracketing(collector, test.left)
        right = evaluate_bracketing(collector, test.right)
        if left != right:
            return ConsistencyViolation(test.label, left, right)
    return None

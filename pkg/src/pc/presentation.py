"""Power-commutator presentations.

A presentation lists generators g_1 < ... < g_n with relative orders m_i and
relations

    g_i^{m_i} = power_tails[i]           (word in generators > i)
    [g_j, g_i] = comm_tails[(j, i)]      (j > i, word in generators > j)

where ``[a, b] = a^-1 b^-1 a b``. Missing commutator tails are trivial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from sympy import factorint

from .expressions import Comm, Expr, Gen, Pow
from ..utils.errors import PresentationError

Word = tuple[tuple[int, int], ...]
ExponentVector = tuple[int, ...]


def make_word(tokens: Sequence[tuple[int, int]]) -> Word:
    """Merge adjacent equal generators and drop zero exponents"""
    merged: list[list[int]] = []
    for gen, exp in tokens:
        if merged and merged[-1][0] == gen:
            merged[-1][1] += exp
        else:
            merged.append([gen, exp])
    return tuple((g, e) for g, e in merged if e != 0)


def vector_word(vector: Sequence[int]) -> Word:
    return tuple((i, e) for i, e in enumerate(vector) if e)


def prime_of_order(order: int) -> int | None:
    """The prime p if order is a power of p, else None"""
    factors = factorint(order)
    if len(factors) != 1:
        return None
    return next(iter(factors))


@dataclass(frozen=True)
class PcPresentation:
    name: str
    names: tuple[str, ...]
    rel_orders: tuple[int, ...]
    power_tails: tuple[Word, ...]
    comm_items: tuple[tuple[tuple[int, int], Word], ...] = ()
    weights: tuple[int, ...] | None = field(default=None, compare=False)
    definitions: Mapping[int, Expr] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise PresentationError("presentation has no generators")
        if len(set(self.names)) != n:
            raise PresentationError("duplicate generator names")
        if len(self.rel_orders) != n or len(self.power_tails) != n:
            raise PresentationError("relative orders and power tails must match the generator list")
        for i, m in enumerate(self.rel_orders):
            if m < 2 or prime_of_order(m) is None:
                raise PresentationError(f"relative order {m} of {self.names[i]} is not a prime power")
        for i, tail in enumerate(self.power_tails):
            self._check_tail(tail, i, f"power tail of {self.names[i]}")
        seen = set()
        for (j, i), tail in self.comm_items:
            if not (0 <= i < j < n):
                raise PresentationError(f"commutator relation ({j}, {i}) must have a later left generator")
            if (j, i) in seen:
                raise PresentationError(f"commutator [{self.names[j]}, {self.names[i]}] given twice")
            seen.add((j, i))
            self._check_tail(tail, j, f"tail of [{self.names[j]}, {self.names[i]}]")
        object.__setattr__(self, "comm_items", tuple(sorted(self.comm_items)))
        if not self.definitions:
            object.__setattr__(self, "definitions", self._derive_definitions())

    def _check_tail(self, tail: Word, after: int, what: str) -> None:
        previous = after
        for gen, exp in tail:
            if not (after < gen < len(self.names)):
                raise PresentationError(f"{what} references {self._label(gen)}, which is not a later generator")
            if gen <= previous or not (0 < exp < self.rel_orders[gen]):
                raise PresentationError(f"{what} is not a normal-form word")
            previous = gen

    def _label(self, gen: int) -> str:
        return self.names[gen] if 0 <= gen < len(self.names) else f"#{gen}"

    def _derive_definitions(self) -> dict[int, Expr]:
        """Generators that occur as a bare tail g_k^1 are defined by that relation"""
        definitions: dict[int, Expr] = {}
        for (j, i), tail in sorted(self.comm_items):
            if len(tail) == 1 and tail[0][1] == 1 and tail[0][0] not in definitions:
                definitions[tail[0][0]] = Comm(Gen(j), Gen(i))
        for i, tail in enumerate(self.power_tails):
            if len(tail) == 1 and tail[0][1] == 1 and tail[0][0] not in definitions:
                definitions[tail[0][0]] = Pow(Gen(i), self.rel_orders[i])
        return definitions

    @property
    def length(self) -> int:
        return len(self.names)

    @property
    def order(self) -> int:
        result = 1
        for m in self.rel_orders:
            result *= m
        return result

    @property
    def prime(self) -> int | None:
        primes = {prime_of_order(m) for m in self.rel_orders}
        return primes.pop() if len(primes) == 1 else None

    @property
    def comm_tails(self) -> dict[tuple[int, int], Word]:
        return dict(self.comm_items)

    def comm_tail(self, j: int, i: int) -> Word:
        return self.comm_tails.get((j, i), ())

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def relations(self) -> Iterator[tuple[str, Expr, Word]]:
        """Every defining relation as (label, left-hand side, tail word), trivial tails included"""
        for i in range(self.length):
            yield f"{self.names[i]}^{self.rel_orders[i]}", Pow(Gen(i), self.rel_orders[i]), self.power_tails[i]
        tails = self.comm_tails
        for j in range(self.length):
            for i in range(j):
                yield f"[{self.names[j]},{self.names[i]}]", Comm(Gen(j), Gen(i)), tails.get((j, i), ())

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        return " ".join(self.names[g] if e == 1 else f"{self.names[g]}^{e}" for g, e in word)


def build_presentation(name: str, gens: Sequence[tuple[str, int]],
                       powers: Mapping[str, Sequence[tuple[str, int]]] | None = None,
                       comms: Mapping[tuple[str, str], Sequence[tuple[str, int]]] | None = None,
                       weights: Sequence[int] | None = None,
                       definitions: Mapping[int, Expr] | None = None) -> PcPresentation:
    """Assemble a presentation from generator names, e.g. comms={("y", "x"): [("z", 1)]}"""
    names = tuple(g for g, _ in gens)
    index = {g: i for i, g in enumerate(names)}

    def word(tokens: Sequence[tuple[str, int]]) -> Word:
        try:
            return make_word([(index[g], e) for g, e in tokens])
        except KeyError as exc:
            raise PresentationError(f"unknown generator {exc.args[0]!r}") from None

    power_tails = tuple(word((powers or {}).get(g, ())) for g in names)
    comm_items = []
    for (gj, gi), tokens in (comms or {}).items():
        if gj not in index or gi not in index:
            raise PresentationError(f"unknown generator in commutator [{gj}, {gi}]")
        tail = word(tokens)
        if tail:
            comm_items.append(((index[gj], index[gi]), tail))
    return PcPresentation(
        name=name,
        names=names,
        rel_orders=tuple(m for _, m in gens),
        power_tails=power_tails,
        comm_items=tuple(sorted(comm_items)),
        weights=tuple(weights) if weights is not None else None,
        definitions=dict(definitions or {}),
    )

"""Enumerated finite groups over a consistent pc presentation.

Elements are integers: the mixed-radix index of the normal-form exponent
vector, so the identity is 0 and the subgroup generated by g_k, ..., g_n is
the index prefix ``[0, m_k * ... * m_n)``.

Multiplication is layered. Right multiplication by each pc generator is
tabulated once for the whole group; for |G| up to TABLE_THRESHOLD the full
Cayley table is materialized from those columns, above it products are
chained through the generator tables behind a bounded memo.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .element_set import ElementSet
from ..pc.collector import Collector, consistency_check
from ..pc.expressions import Expr, Gen, evaluate
from ..pc.presentation import ExponentVector, PcPresentation, Word
from ..utils.config import GROUP_SETTINGS
from ..utils.errors import CapExceededError, InconsistentPresentationError, ParameterError
from ..utils.logger import default_logger, timing_decorator

logger = default_logger.getChild("FiniteGroup")


class FiniteGroup:
    def __init__(self, presentation: PcPresentation, *, table_threshold: int | None = None,
                 memo_size: int | None = None):
        self.presentation = presentation
        self.name = presentation.name
        self.collector = Collector(presentation)
        self.n = presentation.length
        self.m = list(presentation.rel_orders)
        self.order = presentation.order
        self.prime = presentation.prime
        self.identity = 0
        self.logger = logger
        self.strides = [1] * self.n
        for i in range(self.n - 2, -1, -1):
            self.strides[i] = self.strides[i + 1] * self.m[i + 1]
        self.table_threshold = GROUP_SETTINGS["TABLE_THRESHOLD"] if table_threshold is None else table_threshold
        self._right: list[list[int]] | None = None
        self._last: list[int] | None = None
        self._table: np.ndarray | None = None
        self._inverse: list[int] | None = None
        self._conj: list[list[int]] | None = None
        self._power_map: list[int] | None = None
        self._orders: list[int] | None = None
        self._class_of: np.ndarray | None = None
        self._classes: list[ElementSet] = []
        self._cyclic_conjugates: dict[int, ElementSet] = {}
        self.cache: dict[str, object] = {}
        self._chain_mul = lru_cache(maxsize=memo_size or GROUP_SETTINGS["MUL_MEMO"])(self._chain)

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} of order {self.order}>"

    # element indexing

    def vector(self, idx: int) -> ExponentVector:
        vec = []
        for stride, m in zip(self.strides, self.m):
            vec.append((idx // stride) % m)
        return tuple(vec)

    def index(self, vec: Sequence[int]) -> int:
        return sum(e * s for e, s in zip(vec, self.strides))

    def generator(self, i: int) -> int:
        return self.strides[i]

    @property
    def pc_generators(self) -> tuple[int, ...]:
        return tuple(self.strides)

    def elements(self) -> range:
        return range(self.order)

    def element(self, word: Word) -> int:
        """Index of a word in pc generators, negative exponents allowed"""
        return self.index(self.collector.collect(word))

    def evaluate(self, expr: Expr, bindings: dict[str, int] | None = None) -> int:
        """Evaluate an expression; Gen leaves are pc generators, Sym leaves come from bindings"""
        def resolve(leaf):
            if isinstance(leaf, Gen):
                return self.generator(leaf.index)
            if bindings is None or leaf.name not in bindings:
                raise ParameterError(f"unbound name {leaf.name!r}")
            return bindings[leaf.name]
        return evaluate(expr, self, resolve)

    def format_element(self, idx: int) -> str:
        p = self.presentation
        return p.format_word(tuple((i, e) for i, e in enumerate(self.vector(idx)) if e))

    # multiplication

    def _build_right_tables(self) -> None:
        """Right multiplication by every pc generator, one pass per generator from the last.

        With e = e' g_l (l the last nonzero letter of e) and l > i,
        e g_i = (e' g_i) g_l [g_l, g_i], so each entry costs a few lookups into
        tables already built.
        """
        N, n, m, strides = self.order, self.n, self.m, self.strides
        last = [-1] * N
        for idx in range(1, N):
            for l in range(n - 1, -1, -1):
                if (idx // strides[l]) % m[l]:
                    last[idx] = l
                    break
        power_tails = self.presentation.power_tails
        comm_tails = self.presentation.comm_tails
        right: list[list[int] | None] = [None] * n
        for i in range(n - 1, -1, -1):
            table = [0] * N
            stride, mi = strides[i], m[i]
            tails = {l: comm_tails.get((l, i), ()) for l in range(i + 1, n)}
            for idx in range(N):
                l = last[idx]
                if l <= i:
                    e = (idx // stride) % mi
                    if e + 1 < mi:
                        table[idx] = idx + stride
                        continue
                    x = idx - e * stride
                    for k, c in power_tails[i]:
                        for _ in range(c):
                            x = right[k][x]
                    table[idx] = x
                else:
                    x = right[l][table[idx - strides[l]]]
                    for k, c in tails[l]:
                        for _ in range(c):
                            x = right[k][x]
                    table[idx] = x
            right[i] = table
        self._right = right
        self._last = last

    @property
    def right_tables(self) -> list[list[int]]:
        if self._right is None:
            if self.order > GROUP_SETTINGS["MAX_ORDER"]:
                raise CapExceededError("group order", self.order, GROUP_SETTINGS["MAX_ORDER"])
            self._build_right_tables()
        return self._right

    @property
    def last_letter(self) -> list[int]:
        """Position of the last nonzero exponent of each element (-1 for the identity)"""
        self.right_tables
        return self._last

    @property
    def table(self) -> np.ndarray | None:
        """Full Cayley table, materialized only up to the table threshold"""
        if self._table is None and self.order <= self.table_threshold:
            right = [np.asarray(r, dtype=np.int32) for r in self.right_tables]
            last = self.last_letter
            table = np.empty((self.order, self.order), dtype=np.int32)
            table[:, 0] = np.arange(self.order, dtype=np.int32)
            for b in range(1, self.order):
                l = last[b]
                table[:, b] = right[l][table[:, b - self.strides[l]]]
            self._table = table
        return self._table

    def _chain(self, a: int, b: int) -> int:
        right = self.right_tables
        x = a
        for i, (stride, m) in enumerate(zip(self.strides, self.m)):
            e = (b // stride) % m
            if e:
                r = right[i]
                for _ in range(e):
                    x = r[x]
        return x

    def mul(self, a: int, b: int) -> int:
        table = self.table
        if table is not None:
            return int(table[a, b])
        return self._chain_mul(a, b)

    def inv(self, a: int) -> int:
        if self._inverse is None:
            self._inverse = self._build_inverses()
        return self._inverse[a]

    def _build_inverses(self) -> list[int]:
        table = self.table
        if table is not None:
            return np.argmax(table == self.identity, axis=1).tolist()
        right = self.right_tables
        inverse = [0] * self.order
        for a in range(self.order):
            x, result = a, 0
            for i, (stride, m) in enumerate(zip(self.strides, self.m)):
                b = (-((x // stride) % m)) % m
                for _ in range(b):
                    x = right[i][x]
                result += b * stride
            inverse[a] = result
        return inverse

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        result, base = self.identity, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def conj(self, a: int, h: int) -> int:
        """a^h = h^-1 a h"""
        return self.mul(self.mul(self.inv(h), a), h)

    def comm(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b"""
        return self.mul(self.inv(self.mul(b, a)), self.mul(a, b))

    def comm_left_normed(self, elements: Sequence[int]) -> int:
        result = elements[0]
        for e in elements[1:]:
            result = self.comm(result, e)
        return result

    # orders

    def _power_step(self) -> int:
        """Exponent used for the power map: p for p-groups, else walk by single steps"""
        return self.prime or 1

    @property
    def power_map(self) -> list[int]:
        if self._power_map is None:
            step = self._power_step()
            self._power_map = [self.power(a, step) for a in range(self.order)]
        return self._power_map

    def element_order(self, a: int) -> int:
        if self._orders is not None:
            return self._orders[a]
        if self.prime is None:
            x, k = a, 1
            while x != self.identity:
                x = self.mul(x, a)
                k += 1
            return k
        x, k = a, 1
        while x != self.identity:
            x = self.power(x, self.prime)
            k *= self.prime
        return k

    @timing_decorator(logger)
    def element_orders(self) -> list[int]:
        if self._orders is None:
            if self.prime is None:
                self._orders = [self.element_order(a) for a in range(self.order)]
            else:
                pm = self.power_map
                orders = [0] * self.order
                orders[self.identity] = 1
                for a in range(self.order):
                    chain = []
                    x = a
                    while orders[x] == 0:
                        chain.append(x)
                        x = pm[x]
                    o = orders[x]
                    for y in reversed(chain):
                        o *= self.prime
                        orders[y] = o
                self._orders = orders
        return self._orders

    def exponent(self) -> int:
        return max(self.element_orders())

    # conjugation

    @property
    def conjugation_tables(self) -> list[list[int]]:
        """Conjugation by each pc generator as a permutation of element indices"""
        if self._conj is None:
            tables = []
            for g, right in zip(self.pc_generators, self.right_tables):
                g_inv = self.inv(g)
                tables.append([self.mul(g_inv, right[a]) for a in range(self.order)])
            self._conj = tables
        return self._conj

    def _orbit(self, a: int) -> list[int]:
        tables = self.conjugation_tables
        seen = {a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for table in tables:
                y = table[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def conjugacy_class(self, a: int) -> ElementSet:
        if self._class_of is None:
            self._class_of = np.full(self.order, -1, dtype=np.int64)
        cid = int(self._class_of[a])
        if cid < 0:
            members = self._orbit(a)
            cid = len(self._classes)
            self._class_of[members] = cid
            self._classes.append(ElementSet.from_indices(self, members, label=f"class of {self.format_element(a)}"))
        return self._classes[cid]

    @timing_decorator(logger)
    def conjugacy_classes(self) -> list[ElementSet]:
        classes = {id(self.conjugacy_class(a)): self.conjugacy_class(a) for a in range(self.order)}
        return sorted(classes.values(), key=lambda c: c.members()[0])

    def cyclic_subgroup(self, a: int) -> list[int]:
        members = [self.identity]
        x = a
        while x != self.identity:
            members.append(x)
            x = self.mul(x, a)
        return members

    def cyclic_conjugates(self, a: int) -> ElementSet:
        """Union of the conjugates of <a>, shared by the whole conjugacy class of a"""
        cls = self.conjugacy_class(a)
        cid = int(self._class_of[a])
        found = self._cyclic_conjugates.get(cid)
        if found is None:
            mask = np.zeros(self.order, dtype=bool)
            for c in cls.members():
                if not mask[c]:
                    mask[self.cyclic_subgroup(c)] = True
            found = ElementSet(self, mask, label=f"conjugates of <{self.format_element(a)}>")
            self._cyclic_conjugates[cid] = found
        return found

    def class_id(self, a: int) -> int:
        self.conjugacy_class(a)
        return int(self._class_of[a])

    # axioms

    def verify_axioms(self, samples: int | None = None, seed: int = 0) -> bool:
        """Associativity and inverses; exhaustive for |G| <= 1000, sampled above"""
        if any(self.mul(a, self.inv(a)) != self.identity or self.mul(self.identity, a) != a
               for a in range(self.order)):
            return False
        if self.order <= 1000 and samples is None:
            if self.table is not None:
                t = self.table
                for a in range(self.order):
                    # (a b) c == a (b c) for all b, c at once
                    if not np.array_equal(t[t[a]], t[a][t]):
                        return False
                return True
            triples: Iterable[tuple[int, int, int]] = (
                (a, b, c) for a in range(self.order) for b in range(self.order) for c in range(self.order))
        else:
            rng = np.random.default_rng(seed)
            count = samples or GROUP_SETTINGS["SAMPLE_TRIPLES"]
            triples = rng.integers(0, self.order, size=(count, 3)).tolist()
        return all(self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)) for a, b, c in triples)


def enumerate_group(presentation: PcPresentation, cap: int | None = None, check: bool = True) -> FiniteGroup:
    """A FiniteGroup for a consistent presentation whose order is within the cap"""
    cap = GROUP_SETTINGS["MAX_ORDER"] if cap is None else cap
    if presentation.order > cap:
        raise CapExceededError(f"order of {presentation.name}", presentation.order, cap)
    if check:
        violation = consistency_check(presentation)
        if violation is not None:
            raise InconsistentPresentationError(violation)
    group = FiniteGroup(presentation)
    logger.debug(f"Enumerated {presentation.name} of order {group.order}")
    return group

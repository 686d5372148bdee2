from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Iterator

import numpy as np

if TYPE_CHECKING:
    from .finite_group import FiniteGroup


class ElementSet:
    """A subset of a FiniteGroup stored as a dense boolean mask over element indices.

    ``subgroup`` and ``normal`` are claims made by the constructing operation;
    ``generators`` is kept for subgroups so that conjugation and invariance
    checks can work on generators instead of every member.
    """

    __slots__ = ("group", "mask", "subgroup", "normal", "generators", "label", "_size")

    def __init__(self, group: FiniteGroup, mask: np.ndarray, *, subgroup: bool = False, normal: bool = False,
                 generators: Iterable[int] | None = None, label: str = ""):
        self.group = group
        self.mask = mask
        self.subgroup = subgroup or normal
        self.normal = normal
        self.generators = tuple(generators) if generators is not None else None
        self.label = label
        self._size: int | None = None

    @classmethod
    def from_indices(cls, group: FiniteGroup, indices: Iterable[int], **flags) -> ElementSet:
        mask = np.zeros(group.order, dtype=bool)
        mask[np.fromiter(indices, dtype=np.int64)] = True
        return cls(group, mask, **flags)

    @classmethod
    def whole(cls, group: FiniteGroup, label: str = "G") -> ElementSet:
        return cls(group, np.ones(group.order, dtype=bool), normal=True,
                   generators=group.pc_generators, label=label)

    @classmethod
    def trivial(cls, group: FiniteGroup, label: str = "1") -> ElementSet:
        return cls.from_indices(group, [group.identity], normal=True, generators=(), label=label)

    @property
    def size(self) -> int:
        if self._size is None:
            self._size = int(self.mask.sum())
        return self._size

    def __len__(self) -> int:
        return self.size

    def __contains__(self, idx: int) -> bool:
        return bool(self.mask[idx])

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def members(self) -> list[int]:
        return np.flatnonzero(self.mask).tolist()

    def __and__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.group, self.mask & other.mask,
                          subgroup=self.subgroup and other.subgroup, normal=self.normal and other.normal)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.group is other.group and bool(np.array_equal(self.mask, other.mask))

    def __hash__(self) -> int:
        return hash(self.mask.tobytes())

    def __le__(self, other: ElementSet) -> bool:
        return not bool((self.mask & ~other.mask).any())

    def __lt__(self, other: ElementSet) -> bool:
        return self <= other and self.size < other.size

    def is_trivial(self) -> bool:
        return self.size == 1 and bool(self.mask[self.group.identity])

    def smallest_nontrivial(self) -> int | None:
        """Least member other than the identity in the lexicographic element order"""
        mask = self.mask.copy()
        mask[self.group.identity] = False
        hits = np.flatnonzero(mask)
        return int(hits[0]) if hits.size else None

    def bits(self) -> int:
        """Members as a Python integer bitset (bit i set iff element i is a member)"""
        return int.from_bytes(np.packbits(self.mask, bitorder="little").tobytes(), "little")

    def __repr__(self) -> str:
        kind = "normal subgroup" if self.normal else "subgroup" if self.subgroup else "set"
        label = f" {self.label}" if self.label else ""
        return f"<{kind}{label} of size {self.size} in {self.group.name}>"

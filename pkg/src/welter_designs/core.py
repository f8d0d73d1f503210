"""Bitmask subsets of a ground set ``[v] = {0, ..., v-1}`` and permutations acting on them.

A subset is a plain ``int`` whose bit ``i`` is set iff ``i`` belongs to the subset.
Permutations act on the right: ``p ** pi`` is written ``pi(p)`` here, and
``compose(a, b)`` applies ``a`` first, then ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_V = 32


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements(mask: int) -> tuple[int, ...]:
    """Elements of ``mask`` in ascending order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subset_sum(mask: int) -> int:
    return sum(elements(mask))


def fmt_subset(mask: int) -> str:
    return "{" + ",".join(map(str, elements(mask))) + "}"


def check_ground(v: int) -> None:
    if not 0 <= v <= MAX_V:
        raise ValueError(f"ground set size v={v} outside 0..{MAX_V}")


def enumerate_k_subsets(v: int, k: int) -> list[int]:
    """All k-subsets of [v] as masks, in ascending mask order."""
    check_ground(v)
    if not 0 <= k <= v:
        raise ValueError(f"need 0 <= k <= v, got k={k}, v={v}")
    return sorted(mask_of(c) for c in combinations(range(v), k))


def iter_k_subsets(v: int, k: int) -> Iterator[int]:
    """Gosper's hack: k-subsets of [v] in ascending mask order without sorting."""
    check_ground(v)
    if k == 0:
        yield 0
        return
    if k > v:
        return
    m = (1 << k) - 1
    limit = 1 << v
    while m < limit:
        yield m
        low = m & -m
        ripple = m + low
        m = (((ripple ^ m) >> 2) // low) | ripple


@dataclass(frozen=True)
class Permutation:
    """A bijection of [v]; ``image[i]`` is the image of ``i``."""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"not a permutation: {self.image}")

    @property
    def v(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, v: int) -> Permutation:
        return cls(tuple(range(v)))

    @classmethod
    def transposition(cls, v: int, a: int, b: int) -> Permutation:
        img = list(range(v))
        img[a], img[b] = b, a
        return cls(tuple(img))

    @classmethod
    def from_map(cls, v: int, f) -> Permutation:
        return cls(tuple(f(i) for i in range(v)))

    def __call__(self, i: int) -> int:
        return self.image[i]

    def compose(self, other: Permutation) -> Permutation:
        """``self`` then ``other``: i -> other(self(i))."""
        return Permutation(tuple(other.image[j] for j in self.image))

    def __mul__(self, other: Permutation) -> Permutation:
        return self.compose(other)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.image)):
            if start in seen or self.image[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.image[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.image[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def subset_image(mask: int, pi: Permutation | Sequence[int]) -> int:
    img = pi.image if isinstance(pi, Permutation) else pi
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << img[i]
        mask >>= 1
        i += 1
    return out


def swap_adjacent(mask: int, i: int) -> int:
    """Image of ``mask`` under the transposition (i i+1)."""
    if ((mask >> i) ^ (mask >> (i + 1))) & 1:
        return mask ^ (3 << i)
    return mask


def adjacent_transpositions(v: int) -> list[Permutation]:
    if v < 2:
        raise ValueError("need v >= 2")
    return [Permutation.transposition(v, i, i + 1) for i in range(v - 1)]

"""Finite permutations and the block permutations used by the prop axioms."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _all_perms
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0, ..., n-1}, stored as its image tuple."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if sorted(self.image) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {self.image}")

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """other after self: (self.then(other))(i) = other(self(i))."""
        if self.size != other.size:
            raise ValueError("size mismatch")
        return Permutation(tuple(other(self(i)) for i in range(self.size)))

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Group product: (p * q)(i) = p(q(i))."""
        return other.then(self)

    def apply(self, xs: Sequence) -> tuple:
        """Reindex so that result[i] = xs[self(i)]."""
        return tuple(xs[self(i)] for i in range(self.size))

    def is_identity(self) -> bool:
        return all(self(i) == i for i in range(self.size))

    def one_line(self) -> str:
        return "[" + ",".join(str(i + 1) for i in self.image) + "]"


def identity_perm(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


def block_transposition(x: int, y: int) -> Permutation:
    """The permutation on x+y letters swapping the first block of y letters
    past the following block of x letters, each block kept in increasing order.
    """
    image = [x + i for i in range(y)] + [i for i in range(x)]
    return Permutation(tuple(image))


def block_sum(p: Permutation, q: Permutation) -> Permutation:
    """p acting on the first block, q on the second."""
    n = p.size
    return Permutation(p.image + tuple(n + j for j in q.image))


def block_permutation(sigma: Permutation, sizes: Sequence[int]) -> Permutation:
    """Permute contiguous blocks of the given sizes: the j-th block moves,
    in order, to wherever sigma routes position j."""
    n = len(sizes)
    inv = sigma.inverse()
    new_sizes = [sizes[inv(i)] for i in range(n)]
    off_old = [0] * n
    off_new = [0] * n
    for j in range(1, n):
        off_old[j] = off_old[j - 1] + sizes[j - 1]
        off_new[j] = off_new[j - 1] + new_sizes[j - 1]
    image = [0] * sum(sizes)
    for j in range(n):
        for k in range(sizes[j]):
            image[off_old[j] + k] = off_new[sigma(j)] + k
    return Permutation(tuple(image))


def all_permutations(n: int) -> Iterator[Permutation]:
    for image in _all_perms(range(n)):
        yield Permutation(image)


def from_cycles(n: int, cycles: Sequence[Sequence[int]]) -> Permutation:
    """Build a permutation of size n from 0-based cycles."""
    image = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            image[a] = b
    return Permutation(tuple(image))

"""Colors, profiles, and megagraphs with free two-sided symmetric actions.

A megagraph packages a color set and a family of generating arrows, each
with an ordered input and output profile.  The symmetric bimodule structure
on the arrows is always the free one on the named generators, so an abstract
arrow is a triple (tau, generator, sigma).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .perms import Permutation, all_permutations, identity_perm

Color = str


@dataclass(frozen=True)
class Profile:
    """Ordered lists of input and output colors."""

    inputs: tuple[Color, ...]
    outputs: tuple[Color, ...]

    @property
    def arity(self) -> tuple[int, int]:
        return (len(self.inputs), len(self.outputs))

    def __str__(self):
        return f"({','.join(self.inputs)};{','.join(self.outputs)})"


@dataclass(frozen=True)
class Megagraph:
    """A color set together with named generator arrows."""

    objects: frozenset[Color]
    generators: tuple[tuple[str, Profile], ...]

    def __post_init__(self):
        # normalize generator order so structural equality is name-order free
        object.__setattr__(
            self, "generators", tuple(sorted(self.generators, key=lambda g: g[0]))
        )

    @property
    def gen_profiles(self) -> dict[str, Profile]:
        return dict(self.generators)

    def profile_of(self, name: str) -> Profile:
        for g, p in self.generators:
            if g == name:
                return p
        raise KeyError(f"unknown generator {name!r}")


def make_megagraph(objects, generators) -> Megagraph:
    """Build a megagraph from any iterables of colors and (name, profile)."""
    return Megagraph(frozenset(objects), tuple(generators))


def validate_megagraph(m: Megagraph) -> list[str]:
    """Return a list of invariant violations (empty = ok)."""
    violations = []
    seen = set()
    for name, prof in m.generators:
        if name in seen:
            violations.append(f"duplicate name {name}")
        seen.add(name)
        for c in prof.inputs + prof.outputs:
            if c not in m.objects:
                violations.append(f"undeclared color {c} in generator {name}")
    return violations


def corolla_megagraph(n: int, m: int) -> Megagraph:
    """The megagraph modeling the one-vertex graph with n inputs, m outputs."""
    if n < 0 or m < 0:
        raise ValueError("arities must be nonnegative")
    ins = tuple(f"a{i + 1}" for i in range(n))
    outs = tuple(f"b{k + 1}" for k in range(m))
    return make_megagraph(ins + outs, [("e", Profile(ins, outs))])


@dataclass(frozen=True)
class AbstractArrow:
    """An element (tau, generator, sigma) of the free bimodule on a generator."""

    tau: Permutation
    gen: str
    sigma: Permutation

    def act_left(self, tau: Permutation) -> "AbstractArrow":
        return AbstractArrow(tau * self.tau, self.gen, self.sigma)

    def act_right(self, sigma: Permutation) -> "AbstractArrow":
        return AbstractArrow(self.tau, self.gen, self.sigma * sigma)

    def source(self, m: Megagraph) -> tuple[Color, ...]:
        """s(tau.g.sigma) = s(g).sigma"""
        return self.sigma.apply(m.profile_of(self.gen).inputs)

    def target(self, m: Megagraph) -> tuple[Color, ...]:
        """t(tau.g.sigma) = tau.t(g)"""
        return self.tau.inverse().apply(m.profile_of(self.gen).outputs)


def generator_arrow(m: Megagraph, name: str) -> AbstractArrow:
    prof = m.profile_of(name)
    return AbstractArrow(
        identity_perm(len(prof.outputs)), name, identity_perm(len(prof.inputs))
    )


def orbit(m: Megagraph, name: str) -> Iterator[AbstractArrow]:
    """All abstract arrows in the free orbit of one generator."""
    prof = m.profile_of(name)
    for tau, sigma in product(
        all_permutations(len(prof.outputs)), all_permutations(len(prof.inputs))
    ):
        yield AbstractArrow(tau, name, sigma)

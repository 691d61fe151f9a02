"""Evaluate a wiring diagram in any prop-structured target.

A target supplies identity/generator/permutation values plus the two
compositions; evaluation sweeps the diagram in topological order, so any
lawful target assigns equal values to isomorphic diagrams.
"""

from __future__ import annotations

from .diagrams import DiagramError, WiringDiagram
from .perms import Permutation, identity_perm


class Target:
    """Interface for evaluation targets.  Colors are recolored via color_of."""

    def color_of(self, c):
        return c

    def id_value(self, colors):
        raise NotImplementedError

    def gen_value(self, name, profile):
        raise NotImplementedError

    def perm_value(self, perm: Permutation, colors):
        """Value of the vertex-free diagram routing wire j to output perm(j)."""
        raise NotImplementedError

    def vcomp(self, f, g):
        raise NotImplementedError

    def hcomp(self, f, g):
        raise NotImplementedError


def evaluate(d: WiringDiagram, target: Target):
    """Interpret d in the target; returns the target's value for d."""
    order = d.topo_order()
    # frontier: list of (source port, color) for live wires
    frontier = [(("in", i), d.inputs[i]) for i in range(len(d.inputs))]
    value = target.id_value([target.color_of(c) for c in d.inputs])
    for v in order:
        prof = d.vertex_profile(v)
        feeds = [d.source_of(("vi", v, s)) for s in range(len(prof.inputs))]
        pos = []
        for src in feeds:
            for idx, (p, _) in enumerate(frontier):
                if p == src:
                    pos.append(idx)
                    break
            else:
                raise DiagramError(f"dangling source {src} for vertex {v}")
        rest = [i for i in range(len(frontier)) if i not in pos]
        image = [0] * len(frontier)
        for j, p in enumerate(pos):
            image[p] = j
        for j, p in enumerate(rest):
            image[p] = len(pos) + j
        perm = Permutation(tuple(image))
        if not perm.is_identity():
            value = target.vcomp(
                target.perm_value(perm, [target.color_of(c) for _, c in frontier]),
                value,
            )
        rest_colors = [frontier[p][1] for p in rest]
        gen_v = target.gen_value(d.vertices[v], prof)
        if rest_colors:
            step = target.hcomp(
                gen_v, target.id_value([target.color_of(c) for c in rest_colors])
            )
        else:
            step = gen_v
        value = target.vcomp(step, value)
        frontier = [
            (("vo", v, s), prof.outputs[s]) for s in range(len(prof.outputs))
        ] + [(frontier[p][0], frontier[p][1]) for p in rest]
    # route frontier wires to boundary outputs
    image = [0] * len(frontier)
    for idx, (p, _) in enumerate(frontier):
        dst = d.target_of(p)
        if dst[0] != "out":
            raise DiagramError(f"wire {p} does not reach the boundary")
        image[idx] = dst[1]
    perm = Permutation(tuple(image))
    if not perm.is_identity():
        value = target.vcomp(
            target.perm_value(perm, [target.color_of(c) for _, c in frontier]), value
        )
    return value


class FreeTarget(Target):
    """Evaluate back into wiring diagrams (a sanity target: evaluation is the
    identity up to isomorphism)."""

    def __init__(self, gen_profiles):
        self.gen_profiles = gen_profiles

    def id_value(self, colors):
        from .diagrams import identity_diagram

        return identity_diagram(colors)

    def gen_value(self, name, profile):
        from .colors import make_megagraph
        from .diagrams import generator_diagram

        mega = make_megagraph(
            set(profile.inputs) | set(profile.outputs), [(name, profile)]
        )
        return generator_diagram(mega, name)

    def perm_value(self, perm, colors):
        from .diagrams import permutation_diagram

        return permutation_diagram(perm, colors)

    def vcomp(self, f, g):
        from .diagrams import compose_vertical

        return compose_vertical(f, g)

    def hcomp(self, f, g):
        from .diagrams import compose_horizontal

        return compose_horizontal(f, g)


class RecoloringTarget(FreeTarget):
    """Diagram target that renames colors and substitutes generators;
    evaluating with it computes the image of a diagram under a hom whose
    generator images are diagrams."""

    def __init__(self, color_map, gen_images, gen_profiles):
        super().__init__(gen_profiles)
        self.cmap = dict(color_map)
        self.gen_images = dict(gen_images)

    def color_of(self, c):
        return self.cmap.get(c, c)

    def gen_value(self, name, profile):
        if name not in self.gen_images:
            raise DiagramError(f"no image for generator {name}")
        return self.gen_images[name]

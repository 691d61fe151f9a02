"""Wiring diagrams: morphisms of free props on a megagraph.

A diagram is a boundary-ordered acyclic port graph.  Ports are

    ("in", i)      boundary input i          (source of exactly one edge)
    ("out", k)     boundary output k         (target of exactly one edge)
    ("vi", v, s)   input slot s of vertex v  (target of exactly one edge)
    ("vo", v, s)   output slot s of vertex v (source of exactly one edge)

Vertices carry generator names; each generator is stored in reference port
order, so the symmetric bimodule freedom lives entirely in the wiring.
Equality of free-prop morphisms is decided by a canonical labeling of the
vertex set (boundary ports are fixed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .colors import Color, Megagraph, Profile
from .perms import Permutation, identity_perm

Port = tuple  # ("in", i) | ("out", k) | ("vi", v, s) | ("vo", v, s)
Edge = tuple  # (src: Port, dst: Port)


class DiagramError(ValueError):
    pass


@dataclass
class WiringDiagram:
    inputs: tuple[Color, ...]
    outputs: tuple[Color, ...]
    vertices: dict[int, str]            # vertex id -> generator name
    edges: frozenset[Edge]
    gen_profiles: dict[str, Profile]    # profiles of the generators used
    _cert: Optional[str] = field(default=None, repr=False, compare=False)

    @property
    def profile(self) -> Profile:
        return Profile(self.inputs, self.outputs)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def vertex_profile(self, v: int) -> Profile:
        return self.gen_profiles[self.vertices[v]]

    def port_color(self, port: Port) -> Color:
        kind = port[0]
        if kind == "in":
            return self.inputs[port[1]]
        if kind == "out":
            return self.outputs[port[1]]
        if kind == "vi":
            return self.vertex_profile(port[1]).inputs[port[2]]
        if kind == "vo":
            return self.vertex_profile(port[1]).outputs[port[2]]
        raise DiagramError(f"bad port {port!r}")

    # -- validation ---------------------------------------------------------

    def violations(self) -> list[str]:
        out = []
        src_seen: dict[Port, int] = {}
        dst_seen: dict[Port, int] = {}
        for src, dst in self.edges:
            if src[0] not in ("in", "vo"):
                out.append(f"edge runs from non-source port {src}")
                continue
            if dst[0] not in ("out", "vi"):
                out.append(f"edge runs into non-target port {dst}")
                continue
            for p in (src, dst):
                if p[0] in ("vi", "vo"):
                    v = p[1]
                    if v not in self.vertices:
                        out.append(f"edge touches unknown vertex {v}")
                        break
                    prof = self.vertex_profile(v)
                    bound = len(prof.inputs) if p[0] == "vi" else len(prof.outputs)
                    if not 0 <= p[2] < bound:
                        out.append(f"slot out of range at {p}")
                        break
                else:
                    bound = len(self.inputs) if p[0] == "in" else len(self.outputs)
                    if not 0 <= p[1] < bound:
                        out.append(f"boundary index out of range at {p}")
                        break
            else:
                src_seen[src] = src_seen.get(src, 0) + 1
                dst_seen[dst] = dst_seen.get(dst, 0) + 1
                if self.port_color(src) != self.port_color(dst):
                    out.append(f"color mismatch on edge {src}->{dst}")
        for i in range(len(self.inputs)):
            if src_seen.get(("in", i), 0) != 1:
                out.append(f"boundary input {i} not wired exactly once")
        for k in range(len(self.outputs)):
            if dst_seen.get(("out", k), 0) != 1:
                out.append(f"boundary output {k} not wired exactly once")
        for v, g in self.vertices.items():
            if g not in self.gen_profiles:
                out.append(f"vertex {v} uses unknown generator {g}")
                continue
            prof = self.gen_profiles[g]
            for s in range(len(prof.inputs)):
                if dst_seen.get(("vi", v, s), 0) != 1:
                    out.append(f"input slot {s} of vertex {v} not wired exactly once")
            for s in range(len(prof.outputs)):
                if src_seen.get(("vo", v, s), 0) != 1:
                    out.append(f"output slot {s} of vertex {v} not wired exactly once")
        if self._has_cycle():
            out.append("vertex graph has a cycle")
        return out

    def check(self) -> "WiringDiagram":
        errs = self.violations()
        if errs:
            raise DiagramError("; ".join(errs))
        return self

    def _has_cycle(self) -> bool:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for src, dst in self.edges:
            if src[0] == "vo" and dst[0] == "vi" and src[1] in adj and dst[1] in adj:
                adj[src[1]].add(dst[1])
        seen: dict[int, int] = {}  # 1 = on stack, 2 = done

        def visit(v):
            seen[v] = 1
            for w in adj[v]:
                if seen.get(w) == 1:
                    return True
                if w not in seen and visit(w):
                    return True
            seen[v] = 2
            return False

        return any(v not in seen and visit(v) for v in adj)

    # -- structural helpers -------------------------------------------------

    def edge_from(self, src: Port) -> Edge:
        for e in self.edges:
            if e[0] == src:
                return e
        raise DiagramError(f"no edge out of {src}")

    def edge_into(self, dst: Port) -> Edge:
        for e in self.edges:
            if e[1] == dst:
                return e
        raise DiagramError(f"no edge into {dst}")

    def source_of(self, dst: Port) -> Port:
        return self.edge_into(dst)[0]

    def target_of(self, src: Port) -> Port:
        return self.edge_from(src)[1]

    def topo_order(self) -> list[int]:
        """Deterministic topological order of vertices (by canonical ids)."""
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        indeg = {v: 0 for v in self.vertices}
        for src, dst in self.edges:
            if src[0] == "vo" and dst[0] == "vi":
                if dst[1] not in adj[src[1]]:
                    adj[src[1]].add(dst[1])
                    indeg[dst[1]] += 1
        ready = sorted(v for v in self.vertices if indeg[v] == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            changed = False
            for w in sorted(adj[v]):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
                    changed = True
            if changed:
                ready.sort()
        if len(order) != len(self.vertices):
            raise DiagramError("cycle detected in topo_order")
        return order

    def relabeled(self, mapping: dict[int, int]) -> "WiringDiagram":
        def mp(p: Port) -> Port:
            if p[0] in ("vi", "vo"):
                return (p[0], mapping[p[1]], p[2])
            return p

        return WiringDiagram(
            self.inputs,
            self.outputs,
            {mapping[v]: g for v, g in self.vertices.items()},
            frozenset((mp(s), mp(d)) for s, d in self.edges),
            dict(self.gen_profiles),
        )


# -- constructors -----------------------------------------------------------


def identity_diagram(colors: Iterable[Color]) -> WiringDiagram:
    colors = tuple(colors)
    edges = frozenset((("in", i), ("out", i)) for i in range(len(colors)))
    return WiringDiagram(colors, colors, {}, edges, {})


def permutation_diagram(perm: Permutation, in_colors: Iterable[Color]) -> WiringDiagram:
    """Vertex-free diagram routing input j to output perm(j)."""
    in_colors = tuple(in_colors)
    if perm.size != len(in_colors):
        raise DiagramError("permutation size mismatch")
    outputs = perm.inverse().apply(in_colors)
    edges = frozenset((("in", j), ("out", perm(j))) for j in range(perm.size))
    return WiringDiagram(in_colors, outputs, {}, edges, {})


def generator_diagram(m: Megagraph, name: str) -> WiringDiagram:
    prof = m.profile_of(name)
    edges = set()
    for i in range(len(prof.inputs)):
        edges.add((("in", i), ("vi", 0, i)))
    for k in range(len(prof.outputs)):
        edges.add((("vo", 0, k), ("out", k)))
    return WiringDiagram(
        prof.inputs, prof.outputs, {0: name}, frozenset(edges), {name: prof}
    )


# -- prop structure ---------------------------------------------------------


def _merged_profiles(f: WiringDiagram, g: WiringDiagram) -> dict[str, Profile]:
    merged = dict(f.gen_profiles)
    for name, prof in g.gen_profiles.items():
        if name in merged and merged[name] != prof:
            raise DiagramError(f"generator {name} has conflicting profiles")
        merged[name] = prof
    return merged


def compose_vertical(f: WiringDiagram, g: WiringDiagram) -> WiringDiagram:
    """f after g: requires outputs(g) == inputs(f)."""
    if g.outputs != f.inputs:
        raise DiagramError(
            f"cannot compose: middle profiles differ "
            f"({','.join(g.outputs)}) vs ({','.join(f.inputs)})"
        )
    shift = (max(g.vertices) + 1) if g.vertices else 0
    fmap = {v: v + shift for v in f.vertices}
    f2 = f.relabeled(fmap)
    vertices = dict(g.vertices)
    vertices.update(f2.vertices)

    # entry point of g's output k / exit point of f's input k
    g_src = {k: g.source_of(("out", k)) for k in range(len(g.outputs))}
    f_dst = {k: f2.target_of(("in", k)) for k in range(len(f.inputs))}

    edges = set()
    for src, dst in g.edges:
        if dst[0] != "out":
            edges.add((src, dst))
    for src, dst in f2.edges:
        if src[0] != "in":
            edges.add((src, dst))
    # splice, chasing chains of pass-through wires
    for k in range(len(g.outputs)):
        src = g_src[k]
        dst = f_dst[k]
        # a wire g-input -> g-output spliced onto f-input -> f-output may chain;
        # here the chain has length one on each side, so direct splice suffices
        edges.add((src, dst))
    d = WiringDiagram(
        g.inputs, f.outputs, vertices, frozenset(edges), _merged_profiles(f, g)
    )
    return d.check()


def compose_horizontal(f: WiringDiagram, g: WiringDiagram) -> WiringDiagram:
    """Disjoint union with f's boundary first."""
    shift = (max(f.vertices) + 1) if f.vertices else 0
    g2 = g.relabeled({v: v + shift for v in g.vertices})
    n, m = len(f.inputs), len(f.outputs)

    def mp(p: Port) -> Port:
        if p[0] == "in":
            return ("in", p[1] + n)
        if p[0] == "out":
            return ("out", p[1] + m)
        return p

    vertices = dict(f.vertices)
    vertices.update(g2.vertices)
    edges = set(f.edges)
    for src, dst in g2.edges:
        edges.add((mp(src), mp(dst)))
    return WiringDiagram(
        f.inputs + g.inputs,
        f.outputs + g.outputs,
        vertices,
        frozenset(edges),
        _merged_profiles(f, g2),
    )


def act_input(sigma: Permutation, f: WiringDiagram) -> WiringDiagram:
    """Rewire so that input wire j lands at boundary position sigma(j)."""
    if sigma.size != len(f.inputs):
        raise DiagramError("input action size mismatch")

    def mp(p: Port) -> Port:
        if p[0] == "in":
            return ("in", sigma(p[1]))
        return p

    return WiringDiagram(
        sigma.inverse().apply(f.inputs),
        f.outputs,
        dict(f.vertices),
        frozenset((mp(s), d) for s, d in f.edges),
        dict(f.gen_profiles),
    )


def act_output(tau: Permutation, f: WiringDiagram) -> WiringDiagram:
    """Rewire so that boundary position k receives output wire tau(k)."""
    if tau.size != len(f.outputs):
        raise DiagramError("output action size mismatch")
    inv = tau.inverse()

    def mp(p: Port) -> Port:
        if p[0] == "out":
            return ("out", inv(p[1]))
        return p

    return WiringDiagram(
        f.inputs,
        tau.apply(f.outputs),
        dict(f.vertices),
        frozenset((s, mp(d)) for s, d in f.edges),
        dict(f.gen_profiles),
    )


# -- canonical labeling -----------------------------------------------------


def _vertex_signature(d: WiringDiagram, cls: dict[int, int], v: int):
    prof = d.vertex_profile(v)
    ins = []
    for s in range(len(prof.inputs)):
        src = d.source_of(("vi", v, s))
        if src[0] == "in":
            ins.append(("b", src[1]))
        else:
            ins.append(("v", cls[src[1]], src[2]))
    outs = []
    for s in range(len(prof.outputs)):
        dst = d.target_of(("vo", v, s))
        if dst[0] == "out":
            outs.append(("b", dst[1]))
        else:
            outs.append(("v", cls[dst[1]], dst[2]))
    return (d.vertices[v], tuple(ins), tuple(outs))


def _refine(d: WiringDiagram, cells: list[list[int]]) -> list[list[int]]:
    while True:
        cls = {}
        for i, cell in enumerate(cells):
            for v in cell:
                cls[v] = i
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sigs = {}
            for v in cell:
                sigs.setdefault(_vertex_signature(d, cls, v), []).append(v)
            parts = [sigs[k] for k in sorted(sigs.keys())]
            if len(parts) > 1:
                changed = True
            new_cells.extend(parts)
        cells = new_cells
        if not changed:
            return cells


def _serialize(d: WiringDiagram, order: list[int]) -> str:
    relab = {v: i for i, v in enumerate(order)}
    parts = [
        "P", ",".join(d.inputs), ";", ",".join(d.outputs),
        "V", ";".join(d.vertices[v] for v in order),
    ]

    def key(p: Port):
        if p[0] in ("vi", "vo"):
            return (p[0], relab[p[1]], p[2])
        return p

    edges = sorted((key(s), key(d_)) for s, d_ in d.edges)
    parts.append("E" + repr(edges))
    return "|".join(parts)


def _canonical_order(d: WiringDiagram, cells: list[list[int]]) -> list[int]:
    cells = _refine(d, cells)
    target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
    if target is None:
        return [c[0] for c in cells]
    best_order = None
    best_cert = None
    for v in sorted(cells[target]):
        branch = (
            cells[:target]
            + [[v], [w for w in cells[target] if w != v]]
            + cells[target + 1:]
        )
        order = _canonical_order(d, branch)
        cert = _serialize(d, order)
        if best_cert is None or cert < best_cert:
            best_cert, best_order = cert, order
    return best_order


def canonical_form(d: WiringDiagram):
    """Canonical representative, certificate, and the vertex relabeling.

    Two diagrams have equal certificates iff they are isomorphic as
    boundary-ordered decorated graphs.
    """
    errs = d.violations()
    if errs:
        raise DiagramError("; ".join(errs))
    if not d.vertices:
        order = []
    else:
        by_gen: dict[str, list[int]] = {}
        for v, g in d.vertices.items():
            by_gen.setdefault(g, []).append(v)
        cells = [sorted(by_gen[g]) for g in sorted(by_gen)]
        order = _canonical_order(d, cells)
    relab = {v: i for i, v in enumerate(order)}
    canon = d.relabeled(relab)
    cert = _serialize(d, order)
    canon._cert = cert
    return canon, cert, relab


def certificate(d: WiringDiagram) -> str:
    if d._cert is None:
        _, cert, _ = canonical_form(d)
        d._cert = cert
    return d._cert


def diagrams_equal(f: WiringDiagram, g: WiringDiagram) -> bool:
    if f.inputs != g.inputs or f.outputs != g.outputs:
        return False
    return certificate(f) == certificate(g)


# -- serialization ----------------------------------------------------------


def diagram_to_json(d: WiringDiagram) -> dict:
    return {
        "inputs": list(d.inputs),
        "outputs": list(d.outputs),
        "vertices": [{"id": v, "gen": g} for v, g in sorted(d.vertices.items())],
        "edges": sorted([list(s), list(t)] for s, t in d.edges),
        "generators": [
            {"name": n, "inputs": list(p.inputs), "outputs": list(p.outputs)}
            for n, p in sorted(d.gen_profiles.items())
        ],
    }


def diagram_from_json(data: dict) -> WiringDiagram:
    profs = {
        g["name"]: Profile(tuple(g["inputs"]), tuple(g["outputs"]))
        for g in data["generators"]
    }
    return WiringDiagram(
        tuple(data["inputs"]),
        tuple(data["outputs"]),
        {v["id"]: v["gen"] for v in data["vertices"]},
        frozenset((tuple(s), tuple(t)) for s, t in data["edges"]),
        profs,
    ).check()


def diagram_to_dot(d: WiringDiagram, name: str = "diagram") -> str:
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=TB;"]
    lines.append("  { rank=source;")
    for i in range(len(d.inputs)):
        lines.append(f'    in{i} [shape=plaintext,label="in {i + 1}:{d.inputs[i]}"];')
    lines.append("  }")
    lines.append("  { rank=sink;")
    for k in range(len(d.outputs)):
        lines.append(
            f'    out{k} [shape=plaintext,label="out {k + 1}:{d.outputs[k]}"];'
        )
    lines.append("  }")
    for v, g in sorted(d.vertices.items()):
        lines.append(f'  v{v} [shape=box,label="{g}"];')

    def node(p: Port) -> str:
        if p[0] == "in":
            return f"in{p[1]}"
        if p[0] == "out":
            return f"out{p[1]}"
        return f"v{p[1]}"

    for src, dst in sorted(d.edges):
        attrs = [f'label="{d.port_color(src)}"']
        if src[0] == "vo":
            attrs.append(f"taillabel={src[2] + 1}")
        if dst[0] == "vi":
            attrs.append(f"headlabel={dst[2] + 1}")
        lines.append(f"  {node(src)} -> {node(dst)} [{','.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines)


# -- brute-force isomorphism oracle (kept independent of canonical_form) ----


def isomorphic_brute_force(f: WiringDiagram, g: WiringDiagram) -> bool:
    """Decide isomorphism by exhaustive search over vertex bijections."""
    from itertools import permutations

    if f.inputs != g.inputs or f.outputs != g.outputs:
        return False
    fv, gv = sorted(f.vertices), sorted(g.vertices)
    if len(fv) != len(gv):
        return False
    if sorted(f.vertices.values()) != sorted(g.vertices.values()):
        return False
    for image in permutations(gv):
        mapping = dict(zip(fv, image))
        if any(f.vertices[v] != g.vertices[mapping[v]] for v in fv):
            continue

        def mp(p: Port) -> Port:
            if p[0] in ("vi", "vo"):
                return (p[0], mapping[p[1]], p[2])
            return p

        if frozenset((mp(s), mp(d)) for s, d in f.edges) == g.edges:
            return True
    return False

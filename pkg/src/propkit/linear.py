"""Exact-rational matrix semantics for presented props.

A linear model assigns a dimension to each color and a matrix to each
generator; a diagram of profile (a_1..a_n; b_1..b_m) evaluates to a matrix
of shape (prod dim(b_j)) x (prod dim(a_i)) with empty products equal to 1.
Vertical composition is matrix product, horizontal composition is the
Kronecker product, and wire permutations permute lexicographically ordered
tensor factors.  All arithmetic is in fractions.Fraction, so evaluation and
relation checking are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product

from .colors import Megagraph, Profile, make_megagraph
from .diagrams import (
    WiringDiagram,
    compose_horizontal,
    compose_vertical,
    generator_diagram,
    identity_diagram,
    permutation_diagram,
)
from .interp import Target, evaluate
from .perms import Permutation
from .presentations import PropPresentation, Relation


class LinearModelError(ValueError):
    pass


# matrices are tuples of tuples of Fraction (row major)

def matrix(rows):
    """Normalize a row-major list of lists into an exact matrix."""
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if len({len(r) for r in out}) > 1:
        raise LinearModelError("ragged matrix")
    return out


def matrix_shape(M):
    return (len(M), len(M[0]) if M else 0)


def identity_matrix(n):
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def matmul(A, B):
    if matrix_shape(A)[1] != matrix_shape(B)[0]:
        raise LinearModelError(
            f"shape mismatch {matrix_shape(A)} . {matrix_shape(B)}"
        )
    cols = list(zip(*B)) if B else []
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
        for row in A
    )


def kron(A, B):
    """Kronecker product; the first factor is the most significant index."""
    ra, ca = matrix_shape(A)
    rb, cb = matrix_shape(B)
    return tuple(
        tuple(A[i // rb][j // cb] * B[i % rb][j % cb] for j in range(ca * cb))
        for i in range(ra * rb)
    )


def perm_matrix(perm: Permutation, dims):
    """The matrix routing tensor factor j (of dimension dims[j]) to slot
    perm(j), on lexicographically ordered bases."""
    dims = list(dims)
    if len(dims) != perm.size:
        raise LinearModelError("permutation size does not match factor count")
    out_dims = [0] * len(dims)
    for j, d in enumerate(dims):
        out_dims[perm(j)] = d
    n = reduce(lambda a, b: a * b, dims, 1)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for idx in product(*[range(d) for d in dims]):
        col = 0
        for j, d in enumerate(dims):
            col = col * d + idx[j]
        row = 0
        for k, d in enumerate(out_dims):
            row = row * d + idx[perm.inverse()(k)]
        rows[row][col] = Fraction(1)
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class LinearModel:
    """Dimensions per color and a matrix per generator name."""

    dims: dict
    mats: dict

    def dim(self, color) -> int:
        try:
            return self.dims[color]
        except KeyError:
            raise LinearModelError(f"no dimension for color {color!r}")

    def space_dim(self, colors) -> int:
        return reduce(lambda a, c: a * self.dim(c), colors, 1)

    def profile_shape(self, profile: Profile):
        return (self.space_dim(profile.outputs), self.space_dim(profile.inputs))

    def violations(self, mega: Megagraph):
        errs = []
        for c in mega.objects:
            if c not in self.dims:
                errs.append(f"color {c!r} has no dimension")
            elif not (isinstance(self.dims[c], int) and self.dims[c] >= 1):
                errs.append(f"dimension of {c!r} must be a positive int")
        for name, prof in mega.generators:
            if name not in self.mats:
                errs.append(f"generator {name!r} has no matrix")
                continue
            got = matrix_shape(self.mats[name])
            want = self.profile_shape(prof)
            if got != want:
                errs.append(f"matrix for {name!r} has shape {got}, want {want}")
        return errs

    def check(self, mega: Megagraph) -> "LinearModel":
        errs = self.violations(mega)
        if errs:
            raise LinearModelError("; ".join(errs))
        return self


class LinearTarget(Target):
    def __init__(self, model: LinearModel):
        self.model = model

    def id_value(self, colors):
        return identity_matrix(self.model.space_dim(colors))

    def gen_value(self, name, profile):
        try:
            M = self.model.mats[name]
        except KeyError:
            raise LinearModelError(f"no matrix for generator {name!r}")
        if matrix_shape(M) != self.model.profile_shape(profile):
            raise LinearModelError(f"matrix for {name!r} has the wrong shape")
        return M

    def perm_value(self, perm, colors):
        return perm_matrix(perm, [self.model.dim(c) for c in colors])

    def vcomp(self, f, g):
        return matmul(f, g)

    def hcomp(self, f, g):
        return kron(f, g)


def evaluate_diagram(model: LinearModel, d: WiringDiagram):
    """The matrix of d; equal on isomorphic diagrams."""
    return evaluate(d, LinearTarget(model))


def check_model(model: LinearModel, P: PropPresentation) -> dict:
    """Evaluate both sides of every relation; failures carry the matrices."""
    model.check(P.base)
    report = {"relations": len(P.relations), "failures": []}
    for rel in P.relations:
        lhs = evaluate_diagram(model, rel.lhs)
        rhs = evaluate_diagram(model, rel.rhs)
        if lhs != rhs:
            report["failures"].append(
                {"relation": rel.name, "lhs": lhs, "rhs": rhs}
            )
    report["ok"] = not report["failures"]
    return report


def linear_separator(model: LinearModel):
    """A separating invariant for word-problem queries: the matrix of the
    diagram under the model.  Sound whenever the model satisfies the
    presentation's relations."""

    def sep(d: WiringDiagram):
        return evaluate_diagram(model, d)

    return sep


def trivial_model(mega: Megagraph) -> LinearModel:
    """Every color one-dimensional, every generator the 1x1 identity."""
    dims = {c: 1 for c in mega.objects}
    mats = {name: matrix([[1]]) for name, _ in mega.generators}
    return LinearModel(dims, mats).check(mega)


# ---------------------------------------------------------------------------
# built-in two-colored presentations

def entwining_presentation() -> PropPresentation:
    """Algebra color "a", coalgebra color "c", a distributive law
    psi : c (x) a -> a (x) c, with associativity, coassociativity, and the
    two compatibility axioms."""
    mega = make_megagraph(["a", "c"], [
        ("mu", Profile(("a", "a"), ("a",))),
        ("delta", Profile(("c",), ("c", "c"))),
        ("psi", Profile(("c", "a"), ("a", "c"))),
    ])
    mu = generator_diagram(mega, "mu")
    delta = generator_diagram(mega, "delta")
    psi = generator_diagram(mega, "psi")
    ia = identity_diagram(["a"])
    ic = identity_diagram(["c"])

    assoc = Relation(
        "mu.assoc",
        compose_vertical(mu, compose_horizontal(mu, ia)),
        compose_vertical(mu, compose_horizontal(ia, mu)),
    )
    coassoc = Relation(
        "delta.coassoc",
        compose_vertical(compose_horizontal(delta, ic), delta),
        compose_vertical(compose_horizontal(ic, delta), delta),
    )
    ent_mu = Relation(
        "psi.mu",
        compose_vertical(psi, compose_horizontal(ic, mu)),
        compose_vertical(
            compose_horizontal(mu, ic),
            compose_vertical(compose_horizontal(ia, psi),
                             compose_horizontal(psi, ia)),
        ),
    )
    ent_delta = Relation(
        "psi.delta",
        compose_vertical(compose_horizontal(ia, delta), psi),
        compose_vertical(
            compose_horizontal(psi, ic),
            compose_vertical(compose_horizontal(ic, psi),
                             compose_horizontal(delta, ia)),
        ),
    )
    return PropPresentation(mega, (assoc, coassoc, ent_mu, ent_delta)).check()


def module_algebra_presentation() -> PropPresentation:
    """A bialgebra color "h" acting on an algebra color "a" so that the
    action distributes over the multiplication through the comultiplication:
    x(ab) = sum (x1 a)(x2 b)."""
    mega = make_megagraph(["h", "a"], [
        ("mu_h", Profile(("h", "h"), ("h",))),
        ("delta_h", Profile(("h",), ("h", "h"))),
        ("mu_a", Profile(("a", "a"), ("a",))),
        ("act", Profile(("h", "a"), ("a",))),
    ])
    mu_h = generator_diagram(mega, "mu_h")
    delta_h = generator_diagram(mega, "delta_h")
    mu_a = generator_diagram(mega, "mu_a")
    act = generator_diagram(mega, "act")
    ih = identity_diagram(["h"])
    ia = identity_diagram(["a"])

    assoc_h = Relation(
        "mu_h.assoc",
        compose_vertical(mu_h, compose_horizontal(mu_h, ih)),
        compose_vertical(mu_h, compose_horizontal(ih, mu_h)),
    )
    coassoc_h = Relation(
        "delta_h.coassoc",
        compose_vertical(compose_horizontal(delta_h, ih), delta_h),
        compose_vertical(compose_horizontal(ih, delta_h), delta_h),
    )
    mid_hh = permutation_diagram(Permutation((1, 0)), ["h", "h"])
    bialg = Relation(
        "bialgebra",
        compose_vertical(delta_h, mu_h),
        compose_vertical(
            compose_horizontal(mu_h, mu_h),
            compose_vertical(
                compose_horizontal(ih, compose_horizontal(mid_hh, ih)),
                compose_horizontal(delta_h, delta_h),
            ),
        ),
    )
    assoc_a = Relation(
        "mu_a.assoc",
        compose_vertical(mu_a, compose_horizontal(mu_a, ia)),
        compose_vertical(mu_a, compose_horizontal(ia, mu_a)),
    )
    module = Relation(
        "module",
        compose_vertical(act, compose_horizontal(mu_h, ia)),
        compose_vertical(act, compose_horizontal(ih, act)),
    )
    # reorder h,h,a,a to h,a,h,a before the two actions
    shuffle = permutation_diagram(
        Permutation((0, 2, 1, 3)), ["h", "h", "a", "a"]
    )
    mod_alg = Relation(
        "module-algebra",
        compose_vertical(act, compose_horizontal(ih, mu_a)),
        compose_vertical(
            mu_a,
            compose_vertical(
                compose_horizontal(act, act),
                compose_vertical(
                    shuffle,
                    compose_horizontal(delta_h, compose_horizontal(ia, ia)),
                ),
            ),
        ),
    )
    rels = (assoc_h, coassoc_h, bialg, assoc_a, module, mod_alg)
    return PropPresentation(mega, rels).check()


def entwining_swap_model() -> LinearModel:
    """Two-dimensional entwining structure: componentwise multiplication,
    group-like comultiplication, and the tensor-factor swap as the
    distributive law (the only permutation matrix satisfying both axioms)."""
    mats = {
        "mu": matrix([[1, 0, 0, 0], [0, 0, 0, 1]]),
        "delta": matrix([[1, 0], [0, 0], [0, 0], [0, 1]]),
        "psi": perm_matrix(Permutation((1, 0)), [2, 2]),
    }
    return LinearModel({"a": 2, "c": 2}, mats)


def module_algebra_sign_model() -> LinearModel:
    """The group algebra of the two-element group acting on the plane by
    swapping coordinates; multiplication on the plane is componentwise."""
    mats = {
        "mu_h": matrix([[1, 0, 0, 1], [0, 1, 1, 0]]),
        "delta_h": matrix([[1, 0], [0, 0], [0, 0], [0, 1]]),
        "mu_a": matrix([[1, 0, 0, 0], [0, 0, 0, 1]]),
        "act": matrix([[1, 0, 0, 1], [0, 1, 1, 0]]),
    }
    return LinearModel({"h": 2, "a": 2}, mats)

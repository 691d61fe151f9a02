"""Finite simplicial sets with normal-form degeneracies.

A cell in dimension n is a pair (alpha, x): a monotone surjection
alpha: [n] ->> [m] applied to a nondegenerate m-simplex x (the unique
Eilenberg-Zilber form).  Only nondegenerate simplices are stored; faces of
a nondegenerate simplex are cells one dimension down.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

Cell = tuple  # (alpha: tuple[int, ...], simplex name)


def cell_dim(cell: Cell) -> int:
    return len(cell[0]) - 1


def is_nondegenerate(cell: Cell) -> bool:
    alpha = cell[0]
    return all(alpha[i] + 1 == alpha[i + 1] for i in range(len(alpha) - 1))


def _compose(outer, inner):
    """(outer . inner)(t) = outer[inner[t]]."""
    return tuple(outer[i] for i in inner)


def monotone_surjections(n: int, m: int):
    """All monotone surjections [n] ->> [m] as image tuples of length n+1."""
    if m > n or m < 0:
        return
    # choose the n-m positions t with alpha[t] == alpha[t+1]
    for rep in itertools.combinations(range(n), n - m):
        alpha = []
        v = 0
        for t in range(n + 1):
            alpha.append(v)
            if t not in rep:
                v += 1
        if alpha[-1] == m:
            yield tuple(alpha)


@dataclass
class FiniteSimplicialSet:
    simplices: dict[int, tuple[str, ...]]
    faces: dict[str, tuple[Cell, ...]]

    def __post_init__(self):
        self.dim_of = {}
        for d, names in self.simplices.items():
            for x in names:
                if x in self.dim_of:
                    raise ValueError(f"duplicate simplex name {x}")
                self.dim_of[x] = d

    @property
    def dimension(self) -> int:
        return max((d for d, xs in self.simplices.items() if xs), default=-1)

    def nondeg(self, d: int) -> tuple[str, ...]:
        return self.simplices.get(d, ())

    def cell_of(self, x: str) -> Cell:
        return (tuple(range(self.dim_of[x] + 1)), x)

    def normalize(self, beta, x: str) -> Cell:
        """The normal form of x . beta for monotone (not necessarily
        surjective) beta into [dim x]."""
        m = self.dim_of[x]
        image = set(beta)
        if len(image) == m + 1:
            return (tuple(beta), x)
        j = max(v for v in range(m + 1) if v not in image)
        beta2 = tuple(v if v < j else v - 1 for v in beta)
        gamma, y = self.faces[x][j]
        return self.normalize(_compose(gamma, beta2), y)

    def face(self, cell: Cell, i: int) -> Cell:
        alpha, x = cell
        beta = alpha[:i] + alpha[i + 1:]
        return self.normalize(beta, x)

    def cells(self, n: int) -> list[Cell]:
        out = []
        for m in range(n + 1):
            for x in self.nondeg(m):
                for alpha in monotone_surjections(n, m):
                    out.append((alpha, x))
        return out

    def vertices(self) -> tuple[str, ...]:
        return self.nondeg(0)

    def violations(self) -> list[str]:
        out = []
        for x, fs in self.faces.items():
            d = self.dim_of.get(x)
            if d is None:
                out.append(f"faces listed for unknown simplex {x}")
                continue
            if d == 0:
                if fs:
                    out.append(f"vertex {x} has faces")
                continue
            if len(fs) != d + 1:
                out.append(f"simplex {x} has {len(fs)} faces, wants {d + 1}")
                continue
            for c in fs:
                alpha, y = c
                if y not in self.dim_of or cell_dim(c) != d - 1:
                    out.append(f"face of {x} is not a ({d - 1})-cell")
        for d, names in self.simplices.items():
            for x in names:
                if d > 0 and x not in self.faces:
                    out.append(f"simplex {x} missing face list")
        if out:
            return out
        # simplicial identities on the stored faces
        for x in self.dim_of:
            d = self.dim_of[x]
            if d < 2:
                continue
            top = self.cell_of(x)
            for j in range(d + 1):
                for i in range(j):
                    if self.face(self.face(top, j), i) != \
                            self.face(self.face(top, i), j - 1):
                        out.append(f"simplicial identity fails at {x} (d{i} d{j})")
        return out

    def check(self) -> "FiniteSimplicialSet":
        errs = self.violations()
        if errs:
            raise ValueError("; ".join(errs[:10]))
        return self


def sset(simplices, faces) -> FiniteSimplicialSet:
    return FiniteSimplicialSet(
        {d: tuple(xs) for d, xs in simplices.items()},
        {x: tuple(tuple(c) if not isinstance(c, tuple) else c for c in fs)
         for x, fs in faces.items()},
    ).check()


def empty_sset() -> FiniteSimplicialSet:
    return FiniteSimplicialSet({}, {})


def point() -> FiniteSimplicialSet:
    return FiniteSimplicialSet({0: ("*",)}, {})


# -- standard objects -------------------------------------------------------


def _vname(vs) -> str:
    return ".".join(str(v) for v in vs)


def _simplex_family(n: int, keep) -> FiniteSimplicialSet:
    """Sub-simplicial-set of Delta[n] on the vertex subsets passing keep."""
    simplices: dict[int, list] = {}
    faces = {}
    for d in range(n + 1):
        simplices[d] = []
        for vs in itertools.combinations(range(n + 1), d + 1):
            if not keep(vs):
                continue
            name = _vname(vs)
            simplices[d].append(name)
            if d > 0:
                faces[name] = tuple(
                    (tuple(range(d)), _vname(vs[:i] + vs[i + 1:]))
                    for i in range(d + 1)
                )
    return FiniteSimplicialSet(
        {d: tuple(xs) for d, xs in simplices.items() if xs}, faces
    ).check()


def delta(n: int) -> FiniteSimplicialSet:
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return _simplex_family(n, lambda vs: True)


def boundary_delta(n: int) -> FiniteSimplicialSet:
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return _simplex_family(n, lambda vs: len(vs) <= n)


def horn(n: int, k: int) -> FiniteSimplicialSet:
    if n < 1 or not 0 <= k <= n:
        raise ValueError("horn requires n >= 1 and 0 <= k <= n")
    full = set(range(n + 1))

    def keep(vs):
        # kept iff contained in some face other than the k-th
        missing = full - set(vs)
        return bool(missing - {k})

    return _simplex_family(n, keep)


# -- maps -------------------------------------------------------------------


@dataclass
class SSetMap:
    src: FiniteSimplicialSet
    dst: FiniteSimplicialSet
    mapping: dict[str, Cell]   # nondeg simplex -> same-dimension cell of dst

    def cell_image(self, cell: Cell) -> Cell:
        alpha, x = cell
        beta, y = self.mapping[x]
        return self.dst.normalize(_compose(beta, alpha), y)

    def violations(self) -> list[str]:
        out = []
        for x, d in self.src.dim_of.items():
            c = self.mapping.get(x)
            if c is None:
                out.append(f"simplex {x} unmapped")
                continue
            if cell_dim(c) != d or c[1] not in self.dst.dim_of:
                out.append(f"simplex {x}: image is not a {d}-cell of the target")
        if out:
            return out
        for x, d in self.src.dim_of.items():
            if d == 0:
                continue
            top = self.src.cell_of(x)
            for i in range(d + 1):
                if self.cell_image(self.src.face(top, i)) != \
                        self.dst.face(self.mapping[x], i):
                    out.append(f"map does not commute with face {i} of {x}")
        return out

    def check(self) -> "SSetMap":
        errs = self.violations()
        if errs:
            raise ValueError("; ".join(errs[:10]))
        return self


def identity_sset_map(X: FiniteSimplicialSet) -> SSetMap:
    return SSetMap(X, X, {x: X.cell_of(x) for x in X.dim_of})


def compose_sset_maps(g: SSetMap, f: SSetMap) -> SSetMap:
    return SSetMap(
        f.src, g.dst, {x: g.cell_image(c) for x, c in f.mapping.items()}
    )


def constant_map(X: FiniteSimplicialSet, Y: FiniteSimplicialSet,
                 vertex: str) -> SSetMap:
    return SSetMap(
        X, Y,
        {x: ((0,) * (d + 1), vertex) for x, d in X.dim_of.items()},
    ).check()


def sset_maps_equal(f: SSetMap, g: SSetMap) -> bool:
    return f.mapping == g.mapping


def enumerate_sset_maps(X: FiniteSimplicialSet,
                        Y: FiniteSimplicialSet) -> list[SSetMap]:
    """All simplicial maps X -> Y, by dimension-increasing backtracking."""
    names = [x for d in sorted(X.simplices) for x in X.nondeg(d)]
    out = []
    cells_by_dim = {d: Y.cells(d) for d in X.simplices}

    def extend(i, mapping):
        if i == len(names):
            out.append(SSetMap(X, Y, dict(mapping)))
            return
        x = names[i]
        d = X.dim_of[x]
        top = X.cell_of(x)
        for c in cells_by_dim[d]:
            ok = True
            for j in range(d + 1 if d else 0):
                fj = X.face(top, j)
                want = Y.face(c, j)
                alpha, z = fj
                beta, y0 = mapping[z]
                got = Y.normalize(_compose(beta, alpha), y0)
                if got != want:
                    ok = False
                    break
            mapping[x] = c
            if ok:
                extend(i + 1, mapping)
            del mapping[x]

    extend(0, {})
    return out


# -- components and homology ------------------------------------------------


def pi0_sset(X: FiniteSimplicialSet) -> dict[str, str]:
    """Map each vertex to a canonical component representative."""
    parent = {v: v for v in X.vertices()}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in X.nondeg(1):
        a = X.faces[e][0][1]
        b = X.faces[e][1][1]
        ra, rb = find(a), find(b)
        if ra != rb:
            lo, hi = sorted((ra, rb), key=repr)
            parent[hi] = lo
    return {v: find(v) for v in X.vertices()}


def pi0_classes(X: FiniteSimplicialSet) -> list:
    return sorted(set(pi0_sset(X).values()), key=repr)


def _smith_diagonal(rows: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    A = [row[:] for row in rows]
    m = len(A)
    n = len(A[0]) if A else 0
    diag = []
    r = c = 0
    while r < m and c < n:
        piv = None
        for i in range(r, m):
            for j in range(c, n):
                if A[i][j] != 0 and (piv is None or
                                     abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        A[r], A[i0] = A[i0], A[r]
        for row in A:
            row[c], row[j0] = row[j0], row[c]
        dirty = False
        for i in range(m):
            if i != r and A[i][c] != 0:
                q = A[i][c] // A[r][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                if A[i][c] != 0:
                    dirty = True
        for j in range(n):
            if j != c and A[r][j] != 0:
                q = A[r][j] // A[r][c]
                for i in range(m):
                    A[i][j] -= q * A[i][c]
                if A[r][j] != 0:
                    dirty = True
        if dirty:
            continue
        diag.append(abs(A[r][c]))
        r += 1
        c += 1
    return diag


def boundary_matrix(X: FiniteSimplicialSet, n: int) -> list[list[int]]:
    """Rows indexed by (n-1)-simplices, columns by n-simplices, of the
    normalized chain complex (degenerate faces vanish)."""
    rows = X.nondeg(n - 1)
    cols = X.nondeg(n)
    idx = {x: i for i, x in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, x in enumerate(cols):
        top = X.cell_of(x)
        for i in range(n + 1):
            c = X.face(top, i)
            if is_nondegenerate(c):
                M[idx[c[1]]][j] += (-1) ** i
    return M


def homology_up_to(X: FiniteSimplicialSet, d: int) -> list[tuple[int, tuple]]:
    """[(rank, torsion coefficients)] for H_0 .. H_d of the normalized
    chain complex."""
    out = []
    for n in range(d + 1):
        cn = len(X.nondeg(n))
        dn = _smith_diagonal(boundary_matrix(X, n)) if n > 0 else []
        dn1 = _smith_diagonal(boundary_matrix(X, n + 1))
        rank = cn - len(dn) - len(dn1)
        torsion = tuple(t for t in dn1 if t > 1)
        out.append((rank, torsion))
    return out


# -- products and fiber products --------------------------------------------


def joint_normalize(cells, dim: int):
    """Factor a tuple of dim-dimensional cells as (shared surjection, jointly
    nondegenerate tuple)."""
    shared = [
        t for t in range(dim)
        if all(c[0][t] == c[0][t + 1] for c in cells)
    ]
    s = []
    v = 0
    for t in range(dim + 1):
        s.append(v)
        if t not in shared:
            v += 1
    # strip the shared degeneracies from every alpha
    keep = [t for t in range(dim + 1) if t == 0 or s[t] != s[t - 1]]
    core = tuple((tuple(c[0][t] for t in keep), c[1]) for c in cells)
    return tuple(s), core


def _joint_normalize(c1: Cell, c2: Cell):
    s, core = joint_normalize((c1, c2), cell_dim(c1))
    return s, (core[0], core[1])


def _pair_name(c1: Cell, c2: Cell) -> str:
    return f"({c1[0]},{c1[1]})x({c2[0]},{c2[1]})"


def product_sset(X: FiniteSimplicialSet, Y: FiniteSimplicialSet,
                 pair_filter=None):
    """The product, with projections.  pair_filter optionally restricts
    which jointly nondegenerate pairs are kept (used for fiber products;
    the filter must be closed under faces)."""
    top = X.dimension + Y.dimension
    simplices: dict[int, list] = {}
    faces = {}
    names = {}
    proj1, proj2 = {}, {}
    for d in range(max(top, 0) + 1):
        simplices[d] = []
        for cx in X.cells(d):
            for cy in Y.cells(d):
                shared = [
                    t for t in range(d)
                    if cx[0][t] == cx[0][t + 1] and cy[0][t] == cy[0][t + 1]
                ]
                if shared:
                    continue
                if pair_filter is not None and not pair_filter(cx, cy):
                    continue
                nm = _pair_name(cx, cy)
                names[(cx, cy)] = nm
                simplices[d].append(nm)
                proj1[nm] = cx
                proj2[nm] = cy
                if d > 0:
                    fs = []
                    for i in range(d + 1):
                        f1 = X.face(cx, i)
                        f2 = Y.face(cy, i)
                        s, (g1, g2) = _joint_normalize(f1, f2)
                        fs.append((s, _pair_name(g1, g2)))
                    faces[nm] = tuple(fs)
    P = FiniteSimplicialSet(
        {d: tuple(xs) for d, xs in simplices.items() if xs}, faces
    ).check()
    p1 = SSetMap(P, X, dict(proj1)).check()
    p2 = SSetMap(P, Y, dict(proj2)).check()
    return P, p1, p2


def fiber_product_sset(f: SSetMap, g: SSetMap):
    """Pullback of f: X -> B against g: Y -> B, as a sub-object of the
    product, with its projections."""
    if f.dst is not g.dst and f.dst.dim_of != g.dst.dim_of:
        raise ValueError("fiber product needs a common target")

    def agree(cx, cy):
        return f.cell_image(cx) == g.cell_image(cy)

    return product_sset(f.src, g.src, pair_filter=agree)


# -- lifting ----------------------------------------------------------------


def _inclusion_image(i: SSetMap):
    """Require i to send nondegenerate simplices to nondegenerate cells and
    return the name map."""
    out = {}
    for x, c in i.mapping.items():
        if not is_nondegenerate(c):
            raise ValueError("lifting is implemented for inclusions only")
        out[x] = c[1]
    return out


def find_lift(i: SSetMap, top: SSetMap, p: SSetMap,
              bottom: SSetMap) -> Optional[SSetMap]:
    """A diagonal X -> E with lift.i = top and p.lift = bottom, if any.

    i: A -> X must be an inclusion; the square p.top = bottom.i must
    commute.
    """
    A, X, E, B = i.src, i.dst, p.src, p.dst
    incl = _inclusion_image(i)
    fixed = {incl[a]: top.mapping[a] for a in incl}
    for a in incl:
        if p.cell_image(top.mapping[a]) != bottom.cell_image(i.mapping[a]):
            raise ValueError("lifting square does not commute")
    names = [x for d in sorted(X.simplices) for x in X.nondeg(d)
             if x not in fixed]
    cells_by_dim = {d: E.cells(d) for d in X.simplices}

    def extend(k, mapping):
        if k == len(names):
            return SSetMap(X, E, dict(mapping))
        x = names[k]
        d = X.dim_of[x]
        topcell = X.cell_of(x)
        for c in cells_by_dim[d]:
            if p.cell_image(c) != bottom.cell_image(X.cell_of(x)):
                continue
            ok = True
            for j in range(d + 1 if d else 0):
                alpha, z = X.face(topcell, j)
                beta, y0 = mapping.get(z, (None, None))
                if beta is None:
                    continue
                if E.normalize(_compose(beta, alpha), y0) != E.face(c, j):
                    ok = False
                    break
            if not ok:
                continue
            mapping[x] = c
            res = extend(k + 1, mapping)
            if res is not None:
                return res
            del mapping[x]
        return None

    lift = extend(0, dict(fixed))
    if lift is not None:
        lift.check()
    return lift


def has_rlp(p: SSetMap, i: SSetMap) -> bool:
    """Does p have the right lifting property against i?  Checks every
    commuting square by exhaustive enumeration."""
    for top in enumerate_sset_maps(i.src, p.src):
        pushed = compose_sset_maps(p, top)
        for bottom in enumerate_sset_maps(i.dst, p.dst):
            if not sset_maps_equal(compose_sset_maps(bottom, i), pushed):
                continue
            if find_lift(i, top, p, bottom) is None:
                return False
    return True


def inclusion_map(A: FiniteSimplicialSet, X: FiniteSimplicialSet) -> SSetMap:
    """The inclusion of a sub-simplicial-set sharing simplex names."""
    return SSetMap(A, X, {x: X.cell_of(x) for x in A.dim_of}).check()


def boundary_inclusion(n: int) -> SSetMap:
    return inclusion_map(boundary_delta(n), delta(n))


def horn_inclusion(n: int, k: int) -> SSetMap:
    return inclusion_map(horn(n, k), delta(n))


def fibration_up_to(p: SSetMap, n_max: int) -> dict:
    """Horn-lifting check for all Lambda[n,k] -> Delta[n] with n <= n_max."""
    report = {"bound": n_max, "ok": True, "failures": []}
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            if not has_rlp(p, horn_inclusion(n, k)):
                report["ok"] = False
                report["failures"].append((n, k))
    return report

"""Text format for props, homs, simplicial sets, linear models, and diagram
terms.

A source file is a sequence of declarations; parsing yields a workspace of
named elaborated objects plus a list of positioned diagnostics.  The parser
recovers at declaration boundaries and never raises on arbitrary input.
Terms use `.v` / `.h` (or the infix circles) with vertical composition
binding tighter; `print_workspace` emits canonical text that reparses to an
identical workspace.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .colors import Profile, make_megagraph
from .diagrams import (
    DiagramError,
    WiringDiagram,
    act_input,
    act_output,
    compose_horizontal,
    compose_vertical,
    generator_diagram,
    identity_diagram,
)
from .linear import LinearModel, LinearModelError, matrix
from .operads import forget_to_operad
from .perms import Permutation, from_cycles
from .presentations import PropHom, PropPresentation, Relation
from .sset import (
    FiniteSimplicialSet,
    boundary_delta,
    delta,
    horn,
    point,
    sset,
)


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


class DslError(Exception):
    def __init__(self, message, pos):
        super().__init__(message)
        self.message = message
        self.pos = pos


KEYWORDS = {
    "prop", "colors", "gen", "rel", "term", "in", "model", "for", "dim",
    "mat", "sset", "operad", "from", "arity", "size", "hom", "color",
    "v", "e", "id", "actIn", "actOut", "delta", "boundary", "horn", "point",
}

_BARE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

PUNCT2 = ("->", ".v", ".h")
PUNCT1 = "{}()[];:,=/-"


def _lex(src: str):
    """Tokens (kind, value, line, col); kind in IDENT/INT/PUNCT/ERR/EOF."""
    toks = []
    line, col, i, n = 1, 1, 0, len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and src[i] != "\n":
                i += 1
            continue
        start = (line, col)
        if src.startswith("∘", i):  # infix composition circle
            nxt = src[i + 1:i + 2]
            if nxt in ("v", "h"):
                toks.append(("PUNCT", "." + nxt, *start))
                i += 2
                col += 2
                continue
            toks.append(("ERR", src[i], *start))
            i += 1
            col += 1
            continue
        two = src[i:i + 2]
        if two in PUNCT2:
            toks.append(("PUNCT", two, *start))
            i += 2
            col += 2
            continue
        if ch in PUNCT1:
            toks.append(("PUNCT", ch, *start))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(("INT", src[i:j], *start))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(("IDENT", src[i:j], *start))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and src[j] not in '"\n':
                j += 1
            if j < n and src[j] == '"':
                toks.append(("IDENT", src[i + 1:j], *start))
                col += j + 1 - i
                i = j + 1
                continue
            toks.append(("ERR", "unterminated string", *start))
            col += j - i
            i = j
            continue
        toks.append(("ERR", ch, *start))
        i += 1
        col += 1
    toks.append(("EOF", "", line, col))
    return toks


# -- declarations ------------------------------------------------------------


@dataclass
class Decl:
    kind: str
    name: str
    pos: tuple
    data: dict
    obj: object = None


@dataclass
class Workspace:
    decls: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.errors

    def find(self, name, kinds=None):
        for d in self.decls:
            if d.name == name and (kinds is None or d.kind in kinds):
                return d
        return None

    def require(self, name, kinds, pos):
        d = self.find(name, kinds)
        if d is None:
            want = "/".join(kinds) if kinds else "object"
            raise DslError(f"no {want} named {name!r}", pos)
        if d.obj is None:
            raise DslError(f"{name!r} failed to elaborate", pos)
        return d


class _Parser:
    def __init__(self, src):
        self.toks = _lex(src)
        self.i = 0
        self.ws = Workspace()

    # -- token plumbing ------------------------------------------------

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        if t[0] != "EOF":
            self.i += 1
        return t

    def at(self, value):
        t = self.peek()
        return t[0] in ("PUNCT", "IDENT") and t[1] == value

    def eat(self, value):
        if self.at(value):
            return self.next()
        t = self.peek()
        raise DslError(f"expected {value!r}, found {t[1]!r}", (t[2], t[3]))

    def name(self, what="name"):
        t = self.peek()
        if t[0] == "IDENT":
            self.next()
            return t[1], (t[2], t[3])
        raise DslError(f"expected {what}, found {t[1]!r}", (t[2], t[3]))

    def int_(self):
        neg = False
        if self.at("-"):
            self.next()
            neg = True
        t = self.peek()
        if t[0] != "INT":
            raise DslError(f"expected integer, found {t[1]!r}", (t[2], t[3]))
        self.next()
        return -int(t[1]) if neg else int(t[1])

    def error(self, message, pos=None):
        if pos is None:
            t = self.peek()
            pos = (t[2], t[3])
        self.ws.errors.append(Diagnostic(pos[0], pos[1], message))

    DECL_KEYWORDS = ("prop", "term", "model", "sset", "operad", "hom")

    def recover(self):
        """Skip ahead to the next token that can start a declaration."""
        self.next()
        while True:
            t = self.peek()
            if t[0] == "EOF":
                return
            if t[0] == "IDENT" and t[1] in self.DECL_KEYWORDS:
                return
            self.next()

    # -- top level -----------------------------------------------------

    def file(self):
        while self.peek()[0] != "EOF":
            t = self.peek()
            try:
                if self.at("prop"):
                    self.prop_decl()
                elif self.at("term"):
                    self.term_decl()
                elif self.at("model"):
                    self.model_decl()
                elif self.at("sset"):
                    self.sset_decl()
                elif self.at("operad"):
                    self.operad_decl()
                elif self.at("hom"):
                    self.hom_decl()
                else:
                    raise DslError(
                        f"expected a declaration, found {t[1]!r}",
                        (t[2], t[3]),
                    )
            except DslError as e:
                self.error(e.message, e.pos)
                self.recover()
        return self.ws

    def declare(self, decl):
        if self.ws.find(decl.name) is not None:
            raise DslError(f"duplicate name {decl.name!r}", decl.pos)
        self.ws.decls.append(decl)

    # -- prop ----------------------------------------------------------

    def prop_decl(self):
        self.eat("prop")
        name, pos = self.name()
        self.eat("{")
        colors, gens, rels = [], [], []
        while not self.at("}"):
            if self.at("colors"):
                self.next()
                while not self.at(";"):
                    c, _ = self.name("color")
                    if c not in colors:
                        colors.append(c)
                self.eat(";")
            elif self.at("gen"):
                self.next()
                g, gpos = self.name("generator")
                self.eat(":")
                ins = self.color_list(colors, gpos)
                self.eat("->")
                outs = self.color_list(colors, gpos)
                self.eat(";")
                if any(g == h for h, _, _ in gens):
                    raise DslError(f"duplicate generator {g!r}", gpos)
                gens.append((g, ins, outs))
            elif self.at("rel"):
                self.next()
                r, rpos = self.name("relation name")
                self.eat(":")
                lhs = self.term()
                self.eat("=")
                rhs = self.term()
                self.eat(";")
                rels.append((r, lhs, rhs, rpos))
            else:
                t = self.peek()
                raise DslError(
                    f"expected colors/gen/rel, found {t[1]!r}", (t[2], t[3])
                )
        self.eat("}")
        mega = make_megagraph(
            colors, [(g, Profile(tuple(i), tuple(o))) for g, i, o in gens]
        )
        relations = []
        for r, lhs, rhs, rpos in rels:
            dl = elaborate_term(lhs, mega)
            dr = elaborate_term(rhs, mega)
            if dl.inputs != dr.inputs or dl.outputs != dr.outputs:
                raise DslError(
                    f"relation {r!r} equates different profiles", rpos
                )
            relations.append(Relation(r, dl, dr))
        try:
            pres = PropPresentation(mega, tuple(relations)).check()
        except Exception as e:
            raise DslError(f"invalid prop {name!r}: {e}", pos)
        self.declare(Decl("prop", name, pos,
                          {"colors": colors, "gens": gens, "rels": rels},
                          pres))

    def color_list(self, colors, pos):
        self.eat("(")
        out = []
        while not self.at(")"):
            c, cpos = self.name("color")
            if c not in colors:
                raise DslError(f"undeclared color {c!r}", cpos)
            out.append(c)
        self.eat(")")
        return out

    # -- terms ---------------------------------------------------------

    def term_decl(self):
        self.eat("term")
        name, pos = self.name()
        self.eat("in")
        pname, ppos = self.name("prop name")
        self.eat("=")
        ast = self.term()
        self.eat(";")
        pres = self.ws.require(pname, ("prop",), ppos).obj
        d = elaborate_term(ast, pres.base)
        self.declare(Decl("term", name, pos, {"prop": pname, "ast": ast}, d))

    def term(self):
        node = self.vterm()
        while self.at(".h"):
            t = self.next()
            rhs = self.vterm()
            node = ("h", node, rhs, (t[2], t[3]))
        return node

    def vterm(self):
        node = self.atom()
        while self.at(".v"):
            t = self.next()
            rhs = self.atom()
            node = ("v", node, rhs, (t[2], t[3]))
        return node

    def atom(self):
        t = self.peek()
        pos = (t[2], t[3])
        if self.at("("):
            self.next()
            node = self.term()
            self.eat(")")
            return node
        if self.at("id"):
            self.next()
            self.eat("(")
            cs = []
            while not self.at(")"):
                c, _ = self.name("color")
                cs.append(c)
            self.eat(")")
            return ("id", tuple(cs), pos)
        if self.at("actIn") or self.at("actOut"):
            kind = "actin" if t[1] == "actIn" else "actout"
            self.next()
            self.eat("(")
            p = self.perm()
            self.eat(",")
            sub = self.term()
            self.eat(")")
            return (kind, p, sub, pos)
        if t[0] == "IDENT":
            self.next()
            return ("gen", t[1], pos)
        raise DslError(f"expected a term, found {t[1]!r}", pos)

    def perm(self):
        t = self.peek()
        pos = (t[2], t[3])
        if self.at("["):
            self.next()
            img = []
            while not self.at("]"):
                img.append(self.int_())
            self.eat("]")
            return ("image", tuple(img), pos)
        cycles = []
        while self.at("("):
            self.next()
            cyc = []
            while not self.at(")"):
                cyc.append(self.int_())
            self.eat(")")
            cycles.append(tuple(cyc))
        if not cycles:
            raise DslError("expected a permutation", pos)
        return ("cycles", tuple(cycles), pos)

    # -- models --------------------------------------------------------

    def model_decl(self):
        self.eat("model")
        name, pos = self.name()
        self.eat("for")
        pname, ppos = self.name("prop name")
        pres = self.ws.require(pname, ("prop",), ppos).obj
        self.eat("{")
        dims, mats = [], []
        while not self.at("}"):
            if self.at("dim"):
                self.next()
                c, cpos = self.name("color")
                self.eat("=")
                d = self.int_()
                self.eat(";")
                if c not in pres.base.objects:
                    raise DslError(f"undeclared color {c!r}", cpos)
                dims.append((c, d))
            elif self.at("mat"):
                self.next()
                g, gpos = self.name("generator")
                self.eat("=")
                rows = self.matrix_rows()
                self.eat(";")
                if g not in pres.base.gen_profiles:
                    raise DslError(f"undeclared generator {g!r}", gpos)
                mats.append((g, rows))
            else:
                t = self.peek()
                raise DslError(
                    f"expected dim/mat, found {t[1]!r}", (t[2], t[3])
                )
        self.eat("}")
        try:
            model = LinearModel(dict(dims), {g: matrix(r) for g, r in mats})
            errs = model.violations(pres.base)
        except LinearModelError as exc:
            raise DslError(f"bad model {name!r}: {exc}", pos)
        if errs:
            raise DslError(f"bad model {name!r}: {errs[0]}", pos)
        self.declare(Decl("model", name, pos,
                          {"prop": pname, "dims": dims, "mats": mats}, model))

    def matrix_rows(self):
        self.eat("[")
        rows = []
        while not self.at("]"):
            self.eat("[")
            row = []
            while not self.at("]"):
                num = self.int_()
                if self.at("/"):
                    self.next()
                    den = self.int_()
                    if den == 0:
                        t = self.peek()
                        raise DslError("zero denominator", (t[2], t[3]))
                    row.append(Fraction(num, den))
                else:
                    row.append(Fraction(num))
                if self.at(","):
                    self.next()
            self.eat("]")
            rows.append(row)
            if self.at(","):
                self.next()
        self.eat("]")
        if not rows or len({len(r) for r in rows}) > 1:
            t = self.peek()
            raise DslError("matrix rows must be nonempty and equal length",
                           (t[2], t[3]))
        return rows

    # -- simplicial sets -----------------------------------------------

    def sset_decl(self):
        self.eat("sset")
        name, pos = self.name()
        if self.at("="):
            self.next()
            kind, kpos = self.name("standard simplicial set")
            if kind == "point":
                args = ()
            elif kind in ("delta", "boundary"):
                self.eat("(")
                args = (self.int_(),)
                self.eat(")")
            elif kind == "horn":
                self.eat("(")
                a = self.int_()
                self.eat(",")
                b = self.int_()
                self.eat(")")
                args = (a, b)
            else:
                raise DslError(
                    f"unknown standard simplicial set {kind!r}", kpos
                )
            self.eat(";")
            try:
                obj = _STANDARD_SSETS[kind](*args)
            except Exception as e:
                raise DslError(f"bad {kind} arguments: {e}", kpos)
            self.declare(Decl("sset", name, pos,
                              {"std": (kind, args)}, obj))
            return
        self.eat("{")
        vs, es = [], []
        while not self.at("}"):
            if self.at("v"):
                self.next()
                while not self.at(";"):
                    c, _ = self.name("vertex")
                    if c not in vs:
                        vs.append(c)
                self.eat(";")
            elif self.at("e"):
                self.next()
                e, epos = self.name("edge")
                self.eat(":")
                a, apos = self.name("vertex")
                self.eat("->")
                b, bpos = self.name("vertex")
                self.eat(";")
                if a not in vs:
                    raise DslError(f"undeclared vertex {a!r}", apos)
                if b not in vs:
                    raise DslError(f"undeclared vertex {b!r}", bpos)
                es.append((e, a, b))
            else:
                t = self.peek()
                raise DslError(f"expected v/e, found {t[1]!r}", (t[2], t[3]))
        self.eat("}")
        simplices = {0: tuple(vs)}
        faces = {}
        if es:
            simplices[1] = tuple(e for e, _, _ in es)
            # face 0 drops vertex 0, leaving the target
            faces = {e: (((0,), b), ((0,), a)) for e, a, b in es}
        try:
            obj = sset(simplices, faces)
        except Exception as exc:
            raise DslError(f"invalid sset {name!r}: {exc}", pos)
        self.declare(Decl("sset", name, pos, {"vs": vs, "es": es}, obj))

    # -- operads -------------------------------------------------------

    def operad_decl(self):
        self.eat("operad")
        name, pos = self.name()
        self.eat("from")
        pname, ppos = self.name("prop name")
        arity, size = 2, 3
        while self.at("arity") or self.at("size"):
            key = self.next()[1]
            if key == "arity":
                arity = self.int_()
            else:
                size = self.int_()
        self.eat(";")
        if not (0 <= arity <= 4 and 0 <= size <= 5):
            raise DslError(
                "operad tables support arity <= 4 and size <= 5", pos
            )
        pres = self.ws.require(pname, ("prop",), ppos).obj
        try:
            T, _ = _tabulate(pres, arity, size)
            obj = forget_to_operad(T)
        except Exception as e:
            raise DslError(
                f"cannot tabulate {pname!r} at arity {arity}, size {size}: "
                f"{e}", pos
            )
        self.declare(Decl("operad", name, pos,
                          {"prop": pname, "arity": arity, "size": size}, obj))

    # -- homs ----------------------------------------------------------

    def hom_decl(self):
        self.eat("hom")
        name, pos = self.name()
        self.eat(":")
        sname, spos = self.name("prop name")
        self.eat("->")
        tname, tpos = self.name("prop name")
        src = self.ws.require(sname, ("prop",), spos).obj
        dst = self.ws.require(tname, ("prop",), tpos).obj
        self.eat("{")
        cmaps, gmaps = [], []
        while not self.at("}"):
            if self.at("color"):
                self.next()
                a, apos = self.name("color")
                self.eat("->")
                b, bpos = self.name("color")
                self.eat(";")
                if a not in src.base.objects:
                    raise DslError(f"undeclared color {a!r}", apos)
                if b not in dst.base.objects:
                    raise DslError(f"undeclared color {b!r}", bpos)
                cmaps.append((a, b))
            elif self.at("gen"):
                self.next()
                g, gpos = self.name("generator")
                self.eat("->")
                ast = self.term()
                self.eat(";")
                if g not in src.base.gen_profiles:
                    raise DslError(f"undeclared generator {g!r}", gpos)
                gmaps.append((g, ast, gpos))
            else:
                t = self.peek()
                raise DslError(
                    f"expected color/gen, found {t[1]!r}", (t[2], t[3])
                )
        self.eat("}")
        color_map = dict(cmaps)
        gen_images = {
            g: elaborate_term(ast, dst.base) for g, ast, _ in gmaps
        }
        try:
            obj = PropHom(src, dst, color_map, gen_images).check()
        except Exception as e:
            raise DslError(f"invalid hom {name!r}: {e}", pos)
        self.declare(Decl("hom", name, pos,
                          {"src": sname, "dst": tname, "colors": cmaps,
                           "gens": gmaps}, obj))


_STANDARD_SSETS = {
    "point": point,
    "delta": delta,
    "boundary": boundary_delta,
    "horn": horn,
}


_TABULATE_CACHE = {}


def _tabulate(pres, arity, size):
    from .diagrams import certificate
    from .finite import prop_of_presentation

    key = (pres.base,
           tuple((r.name, certificate(r.lhs), certificate(r.rhs))
                 for r in pres.relations),
           arity, size)
    if key not in _TABULATE_CACHE:
        _TABULATE_CACHE[key] = prop_of_presentation(pres, arity, size)
    return _TABULATE_CACHE[key]


# -- term elaboration --------------------------------------------------------


def _resolve_perm(spec, n):
    kind, data, pos = spec
    if kind == "image":
        if sorted(data) != list(range(n)):
            raise DslError(
                f"permutation {list(data)} is not a bijection on {n} wires",
                pos,
            )
        return Permutation(tuple(data))
    try:
        return from_cycles(n, data)
    except Exception as e:
        raise DslError(f"bad cycles for {n} wires: {e}", pos)


def elaborate_term(ast, mega) -> WiringDiagram:
    """Build the wiring diagram of a term AST over a megagraph."""
    kind = ast[0]
    if kind == "gen":
        _, name, pos = ast
        if name not in mega.gen_profiles:
            raise DslError(f"undeclared generator {name!r}", pos)
        return generator_diagram(mega, name)
    if kind == "id":
        _, cs, pos = ast
        for c in cs:
            if c not in mega.objects:
                raise DslError(f"undeclared color {c!r}", pos)
        return identity_diagram(cs)
    if kind in ("v", "h"):
        _, l, r, pos = ast
        dl = elaborate_term(l, mega)
        dr = elaborate_term(r, mega)
        try:
            if kind == "v":
                return compose_vertical(dl, dr)
            return compose_horizontal(dl, dr)
        except DiagramError as e:
            raise DslError(str(e), pos)
    if kind in ("actin", "actout"):
        _, spec, sub, pos = ast
        d = elaborate_term(sub, mega)
        n = len(d.inputs) if kind == "actin" else len(d.outputs)
        p = _resolve_perm(spec, n)
        try:
            return act_input(p, d) if kind == "actin" else act_output(p, d)
        except DiagramError as e:
            raise DslError(str(e), pos)
    raise DslError(f"malformed term node {kind!r}", ast[-1])


# -- entry points ------------------------------------------------------------


def parse(source: str) -> Workspace:
    """Parse a source file; always returns a workspace, never raises."""
    try:
        return _Parser(source).file()
    except DslError as e:  # defensive: file() reports and recovers
        ws = Workspace()
        ws.errors.append(Diagnostic(e.pos[0], e.pos[1], e.message))
        return ws
    except RecursionError:
        ws = Workspace()
        ws.errors.append(Diagnostic(1, 1, "input too deeply nested"))
        return ws


# -- printing ----------------------------------------------------------------


# names that the parser treats specially in positions where user names can
# also appear; anything else prints bare
RESERVED_NAMES = {"id", "actIn", "actOut", "arity", "size"}


def _pname(name: str) -> str:
    if _BARE.fullmatch(name) and name not in RESERVED_NAMES:
        return name
    return f'"{name}"'


def _pperm(spec):
    kind, data, _ = spec
    if kind == "image":
        return "[" + " ".join(str(i) for i in data) + "]"
    return "".join("(" + " ".join(str(i) for i in c) + ")" for c in data)


def print_term(ast) -> str:
    kind = ast[0]
    if kind == "gen":
        return _pname(ast[1])
    if kind == "id":
        return "id(" + " ".join(_pname(c) for c in ast[1]) + ")"
    if kind in ("actin", "actout"):
        word = "actIn" if kind == "actin" else "actOut"
        return f"{word}({_pperm(ast[1])}, {print_term(ast[2])})"
    op = ".v" if kind == "v" else ".h"
    l, r = ast[1], ast[2]
    ls = print_term(l)
    rs = print_term(r)
    # keep left association and v-over-h precedence explicit on reparse
    if kind == "v" and l[0] == "h":
        ls = f"({ls})"
    if r[0] in ("v", "h") and not (kind == "h" and r[0] == "v"):
        rs = f"({rs})"
    if kind == "h" and r[0] == "h":
        rs = f"({rs})"
    return f"{ls} {op} {rs}"


def _pfrac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else \
        f"{x.numerator}/{x.denominator}"


def print_decl(d: Decl) -> str:
    if d.kind == "prop":
        lines = [f"prop {_pname(d.name)} {{"]
        if d.data["colors"]:
            lines.append(
                "  colors " + " ".join(_pname(c) for c in d.data["colors"])
                + ";"
            )
        for g, ins, outs in d.data["gens"]:
            lines.append(
                f"  gen {_pname(g)} : "
                f"({' '.join(_pname(c) for c in ins)}) -> "
                f"({' '.join(_pname(c) for c in outs)});"
            )
        for r, lhs, rhs, _ in d.data["rels"]:
            lines.append(
                f"  rel {_pname(r)} : {print_term(lhs)} = {print_term(rhs)};"
            )
        lines.append("}")
        return "\n".join(lines)
    if d.kind == "term":
        return (f"term {_pname(d.name)} in {_pname(d.data['prop'])} = "
                f"{print_term(d.data['ast'])};")
    if d.kind == "model":
        lines = [f"model {_pname(d.name)} for {_pname(d.data['prop'])} {{"]
        for c, n in d.data["dims"]:
            lines.append(f"  dim {_pname(c)} = {n};")
        for g, rows in d.data["mats"]:
            body = ", ".join(
                "[" + ", ".join(_pfrac(Fraction(x)) for x in row) + "]"
                for row in rows
            )
            lines.append(f"  mat {_pname(g)} = [{body}];")
        lines.append("}")
        return "\n".join(lines)
    if d.kind == "sset":
        if "std" in d.data:
            kind, args = d.data["std"]
            call = kind if not args else \
                f"{kind}({', '.join(str(a) for a in args)})"
            return f"sset {_pname(d.name)} = {call};"
        lines = [f"sset {_pname(d.name)} {{"]
        if d.data["vs"]:
            lines.append(
                "  v " + " ".join(_pname(v) for v in d.data["vs"]) + ";"
            )
        for e, a, b in d.data["es"]:
            lines.append(f"  e {_pname(e)} : {_pname(a)} -> {_pname(b)};")
        lines.append("}")
        return "\n".join(lines)
    if d.kind == "operad":
        return (f"operad {_pname(d.name)} from {_pname(d.data['prop'])} "
                f"arity {d.data['arity']} size {d.data['size']};")
    if d.kind == "hom":
        lines = [f"hom {_pname(d.name)} : {_pname(d.data['src'])} -> "
                 f"{_pname(d.data['dst'])} {{"]
        for a, b in d.data["colors"]:
            lines.append(f"  color {_pname(a)} -> {_pname(b)};")
        for g, ast, _ in d.data["gens"]:
            lines.append(f"  gen {_pname(g)} -> {print_term(ast)};")
        lines.append("}")
        return "\n".join(lines)
    raise ValueError(f"unknown declaration kind {d.kind!r}")


def print_workspace(ws: Workspace) -> str:
    return "\n\n".join(print_decl(d) for d in ws.decls) + "\n"

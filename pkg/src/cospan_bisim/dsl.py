"""A small text format for graphs, cospans, conditions, rules and relations.

::

    # comments run to the end of the line
    graph G { nodes: n1:a, n2; edges: e1: n1 -ch-> n2; }
    cospan f = [I1] -> G <- [I2] { left: i1->n1; right: j1->n2; }
    cond A : I = forall (h1 => false), exists (h2 => A2);
    rule R1 = l => r when A;
    rel W = { (a1, b1, A), (a2, b2) };
    set bound.refute = 3;
    set assume = "W:left:R1:0";

``[]`` is the empty graph.  Legs map ids to ids; unlisted ids map to
themselves.  Condition expressions combine ``true``, ``false``, names,
``not``, ``and``, ``or`` and quantified lists ``forall (h => C, ...)``.
A comma-separated list at the top of a ``cond`` declaration is a
conjunction.  The declared root (``: I``) is needed only where it cannot be
inferred.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .conditions import (EXISTS, FORALL, Condition, conj, disj, false_, negate, true_)
from .contexts import Alphabet
from .cospan import Cospan, NotInputLinear
from .graph import Graph, GraphMorphism
from .reactive import Rule, System
from .bisim import ConditionalRelation, ConditionalTriple

__all__ = ["DSLError", "ParseError", "Document", "parse", "parse_file", "print_document"]


class DSLError(Exception):
    """A problem in a document, located at ``line``/``col`` (1-based)."""

    def __init__(self, message: str, line: int = 0, col: int = 0, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(expected))
        loc = f"{line}:{col}: " if line else ""
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{loc}{message}{exp}")


class ParseError(DSLError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<string>"[^"\n]*")
  | (?P<int>\d+(?![A-Za-z_]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>->|<-|=>|[-{}\[\]():;,=.])
""", re.VERBOSE)

KEYWORDS = {"graph", "cospan", "cond", "rule", "rel", "set", "nodes", "edges", "left", "right",
            "when", "forall", "exists", "true", "false", "not", "and", "or"}


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Tok]:
    toks, pos, line, start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind != "ws":
            toks.append(Tok(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    toks.append(Tok("eof", "", line, pos - start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def error(self, expected) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return ParseError(f"unexpected {found}", t.line, t.col, expected)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.text == text and t.kind in ("op", "ident")

    def eat(self, text: str) -> Tok:
        if not self.at(text):
            raise self.error({text})
        t = self.tok
        self.i += 1
        return t

    def name(self) -> str:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            raise self.error({"<name>"})
        self.i += 1
        return t.text

    def ident(self) -> str:
        t = self.tok
        if t.kind != "ident":
            raise self.error({"<identifier>"})
        self.i += 1
        return t.text

    # -- declarations

    def document(self) -> list:
        decls = []
        while self.tok.kind != "eof":
            t = self.tok
            handler = {"graph": self.graph, "cospan": self.cospan, "cond": self.cond,
                       "rule": self.rule, "rel": self.rel, "set": self.setting}.get(t.text)
            if handler is None or t.kind != "ident":
                raise self.error({"graph", "cospan", "cond", "rule", "rel", "set"})
            self.i += 1
            decls.append((handler(), (t.line, t.col)))
        return decls

    def graph(self):
        name = self.name()
        self.eat("{")
        nodes, edges = [], []
        while not self.at("}"):
            if self.at("nodes"):
                self.eat("nodes")
                self.eat(":")
                if not self.at(";"):
                    nodes.append(self.node())
                    while self.at(","):
                        self.eat(",")
                        nodes.append(self.node())
                self.eat(";")
            elif self.at("edges"):
                self.eat("edges")
                self.eat(":")
                if not self.at(";"):
                    edges.append(self.edge())
                    while self.at(","):
                        self.eat(",")
                        edges.append(self.edge())
                self.eat(";")
            else:
                raise self.error({"nodes", "edges", "}"})
        self.eat("}")
        return ("graph", name, tuple(nodes), tuple(edges))

    def node(self):
        n = self.ident()
        lab = ""
        if self.at(":"):
            self.eat(":")
            lab = self.ident()
        return (n, lab)

    def edge(self):
        e = self.ident()
        self.eat(":")
        s = self.ident()
        lab = ""
        if self.at("-"):
            self.eat("-")
            lab = self.ident()
        self.eat("->")
        t = self.ident()
        return (e, s, t, lab)

    def iface(self):
        self.eat("[")
        if self.at("]"):
            self.eat("]")
            return None
        n = self.name()
        self.eat("]")
        return n

    def pairs(self):
        out = []
        if self.at(";"):
            return ()
        while True:
            x = self.ident()
            self.eat("->")
            out.append((x, self.ident()))
            if not self.at(","):
                return tuple(out)
            self.eat(",")

    def cospan(self):
        name = self.name()
        self.eat("=")
        inner = self.iface()
        self.eat("->")
        middle = self.name()
        self.eat("<-")
        outer = self.iface()
        left, right = (), ()
        if self.at("{"):
            self.eat("{")
            while not self.at("}"):
                if self.at("left"):
                    self.eat("left")
                    self.eat(":")
                    left = self.pairs()
                    self.eat(";")
                elif self.at("right"):
                    self.eat("right")
                    self.eat(":")
                    right = self.pairs()
                    self.eat(";")
                else:
                    raise self.error({"left", "right", "}"})
            self.eat("}")
        else:
            self.eat(";")
        return ("cospan", name, inner, middle, outer, left, right)

    def cond(self):
        name = self.name()
        root = None
        if self.at(":"):
            self.eat(":")
            root = self.name()
        self.eat("=")
        exprs = [self.expr()]
        while self.at(","):
            self.eat(",")
            exprs.append(self.expr())
        self.eat(";")
        return ("cond", name, root, tuple(exprs))

    def rule(self):
        name = self.name()
        self.eat("=")
        lhs = self.name()
        self.eat("=>")
        rhs = self.name()
        cond = None
        if self.at("when"):
            self.eat("when")
            cond = self.expr()
        self.eat(";")
        return ("rule", name, lhs, rhs, cond)

    def rel(self):
        name = self.name()
        self.eat("=")
        self.eat("{")
        items = []
        while not self.at("}"):
            self.eat("(")
            a = self.name()
            self.eat(",")
            b = self.name()
            c = None
            if self.at(","):
                self.eat(",")
                c = self.expr()
            self.eat(")")
            items.append((a, b, c))
            if not self.at(","):
                break
            self.eat(",")
        self.eat("}")
        self.eat(";")
        return ("rel", name, tuple(items))

    def setting(self):
        key = [self.ident()]
        while self.at("."):
            self.eat(".")
            key.append(self.ident())
        self.eat("=")
        t = self.tok
        if t.kind == "int":
            value = int(t.text)
        elif t.kind == "string":
            value = t.text[1:-1]
        else:
            raise self.error({"<integer>", "<string>"})
        self.i += 1
        self.eat(";")
        return ("set", ".".join(key), value)

    # -- condition expressions

    def expr(self):
        parts = [self.conjunction()]
        while self.at("or"):
            self.eat("or")
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else ("or",) + tuple(parts)

    def conjunction(self):
        parts = [self.unary()]
        while self.at("and"):
            self.eat("and")
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else ("and",) + tuple(parts)

    def unary(self):
        if self.at("not"):
            self.eat("not")
            return ("not", self.unary())
        return self.atom()

    def atom(self):
        t = self.tok
        if self.at("true"):
            self.eat("true")
            return ("true",)
        if self.at("false"):
            self.eat("false")
            return ("false",)
        if self.at("("):
            self.eat("(")
            e = self.expr()
            self.eat(")")
            return ("paren", e)
        if self.at("forall") or self.at("exists"):
            q = self.tok.text
            self.i += 1
            self.eat("(")
            items = []
            if not self.at(")"):
                while True:
                    h = self.name()
                    self.eat("=>")
                    items.append((h, self.expr()))
                    if not self.at(","):
                        break
                    self.eat(",")
            self.eat(")")
            return ("q", q, tuple(items))
        if t.kind == "ident" and t.text not in KEYWORDS:
            self.i += 1
            return ("ref", t.text)
        raise self.error({"true", "false", "not", "forall", "exists", "(", "<name>"})


# -- printing -------------------------------------------------------------------

def _print_expr(e, top: bool = False) -> str:
    kind = e[0]
    if kind in ("true", "false"):
        return kind
    if kind == "ref":
        return e[1]
    if kind == "paren":
        return "(" + _print_expr(e[1], True) + ")"
    if kind == "not":
        return "not " + _print_expr(e[1])
    if kind in ("and", "or"):
        return f" {kind} ".join(_print_expr(x) for x in e[1:])
    if kind == "q":
        return f"{e[1]} (" + ", ".join(f"{h} => {_print_expr(x, True)}" for h, x in e[2]) + ")"
    raise ValueError(f"unknown expression {e!r}")


def _print_decl(d) -> str:
    kind = d[0]
    if kind == "graph":
        _, name, nodes, edges = d
        parts = []
        if nodes:
            parts.append("nodes: " + ", ".join(f"{n}:{lab}" if lab else n for n, lab in nodes) + ";")
        if edges:
            parts.append("edges: " + ", ".join(
                f"{e}: {s} -{lab}-> {t}" if lab else f"{e}: {s} -> {t}" for e, s, t, lab in edges) + ";")
        return f"graph {name} {{ " + " ".join(parts) + (" }" if parts else "}")
    if kind == "cospan":
        _, name, inner, middle, outer, left, right = d
        head = f"cospan {name} = [{inner or ''}] -> {middle} <- [{outer or ''}]"
        if not left and not right:
            return head + ";"
        body = []
        if left:
            body.append("left: " + ", ".join(f"{x}->{y}" for x, y in left) + ";")
        if right:
            body.append("right: " + ", ".join(f"{x}->{y}" for x, y in right) + ";")
        return head + " { " + " ".join(body) + " }"
    if kind == "cond":
        _, name, root, exprs = d
        r = f" : {root}" if root else ""
        return f"cond {name}{r} = " + ", ".join(_print_expr(e, True) for e in exprs) + ";"
    if kind == "rule":
        _, name, lhs, rhs, cond = d
        w = f" when {_print_expr(cond, True)}" if cond is not None else ""
        return f"rule {name} = {lhs} => {rhs}{w};"
    if kind == "rel":
        _, name, items = d
        body = ", ".join(f"({a}, {b}, {_print_expr(c, True)})" if c is not None else f"({a}, {b})"
                         for a, b, c in items)
        return f"rel {name} = {{ {body} }};"
    if kind == "set":
        _, key, value = d
        v = str(value) if isinstance(value, int) else f'"{value}"'
        return f"set {key} = {v};"
    raise ValueError(f"unknown declaration {d!r}")


# -- documents -----------------------------------------------------------------

@dataclass
class Document:
    decls: list
    graphs: dict = field(default_factory=dict)
    cospans: dict = field(default_factory=dict)
    conds: dict = field(default_factory=dict)
    rules: dict = field(default_factory=dict)
    relations: dict = field(default_factory=dict)
    settings: dict = field(default_factory=dict)
    assumptions: list = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return self.decls == other.decls

    @property
    def system(self) -> System:
        extra = Alphabet(frozenset(_split(self.settings.get("alphabet.nodes", ""))),
                         frozenset(_split(self.settings.get("alphabet.edges", ""))))
        return System.of(self.rules.values(), extra)

    def setting(self, key: str, default: int) -> int:
        return int(self.settings.get(key, default))

    def relation(self, name: str) -> ConditionalRelation:
        return self.relations[name]

    def lookup(self, name: str):
        for table in (self.cospans, self.conds, self.graphs, self.rules, self.relations):
            if name in table:
                return table[name]
        raise KeyError(name)


def _split(s: str) -> list[str]:
    return [x.strip() for x in s.split(",") if x.strip()]


class _Resolver:
    def __init__(self, doc: Document):
        self.doc = doc
        self.pos = (0, 0)

    def err(self, msg: str) -> DSLError:
        return DSLError(msg, *self.pos)

    def graph(self, name):
        if name is None:
            return Graph()
        try:
            return self.doc.graphs[name]
        except KeyError:
            raise self.err(f"unknown graph {name!r}") from None

    def cospan(self, name) -> Cospan:
        try:
            return self.doc.cospans[name]
        except KeyError:
            raise self.err(f"unknown cospan {name!r}") from None

    def expr(self, e, root: Graph | None) -> Condition:
        kind = e[0]
        if kind in ("true", "false"):
            if root is None:
                raise self.err(f"cannot infer the root of '{kind}'; declare it with ': <graph>'")
            return true_(root) if kind == "true" else false_(root)
        if kind == "ref":
            c = self.doc.conds.get(e[1])
            if c is None:
                raise self.err(f"unknown condition {e[1]!r}")
            if root is not None and c.root != root:
                raise self.err(f"condition {e[1]!r} has a different root than required here")
            return c
        if kind == "paren":
            return self.expr(e[1], root)
        if kind == "not":
            return negate(self.expr(e[1], root))
        if kind in ("and", "or"):
            parts = [self.expr(x, root) for x in e[1:]]
            r = parts[0].root
            if any(p.root != r for p in parts):
                raise self.err(f"operands of '{kind}' have different roots")
            return conj(*parts) if kind == "and" else disj(*parts)
        if kind == "q":
            _, q, items = e
            children = []
            for hname, x in items:
                h = self.cospan(hname)
                if root is None:
                    root = h.inner
                elif h.inner != root:
                    raise self.err(f"cospan {hname!r} does not start at the condition root")
                children.append((h, self.expr(x, h.outer)))
            if root is None:
                raise self.err("cannot infer the root of an empty quantifier; declare it with ': <graph>'")
            return Condition(root, FORALL if q == "forall" else EXISTS, children)
        raise self.err(f"unknown expression {e!r}")

    def leg(self, dom: Graph, mid: Graph, pairs, side: str) -> GraphMorphism:
        m = dict(pairs)
        for x in m:
            if x not in dom.nodes and x not in dom.edges:
                raise self.err(f"{side} leg maps unknown element {x!r}")
        nmap = {n: m.get(n, n) for n in dom.nodes}
        emap = {e: m.get(e, e) for e in dom.edges}
        try:
            return GraphMorphism(dom, mid, nmap, emap)
        except ValueError as ex:
            raise self.err(f"{side} leg is not a graph morphism: {ex}") from None

    def decl(self, d):
        doc = self.doc
        kind, name = d[0], d[1]
        if kind != "set" and any(name in t for t in (doc.graphs, doc.cospans, doc.conds, doc.rules,
                                                     doc.relations)):
            raise self.err(f"name {name!r} declared twice")
        if kind == "graph":
            _, _, nodes, edges = d
            nd = {}
            for n, lab in nodes:
                if n in nd:
                    raise self.err(f"node {n!r} declared twice")
                nd[n] = lab
            ed = {}
            for e, s, t, lab in edges:
                if e in ed or e in nd:
                    raise self.err(f"id {e!r} declared twice")
                if s not in nd or t not in nd:
                    raise self.err(f"edge {e!r} refers to an undeclared node")
                ed[e] = (s, t, lab)
            doc.graphs[name] = Graph(nd, ed)
        elif kind == "cospan":
            _, _, inner, middle, outer, left, right = d
            I, M, O = self.graph(inner), self.graph(middle), self.graph(outer)
            lleg = self.leg(I, M, left, "left")
            rleg = self.leg(O, M, right, "right")
            try:
                doc.cospans[name] = Cospan(lleg, rleg)
            except NotInputLinear:
                raise self.err(f"cospan {name!r} violates input-linearity: its left leg is not injective") from None
        elif kind == "cond":
            _, _, root, exprs = d
            r = self.graph(root) if root else None
            parts = [self.expr(e, r) for e in exprs]
            if any(p.root != parts[0].root for p in parts):
                raise self.err("conjuncts have different roots")
            doc.conds[name] = parts[0] if len(parts) == 1 else conj(*parts)
        elif kind == "rule":
            _, _, lhs, rhs, cond = d
            l, r = self.cospan(lhs), self.cospan(rhs)
            c = self.expr(cond, l.outer) if cond is not None else true_(l.outer)
            try:
                doc.rules[name] = Rule(name, l, r, c)
            except ValueError as ex:
                raise self.err(str(ex)) from None
        elif kind == "rel":
            _, _, items = d
            triples = []
            for k, (a, b, c) in enumerate(items):
                ca, cb = self.cospan(a), self.cospan(b)
                cond = self.expr(c, ca.outer) if c is not None else true_(ca.outer)
                try:
                    triples.append(ConditionalTriple(ca, cb, cond, f"{name}[{k}]"))
                except ValueError as ex:
                    raise self.err(f"triple ({a}, {b}): {ex}") from None
            doc.relations[name] = ConditionalRelation.of(triples)
        elif kind == "set":
            _, key, value = d
            if key == "assume":
                doc.assumptions.append(value)
            else:
                doc.settings[key] = value


def parse(text: str) -> Document:
    """Parse and resolve a document; raises :class:`DSLError` with a location."""
    p = _Parser(text)
    located = p.document()
    doc = Document([d for d, _ in located])
    res = _Resolver(doc)
    for d, pos in located:
        res.pos = pos
        res.decl(d)
    return doc


def parse_file(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def print_document(doc: Document) -> str:
    return "\n".join(_print_decl(d) for d in doc.decls) + "\n"


parse_document = parse

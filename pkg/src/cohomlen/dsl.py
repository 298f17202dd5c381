"""Parsers and printers for the tiny ideal/graph input languages.

Ideal syntax:   ``ring 5; ideal x1*x2, x2*x3, x3*x4, x4*x5;``
Graph syntax:   ``graph 5; edges 1-2, 2-3, 3-4, 4-5;``

Whitespace is insignificant, variable indices are 1-based, an omitted
exponent means 1, and the bare term ``1`` denotes the unit ideal.  Parse
errors carry 1-based line/column positions.
"""

from __future__ import annotations

from .errors import ParseError
from .graphs import Graph
from .ideals import MonomialIdeal, minimalize


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _line_col(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        start = self.text.rfind("\n", 0, pos) + 1
        return line, pos - start + 1

    def error(self, message: str, pos: int | None = None) -> ParseError:
        line, col = self._line_col(self.pos if pos is None else pos)
        return ParseError(message, line, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a keyword")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])


def parse_ideal(text: str) -> MonomialIdeal:
    sc = _Scanner(text)
    if sc.word() != "ring":
        raise sc.error("ideal source must start with 'ring <d>;'")
    dim = sc.integer()
    if dim < 1:
        raise sc.error("ring dimension must be >= 1")
    sc.expect(";")
    kw_pos = sc.pos
    if sc.word() != "ideal":
        raise sc.error("expected 'ideal <term>, ...;'", kw_pos)
    gens = []
    while True:
        gens.append(_parse_term(sc, dim))
        if sc.accept(","):
            continue
        sc.expect(";")
        break
    if not sc.at_end():
        raise sc.error("trailing input after final ';'")
    return minimalize(gens, dim)


def _parse_term(sc: _Scanner, dim: int) -> tuple[int, ...]:
    exps = [0] * dim
    while True:
        sc.skip_ws()
        if sc.peek() == "1":
            sc.pos += 1
        elif sc.peek() == "x":
            sc.pos += 1
            idx_pos = sc.pos
            idx = sc.integer()
            if not 1 <= idx <= dim:
                raise sc.error(f"variable index {idx} outside 1..{dim}", idx_pos)
            exp = 1
            if sc.accept("^"):
                exp_pos = sc.pos
                exp = sc.integer()
                if exp < 1:
                    raise sc.error("exponent must be >= 1", exp_pos)
            exps[idx - 1] += exp
        else:
            raise sc.error("expected a factor 'x<i>', 'x<i>^<e>' or '1'")
        if not sc.accept("*"):
            return tuple(exps)


def emit_ideal(ideal: MonomialIdeal) -> str:
    terms = []
    for g in ideal.gens:
        factors = [
            f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
            for i, e in enumerate(g)
            if e
        ]
        terms.append("*".join(factors) if factors else "1")
    body = ", ".join(terms) if terms else ""
    if not terms:
        raise ValueError("the zero ideal has no DSL form")
    return f"ring {ideal.dim}; ideal {body};"


def parse_graph(text: str) -> Graph:
    sc = _Scanner(text)
    if sc.word() != "graph":
        raise sc.error("graph source must start with 'graph <d>;'")
    d = sc.integer()
    if d < 1:
        raise sc.error("vertex count must be >= 1")
    sc.expect(";")
    kw_pos = sc.pos
    if sc.word() != "edges":
        raise sc.error("expected 'edges a-b, ...;'", kw_pos)
    edges = []
    if not sc.accept(";"):
        while True:
            upos = sc.pos
            u = sc.integer()
            sc.expect("-")
            vpos = sc.pos
            v = sc.integer()
            if not 1 <= u <= d:
                raise sc.error(f"vertex {u} outside 1..{d}", upos)
            if not 1 <= v <= d:
                raise sc.error(f"vertex {v} outside 1..{d}", vpos)
            if u == v:
                raise sc.error("loops are not allowed", upos)
            edges.append((u, v))
            if sc.accept(","):
                continue
            sc.expect(";")
            break
    if not sc.at_end():
        raise sc.error("trailing input after final ';'")
    return Graph.from_edges(d, edges)


def emit_graph(graph: Graph) -> str:
    pairs = ", ".join(f"{u}-{v}" for u, v in graph.sorted_edges())
    return f"graph {graph.ambient}; edges {pairs};"

"""Tiny expression language for building graphs on the command line.

Atoms:      K:n  Kbar:n  P:n  C:n  Q:d  circ:n:s1,s2,...  file:PATH
Operators:  cart(e,e)  weak(e,e)  lex(e,e)  glex(e,c,e)  join(e,e)
            doublecone(e;b=0|1;alpha=REAL)  gluedcone(e;conn)
            cylcone(e;e;e)  p4(w=REAL;loop=REAL)  scale(e;REAL)

Whitespace is insignificant everywhere except inside a file path. Commas
separate homogeneous graph arguments; semicolons separate heterogeneous
ones. Inside a circulant connection set, a comma continues the set only
when an integer follows, so circ atoms compose cleanly with comma-separated
operator arguments.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Tuple, Union

from .cones import cylindrical_cone, double_cone, glued_double_cone, weighted_p4
from .errors import ExprError, GraphFormatError
from .graphs import (
    Graph,
    circulant,
    complete,
    cycle,
    empty_graph,
    hypercube,
    join,
    parse_graph,
    path_graph,
    scale,
)
from .products import (
    cartesian_product,
    generalized_lexicographic_product,
    lexicographic_product,
    weak_product,
)

__all__ = ["GraphExpr", "parse_expr", "format_expr", "eval_expr"]

ParamValue = Union[int, float, str, Tuple[int, ...]]

_SIZED_ATOMS = ("K", "Kbar", "P", "C", "Q")
_PAIR_OPS = ("cart", "weak", "lex", "join")
_PATH_DELIMS = set("(),;") | set(" \t\r\n")


@dataclass(frozen=True)
class GraphExpr:
    op: str
    args: Tuple["GraphExpr", ...] = ()
    params: Tuple[Tuple[str, ParamValue], ...] = field(default_factory=tuple)

    def param(self, name: str) -> ParamValue:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ExprError:
        return ExprError(message, self.pos if pos is None else pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.peek() != ch:
            raise self.error(f"expected '{ch}'")
        self.pos += 1

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and (
            self.text[self.pos].isalpha() or self.text[self.pos] == "_"
        ):
            self.pos += 1
            # later characters may be digits, so heads like "p4" lex whole
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
        if self.pos == start:
            raise self.error("expected a name")
        return self.text[start : self.pos]

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def real(self) -> float:
        self.skip_ws()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        digits = False
        while self.peek().isdigit():
            self.pos += 1
            digits = True
        if self.peek() == ".":
            self.pos += 1
            while self.peek().isdigit():
                self.pos += 1
                digits = True
        if not digits:
            raise self.error("expected a number", start)
        if self.peek() in "eE":
            mark = self.pos
            self.pos += 1
            if self.peek() in "+-":
                self.pos += 1
            if not self.peek().isdigit():
                self.pos = mark
            else:
                while self.peek().isdigit():
                    self.pos += 1
        return float(self.text[start : self.pos])

    def named_real(self, key: str) -> float:
        self.skip_ws()
        got = self.name()
        if got != key:
            raise self.error(f"expected parameter '{key}', got '{got}'")
        self.expect("=")
        return self.real()

    def file_path(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _PATH_DELIMS:
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a file path")
        return self.text[start : self.pos]

    def circ_jumps(self) -> Tuple[int, ...]:
        jumps = [self.uint()]
        while True:
            mark = self.pos
            self.skip_ws()
            if self.peek() != ",":
                self.pos = mark
                break
            self.pos += 1
            self.skip_ws()
            if not self.peek().isdigit():
                # The comma belongs to an enclosing argument list.
                self.pos = mark
                break
            jumps.append(self.uint())
        return tuple(jumps)

    def expr(self) -> GraphExpr:
        self.skip_ws()
        head = self.name()
        if head in _SIZED_ATOMS:
            self.expect(":")
            return GraphExpr(head, params=(("n", self.uint()),))
        if head == "circ":
            self.expect(":")
            n = self.uint()
            self.expect(":")
            return GraphExpr("circ", params=(("n", n), ("jumps", self.circ_jumps())))
        if head == "file":
            self.expect(":")
            return GraphExpr("file", params=(("path", self.file_path()),))
        if head in _PAIR_OPS:
            self.expect("(")
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return GraphExpr(head, args=(a, b))
        if head == "glex":
            self.expect("(")
            a = self.expr()
            self.expect(",")
            c = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return GraphExpr("glex", args=(a, c, b))
        if head == "doublecone":
            self.expect("(")
            base = self.expr()
            self.expect(";")
            b_val = int(self.named_real("b"))
            self.expect(";")
            alpha = self.named_real("alpha")
            self.expect(")")
            return GraphExpr(
                "doublecone", args=(base,), params=(("b", b_val), ("alpha", alpha))
            )
        if head == "gluedcone":
            self.expect("(")
            g = self.expr()
            self.expect(";")
            conn = self.expr()
            self.expect(")")
            return GraphExpr("gluedcone", args=(g, conn))
        if head == "cylcone":
            self.expect("(")
            g1 = self.expr()
            self.expect(";")
            mid = self.expr()
            self.expect(";")
            g2 = self.expr()
            self.expect(")")
            return GraphExpr("cylcone", args=(g1, mid, g2))
        if head == "p4":
            self.expect("(")
            w = self.named_real("w")
            loop = 0.0
            self.skip_ws()
            if self.peek() == ";":
                self.pos += 1
                loop = self.named_real("loop")
            self.expect(")")
            return GraphExpr("p4", params=(("w", w), ("loop", loop)))
        if head == "scale":
            self.expect("(")
            e = self.expr()
            self.expect(";")
            factor = self.real()
            self.expect(")")
            return GraphExpr("scale", args=(e,), params=(("factor", factor),))
        raise self.error(f"unknown name '{head}'", self.pos - len(head))


def parse_expr(text: str) -> GraphExpr:
    parser = _Parser(text)
    node = parser.expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("unexpected trailing characters")
    return node


def _fmt_real(x: float) -> str:
    return repr(float(x))


def format_expr(node: GraphExpr) -> str:
    """Canonical text form; parse(format_expr(e)) reproduces e."""
    op = node.op
    if op in _SIZED_ATOMS:
        return f"{op}:{node.param('n')}"
    if op == "circ":
        jumps = ",".join(str(j) for j in node.param("jumps"))
        return f"circ:{node.param('n')}:{jumps}"
    if op == "file":
        return f"file:{node.param('path')}"
    if op in _PAIR_OPS or op == "glex":
        return f"{op}(" + ",".join(format_expr(a) for a in node.args) + ")"
    if op == "doublecone":
        return (
            f"doublecone({format_expr(node.args[0])};b={node.param('b')};"
            f"alpha={_fmt_real(node.param('alpha'))})"
        )
    if op == "gluedcone":
        return f"gluedcone({format_expr(node.args[0])};{format_expr(node.args[1])})"
    if op == "cylcone":
        return "cylcone(" + ";".join(format_expr(a) for a in node.args) + ")"
    if op == "p4":
        return f"p4(w={_fmt_real(node.param('w'))};loop={_fmt_real(node.param('loop'))})"
    if op == "scale":
        return f"scale({format_expr(node.args[0])};{_fmt_real(node.param('factor'))})"
    raise ValueError(f"unprintable node {op!r}")


def _load_graph_file(path: str) -> Graph:
    if not os.path.exists(path):
        raise GraphFormatError(f"graph file not found: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def eval_expr(node: GraphExpr) -> Graph:
    op = node.op
    if op == "K":
        return complete(node.param("n"))
    if op == "Kbar":
        return empty_graph(node.param("n"))
    if op == "P":
        return path_graph([1.0] * (node.param("n") - 1))
    if op == "C":
        return cycle(node.param("n"))
    if op == "Q":
        return hypercube(node.param("n"))
    if op == "circ":
        return circulant(node.param("n"), node.param("jumps"))
    if op == "file":
        return _load_graph_file(node.param("path"))
    if op == "cart":
        return cartesian_product(eval_expr(node.args[0]), eval_expr(node.args[1]))
    if op == "weak":
        return weak_product(eval_expr(node.args[0]), eval_expr(node.args[1]))
    if op == "lex":
        return lexicographic_product(eval_expr(node.args[0]), eval_expr(node.args[1]))
    if op == "join":
        return join(eval_expr(node.args[0]), eval_expr(node.args[1]))
    if op == "glex":
        return generalized_lexicographic_product(
            eval_expr(node.args[0]), eval_expr(node.args[1]), eval_expr(node.args[2])
        )
    if op == "doublecone":
        return double_cone(
            eval_expr(node.args[0]), node.param("b"), node.param("alpha")
        )
    if op == "gluedcone":
        g = eval_expr(node.args[0])
        return glued_double_cone(g, g, eval_expr(node.args[1]))
    if op == "cylcone":
        return cylindrical_cone(
            eval_expr(node.args[0]), eval_expr(node.args[1]), eval_expr(node.args[2])
        )
    if op == "p4":
        return weighted_p4(node.param("w"), node.param("loop"))
    if op == "scale":
        return scale(eval_expr(node.args[0]), node.param("factor"))
    raise ValueError(f"unevaluable node {op!r}")

"""Bracket notation for schemes of ovals.

Grammar (whitespace ignored)::

    expr := item (SEP item)*
    item := COUNT ['<' expr '>'] | 'J'
    SEP  := '+' | '⊔' | 'u'

``n`` alone means n empty ovals, ``n<e>`` means n ovals each containing
a copy of ``e``, and ``J`` is a one-sided component.  Parse errors
report 0-based byte offsets into the UTF-8 encoding of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .diagram import (
    MINUS,
    PLUS,
    Arc,
    Constituent,
    CurveDiagram,
    Face,
    WSpec,
)


class SchemeError(ValueError):
    """Syntax or semantic error in a scheme string."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


@dataclass(frozen=True)
class OneSided:
    def render(self) -> str:
        return "J"


@dataclass(frozen=True)
class Ovals:
    count: int
    contents: "SchemeExpr"

    def render(self) -> str:
        if not self.contents.items:
            return str(self.count)
        return f"{self.count}<{self.contents.render()}>"


SchemeItem = Union[Ovals, OneSided]


@dataclass(frozen=True)
class SchemeExpr:
    items: tuple[SchemeItem, ...] = ()

    def render(self) -> str:
        return "+".join(item.render() for item in self.items)

    def __str__(self) -> str:
        return self.render()

    @property
    def has_one_sided(self) -> bool:
        return any(isinstance(i, OneSided) for i in self.items)

    def oval_count(self) -> int:
        return sum(i.count * (1 + i.contents.oval_count()) for i in self.items if isinstance(i, Ovals))

    def depth(self) -> int:
        """Nesting depth: 0 for the empty scheme, 1 for empty ovals only."""
        return max((1 + i.contents.depth() for i in self.items if isinstance(i, Ovals)), default=0)


def _item_key(item: SchemeItem) -> tuple:
    if isinstance(item, OneSided):
        return (0, 0, "")
    return (1, item.contents.depth(), item.render())


def canonicalize(expr: SchemeExpr) -> SchemeExpr:
    """Sort siblings (J first, then by depth and rendering) and merge equal ones."""
    merged: dict[SchemeExpr, int] = {}
    one_sided = False
    for item in expr.items:
        if isinstance(item, OneSided):
            one_sided = True
            continue
        inner = canonicalize(item.contents)
        merged[inner] = merged.get(inner, 0) + item.count
    items: list[SchemeItem] = [Ovals(n, inner) for inner, n in merged.items()]
    items.sort(key=_item_key)
    if one_sided:
        items.insert(0, OneSided())
    return SchemeExpr(tuple(items))


def render(expr: SchemeExpr) -> str:
    return canonicalize(expr).render()


class _Parser:
    SEPARATORS = ("+", "⊔", "u")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.j_count = 0

    def offset(self, pos: int | None = None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg: str, pos: int | None = None) -> SchemeError:
        return SchemeError(msg, self.offset(pos))

    def expr(self, depth: int) -> SchemeExpr:
        items = [self.item(depth)]
        while self.peek() in self.SEPARATORS and self.peek():
            self.pos += 1
            items.append(self.item(depth))
        return SchemeExpr(tuple(items))

    def item(self, depth: int) -> SchemeItem:
        c = self.peek()
        start = self.pos
        if c == "J":
            self.pos += 1
            self.j_count += 1
            if depth > 0:
                raise self.error("one-sided component 'J' cannot be nested inside an oval", start)
            if self.j_count > 1:
                raise self.error("at most one one-sided component 'J' is allowed", start)
            return OneSided()
        if not c.isdigit() or not c.isascii():
            what = repr(c) if c else "end of input"
            raise self.error(f"expected an oval count or 'J', found {what}", start)
        while self.pos < len(self.text) and self.text[self.pos].isascii() and self.text[self.pos].isdigit():
            self.pos += 1
        count = int(self.text[start:self.pos])
        if count == 0:
            raise self.error("oval multiplicity must be positive", start)
        contents = SchemeExpr()
        if self.peek() == "<":
            self.pos += 1
            contents = self.expr(depth + 1)
            if self.peek() != ">":
                found = repr(self.peek()) if self.peek() else "end of input"
                raise self.error(f"expected '>', found {found}")
            self.pos += 1
        return Ovals(count, contents)

    def parse(self) -> SchemeExpr:
        if not self.peek():
            return SchemeExpr()
        e = self.expr(0)
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return e


def parse_scheme(text: str) -> SchemeExpr:
    return _Parser(text).parse()


def expand_scheme(expr: SchemeExpr | str, degree: int) -> CurveDiagram:
    """Diagram of a nonsingular curve with the given scheme.

    Ids follow a preorder walk of the canonical form: oval ``i`` gets arc
    ``a{i}``, constituent ``c{i}`` and inner face ``f{i}``; the outer face
    is ``f0`` and hosts w.
    """
    if isinstance(expr, str):
        expr = parse_scheme(expr)
    if degree < 2 or degree % 2:
        raise SchemeError(f"degree must be even and at least 2, got {degree}")
    if expr.has_one_sided:
        raise SchemeError("schemes with a one-sided component need odd degree; not supported")
    expr = canonicalize(expr)

    arcs: list[Arc] = []
    cons: list[Constituent] = []
    faces: list[Face] = []

    def walk(e: SchemeExpr, depth: int) -> list[str]:
        """Create ovals for ``e``; return the arc ids of its top-level ovals."""
        tops = []
        for item in e.items:
            for _ in range(item.count):
                i = len(arcs) + 1
                aid = f"a{i}"
                arcs.append(Arc(aid, None, True))
                cons.append(Constituent(f"c{i}", ((aid, True),)))
                slot = len(faces)
                faces.append(None)  # placeholder keeps preorder numbering
                children = walk(item.contents, depth + 1)
                side = PLUS if depth % 2 == 0 else MINUS
                faces[slot] = Face(f"f{i}", 1 - len(children), True, (aid, *children), side)
                tops.append(aid)
        return tops

    tops = walk(expr, 0)
    outer = Face("f0", 1 - len(tops), False, tuple(tops), MINUS)
    return CurveDiagram(arcs=tuple(arcs), constituents=tuple(cons), faces=(outer, *faces), w=WSpec("f0"))

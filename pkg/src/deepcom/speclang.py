"""The group-specification mini-language used on the command line.

Grammar (whitespace between tokens is ignored)::

    spec   := atom ("x" atom)*
    atom   := family | "V4" | "table:" path | "sg64_182"
    family := ("C" | "D" | "Q" | "SD" | "S" | "A") integer
    path   := '"' any characters except '"' '"'  |  run of non-blank characters

Family letters are upper case.  ``D8`` is the dihedral group of order 8 and
``V4`` is the Klein four-group.  An unquoted path runs to the next blank, so a
product following a table file needs a blank first: ``table:k.json x C2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from pathlib import Path
from typing import Union

from .errors import BadParameter, CapExceeded, ParseError
from .families import (REALIZE_CAP, check_family_parameter, direct_product, family_order,
                       load_fixture, make_family)
from .group import Group, load_table_file


@dataclass(frozen=True)
class Family:
    kind: str
    parameter: int


@dataclass(frozen=True)
class TableFile:
    path: str


@dataclass(frozen=True)
class Fixture:
    name: str


@dataclass(frozen=True)
class Product:
    factors: tuple


GroupSpec = Union[Family, TableFile, Fixture, Product]

_ATOM_START = ("SD", "C", "D", "Q", "S", "A", "V4", "table:", "sg64_182")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str, expected=()):
        raise ParseError(message, self.offset(), expected)

    def offset(self) -> int:
        return len(self.text[:self.pos].encode("utf-8"))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def spec(self) -> GroupSpec:
        atoms = [self.atom()]
        while True:
            self.skip()
            if self.pos == len(self.text):
                break
            if not self.peek("x"):
                self.fail(f"unexpected {self.text[self.pos]!r}", ("x", "end of input"))
            self.pos += 1
            atoms.append(self.atom())
        return atoms[0] if len(atoms) == 1 else Product(tuple(atoms))

    def atom(self) -> GroupSpec:
        self.skip()
        if self.pos == len(self.text):
            self.fail("unexpected end of input", _ATOM_START)
        if self.peek("sg64_182"):
            self.pos += len("sg64_182")
            return Fixture("sg64_182")
        if self.peek("table:"):
            self.pos += len("table:")
            return TableFile(self.path())
        if self.peek("V4"):
            self.pos += 2
            return Family("V", 4)
        for kind in ("SD", "C", "D", "Q", "S", "A"):
            if self.peek(kind):
                self.pos += len(kind)
                n = self.integer()
                check_family_parameter(kind, n)
                return Family(kind, n)
        self.fail(f"unexpected {self.text[self.pos]!r}", _ATOM_START)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            self.fail("missing integer parameter", ("integer",))
        return int(self.text[start:self.pos])

    def path(self) -> str:
        self.skip()
        if self.peek('"'):
            end = self.text.find('"', self.pos + 1)
            if end < 0:
                self.fail("unterminated quoted path", ('"',))
            path = self.text[self.pos + 1:end]
            self.pos = end + 1
        else:
            start = self.pos
            while self.pos < len(self.text) and not self.text[self.pos].isspace():
                if self.text[self.pos] == '"':
                    self.fail("quote inside an unquoted path", ("blank", "end of input"))
                self.pos += 1
            path = self.text[start:self.pos]
        if not path:
            self.fail("empty table path", ("path",))
        return path


def parse_spec(text: str) -> GroupSpec:
    """Parse a group spec; raises ParseError (with byte offset) or BadParameter."""
    if not isinstance(text, str):
        raise ParseError("spec must be a string", 0)
    return _Parser(text).spec()


def format_spec(spec: GroupSpec) -> str:
    """Canonical text; ``parse_spec(format_spec(s)) == s``."""
    if isinstance(spec, Family):
        return f"{spec.kind}{spec.parameter}"
    if isinstance(spec, TableFile):
        return f'table:"{spec.path}"'
    if isinstance(spec, Fixture):
        return spec.name
    return "x".join(format_spec(f) for f in spec.factors)


def estimated_order(spec: GroupSpec) -> int | None:
    """Order of the realized group, or None when a table file is involved."""
    if isinstance(spec, Family):
        return 4 if spec.kind == "V" else family_order(spec.kind, spec.parameter)
    if isinstance(spec, Fixture):
        return 64
    if isinstance(spec, TableFile):
        return None
    orders = [estimated_order(f) for f in spec.factors]
    return None if None in orders else prod(orders)


def realize(spec: GroupSpec | str, cap: int = REALIZE_CAP, base_dir=None) -> Group:
    """Build the group a spec describes; products are formed left to right."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    est = estimated_order(spec)
    if est is not None and est > cap:
        raise CapExceeded(f"{format_spec(spec)} has order {est} > cap {cap}")
    if isinstance(spec, Family):
        if spec.kind == "V":
            return direct_product(make_family("C", 2), make_family("C", 2), name="V4")
        return make_family(spec.kind, spec.parameter, cap=cap)
    if isinstance(spec, Fixture):
        return load_fixture(spec.name)
    if isinstance(spec, TableFile):
        path = Path(spec.path)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        G = load_table_file(path)
        if G.order > cap:
            raise CapExceeded(f"{path} has order {G.order} > cap {cap}")
        return G
    factors = [realize(f, cap, base_dir) for f in spec.factors]
    return direct_product(*factors, cap=cap, name=format_spec(spec))


__all__ = ["Family", "TableFile", "Fixture", "Product", "GroupSpec", "parse_spec",
           "format_spec", "realize", "estimated_order", "BadParameter"]

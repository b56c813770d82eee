"""Parser for the group-spec mini-language.

Grammar (LL(1), whitespace insignificant):

    spec   := atom ('*' atom)*
    atom   := 'C' '(' num ')' | 'D' '(' num ')' | 'S' '(' num ')'
            | 'A' '(' num ')' | 'F' '(' num ',' num ')'
            | 'SD' '(' num ',' num ',' num ')'
            | 'MAT' '(' num ';' matrix (',' matrix)* ')' | 'Q8'
    matrix := '[' row (',' row)* ']'
    row    := '[' num (',' num)* ']'

D takes the full group order 2m; F(p,d) is shorthand for SD(p,1,d).
Syntax problems raise SpecSyntaxError with the offending offset; semantic
problems (parameter constraints) raise ConstructionError.
"""

from __future__ import annotations

from typing import List, Tuple

from .constructions import (
    Alternating,
    Cyclic,
    Dihedral,
    DirectProduct,
    FieldSemidirect,
    GroupSpec,
    MatrixSemidirect,
    Quaternion8,
    Symmetric,
    to_text,
    validate_spec,
)
from .errors import ConstructionError, SpecSyntaxError


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def _skip(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def _expect(self, ch: str) -> None:
        if self._peek() != ch:
            raise SpecSyntaxError(f"expected {ch!r}", self.i)
        self.i += 1

    def _number(self) -> int:
        self._skip()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == start:
            raise SpecSyntaxError("expected a number", start)
        return int(self.text[start : self.i])

    def _name(self) -> Tuple[str, int]:
        self._skip()
        start = self.i
        if self.i >= len(self.text) or not self.text[self.i].isalpha():
            raise SpecSyntaxError("expected a group kind", self.i)
        while self.i < len(self.text) and self.text[self.i].isalnum():
            self.i += 1
        return self.text[start : self.i], start

    def _args(self, count: int) -> List[int]:
        self._expect("(")
        out = [self._number()]
        for _ in range(count - 1):
            self._expect(",")
            out.append(self._number())
        self._expect(")")
        return out

    def _row(self) -> Tuple[int, ...]:
        self._expect("[")
        out = [self._number()]
        while self._peek() == ",":
            self.i += 1
            out.append(self._number())
        self._expect("]")
        return tuple(out)

    def _matrix(self) -> Tuple[Tuple[int, ...], ...]:
        self._expect("[")
        rows = [self._row()]
        while self._peek() == ",":
            self.i += 1
            rows.append(self._row())
        self._expect("]")
        return tuple(rows)

    def _atom(self) -> GroupSpec:
        kw, at = self._name()
        if kw == "Q8":
            return Quaternion8()
        if kw == "C":
            return Cyclic(self._args(1)[0])
        if kw == "D":
            n = self._args(1)[0]
            if n % 2 != 0:
                raise ConstructionError(f"dihedral spec takes the even group order 2m, got {n}")
            return Dihedral(n // 2)
        if kw == "S":
            return Symmetric(self._args(1)[0])
        if kw == "A":
            return Alternating(self._args(1)[0])
        if kw == "F":
            p, d = self._args(2)
            return FieldSemidirect(p, 1, d)
        if kw == "SD":
            p, a, d = self._args(3)
            return FieldSemidirect(p, a, d)
        if kw == "MAT":
            self._expect("(")
            p = self._number()
            self._expect(";")
            mats = [self._matrix()]
            while self._peek() == ",":
                self.i += 1
                mats.append(self._matrix())
            self._expect(")")
            return MatrixSemidirect(p, tuple(mats))
        raise SpecSyntaxError(f"unknown group kind {kw!r}", at)

    def parse(self) -> GroupSpec:
        spec = self._atom()
        while self._peek() == "*":
            self.i += 1
            spec = DirectProduct(spec, self._atom())
        self._skip()
        if self.i != len(self.text):
            raise SpecSyntaxError("unexpected trailing input", self.i)
        return spec


def parse_group_spec(text: str) -> GroupSpec:
    """Parse and validate a group spec; see the module grammar."""
    spec = _Parser(text).parse()
    validate_spec(spec)
    return spec


__all__ = ["parse_group_spec", "to_text"]

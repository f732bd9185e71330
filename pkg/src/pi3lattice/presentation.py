"""Finite group presentations and their text syntax.

The accepted syntax is::

    gens: x, y ; rels: x^2=y^2, x*y*x=y

Words are ``*``-separated terms ``name`` or ``name^k`` (``k`` a signed
integer).  A relation ``u=v`` is stored as the relator ``u v^-1``.
Whitespace is insignificant and ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

Letter = tuple[int, int]  # (generator index, +1 or -1)
Word = tuple[Letter, ...]

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INT = re.compile(r"[+-]?[0-9]+")


class PresentationError(ValueError):
    """Malformed presentation text, with 1-based line/column of the fault."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("generator names must be distinct")
        for name in self.generators:
            if not _NAME.fullmatch(name):
                raise PresentationError(f"invalid generator name {name!r}")
        for rel in self.relators:
            if not rel:
                raise PresentationError("empty relator")
            for gen, exp in rel:
                if not 0 <= gen < len(self.generators) or exp not in (1, -1):
                    raise PresentationError(f"invalid letter {(gen, exp)!r}")

    @property
    def cell_counts(self) -> tuple[int, int, int]:
        return 1, len(self.generators), len(self.relators)

    def format_word(self, word: Word) -> str:
        if not word:
            return "e"
        parts = []
        i = 0
        while i < len(word):
            gen, exp = word[i]
            j = i
            while j < len(word) and word[j] == (gen, exp):
                j += 1
            power = (j - i) * exp
            name = self.generators[gen]
            parts.append(name if power == 1 else f"{name}^{power}")
            i = j
        return "*".join(parts)

    def __str__(self) -> str:
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"gens: {', '.join(self.generators)} ; rels: {rels}"


def free_reduce(word) -> Word:
    out: list[Letter] = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def location(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message: str, pos: int | None = None) -> PresentationError:
        line, col = self.location(pos)
        return PresentationError(message, line, col)

    def skip(self) -> None:
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "#":
                nl = text.find("\n", self.pos)
                self.pos = len(text) if nl < 0 else nl
            else:
                break

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str) -> None:
        self.skip()
        if not self.text.startswith(token, self.pos):
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected {token!r}, found {found!r}")
        self.pos += len(token)

    def match(self, pattern: re.Pattern, what: str) -> tuple[str, int]:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        start = self.pos
        self.pos = m.end()
        return m.group(), start


def parse_presentation(text: str) -> GroupPresentation:
    """Parse presentation text into a :class:`GroupPresentation`."""
    sc = _Scanner(text)
    sc.expect("gens")
    sc.expect(":")
    names: list[str] = []
    while True:
        name, start = sc.match(_NAME, "a generator name")
        if name in names:
            raise sc.error(f"duplicate generator {name!r}", start)
        names.append(name)
        if sc.peek() != ",":
            break
        sc.expect(",")
    index = {n: i for i, n in enumerate(names)}
    sc.expect(";")
    sc.expect("rels")
    sc.expect(":")

    def word() -> Word:
        letters: list[Letter] = []
        while True:
            name, start = sc.match(_NAME, "a generator name")
            if name not in index:
                raise sc.error(f"unknown generator {name!r}", start)
            power = 1
            if sc.peek() == "^":
                sc.expect("^")
                power = int(sc.match(_INT, "an integer exponent")[0])
            sign = 1 if power > 0 else -1
            letters.extend([(index[name], sign)] * abs(power))
            if sc.peek() != "*":
                return tuple(letters)
            sc.expect("*")

    relators: list[Word] = []
    while True:
        sc.skip()
        start = sc.pos
        lhs = word()
        if sc.peek() == "=":
            sc.expect("=")
            lhs = lhs + invert_word(word())
        rel = free_reduce(lhs)
        if not rel:
            raise sc.error("relator is empty after normalization", start)
        relators.append(rel)
        if sc.peek() != ",":
            break
        sc.expect(",")
    if sc.peek():
        raise sc.error(f"unexpected {sc.peek()!r}")
    return GroupPresentation(tuple(names), tuple(relators))

"""Finite presentations and their text format.

File format (UTF-8)::

    gens: x, y
    rels: x^2, y^4, (x*y)^8

``word ::= term ('*' term)*``, ``term ::= name | '(' word ')' | term '^' integer``.
Blank lines and ``#`` comments are ignored.  A subgroup file uses the same word
syntax on a ``subgroup:`` line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import Alphabet, Word, cyclic_reduce


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]

    def __init__(self, alphabet: Alphabet | Sequence[str], relators: Iterable[Word] = ()):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        rels = []
        for r in relators:
            r = cyclic_reduce(r)
            if not r:
                raise ValueError("relator reduces to the empty word")
            if any(abs(a) > len(alphabet) for a in r):
                raise ValueError(f"relator {r} uses letters outside the alphabet")
            rels.append(r)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.alphabet)

    def gens(self) -> list[Word]:
        return self.alphabet.gens()

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.alphabet, self.relators + tuple(extra))

    def __str__(self):
        return format_presentation(self)


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>-?\d+)|(?P<op>[*^(),]))")


class _Lexer:
    def __init__(self, text: str, line: int, offset: int):
        self.tokens: list[tuple[str, str, int]] = []
        self.line = line
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if m is None:
                bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise PresentationSyntaxError(f"unexpected character {text[bad]!r}", line, bad + offset + 1)
            kind = m.lastgroup
            col = m.start(kind) + offset + 1
            self.tokens.append((kind, m.group(kind), col))
            pos = m.end()
        self.end_col = len(text) + offset + 1
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.end_col)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message, col=None):
        if col is None:
            col = self.peek()[2]
        raise PresentationSyntaxError(message, self.line, col)


def _parse_word(lx: _Lexer, alphabet: Alphabet) -> Word:
    w = _parse_term(lx, alphabet)
    while lx.peek()[1] == "*":
        lx.take()
        w = w * _parse_term(lx, alphabet)
    return w


def _parse_term(lx: _Lexer, alphabet: Alphabet) -> Word:
    kind, value, col = lx.take()
    if kind == "name":
        if value not in alphabet.names:
            lx.error(f"unknown generator {value!r}", col)
        w = alphabet.gen(value)
    elif value == "(":
        w = _parse_word(lx, alphabet)
        k, v, c = lx.take()
        if v != ")":
            lx.error("expected ')'", c)
    else:
        lx.error("expected generator name or '('", col)
    while lx.peek()[1] == "^":
        _, _, caret = lx.take()
        k, v, c = lx.take()
        if k != "int":
            lx.error("expected integer exponent after '^'", caret)
        w = w ** int(v)
    return w


def _parse_word_list(text: str, alphabet: Alphabet, line: int, offset: int) -> list[Word]:
    lx = _Lexer(text, line, offset)
    words = []
    if lx.peek()[0] is None:
        return words
    while True:
        words.append(_parse_word(lx, alphabet))
        kind, value, col = lx.take()
        if kind is None:
            return words
        if value != ",":
            lx.error("expected ',' or '*'", col)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    lx = _Lexer(text, 1, 0)
    w = _parse_word(lx, alphabet)
    if lx.peek()[0] is not None:
        lx.error("trailing input")
    return w


def _sections(text: str) -> dict[str, tuple[str, int, int]]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise PresentationSyntaxError("expected 'key: value'", lineno, 1)
        key = key.strip()
        if key in out:
            raise PresentationSyntaxError(f"duplicate section {key!r}", lineno, 1)
        out[key] = (rest, lineno, line.index(":") + 1)
    return out


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation file format; relators are cyclically reduced."""
    sections = _sections(text)
    if "gens" not in sections:
        raise PresentationSyntaxError("missing 'gens:' line", 1, 1)
    gtext, gline, goff = sections["gens"]
    names = [n.strip() for n in gtext.split(",")] if gtext.strip() else []
    for n in names:
        if not n.isidentifier():
            raise PresentationSyntaxError(f"invalid generator name {n!r}", gline, goff + gtext.find(n) + 1)
    if len(set(names)) != len(names):
        raise PresentationSyntaxError("duplicate generator names", gline, goff + 1)
    alphabet = Alphabet(names)
    rels = []
    if "rels" in sections:
        rtext, rline, roff = sections["rels"]
        for w in _parse_word_list(rtext, alphabet, rline, roff):
            if not cyclic_reduce(w):
                raise PresentationSyntaxError("relator reduces to the empty word", rline, roff + 1)
            rels.append(w)
    unknown = set(sections) - {"gens", "rels"}
    if unknown:
        raise PresentationSyntaxError(f"unexpected section(s) {sorted(unknown)}", 1, 1)
    return Presentation(alphabet, rels)


def parse_subgroup(text: str, alphabet: Alphabet) -> list[Word]:
    """Parse a ``subgroup: w1, w2, ...`` file against a presentation's alphabet."""
    sections = _sections(text)
    if set(sections) != {"subgroup"}:
        raise PresentationSyntaxError("expected exactly one 'subgroup:' line", 1, 1)
    stext, sline, soff = sections["subgroup"]
    return _parse_word_list(stext, alphabet, sline, soff)


def _format_plain(letters: tuple, alphabet: Alphabet) -> str:
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        a, n = letters[i], j - i
        name = alphabet.names[abs(a) - 1]
        e = n if a > 0 else -n
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return "*".join(parts)


def format_word(w: Word, alphabet: Alphabet) -> str:
    """Render a word; a proper power ``u^k`` of a multi-letter ``u`` prints as ``(u)^k``."""
    letters = w.letters
    if not letters:
        return ""
    n = len(letters)
    for period in range(1, n // 2 + 1):
        if n % period == 0 and letters[:period] * (n // period) == letters:
            if len(set(letters[:period])) > 1:
                return f"({_format_plain(letters[:period], alphabet)})^{n // period}"
            break
    return _format_plain(letters, alphabet)


def format_presentation(p: Presentation) -> str:
    gens = ", ".join(p.alphabet.names)
    rels = ", ".join(format_word(r, p.alphabet) for r in p.relators)
    return f"gens: {gens}\nrels: {rels}\n"


def format_subgroup(words: Sequence[Word], alphabet: Alphabet) -> str:
    return "subgroup: " + ", ".join(format_word(w, alphabet) for w in words) + "\n"

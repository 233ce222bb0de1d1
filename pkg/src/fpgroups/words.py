"""Alphabets and freely reduced words.

A letter is a nonzero integer: ``i + 1`` stands for generator ``i`` and
``-(i + 1)`` for its formal inverse.  Every :class:`Word` is freely reduced
on construction, so equality of words is equality in the free group.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

LetterLike = Union[int, str]


class Alphabet:
    """Ordered generator names, each paired with a formal inverse."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for name in names:
            if not isinstance(name, str) or not name.isidentifier():
                raise ValueError(f"invalid generator name: {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator symbol {name!r}") from None

    def letter(self, symbol: LetterLike) -> int:
        """Translate ``'x'``, ``'x^-1'`` or a signed index into a letter."""
        if isinstance(symbol, int) and not isinstance(symbol, bool):
            if symbol == 0 or abs(symbol) > len(self.names):
                raise ValueError(f"letter {symbol} outside alphabet of size {len(self.names)}")
            return symbol
        if isinstance(symbol, str):
            name, sign = symbol, 1
            if symbol.endswith("^-1"):
                name, sign = symbol[:-3], -1
            return sign * (self.index(name) + 1)
        raise ValueError(f"unknown symbol {symbol!r}")

    def gen(self, name: str) -> "Word":
        return Word((self.index(name) + 1,))

    def gens(self) -> list["Word"]:
        return [Word((i + 1,)) for i in range(len(self.names))]

    def word(self, text: str) -> "Word":
        """Parse a word written in the presentation-file syntax."""
        from .presentation import parse_word

        return parse_word(text, self)

    def format(self, w: "Word") -> str:
        from .presentation import format_word

        return format_word(w, self)


class Word:
    """An immutable freely reduced word."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[int] = ()):
        stack: list[int] = []
        for a in letters:
            if stack and stack[-1] == -a:
                stack.pop()
            else:
                stack.append(a)
        self.letters = tuple(stack)
        self._hash = None

    @classmethod
    def _trusted(cls, letters: tuple) -> "Word":
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = None
        return w

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._trusted(self.letters[item])
        return self.letters[item]

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __lt__(self, other):
        return (len(self), self.letters) < (len(other), other.letters)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __repr__(self):
        return f"Word({list(self.letters)})"

    def __mul__(self, other: "Word") -> "Word":
        a, b = self.letters, other.letters
        k = 0
        n = min(len(a), len(b))
        while k < n and a[-1 - k] == -b[k]:
            k += 1
        return Word._trusted(a[: len(a) - k] + b[k:])

    def inverse(self) -> "Word":
        return Word._trusted(tuple(-a for a in reversed(self.letters)))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        core, conj = cyclic_split(self)
        if not core.letters:
            return Word()
        return conj * Word._trusted(core.letters * n) * conj.inverse()

    def generators_used(self) -> set[int]:
        return {abs(a) - 1 for a in self.letters}

    def exponent_sums(self, ngens: int) -> list[int]:
        sums = [0] * ngens
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return sums


def free_reduce(raw: Sequence[LetterLike], alphabet: Alphabet | None = None) -> Word:
    """Freely reduce a raw letter sequence.

    Letters are signed indices, or symbol strings (``'x'``, ``'x^-1'``) when an
    alphabet is supplied.  Unknown symbols raise ``ValueError``.
    """
    if alphabet is None:
        letters = []
        for a in raw:
            if not isinstance(a, int) or isinstance(a, bool) or a == 0:
                raise ValueError(f"unknown symbol {a!r}")
            letters.append(a)
        return Word(letters)
    return Word(alphabet.letter(a) for a in raw)


def cyclic_split(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conj)`` with ``w == conj * core * conj^-1`` and core cyclically reduced."""
    a = w.letters
    i, j = 0, len(a) - 1
    while i < j and a[i] == -a[j]:
        i += 1
        j -= 1
    return Word._trusted(a[i : j + 1]), Word._trusted(a[:i])


def cyclic_reduce(w: Word) -> Word:
    return cyclic_split(w)[0]


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``, freely reduced."""
    return u * v * u.inverse() * v.inverse()


def cyclic_canonical(w: Word) -> tuple:
    """Key identifying a cyclic word up to rotation and inversion."""
    core = cyclic_reduce(w).letters
    if not core:
        return ()
    inv = tuple(-a for a in reversed(core))
    n = len(core)
    return min(min(core[k:] + core[:k] for k in range(n)), min(inv[k:] + inv[:k] for k in range(n)))

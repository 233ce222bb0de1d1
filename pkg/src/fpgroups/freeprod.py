"""Exact normal forms in a free product of two finite cyclic groups.

The default factor orders ``(2, 4)`` give ``A = <x>_2 * <y>_4``; generator 0
lives in the first factor and generator 1 in the second.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import Word


@dataclass(frozen=True)
class SyllableWord:
    """Alternating syllables ``(factor, exponent)`` with ``0 < exponent < order``."""

    syllables: tuple[tuple[int, int], ...]
    orders: tuple[int, int] = (2, 4)

    def __post_init__(self):
        for k, (f, e) in enumerate(self.syllables):
            if f not in (0, 1):
                raise ValueError(f"factor index {f} not in {{0, 1}}")
            if not 0 < e < self.orders[f]:
                raise ValueError(f"exponent {e} outside 1..{self.orders[f] - 1}")
            if k and self.syllables[k - 1][0] == f:
                raise ValueError("adjacent syllables from the same factor")

    def __len__(self):
        return len(self.syllables)

    def __mul__(self, other: "SyllableWord") -> "SyllableWord":
        if self.orders != other.orders:
            raise ValueError("factor orders differ")
        return _normalize(list(self.syllables) + list(other.syllables), self.orders)

    def is_identity(self) -> bool:
        return not self.syllables

    def to_word(self) -> Word:
        """Positive word over ``{x, y}`` representing the same element of A."""
        return Word(f + 1 for f, e in self.syllables for _ in range(e))

    def __str__(self):
        if not self.syllables:
            return "1"
        names = "xy"
        return "·".join(names[f] if e == 1 else f"{names[f]}^{e}" for f, e in self.syllables)


def _normalize(pieces, orders) -> SyllableWord:
    stack: list[list[int]] = []
    for f, e in pieces:
        e %= orders[f]
        if e == 0:
            continue
        if stack and stack[-1][0] == f:
            top = stack[-1]
            top[1] = (top[1] + e) % orders[f]
            if top[1] == 0:
                stack.pop()
        else:
            stack.append([f, e])
    return SyllableWord(tuple((f, e) for f, e in stack), tuple(orders))


def fp_normal_form(w: Word, orders: tuple[int, int] = (2, 4)) -> SyllableWord:
    """Canonical form of ``w`` in ``Z/orders[0] * Z/orders[1]``.

    Two words are equal in the free product iff their normal forms are equal.
    """
    pieces = []
    for a in w.letters:
        g = abs(a) - 1
        if g > 1:
            raise ValueError(f"letter {a} is not x^{{±1}} or y^{{±1}}")
        pieces.append((g, 1 if a > 0 else -1))
    return _normalize(pieces, orders)

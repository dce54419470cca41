"""Parser and evaluator for words in the generators r and s.

Grammar: a word is zero or more whitespace-separated terms, each a
generator letter with an optional integer exponent:

    word := term*        term := ("r" | "s") ("^" integer)?

The empty word is the identity.  Juxtaposition is composition in writing
order with the rightmost factor applied first, so "r s" evaluates to
r ∘ s; negative exponents invert.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .analysis import order
from .torus import AffineAuto, compose

_TERM = re.compile(r"([rs])(?:\^(-?\d+))?\Z")


class WordParseError(ValueError):
    """Malformed word; `position` is the character offset of the bad term."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class GroupWord:
    """Parsed word: (generator, exponent) tokens in writing order."""

    tokens: tuple[tuple[str, int], ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __str__(self) -> str:
        return " ".join(
            g if e == 1 else f"{g}^{e}" for g, e in self.tokens
        )


def parse_word(text: str) -> GroupWord:
    """Parse a word, annotating errors with the offending term's offset."""
    tokens = []
    for match in re.finditer(r"\S+", text):
        term = match.group()
        parsed = _TERM.match(term)
        if parsed is None:
            raise WordParseError(f"invalid term {term!r}", match.start())
        gen, exp = parsed.groups()
        tokens.append((gen, 1 if exp is None else int(exp)))
    return GroupWord(tuple(tokens))


def _power(base: AffineAuto, e: int) -> AffineAuto:
    # Normalize the exponent modulo the generator's order so that huge or
    # negative exponents cost the same as their reduced form.
    e %= order(base)
    acc = AffineAuto.identity(base.lattice)
    for _ in range(e):
        acc = compose(acc, base)
    return acc


def evaluate_word(
    word: GroupWord, rotation: AffineAuto, reflection: AffineAuto
) -> AffineAuto:
    """Evaluate tokens against concrete generators (rightmost applied first)."""
    if rotation.lattice != reflection.lattice:
        raise ValueError("generators live on different lattices")
    acc = AffineAuto.identity(rotation.lattice)
    for gen, exp in word:
        base = rotation if gen == "r" else reflection
        acc = compose(acc, _power(base, exp))
    return acc

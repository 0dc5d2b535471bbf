"""Free-group words and the defining presentation of the group G."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]

_TOKEN = re.compile(r"\(([^()]*)\)\^(-?\d+)|x(\d+)(?:\^(-?\d+))?")


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, exp in letters:
        if exp not in (1, -1):
            raise ValueError(f"letter exponent must be +-1, got {exp}")
        if out and out[-1][0] == gen and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; each letter is ``(generator, +-1)``."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse words such as ``"(x1 x0)^3 x1^-3 x0^-3"``.

        Generators are written ``x<index>``; whitespace is optional.
        """
        letters: list[Letter] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse word at {text[pos:]!r}")
            if m.group(1) is not None:
                inner = cls.parse(m.group(1))
                letters.extend((inner ** int(m.group(2))).letters)
            else:
                gen = int(m.group(3))
                exp = int(m.group(4) or 1)
                sign = 1 if exp > 0 else -1
                letters.extend([(gen, sign)] * abs(exp))
            pos = m.end()
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def exponent_sums(self, ngens: int) -> list[int]:
        sums = [0] * ngens
        for g, e in self.letters:
            sums[g] += e
        return sums

    def evaluate(self, images: Sequence, inverses: Sequence, mul, identity):
        """Evaluate the word in any group given generator images and inverses."""
        acc = identity
        for g, e in self.letters:
            acc = mul(acc, images[g] if e > 0 else inverses[g])
        return acc

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        i = 0
        L = self.letters
        while i < len(L):
            j = i
            while j < len(L) and L[j] == L[i]:
                j += 1
            g, e = L[i]
            n = (j - i) * e
            parts.append(f"x{g}" if n == 1 else f"x{g}^{n}")
            i = j
        return " ".join(parts)


@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        for r in self.relators:
            for g, _ in r.letters:
                if not 0 <= g < self.ngens:
                    raise ValueError(f"relator {r} uses generator x{g} outside 0..{self.ngens - 1}")


RELATOR_TEXT = (
    "(x1 x0)^3 x1^-3 x0^-3",
    "x1 x0^-1 x1^-1 x0^-3 x1^2 x0^-1 x1 x0 x1",
    "x1^3 x0^-1 x1 x0 x1 x0^2 x1^2 x0 x1 x0",
)


def relators() -> tuple[Word, Word, Word]:
    """The three defining relators of G = <x0, x1 | r1, r2, r3>."""
    r1, r2, r3 = (Word.parse(t) for t in RELATOR_TEXT)
    return r1, r2, r3


def g_presentation() -> Presentation:
    return Presentation(2, relators())

"""Curve alphabets, admissible words, and the shuffle algebra on words.

Curve "g" carries the letters w0..w3, curve "h" the letters w0, w1, w4,
w5, w6.  A word is admissible when its iterated integral along the unit
path converges, which the first/last-letter rules encode exactly:

    g: first letter not in {w0, w3}, last letter != w1
    h: first letter not in {w0, w5}, last letter not in {w1, w6}

The rules are applied verbatim to length-one words as well, so the
admissible weight-1 sets are {w2} for g and {w4} for h (count 1 each).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

__all__ = [
    "CURVES",
    "ALPHABET",
    "CurveLetter",
    "CurveWord",
    "WordComb",
    "parse_word",
    "is_admissible",
    "enumerate_admissible",
    "shuffle",
    "shuffle_tuples",
]

CURVES = ("g", "h")
ALPHABET = {"g": (0, 1, 2, 3), "h": (0, 1, 4, 5, 6)}
_FIRST_EXCLUDED = {"g": frozenset({0, 3}), "h": frozenset({0, 5})}
_LAST_EXCLUDED = {"g": frozenset({1}), "h": frozenset({1, 6})}


def _check_curve(curve: str) -> None:
    if curve not in CURVES:
        raise ValueError(f"unknown curve {curve!r} (expected 'g' or 'h')")


class CurveLetter(NamedTuple):
    curve: str
    index: int

    def validate(self) -> "CurveLetter":
        _check_curve(self.curve)
        if self.index not in ALPHABET[self.curve]:
            raise ValueError(f"letter w{self.index} is not in the {self.curve} alphabet")
        return self


@dataclass(frozen=True)
class CurveWord:
    curve: str
    letters: tuple[int, ...]

    def __post_init__(self):
        _check_curve(self.curve)
        object.__setattr__(self, "letters", tuple(self.letters))
        bad = [i for i in self.letters if i not in ALPHABET[self.curve]]
        if bad:
            raise ValueError(f"letter w{bad[0]} is not in the {self.curve} alphabet")

    @property
    def weight(self) -> int:
        return len(self.letters)

    def letter_objects(self) -> tuple[CurveLetter, ...]:
        return tuple(CurveLetter(self.curve, i) for i in self.letters)

    def __str__(self) -> str:
        return f"{self.curve}:{','.join(map(str, self.letters))}"

    def count(self, index: int) -> int:
        return self.letters.count(index)


def parse_word(text: str, curve: str) -> CurveWord:
    """Parse comma- or space-separated letter indices into a word."""
    _check_curve(curve)
    tokens = [t for t in text.replace(",", " ").split() if t]
    if not tokens:
        raise ValueError("empty word text")
    try:
        letters = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise ValueError(f"bad letter token in {text!r}") from exc
    return CurveWord(curve, letters)


def is_admissible(w: CurveWord) -> bool:
    if w.weight == 0:
        return True
    return (w.letters[0] not in _FIRST_EXCLUDED[w.curve]
            and w.letters[-1] not in _LAST_EXCLUDED[w.curve])


def enumerate_admissible(curve: str, k: int) -> list[CurveWord]:
    """All admissible words of weight k, in lexicographic letter order."""
    _check_curve(curve)
    if k < 1:
        raise ValueError("weight must be >= 1")
    first = [i for i in ALPHABET[curve] if i not in _FIRST_EXCLUDED[curve]]
    last = [i for i in ALPHABET[curve] if i not in _LAST_EXCLUDED[curve]]
    if k == 1:
        singles = sorted(set(first) & set(last))
        return [CurveWord(curve, (i,)) for i in singles]
    out = []
    for f in first:
        for mid in itertools.product(ALPHABET[curve], repeat=k - 2):
            for l in last:
                out.append(CurveWord(curve, (f, *mid, l)))
    out.sort(key=lambda w: w.letters)
    return out


class WordComb:
    """Finite formal Q-linear combination of same-curve words."""

    __slots__ = ("curve", "terms")

    def __init__(self, curve: str, terms: dict[CurveWord, Fraction] | None = None):
        _check_curve(curve)
        self.curve = curve
        self.terms: dict[CurveWord, Fraction] = {}
        if terms:
            for w, c in terms.items():
                self._accumulate(w, c)

    def _accumulate(self, w: CurveWord, c) -> None:
        if w.curve != self.curve:
            raise ValueError("curve mismatch in WordComb")
        c = Fraction(c)
        if c == 0:
            return
        new = self.terms.get(w, Fraction(0)) + c
        if new == 0:
            self.terms.pop(w, None)
        else:
            self.terms[w] = new

    def __add__(self, other: "WordComb") -> "WordComb":
        out = WordComb(self.curve, dict(self.terms))
        for w, c in other.terms.items():
            out._accumulate(w, c)
        return out

    def scale(self, c) -> "WordComb":
        c = Fraction(c)
        return WordComb(self.curve, {w: v * c for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, WordComb) and self.curve == other.curve \
            and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> Iterable[tuple[CurveWord, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: t[0].letters)

    def total_mass(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def __repr__(self) -> str:
        parts = [f"{c}*({w})" for w, c in self.items()]
        return " + ".join(parts) if parts else "0"


def shuffle_tuples(a: tuple, b: tuple) -> dict[tuple, int]:
    """Multiset of interleavings of two tuples with multiplicities.

    Generic over letter type; used both for curve words and for projective
    letter words.
    """
    m, n = len(a), len(b)
    out: dict[tuple, int] = {}
    for positions in itertools.combinations(range(m + n), m):
        word = [None] * (m + n)
        for src, pos in zip(a, positions):
            word[pos] = src
        it = iter(b)
        for i in range(m + n):
            if word[i] is None:
                word[i] = next(it)
        t = tuple(word)
        out[t] = out.get(t, 0) + 1
    return out


def shuffle(u: CurveWord, v: CurveWord) -> WordComb:
    """Shuffle product of two words as a formal combination."""
    if u.curve != v.curve:
        raise ValueError("cannot shuffle words on different curves")
    comb = WordComb(u.curve)
    for letters, mult in shuffle_tuples(u.letters, v.letters).items():
        comb._accumulate(CurveWord(u.curve, letters), mult)
    return comb

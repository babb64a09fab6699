"""Pullback of curve words to projective-line words and the Galois layer.

A curve letter pulls back along the rational parametrization to a short
combination of logarithmic forms d(lambda)/(lambda - a) with cyclotomic
coefficients; a curve word pulls back to the multilinear expansion of its
letters.  Everything here is symbolic: words over exact field points with
exact coefficients.  The Galois action conjugates both coefficients and
letters, and admissible pullbacks are always fixed by it, which is the
computable shadow of the descent statement underlying the whole pipeline.

Letter substitution tables (curve g, level 4; curve h, level 6):

    g: w0 -> e0 - e_i - e_{-i}         h: w0 -> e0 + e_{-2} - e_{z3} - e_{z3^-1}
       w1 -> -2 e1 + e_i + e_{-i}         w1 -> -e1 + e_{z3} + e_{z3^-1}
       w2 -> z4^-1 (e_i - e_{-i})         w4 -> (1/sqrt(-3)) (e_{z3} - e_{z3^-1})
       w3 -> e0                           w5 -> (1/2) (e0 - e_{-2})
                                          w6 -> -e1
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .exactfield import Cyc, sqrt_minus3, xi3, zeta4
from .words import CurveLetter, CurveWord, is_admissible, shuffle_tuples

__all__ = [
    "P1Word",
    "P1Comb",
    "p1_letters",
    "letter_name",
    "theta",
    "pullback_word",
    "galois_sigma",
    "is_invariant",
    "parity_component",
    "basis_sign",
]

P1Word = tuple  # tuple[Cyc, ...]

_LEVEL = {"g": 4, "h": 6}
_PARITY_LETTER = {"g": 2, "h": 4}


def p1_letters(curve: str) -> tuple[Cyc, ...]:
    """The exact singular points appearing in pullbacks for one curve."""
    if curve == "g":
        i = zeta4()
        return (Cyc.from_rat(4, 0), Cyc.from_rat(4, 1), i, -i)
    if curve == "h":
        z3 = xi3()
        return (Cyc.from_rat(6, 0), Cyc.from_rat(6, 1), Cyc.from_rat(6, -2),
                z3, z3.inv())
    raise ValueError(f"unknown curve {curve!r}")


def letter_name(c: Cyc) -> str:
    """Short display name for a projective letter; falls back to coordinates."""
    if c.is_rational():
        return str(c.a)
    if c.level == 4:
        if c == zeta4():
            return "i"
        if c == -zeta4():
            return "-i"
    else:
        if c == xi3():
            return "z3"
        if c == xi3().inv():
            return "z3c"
    return str(c)


class P1Comb:
    """Formal sum of projective-letter words with cyclotomic coefficients."""

    __slots__ = ("level", "terms")

    def __init__(self, level: int, terms: dict[P1Word, Cyc] | None = None):
        if level not in (4, 6):
            raise ValueError("level must be 4 or 6")
        self.level = level
        self.terms: dict[P1Word, Cyc] = {}
        if terms:
            for w, c in terms.items():
                self._accumulate(w, c)

    def _accumulate(self, word: P1Word, coeff: Cyc) -> None:
        for a in word:
            if a.level != self.level:
                raise ValueError("letter level mismatch in P1Comb")
        if coeff.level != self.level:
            raise ValueError("coefficient level mismatch in P1Comb")
        if coeff.is_zero():
            return
        cur = self.terms.get(word)
        new = coeff if cur is None else cur + coeff
        if new.is_zero():
            self.terms.pop(word, None)
        else:
            self.terms[word] = new

    @classmethod
    def single(cls, level: int, word: Iterable[Cyc], coeff: Cyc | int = 1) -> "P1Comb":
        if isinstance(coeff, int):
            coeff = Cyc.from_rat(level, coeff)
        return cls(level, {tuple(word): coeff})

    def __add__(self, other: "P1Comb") -> "P1Comb":
        out = P1Comb(self.level, dict(self.terms))
        for w, c in other.terms.items():
            out._accumulate(w, c)
        return out

    def __neg__(self) -> "P1Comb":
        return P1Comb(self.level, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "P1Comb") -> "P1Comb":
        return self + (-other)

    def scale(self, c: Cyc) -> "P1Comb":
        out = P1Comb(self.level)
        for w, v in self.terms.items():
            out._accumulate(w, v * c)
        return out

    def concat(self, other: "P1Comb") -> "P1Comb":
        """Tensor (concatenation) product, bilinear in both arguments."""
        out = P1Comb(self.level)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._accumulate(w1 + w2, c1 * c2)
        return out

    def shuffle_mul(self, other: "P1Comb") -> "P1Comb":
        out = P1Comb(self.level)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c = c1 * c2
                for word, mult in shuffle_tuples(w1, w2).items():
                    out._accumulate(word, c * mult)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, P1Comb) and self.level == other.level \
            and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items(),
                      key=lambda t: tuple((a.a, a.b) for a in t[0]))

    def __repr__(self) -> str:
        parts = [f"({c})*[{' '.join(letter_name(a) for a in w)}]"
                 for w, c in self.items()]
        return " + ".join(parts) if parts else "0"


def theta(letter: CurveLetter) -> P1Comb:
    """Pullback substitution for a single curve letter."""
    letter = CurveLetter(*letter).validate()
    curve, idx = letter.curve, letter.index
    level = _LEVEL[curve]
    zero = Cyc.from_rat(level, 0)
    one = Cyc.from_rat(level, 1)
    out = P1Comb(level)
    if curve == "g":
        i = zeta4()
        mi = -i
        if idx == 0:
            out._accumulate((zero,), one)
            out._accumulate((i,), -one)
            out._accumulate((mi,), -one)
        elif idx == 1:
            out._accumulate((one,), Cyc.from_rat(4, -2))
            out._accumulate((i,), one)
            out._accumulate((mi,), one)
        elif idx == 2:
            c = i.inv()
            out._accumulate((i,), c)
            out._accumulate((mi,), -c)
        else:  # w3
            out._accumulate((zero,), one)
        return out
    z3 = xi3()
    z3c = z3.inv()
    m2 = Cyc.from_rat(6, -2)
    if idx == 0:
        out._accumulate((zero,), one)
        out._accumulate((m2,), one)
        out._accumulate((z3,), -one)
        out._accumulate((z3c,), -one)
    elif idx == 1:
        out._accumulate((one,), -one)
        out._accumulate((z3,), one)
        out._accumulate((z3c,), one)
    elif idx == 4:
        c = sqrt_minus3().inv()
        out._accumulate((z3,), c)
        out._accumulate((z3c,), -c)
    elif idx == 5:
        half = Cyc.from_rat(6, Fraction(1, 2))
        out._accumulate((zero,), half)
        out._accumulate((m2,), -half)
    else:  # w6
        out._accumulate((one,), -one)
    return out


def pullback_word(w: CurveWord) -> P1Comb:
    """Multilinear expansion of the letter substitutions of an admissible word.

    Every expanded monomial must have a nonzero first letter and a last
    letter different from 1; admissibility guarantees this, so a violation
    is raised as a bug flag rather than regularized.
    """
    if not is_admissible(w):
        raise ValueError(f"word {w} is not admissible")
    level = _LEVEL[w.curve]
    comb = P1Comb.single(level, (), Cyc.from_rat(level, 1))
    for letter in w.letter_objects():
        comb = comb.concat(theta(letter))
    zero = Cyc.from_rat(level, 0)
    one = Cyc.from_rat(level, 1)
    for word in comb.terms:
        if word and (word[0] == zero or word[-1] == one):
            raise ValueError(
                f"divergent monomial {[letter_name(a) for a in word]} in "
                f"pullback of admissible word {w}; this indicates a bug")
    return comb


def galois_sigma(x: P1Comb) -> P1Comb:
    """The nontrivial Galois automorphism applied to letters and coefficients."""
    out = P1Comb(x.level)
    for word, coeff in x.terms.items():
        out._accumulate(tuple(a.conj() for a in word), coeff.conj())
    return out


def is_invariant(x: P1Comb) -> bool:
    return galois_sigma(x) == x


def parity_component(w: CurveWord) -> int:
    """0 or 1: the parity of the number of w2 (g) / w4 (h) letters.

    Also asserts the coefficient-support fact behind the parity split: every
    pullback coefficient lies in Q * z4^(-m) (g) resp. Q * sqrt(-3)^(-m) (h),
    m the letter count.  Failure would indicate an implementation bug.
    """
    if not is_admissible(w):
        raise ValueError(f"word {w} is not admissible")
    m = w.count(_PARITY_LETTER[w.curve])
    comb = pullback_word(w)
    for word, coeff in comb.terms.items():
        if w.curve == "g":
            # z4^(-m) Q is: rationals for even m, purely imaginary for odd m
            ok = coeff.b == 0 if m % 2 == 0 else coeff.a == 0
        else:
            # sqrt(-3)^(-m) Q: rationals for even m, Q*(2 z6 - 1) for odd m
            ok = coeff.b == 0 if m % 2 == 0 else coeff.b == -2 * coeff.a
        if not ok:
            raise AssertionError(
                f"coefficient {coeff} of {[letter_name(a) for a in word]} "
                f"violates the parity support rule for {w}")
    return m % 2


def _normalizing_element(k: int, curve: str) -> P1Comb:
    # u_k (g) / v_k (h): e_r 0^(k-1) - (-1)^k e_{r^-1} 0^(k-1), r = z4 or z3.
    level = _LEVEL[curve]
    r = zeta4() if curve == "g" else xi3()
    zero = Cyc.from_rat(level, 0)
    one = Cyc.from_rat(level, 1)
    word1 = (r,) + (zero,) * (k - 1)
    word2 = (r.inv(),) + (zero,) * (k - 1)
    out = P1Comb(level)
    out._accumulate(word1, one)
    out._accumulate(word2, -one if k % 2 == 0 else one)
    return out


def basis_sign(k: int, curve: str) -> int:
    """Sign of the Galois action on the k-th normalized basis element,
    computed symbolically; equals (-1)^(k+1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    u = _normalizing_element(k, curve)
    s = galois_sigma(u)
    if s == u:
        return 1
    if s == -u:
        return -1
    raise AssertionError("normalizing element is not a sign eigenvector")

"""Exact sparse arithmetic for free noncommutative polynomials.

A polynomial in the noncommuting variables x1..xg is a finite formal sum of
words with rational coefficients.  Words are flat tuples of 1-based variable
indices (the empty tuple is the monomial 1), coefficients are
:class:`fractions.Fraction`, and every operation is exact: no rounding,
no floating point, ever.

    >>> f = parse("x1*x2 - x2*x1", nvars=2)
    >>> format_poly(f)
    'x1*x2 - x2*x1'

The zero polynomial stores no terms; its degree is ``MINUS_INF``, a sentinel
that orders below every integer but refuses arithmetic, so degree bookkeeping
can never silently treat it as a number.

Expression grammar (UTF-8 text)::

    expr   := ['-'] term (('+'|'-') term)*
    term   := coeff factor* | factor+
    factor := var ('^' nat)? | '(' expr ')'
    var    := 'x' nat
    coeff  := nat ('/' nat)?

A '*' between the components of a term is optional and equivalent to
whitespace.  The formatter emits terms in graded lexicographic word order
with explicit '*' and run-length exponents (``x1^2*x2``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Word = tuple[int, ...]
Scalar = Fraction
ScalarLike = Union[Fraction, int]


class _MinusInf:
    """Degree of the zero polynomial: below every int, no arithmetic."""

    __slots__ = ()

    def __lt__(self, other: object) -> bool:
        return other is not self

    def __le__(self, other: object) -> bool:
        return True

    def __gt__(self, other: object) -> bool:
        return False

    def __ge__(self, other: object) -> bool:
        return other is self

    def __repr__(self) -> str:
        return "MINUS_INF"


MINUS_INF = _MinusInf()

Degree = Union[int, _MinusInf]


def graded_lex_key(word: Word) -> tuple[int, Word]:
    """Sort key ordering words by degree first, then lexicographically."""
    return (len(word), word)


def _check_word(word: Word, nvars: int) -> Word:
    word = tuple(word)
    for letter in word:
        if not 1 <= letter <= nvars:
            raise ValueError(f"letter {letter} out of range for nvars={nvars}")
    return word


@dataclass(frozen=True)
class FreePoly:
    """Immutable sparse free polynomial: a map from words to coefficients.

    ``terms`` never stores a zero coefficient; use the constructors below
    rather than building the dict by hand.
    """

    nvars: int
    terms: dict[Word, Fraction]

    @classmethod
    def from_terms(cls, terms: Mapping[Word, ScalarLike], nvars: int) -> FreePoly:
        clean: dict[Word, Fraction] = {}
        for word, coeff in terms.items():
            word = _check_word(word, nvars)
            value = Fraction(coeff)
            if value:
                clean[word] = value
        return cls(nvars, clean)

    @classmethod
    def zero(cls, nvars: int) -> FreePoly:
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> FreePoly:
        return cls(nvars, {(): Fraction(1)})

    @classmethod
    def constant(cls, value: ScalarLike, nvars: int) -> FreePoly:
        value = Fraction(value)
        return cls(nvars, {(): value} if value else {})

    @classmethod
    def variable(cls, index: int, nvars: int) -> FreePoly:
        if not 1 <= index <= nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        return cls(nvars, {(index,): Fraction(1)})

    @classmethod
    def monomial(cls, word: Word, coeff: ScalarLike, nvars: int) -> FreePoly:
        word = _check_word(word, nvars)
        coeff = Fraction(coeff)
        return cls(nvars, {word: coeff} if coeff else {})

    @property
    def degree(self) -> Degree:
        if not self.terms:
            return MINUS_INF
        return max(len(word) for word in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def promote(self, nvars: int) -> FreePoly:
        """Reinterpret over a larger variable count (words are unchanged)."""
        if nvars < self.nvars:
            raise ValueError(f"cannot shrink nvars from {self.nvars} to {nvars}")
        if nvars == self.nvars:
            return self
        return FreePoly(nvars, dict(self.terms))

    def _coerce(self, other: object) -> FreePoly | None:
        if isinstance(other, FreePoly):
            return other
        if isinstance(other, (int, Fraction)):
            return FreePoly.constant(other, self.nvars)
        return None

    def __add__(self, other: object) -> FreePoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        nvars = max(self.nvars, rhs.nvars)
        out = dict(self.terms)
        for word, coeff in rhs.terms.items():
            value = out.pop(word, Fraction(0)) + coeff
            if value:
                out[word] = value
        return FreePoly(nvars, out)

    __radd__ = __add__

    def __neg__(self) -> FreePoly:
        return FreePoly(self.nvars, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: object) -> FreePoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> FreePoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> FreePoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, FreePoly):
            return NotImplemented
        nvars = max(self.nvars, other.nvars)
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                value = out.pop(word, Fraction(0)) + c1 * c2
                if value:
                    out[word] = value
        return FreePoly(nvars, out)

    def __rmul__(self, other: object) -> FreePoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor: ScalarLike) -> FreePoly:
        factor = Fraction(factor)
        if not factor:
            return FreePoly.zero(self.nvars)
        return FreePoly(self.nvars, {w: c * factor for w, c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: graded_lex_key(item[0]))

    def __str__(self) -> str:
        return format_poly(self)


def add(f: FreePoly, h: FreePoly) -> FreePoly:
    return f + h


def mul(f: FreePoly, h: FreePoly) -> FreePoly:
    return f * h


def commutator(f: FreePoly, h: FreePoly) -> FreePoly:
    """The ring commutator f*h - h*f."""
    return f * h - h * f


# ---------------------------------------------------------------------------
# Formatting


def word_to_str(word: Word) -> str:
    """Run-length rendering of a word: (1, 1, 2) -> 'x1^2*x2'; () -> ''."""
    parts: list[str] = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(f"x{word[i]}" if run == 1 else f"x{word[i]}^{run}")
        i = j
    return "*".join(parts)


def format_poly(f: FreePoly) -> str:
    """Canonical textual form; ``parse(format_poly(f), f.nvars) == f``."""
    if f.is_zero():
        return "0"
    pieces: list[str] = []
    for word, coeff in f.sorted_terms():
        magnitude = abs(coeff)
        if not word:
            body = str(magnitude)
        elif magnitude == 1:
            body = word_to_str(word)
        else:
            body = f"{magnitude}*{word_to_str(word)}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# Parsing


class ParseError(ValueError):
    """Syntax or validity error in a polynomial expression.

    ``position`` is the 0-based character offset of the error in the input.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


_TOKEN_CHARS = {"+", "-", "*", "/", "^", "(", ")"}


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    """Return (kind, value, position) triples; kinds: num, var, or a symbol."""
    tokens: list[tuple[str, object, int]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("expected a variable index after 'x'", i)
            tokens.append(("var", int(text[i + 1 : j]), i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.tokens = _tokenize(text)
        self.index = 0
        self.nvars = nvars

    def peek(self) -> tuple[str, object, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, object, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def parse(self) -> FreePoly:
        poly = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected trailing input", pos)
        return poly

    def expr(self) -> FreePoly:
        sign = 1
        if self.peek()[0] == "-":
            self.advance()
            sign = -1
        acc = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            term = self.term()
            acc = acc + term if op == "+" else acc - term
        return acc

    def term(self) -> FreePoly:
        coeff: Fraction | None = None
        if self.peek()[0] == "num":
            coeff = self.coeff()
        factors: list[FreePoly] = []
        while True:
            kind, _, pos = self.peek()
            # '*' is whitespace-equivalent, but only between term components.
            if kind == "*" and (coeff is not None or factors):
                self.advance()
                factors.append(self.factor(required=True))
            elif kind in ("var", "("):
                factors.append(self.factor())
            else:
                break
        if coeff is None and not factors:
            raise ParseError("expected a term", self.peek()[2])
        result = FreePoly.constant(coeff if coeff is not None else 1, self.nvars)
        for factor in factors:
            result = result * factor
        return result

    def coeff(self) -> Fraction:
        _, numerator, _ = self.advance()
        if self.peek()[0] == "/":
            self.advance()
            kind, denominator, pos = self.peek()
            if kind != "num":
                raise ParseError("expected a denominator", pos)
            self.advance()
            if denominator == 0:
                raise ParseError("denominator must be positive", pos)
            return Fraction(numerator, denominator)  # type: ignore[arg-type]
        return Fraction(numerator)  # type: ignore[arg-type]

    def factor(self, required: bool = False) -> FreePoly:
        kind, value, pos = self.peek()
        if kind == "var":
            self.advance()
            index = int(value)  # type: ignore[arg-type]
            if index < 1:
                raise ParseError("variable indices are 1-based", pos)
            if index > self.nvars:
                raise ParseError(
                    f"variable index {index} exceeds nvars={self.nvars}", pos
                )
            exponent = 1
            if self.peek()[0] == "^":
                self.advance()
                ekind, evalue, epos = self.peek()
                if ekind != "num":
                    raise ParseError("expected an exponent", epos)
                self.advance()
                exponent = int(evalue)  # type: ignore[arg-type]
            return FreePoly.monomial((index,) * exponent, 1, self.nvars)
        if kind == "(":
            self.advance()
            inner = self.expr()
            ckind, _, cpos = self.peek()
            if ckind != ")":
                raise ParseError("expected ')'", cpos)
            self.advance()
            return inner
        message = "expected a factor" if required else "expected a term"
        raise ParseError(message, pos)


def parse(text: str, nvars: int) -> FreePoly:
    """Parse an expression in the module grammar into an exact polynomial."""
    return _Parser(text, nvars).parse()


def word_from_str(text: str, nvars: int) -> Word:
    """Inverse of :func:`word_to_str`; also accepts '*'-free forms ('x1x2')."""
    if text.strip() == "":
        return ()
    poly = parse(text, nvars)
    if len(poly.terms) != 1:
        raise ParseError("expected a single word", 0)
    ((word, coeff),) = poly.terms.items()
    if coeff != 1:
        raise ParseError("expected a word with coefficient 1", 0)
    return word


def scalar_to_str(value: ScalarLike) -> str:
    """Rational to 'p/q' (or plain 'p' for integers)."""
    return str(Fraction(value))


def scalar_from_str(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational literal {text!r}") from exc


def common_nvars(polys: Iterable[FreePoly]) -> int:
    return max((p.nvars for p in polys), default=1)

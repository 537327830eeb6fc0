"""Textual format for automorphism words, with a parser and serializer.

Grammar (whitespace-insensitive)::

    word   := atom ( "." atom )*
    atom   := "id"
            | "affine(" row ";" ... ";" row ";" vector ")"
            | "shear(" index "," poly ")"
    row    := entry ("," entry)*          n constant entries
    vector := entry ("," entry)*          n constant entries
    poly   := expression in z1..zn over +, -, *, ^, parentheses

"." composes with the left atom applied last, so "a . b" maps z to
a(b(z)).  Numbers need a leading digit ("0.5", not ".5"); a trailing
"i" makes a literal imaginary ("2i", "1.5e-3i") and a bare "i" is the
imaginary unit, so "(1+2i)" is an ordinary parenthesized sum.  Powers
take a literal non-negative integer exponent.  An affine atom lists the
n matrix rows and then the offset vector, e.g. for n = 2 the map
z -> (2 z1 + 1, z2) is "affine(2,0; 0,1; 1,0)".

serialize() emits a canonical form: coefficients with 17 significant
digits, monomials in descending graded-lexicographic order, generators
in application order from right to left.  Parsing that text back yields
a word with identical coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .algebra import (
    Affine,
    AutomorphismWord,
    ComplexPolynomial,
    Shear,
    SingularMatrixError,
)

ERROR_KINDS = (
    "syntax",
    "unknown-variable",
    "self-referential-shear",
    "singular-matrix",
    "dimension-mismatch",
)


@dataclass(frozen=True)
class SourceSpan:
    """Half-open byte range [start, end) into the parsed text."""

    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"invalid span {self.start}..{self.end}")


class ParseError(Exception):
    """A parse failure, classified by kind and located by a source span."""

    def __init__(self, kind: str, span: SourceSpan, message: str):
        if kind not in ERROR_KINDS:
            raise ValueError(f"unknown error kind {kind!r}")
        super().__init__(message)
        self.kind = kind
        self.span = span
        self.message = message

    def __str__(self) -> str:
        return f"{self.kind} at {self.span.start}..{self.span.end}: {self.message}"


class _Token(NamedTuple):
    kind: str  # "name", "number", "punct", "end"
    text: str
    start: int
    end: int
    value: complex = 0j


_WS = re.compile(r"[ \t\r\n]+")
_NUMBER = re.compile(r"\d+(?:\.\d+)?(?:[eE][+-]?\d+)?i?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_PUNCT = "().,;+-*^"
_VARIABLE = re.compile(r"z(\d+)\Z")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        ws = _WS.match(text, pos)
        if ws:
            pos = ws.end()
            continue
        m = _NUMBER.match(text, pos)
        if m:
            body = m.group()
            if body.endswith("i"):
                value = complex(0.0, float(body[:-1]))
            else:
                value = complex(float(body), 0.0)
            tokens.append(_Token("number", body, pos, m.end(), value))
            pos = m.end()
            continue
        m = _NAME.match(text, pos)
        if m:
            tokens.append(_Token("name", m.group(), pos, m.end()))
            pos = m.end()
            continue
        if text[pos] in _PUNCT:
            tokens.append(_Token("punct", text[pos], pos, pos + 1))
            pos += 1
            continue
        raise ParseError(
            "syntax",
            SourceSpan(pos, pos + 1),
            f"unexpected character {text[pos]!r}",
        )
    end_start = max(0, len(text) - 1)
    tokens.append(_Token("end", "", end_start, len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser over a fixed token list.  No shared state."""

    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.pos = 0
        # first source span seen for each variable index, for shear checks
        self.var_spans: dict[int, SourceSpan] = {}

    # --- token plumbing -------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def at_punct(self, ch: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == ch

    def match_punct(self, ch: str) -> bool:
        if self.at_punct(ch):
            self.advance()
            return True
        return False

    def expect_punct(self, ch: str):
        tok = self.peek()
        if not self.at_punct(ch):
            raise ParseError(
                "syntax",
                SourceSpan(tok.start, tok.end),
                f"expected {ch!r}" + (", found end of input" if tok.kind == "end" else f", found {tok.text!r}"),
            )
        self.advance()

    def span_of(self, tok: _Token) -> SourceSpan:
        return SourceSpan(tok.start, tok.end)

    # --- word and atoms -------------------------------------------------

    def parse_word(self) -> AutomorphismWord:
        atoms = [self.parse_atom()]
        while self.match_punct("."):
            atoms.append(self.parse_atom())
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(
                "syntax",
                self.span_of(tok),
                f"unexpected {tok.text!r} after a complete word (atoms are joined with '.')",
            )
        # text lists outermost first; storage applies index 0 first
        generators = []
        for atom in reversed(atoms):
            generators.extend(atom)
        return AutomorphismWord(self.n, generators)

    def parse_atom(self) -> tuple:
        tok = self.peek()
        if tok.kind == "name":
            if tok.text == "id":
                self.advance()
                return ()
            if tok.text == "affine":
                return (self.parse_affine(),)
            if tok.text == "shear":
                return (self.parse_shear(),)
        raise ParseError(
            "syntax",
            self.span_of(tok),
            "expected an atom: 'id', 'affine(...)' or 'shear(...)'",
        )

    def parse_affine(self) -> Affine:
        n = self.n
        start = self.advance().start  # "affine"
        self.expect_punct("(")
        groups: list[list[complex]] = []
        group_spans: list[SourceSpan] = []
        while True:
            value, span = self.parse_constant_entry()
            group = [value]
            first_span = span
            while self.match_punct(","):
                value, span = self.parse_constant_entry()
                group.append(value)
            groups.append(group)
            group_spans.append(SourceSpan(first_span.start, span.end))
            if self.match_punct(";"):
                continue
            closing = self.peek()
            if self.at_punct(")"):
                self.advance()
                end = closing.end
                break
            raise ParseError(
                "syntax",
                self.span_of(closing),
                f"expected ',', ';' or ')' in affine atom"
                + (", found end of input" if closing.kind == "end" else f", found {closing.text!r}"),
            )
        atom_span = SourceSpan(start, end)
        if len(groups) != n + 1:
            raise ParseError(
                "dimension-mismatch",
                atom_span,
                f"affine atom for n={n} needs {n} matrix rows plus an offset "
                f"vector ({n + 1} ';'-separated groups), got {len(groups)}",
            )
        for idx, (group, span) in enumerate(zip(groups, group_spans)):
            if len(group) != n:
                what = "offset vector" if idx == n else f"matrix row {idx + 1}"
                raise ParseError(
                    "dimension-mismatch",
                    span,
                    f"{what} has {len(group)} entries, expected {n}",
                )
        matrix = np.array(groups[:n], dtype=np.complex128)
        offset = np.array(groups[n], dtype=np.complex128)
        try:
            return Affine(matrix, offset)
        except SingularMatrixError as exc:
            raise ParseError("singular-matrix", atom_span, str(exc)) from exc

    def parse_shear(self) -> Shear:
        self.advance()  # "shear"
        self.expect_punct("(")
        k_tok = self.peek()
        if k_tok.kind != "number" or k_tok.value.imag != 0 or k_tok.value.real != int(k_tok.value.real):
            raise ParseError(
                "syntax",
                self.span_of(k_tok),
                "shear coordinate index must be a literal positive integer",
            )
        self.advance()
        k = int(k_tok.value.real)
        if not 1 <= k <= self.n:
            raise ParseError(
                "unknown-variable",
                self.span_of(k_tok),
                f"shear coordinate {k} out of range 1..{self.n}",
            )
        self.expect_punct(",")
        seen_before = dict(self.var_spans)
        p, _ = self.parse_expression()
        if k in self.var_spans and k not in seen_before:
            raise ParseError(
                "self-referential-shear",
                self.var_spans[k],
                f"shear polynomial for coordinate {k} mentions z{k} itself",
            )
        self.expect_punct(")")
        return Shear(k, p)

    # --- expressions ----------------------------------------------------

    def parse_constant_entry(self) -> tuple[complex, SourceSpan]:
        poly, span = self.parse_expression()
        if poly.total_degree() > 0:
            raise ParseError(
                "syntax",
                span,
                "affine entries must be constant (no z variables)",
            )
        value = poly.terms.get((0,) * self.n, 0j)
        return value, span

    def parse_expression(self) -> tuple[ComplexPolynomial, SourceSpan]:
        start_tok = self.peek()
        poly = self.parse_sum()
        end = self.tokens[self.pos - 1].end if self.pos > 0 else start_tok.end
        return poly, SourceSpan(start_tok.start, end)

    def parse_sum(self) -> ComplexPolynomial:
        poly = self.parse_term()
        while True:
            if self.match_punct("+"):
                poly = poly + self.parse_term()
            elif self.match_punct("-"):
                poly = poly - self.parse_term()
            else:
                return poly

    def parse_term(self) -> ComplexPolynomial:
        poly = self.parse_unary()
        while self.match_punct("*"):
            poly = poly * self.parse_unary()
        return poly

    def parse_unary(self) -> ComplexPolynomial:
        if self.match_punct("-"):
            return -self.parse_unary()
        if self.match_punct("+"):
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> ComplexPolynomial:
        poly = self.parse_primary()
        while self.match_punct("^"):
            e_tok = self.peek()
            bad = (
                e_tok.kind != "number"
                or e_tok.value.imag != 0
                or e_tok.value.real != int(e_tok.value.real)
                or e_tok.value.real < 0
            )
            if bad:
                raise ParseError(
                    "syntax",
                    self.span_of(e_tok),
                    "exponent must be a literal non-negative integer",
                )
            self.advance()
            poly = poly ** int(e_tok.value.real)
        return poly

    def parse_primary(self) -> ComplexPolynomial:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return ComplexPolynomial.constant(self.n, tok.value)
        if tok.kind == "name":
            if tok.text == "i":
                self.advance()
                return ComplexPolynomial.constant(self.n, 1j)
            m = _VARIABLE.match(tok.text)
            if m:
                index = int(m.group(1))
                if not 1 <= index <= self.n:
                    raise ParseError(
                        "unknown-variable",
                        self.span_of(tok),
                        f"variable {tok.text} out of range: expected z1..z{self.n}",
                    )
                self.advance()
                self.var_spans.setdefault(index, self.span_of(tok))
                return ComplexPolynomial.variable(self.n, index)
            raise ParseError(
                "unknown-variable",
                self.span_of(tok),
                f"unknown name {tok.text!r} (variables are z1..z{self.n}, the unit is i)",
            )
        if self.at_punct("("):
            self.advance()
            poly = self.parse_sum()
            self.expect_punct(")")
            return poly
        raise ParseError(
            "syntax",
            self.span_of(tok),
            "expected a number, a variable or '('"
            + (", found end of input" if tok.kind == "end" else f", found {tok.text!r}"),
        )


def parse_automorphism(text: str, n: int) -> AutomorphismWord:
    """Parse DSL text into an automorphism word of C^n.

    Raises ParseError with a kind from ERROR_KINDS and a span locating
    the offending tokens.  n is required: the same text is valid in
    every sufficiently large dimension.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return _Parser(text, n).parse_word()


def parse_point(text: str, n: int) -> np.ndarray:
    """Parse a comma-separated list of n constant entries into a point.

    Accepts the same constant expressions as affine entries, e.g.
    "1,0", "(1+2i), 0.5" or "2i, 3".
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    parser = _Parser(text, n)
    values = []
    value, _ = parser.parse_constant_entry()
    values.append(value)
    while parser.match_punct(","):
        value, _ = parser.parse_constant_entry()
        values.append(value)
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(
            "syntax",
            SourceSpan(tok.start, tok.end),
            f"unexpected {tok.text!r} in point (entries are joined with ',')",
        )
    if len(values) != n:
        raise ParseError(
            "dimension-mismatch",
            SourceSpan(0, len(text)),
            f"point has {len(values)} entries, expected {n}",
        )
    return np.array(values, dtype=np.complex128)


# --- serialization ------------------------------------------------------


def _fmt_real(x: float) -> str:
    return "%.17g" % x


def _fmt_imag_mag(mag: float) -> str:
    return "i" if mag == 1.0 else _fmt_real(mag) + "i"


def _fmt_entry(c: complex) -> str:
    """A standalone complex literal: -2, 2i, -i, (1+2i), (-1-0.5i)."""
    if c.imag == 0.0:
        return _fmt_real(c.real)
    if c.real == 0.0:
        sign = "-" if c.imag < 0 else ""
        return sign + _fmt_imag_mag(abs(c.imag))
    sign = "-" if c.imag < 0 else "+"
    return f"({_fmt_real(c.real)}{sign}{_fmt_imag_mag(abs(c.imag))})"


def _monomial_text(exponent: tuple[int, ...]) -> str:
    pieces = []
    for j, e in enumerate(exponent):
        if e == 1:
            pieces.append(f"z{j + 1}")
        elif e > 1:
            pieces.append(f"z{j + 1}^{e}")
    return "*".join(pieces)


def _term_text(coeff: complex, mono: str) -> tuple[str, str]:
    """(sign, body) for one canonical term; sign is '+' or '-'."""
    if not mono:
        entry = _fmt_entry(coeff)
        if entry.startswith("-"):
            return "-", entry[1:]
        return "+", entry
    if coeff == 1:
        return "+", mono
    if coeff == -1:
        return "-", mono
    if coeff.imag == 0.0:
        sign = "-" if coeff.real < 0 else "+"
        return sign, _fmt_real(abs(coeff.real)) + "*" + mono
    if coeff.real == 0.0:
        sign = "-" if coeff.imag < 0 else "+"
        return sign, _fmt_imag_mag(abs(coeff.imag)) + "*" + mono
    return "+", _fmt_entry(coeff) + "*" + mono


def polynomial_text(p: ComplexPolynomial) -> str:
    """Canonical text: descending graded-lex monomials, 17-digit coefficients."""
    if not p.terms:
        return "0"
    keys = sorted(p.terms, key=lambda e: (sum(e), e), reverse=True)
    out = []
    for key in keys:
        sign, body = _term_text(p.terms[key], _monomial_text(key))
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def _generator_text(g) -> str:
    if isinstance(g, Affine):
        groups = [g.matrix[i] for i in range(g.dimension)] + [g.offset]
        body = "; ".join(",".join(_fmt_entry(v) for v in row) for row in groups)
        return f"affine({body})"
    return f"shear({g.k}, {polynomial_text(g.p)})"


def serialize(word: AutomorphismWord) -> str:
    """Canonical DSL text for a word; parsing it back gives equal coefficients.

    Generators print right-to-left relative to storage so that the "."
    convention (left atom applied last) reproduces the original
    application order.
    """
    if not word.word:
        return "id"
    return " . ".join(_generator_text(g) for g in reversed(word.word))

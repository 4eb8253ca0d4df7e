"""Sparse multivariate polynomials with rational coefficients.

The text grammar is deliberately small::

    poly   := [sign] term (sign term)*
    term   := factor ([*] factor)*
    factor := NUMBER ['/' NUMBER] | 'x' INDEX ['^' NUMBER]

so ``-3/4*x0^2*x1``, ``x0x1 - 2x2^2`` and ``1 + x1`` all parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

__all__ = ["Polynomial", "PolynomialSyntaxError", "parse_polynomial"]


class PolynomialSyntaxError(ValueError):
    """Raised for malformed polynomial text; carries a 1-based position."""

    def __init__(self, message: str, column: int, line: int | None = None, text: str = ""):
        self.message = message
        self.column = column
        self.line = line
        self.text = text
        where = f"line {line}, column {column}" if line is not None else f"column {column}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in ``nvars`` variables ``x0..x{nvars-1}``.

    ``terms`` holds ``(exponent, coefficient)`` pairs with nonzero
    coefficients, sorted by exponent in descending lexicographic order.
    """

    nvars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_dict(cls, nvars: int, coeffs: Mapping[tuple[int, ...], object]) -> "Polynomial":
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in coeffs.items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for {nvars} variables")
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        items = sorted(((e, c) for e, c in acc.items() if c), reverse=True)
        return cls(nvars, tuple(items))

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "Polynomial":
        return parse_polynomial(text, nvars)

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Polynomial.from_dict(self.nvars, acc)

    def dehomogenize(self, var: int = 0) -> "Polynomial":
        """Set ``x{var} = 1`` and drop that variable."""
        acc: dict = {}
        for e, c in self.terms:
            e2 = e[:var] + e[var + 1:]
            acc[e2] = acc.get(e2, 0) + c
        return Polynomial.from_dict(self.nvars - 1, acc)

    def evaluate(self, point) -> complex:
        z = np.asarray(point, dtype=complex)
        total = 0j
        for e, c in self.terms:
            total += float(c) * np.prod(z ** np.asarray(e))
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, body in parts[1:]:
            s += f" {sgn} {body}"
        return s


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*/^])"
)


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos + 1, text=text)
        if not m.group("ws"):
            kind = "var" if m.group("var") else m.lastgroup
            toks.append((kind, m.group(0), pos + 1, m))
        pos = m.end()
    return toks


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    """Parse ``text``; ``nvars`` defaults to one more than the largest index."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i] if i < len(toks) else None

    def fail(msg, tok=None):
        col = tok[2] if tok else len(text) + 1
        raise PolynomialSyntaxError(msg, col, text=text)

    terms: list[tuple[dict[int, int], Fraction]] = []
    if not toks:
        fail("empty polynomial")
    sign = 1
    t = peek()
    if t[0] == "op" and t[1] in "+-":
        sign = -1 if t[1] == "-" else 1
        i += 1
    while True:
        coeff = Fraction(sign)
        mono: dict[int, int] = {}
        nfactors = 0
        while True:
            t = peek()
            if t is None:
                break
            if t[0] == "op" and t[1] == "*":
                if nfactors == 0:
                    fail("'*' without a left factor", t)
                i += 1
                t = peek()
                if t is None or t[0] not in ("num", "var"):
                    fail("expected a factor after '*'", t)
            if t[0] == "num":
                i += 1
                val = Fraction(int(t[1]))
                nxt = peek()
                if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                    i += 1
                    den = peek()
                    if den is None or den[0] != "num":
                        fail("expected a denominator after '/'", den)
                    if int(den[1]) == 0:
                        fail("zero denominator", den)
                    val /= int(den[1])
                    i += 1
                coeff *= val
                nfactors += 1
            elif t[0] == "var":
                i += 1
                idx = int(t[3].group("idx"))
                exp = 1
                nxt = peek()
                if nxt is not None and nxt[0] == "op" and nxt[1] == "^":
                    i += 1
                    e = peek()
                    if e is None or e[0] != "num":
                        fail("expected an exponent after '^'", e)
                    exp = int(e[1])
                    i += 1
                mono[idx] = mono.get(idx, 0) + exp
                nfactors += 1
            else:
                break
        if nfactors == 0:
            fail("expected a term", peek())
        terms.append((mono, coeff))
        t = peek()
        if t is None:
            break
        if t[0] == "op" and t[1] in "+-":
            sign = -1 if t[1] == "-" else 1
            i += 1
            if peek() is None:
                fail("dangling sign at end of input")
            continue
        fail(f"unexpected token {t[1]!r}", t)

    top = max((max(m) for m, _ in terms if m), default=-1)
    if nvars is None:
        nvars = top + 1
    elif top >= nvars:
        # point at the first offending variable
        for kind, txt, col, m in toks:
            if kind == "var" and int(m.group("idx")) >= nvars:
                raise PolynomialSyntaxError(
                    f"variable {txt} out of range for {nvars} variables", col, text=text
                )
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for mono, c in terms:
        e = tuple(mono.get(j, 0) for j in range(nvars))
        coeffs[e] = coeffs.get(e, Fraction(0)) + c
    return Polynomial.from_dict(nvars, coeffs)


def monomial(exps: Iterable[int]) -> Polynomial:
    e = tuple(exps)
    return Polynomial(len(e), ((e, Fraction(1)),))

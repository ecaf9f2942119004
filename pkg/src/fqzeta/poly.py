"""Homogeneous integer polynomials in projective coordinates x0..xn.

Grammar (whitespace-insensitive, no implicit multiplication)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)?
    atom    := INT | VAR | '(' expr ')'
    VAR     := 'x' DIGITS

``-x0^2`` parses as ``-(x0^2)``; ``x0^2^3`` is rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .ff import FieldDescriptor, FieldElement, LogTables, DenseArrays

__all__ = [
    "PolyError",
    "PolySyntaxError",
    "UnknownVariable",
    "ZeroPolynomial",
    "NotHomogeneous",
    "MultiPoly",
    "PolynomialSystem",
    "parse_poly",
    "is_homogeneous",
    "reduce_and_compile",
    "EvaluationKernel",
]


class PolyError(ValueError):
    pass


class PolySyntaxError(PolyError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


class UnknownVariable(PolyError):
    pass


class ZeroPolynomial(PolyError):
    pass


class NotHomogeneous(PolyError):
    pass


Exponents = tuple[int, ...]


def _grlex_key(exps: Exponents):
    # descending total degree, then descending lex
    return (-sum(exps), tuple(-e for e in exps))


@dataclass(frozen=True)
class MultiPoly:
    """Normal form: terms sorted by graded-lex order, no zeros, no duplicates."""

    nvars: int
    terms: tuple[tuple[int, Exponents], ...]

    @classmethod
    def from_dict(cls, nvars: int, d: dict[Exponents, int]) -> "MultiPoly":
        items = [(c, e) for e, c in d.items() if c != 0]
        items.sort(key=lambda t: _grlex_key(t[1]))
        return cls(nvars, tuple(items))

    @classmethod
    def constant(cls, nvars: int, c: int) -> "MultiPoly":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls.from_dict(nvars, {tuple(e): 1})

    def as_dict(self) -> dict[Exponents, int]:
        return {e: c for c, e in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((sum(e) for _, e in self.terms), default=-1)

    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise PolyError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        d = self.as_dict()
        for c, e in other.terms:
            d[e] = d.get(e, 0) + c
        return MultiPoly.from_dict(self.nvars, d)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, tuple((-c, e) for c, e in self.terms))

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        d: dict[Exponents, int] = {}
        for c1, e1 in self.terms:
            for c2, e2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return MultiPoly.from_dict(self.nvars, d)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise PolyError("negative exponent")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def render(self) -> str:
        """Render in the input grammar; ``parse_poly(f.render(), nvars) == f``."""
        if not self.terms:
            return "0"
        out = []
        for i, (c, e) in enumerate(self.terms):
            factors = []
            for j, k in enumerate(e):
                if k == 1:
                    factors.append(f"x{j}")
                elif k > 1:
                    factors.append(f"x{j}^{k}")
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    __str__ = render


_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|([-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = pos
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("var", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, self.text, tok[2])

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        f = self.expr()
        if self.peek()[0] != "end":
            kind, val, _ = self.peek()
            self.error(f"unexpected {'x' + val if kind == 'var' else val!r}")
        return f

    def expr(self) -> MultiPoly:
        f = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> MultiPoly:
        f = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            f = f * self.unary()
        return f

    def unary(self) -> MultiPoly:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.error("exponent must be a non-negative integer literal", tok)
            base = base ** int(tok[1])
            if self.peek()[:2] == ("op", "^"):
                self.error("chained exponent; parenthesize the base")
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return MultiPoly.constant(self.nvars, int(val))
        if kind == "var":
            idx = int(val)
            if idx >= self.nvars:
                raise UnknownVariable(
                    f"x{idx} at position {pos} but only x0..x{self.nvars - 1} are available"
                )
            return MultiPoly.variable(self.nvars, idx)
        if (kind, val) == ("op", "("):
            f = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.error("expected ')'", close)
            return f
        self.error("expected a number, variable or '('", tok)


def parse_poly(text: str, nvars: int) -> MultiPoly:
    return _Parser(text, nvars).parse()


def is_homogeneous(f: MultiPoly) -> tuple[bool, int | None]:
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no degree")
    degs = {sum(e) for _, e in f.terms}
    if len(degs) == 1:
        return True, degs.pop()
    return False, None


@dataclass(frozen=True)
class PolynomialSystem:
    """Homogeneous equations in x0..xn cutting out X in P^n."""

    n: int
    polys: tuple[MultiPoly, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise PolyError("ambient dimension must be >= 0")
        for f in self.polys:
            if f.nvars != self.n + 1:
                raise PolyError(f"equation in {f.nvars} variables, expected {self.n + 1}")
            ok, deg = is_homogeneous(f)
            if not ok:
                raise NotHomogeneous(f"{f.render()} is not homogeneous")
            if deg < 1:
                raise NotHomogeneous(f"{f.render()} is a nonzero constant")

    @classmethod
    def from_strings(cls, n: int, equations: Iterable[str]) -> "PolynomialSystem":
        return cls(n, tuple(parse_poly(e, n + 1) for e in equations))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted((f.total_degree for f in self.polys), reverse=True))

    def render(self) -> list[str]:
        return [f.render() for f in self.polys]


class EvaluationKernel:
    """A homogeneous polynomial reduced into a field, ready for evaluation.

    ``kernel(point)`` evaluates at a tuple of FieldElements; ``eval_codes`` and
    ``eval_dense`` evaluate a whole batch of points at once.
    """

    def __init__(self, f: MultiPoly, field: FieldDescriptor):
        self.field = field
        self.nvars = f.nvars
        p = field.p
        self.terms = tuple((c % p, e) for c, e in f.terms if c % p)
        self.degree = max((sum(e) for _, e in self.terms), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, point: Sequence[FieldElement]) -> FieldElement:
        F = self.field
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates")
        powers: list[list[FieldElement]] = [[F.one] for _ in point]
        total = F.zero
        for c, e in self.terms:
            val = F.scalar(c)
            for j, k in enumerate(e):
                if k:
                    pw = powers[j]
                    while len(pw) <= k:
                        pw.append(pw[-1] * point[j])
                    val = val * pw[k]
            total = total + val
        return total

    @cached_property
    def _arrays(self):
        coeffs = np.array([c for c, _ in self.terms], dtype=np.int64)
        exps = np.array([e for _, e in self.terms], dtype=np.int64).reshape(len(self.terms), self.nvars)
        return coeffs, exps

    def eval_codes(self, logs: np.ndarray, tables: LogTables) -> np.ndarray:
        """Evaluate at points given by the discrete logs of their coordinates.

        ``logs`` has shape (N, nvars) with -1 marking a zero coordinate.
        Returns integer codes of the values.
        """
        n = logs.shape[0]
        out = np.zeros(n, dtype=np.int64)
        if not self.terms:
            return out
        coeffs, exps = self._arrays
        qm1 = tables.q - 1
        zero = logs < 0
        for c, e in zip(coeffs, exps):
            used = np.nonzero(e)[0]
            s = np.full(n, int(tables.log[c]), dtype=np.int64)
            dead = np.zeros(n, dtype=bool)
            for j in used:
                s += int(e[j]) * logs[:, j]
                dead |= zero[:, j]
            val = tables.exp[s % qm1]
            val[dead] = 0
            out = tables.add(out, val)
        return out

    def eval_dense(self, coords: Sequence[np.ndarray], arith: DenseArrays) -> np.ndarray:
        """Table-free evaluation; coords[j] has shape (N, m). Returns (N, m)."""
        n = coords[0].shape[0]
        out = arith.constant(0, n)
        powers: dict[int, list[np.ndarray]] = {}
        for c, e in self.terms:
            val = None
            for j, k in enumerate(e):
                if k:
                    pw = powers.setdefault(j, [coords[j]])
                    while len(pw) < k:
                        pw.append(arith.mul(pw[-1], coords[j]))
                    val = pw[k - 1] if val is None else arith.mul(val, pw[k - 1])
            if c != 1:
                val = (val * c) % arith.p
            out = arith.add(out, val)
        return out


def reduce_and_compile(f: MultiPoly, field: FieldDescriptor) -> EvaluationKernel:
    if not f.is_zero():
        ok, _ = is_homogeneous(f)
        if not ok:
            raise NotHomogeneous(f"{f.render()} is not homogeneous")
    return EvaluationKernel(f, field)

"""Prime fields F_p and extensions F_{p^m}.

Elements are dense coefficient vectors modulo a canonically chosen monic
irreducible polynomial.  Besides scalar arithmetic this module provides two
vectorised backends used by the point counter:

* :class:`LogTables`  -- exp/log tables (q <= 2**16), elements encoded as ints;
* :class:`DenseArrays` -- coefficient arrays of shape (N, m), no tables.

Both work on the same integer encoding ``sum(c_i * p**i)`` so their results
can be compared bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "FieldError",
    "InvalidPrime",
    "InvalidDegree",
    "DivisionByZero",
    "FieldMismatch",
    "FieldDescriptor",
    "FieldElement",
    "build_field",
    "is_prime",
    "is_irreducible",
    "enumerate_elements",
    "add",
    "sub",
    "neg",
    "mul",
    "inv",
    "power",
    "frobenius",
    "LogTables",
    "DenseArrays",
    "TABLE_LIMIT",
]

TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


class InvalidPrime(FieldError):
    pass


class InvalidDegree(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class FieldMismatch(FieldError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic trial division; inputs are desk scale (< 2**31)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p as coefficient lists, lowest degree first ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    """Remainder of a modulo f (f need not be monic)."""
    a = [c % p for c in a]
    _trim(a)
    df = len(f) - 1
    lead_inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, f, p)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(list(a), f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic f (coefficients lowest degree first) over F_p.

    f is irreducible iff x^(p^m) = x mod f and gcd(x^(p^(m/l)) - x, f) = 1
    for every prime l dividing m = deg f.
    """
    f = [c % p for c in f]
    _trim(f)
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        raise ValueError("expected a monic polynomial of degree >= 1")
    if m == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**m, f, p), x, p):
        return False
    for ell in _prime_factors(m):
        h = _psub(_ppowmod(x, p ** (m // ell), f, p), x, p)
        g = _pgcd(f, h, p)
        if len(g) != 1:
            return False
    return True


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


# --- descriptors and elements ------------------------------------------------

@dataclass(frozen=True)
class FieldDescriptor:
    """F_{p^m} = F_p[x]/(defining_poly); defining_poly is monic, low degree first."""

    p: int
    m: int
    defining_poly: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def characteristic(self) -> int:
        return self.p

    def element(self, coeffs: Sequence[int]) -> "FieldElement":
        if len(coeffs) > self.m:
            raise ValueError("too many coefficients; reduce first")
        c = tuple(int(v) % self.p for v in coeffs) + (0,) * (self.m - len(coeffs))
        return FieldElement(self, c)

    def from_int(self, k: int) -> "FieldElement":
        """Element whose base-p digits (constant term least significant) spell k."""
        if not 0 <= k < self.order:
            raise ValueError(f"{k} out of range for F_{self.order}")
        c = []
        for _ in range(self.m):
            k, r = divmod(k, self.p)
            c.append(r)
        return FieldElement(self, tuple(c))

    def scalar(self, c: int) -> "FieldElement":
        """Image of the integer c under Z -> F_p -> F_{p^m}."""
        return FieldElement(self, (c % self.p,) + (0,) * (self.m - 1))

    @property
    def zero(self) -> "FieldElement":
        return self.scalar(0)

    @property
    def one(self) -> "FieldElement":
        return self.scalar(1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x (for m = 1 this is the integer 0, the root of x)."""
        if self.m == 1:
            return self.zero
        return self.element([0, 1])

    def elements(self) -> Iterator["FieldElement"]:
        return enumerate_elements(self)

    def __str__(self) -> str:
        if self.m == 1:
            return f"F_{self.p}"
        return f"F_{self.order} = F_{self.p}[x]/({_render_poly(self.defining_poly)})"


def _render_poly(c: Sequence[int], var: str = "x") -> str:
    parts = []
    for i in range(len(c) - 1, -1, -1):
        if c[i] == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            parts.append(str(c[i]))
        elif c[i] == 1:
            parts.append(mono)
        else:
            parts.append(f"{c[i]}*{mono}")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FieldElement:
    field: FieldDescriptor = field(repr=False)
    coeffs: tuple[int, ...]

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field.scalar(other)
        self._check(other)
        return other

    def __add__(self, other):
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, self._coerce(other))

    def __rsub__(self, other):
        return sub(self._coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return mul(self, inv(self._coerce(other)))

    def __pow__(self, e: int):
        return power(self, e)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __int__(self) -> int:
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.field.p + c
        return k

    def inverse(self) -> "FieldElement":
        return inv(self)

    def frobenius(self) -> "FieldElement":
        return frobenius(self)

    def __repr__(self) -> str:
        return f"FieldElement({_render_poly(self.coeffs)} in F_{self.field.order})"

    def __str__(self) -> str:
        return _render_poly(self.coeffs)


@lru_cache(maxsize=None)
def build_field(p: int, m: int = 1, max_order: int | None = None) -> FieldDescriptor:
    """Return F_{p^m} with the canonical-minimal monic irreducible modulus.

    Monic degree-m polynomials are scanned with (c_0, ..., c_{m-1}) read as a
    base-p integer (c_0 least significant); the first irreducible one wins.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidPrime(f"{p!r} is not prime")
    if not isinstance(m, int) or m < 1:
        raise InvalidDegree(f"extension degree must be >= 1, got {m!r}")
    if max_order is not None and p**m > max_order:
        raise FieldError(f"F_{p}^{m} exceeds the enumeration budget {max_order}")
    if m == 1:
        return FieldDescriptor(p, 1, (0, 1))
    for k in range(p**m):
        low = []
        for _ in range(m):
            k, r = divmod(k, p)
            low.append(r)
        cand = low + [1]
        if low[0] != 0 and is_irreducible(cand, p):
            return FieldDescriptor(p, m, tuple(cand))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def enumerate_elements(field: FieldDescriptor) -> Iterator[FieldElement]:
    """All elements in canonical order: 0, 1, ..., by base-p code."""
    for k in range(field.order):
        yield field.from_int(k)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    p = a.field.p
    return FieldElement(a.field, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    p = a.field.p
    return FieldElement(a.field, tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: FieldElement) -> FieldElement:
    p = a.field.p
    return FieldElement(a.field, tuple(-x % p for x in a.coeffs))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    F = a.field
    if F.m == 1:
        return FieldElement(F, (a.coeffs[0] * b.coeffs[0] % F.p,))
    r = _pmulmod(list(a.coeffs), list(b.coeffs), list(F.defining_poly), F.p)
    return F.element(r)


def inv(a: FieldElement) -> FieldElement:
    """Inverse via extended Euclid in F_p[x]."""
    F = a.field
    if not a:
        raise DivisionByZero("inverse of zero")
    p = F.p
    if F.m == 1:
        return FieldElement(F, (pow(a.coeffs[0], -1, p),))
    r0, r1 = list(F.defining_poly), _trim(list(a.coeffs))
    s0, s1 = [], [1]
    while len(r1) > 1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    # r1 is a nonzero constant
    c = pow(r1[0], -1, p)
    return F.element(_pmod([c * v for v in s1], list(F.defining_poly), p))


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([c % p for c in a])
    q = [0] * max(len(a) - len(b) + 1, 1)
    lead_inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * lead_inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return _trim(q), a


def power(a: FieldElement, e: int) -> FieldElement:
    """Square-and-multiply; negative exponents go through the inverse."""
    if e < 0:
        return power(inv(a), -e)
    result = a.field.one
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def frobenius(a: FieldElement) -> FieldElement:
    return power(a, a.field.p)


# --- vectorised backends -----------------------------------------------------

class LogTables:
    """Exp/log tables over the integer encoding of F_q (q <= TABLE_LIMIT).

    ``log[0]`` is -1; callers mask zeros before using it.
    """

    def __init__(self, F: FieldDescriptor):
        if F.order > TABLE_LIMIT:
            raise FieldError(f"tables disabled for q = {F.order} > {TABLE_LIMIT}")
        self.field = F
        self.q = q = F.order
        g = _primitive_element(F)
        exp = np.empty(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = F.one
        for k in range(q - 1):
            code = int(x)
            exp[k] = code
            log[code] = k
            x = mul(x, g)
        self.exp = exp
        self.log = log
        self.generator = g
        self.p_pow = np.array([F.p**i for i in range(F.m)], dtype=np.int64)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        F = self.field
        if F.p == 2:
            return np.bitwise_xor(a, b)
        if F.m == 1:
            return (a + b) % F.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self.p_pow:
            out += ((a // w + b // w) % F.p) * w
        return out

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        la, lb = self.log[a], self.log[b]
        r = self.exp[(la + lb) % (self.q - 1)]
        return np.where((la < 0) | (lb < 0), 0, r)


@lru_cache(maxsize=64)
def log_tables(F: FieldDescriptor) -> LogTables:
    return LogTables(F)


def _primitive_element(F: FieldDescriptor) -> FieldElement:
    n = F.order - 1
    factors = _prime_factors(n) if n > 1 else []
    for k in range(1, F.order):
        g = F.from_int(k)
        if all(power(g, n // ell) != F.one for ell in factors):
            return g
    raise AssertionError("no primitive element")  # pragma: no cover


class DenseArrays:
    """Table-free arithmetic on arrays of coefficient vectors, shape (N, m)."""

    def __init__(self, F: FieldDescriptor):
        self.field = F
        self.p = F.p
        self.m = F.m
        self.modulus = np.array(F.defining_poly[:-1], dtype=np.int64)
        self.p_pow = np.array([F.p**i for i in range(F.m)], dtype=np.int64)

    def decode(self, codes: np.ndarray) -> np.ndarray:
        return (np.asarray(codes, dtype=np.int64)[..., None] // self.p_pow) % self.p

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        return vecs @ self.p_pow

    def constant(self, c: int, n: int) -> np.ndarray:
        out = np.zeros((n, self.m), dtype=np.int64)
        out[:, 0] = c % self.p
        return out

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.p

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        m, p = self.m, self.p
        if m == 1:
            return (a * b) % p
        prod = np.zeros(a.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            prod[..., i : i + m] += a[..., i : i + 1] * b
        prod %= p
        # x^m = -(c_0 + c_1 x + ... + c_{m-1} x^{m-1})
        for k in range(2 * m - 2, m - 1, -1):
            top = prod[..., k : k + 1] % p
            prod[..., k - m : k] -= top * self.modulus
        return prod[..., :m] % p

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        result = self.constant(1, a.shape[0])
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

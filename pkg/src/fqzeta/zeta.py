"""Zeta series from point counts, exact rational reconstruction, Newton polygons.

Integer polynomials in t are tuples of coefficients, lowest degree first.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .counting import PointCountSequence

__all__ = [
    "ZetaError",
    "InsufficientCounts",
    "DegreeBoundsTooSmall",
    "IntegralityViolation",
    "NotCompleteIntersectionLike",
    "InvalidInput",
    "ZetaSeries",
    "RationalZeta",
    "Polygon",
    "NewtonPolygon",
    "series_from_counts",
    "pade_reconstruct",
    "extract_middle_factor",
    "newton_polygon",
    "divisibility_check",
    "weil_symmetry_check",
    "valuation",
    "prime_power",
    "poly_mul",
    "series_mul",
    "series_inverse",
    "counts_from_rational",
    "trivial_factor",
]


class ZetaError(ValueError):
    pass


class InsufficientCounts(ZetaError):
    def __init__(self, min_S: int, have: int):
        self.min_S = min_S
        self.have = have
        super().__init__(f"need at least S = {min_S} point counts, have {have}")


class DegreeBoundsTooSmall(ZetaError):
    pass


class IntegralityViolation(ZetaError):
    pass


class NotCompleteIntersectionLike(ZetaError):
    pass


class InvalidInput(ZetaError):
    pass


def valuation(c: int, p: int) -> int | None:
    """p-adic valuation of an integer; None for 0 (infinite)."""
    if c == 0:
        return None
    c = abs(c)
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


def prime_power(q: int) -> tuple[int, int]:
    """(p, d) with q = p^d."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(k for k in range(2, q + 1) if q % k == 0)
    d, r = 0, q
    while r % p == 0:
        r //= p
        d += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, d


# --- truncated power series helpers -------------------------------------------

def poly_mul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def series_mul(a: Sequence, b: Sequence, order: int) -> list:
    """Product truncated to coefficients 0..order."""
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def series_inverse(a: Sequence, order: int) -> list:
    if a[0] != 1:
        raise ZetaError("series inverse needs constant term 1")
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    for k in range(1, order + 1):
        out[k] = -sum((a[j] if j < len(a) else 0) * out[k - j] for j in range(1, k + 1))
    return out


def _trim(c: Sequence) -> tuple:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def trivial_factor(m: int, q: int) -> tuple[int, ...]:
    """prod_{j=0}^{m} (1 - q^j t)."""
    out: tuple = (1,)
    for j in range(m + 1):
        out = poly_mul(out, (1, -(q**j)))
    return out


# --- types ---------------------------------------------------------------------

@dataclass(frozen=True)
class ZetaSeries:
    q: int
    coeffs: tuple[Fraction, ...]

    @property
    def S(self) -> int:
        return len(self.coeffs) - 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise IntegralityViolation(f"non-integral zeta coefficients {self.coeffs}")
        return tuple(int(c) for c in self.coeffs)


@dataclass(frozen=True)
class RationalZeta:
    """numerator/denominator, both integer polynomials with constant term 1."""

    q: int
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def expand(self, order: int) -> list[Fraction]:
        return series_mul(self.numerator, series_inverse(self.denominator, order), order)

    def counts(self, S: int) -> list[int]:
        return counts_from_rational(self.numerator, self.denominator, S)

    def to_dict(self) -> dict:
        return {"numerator": list(self.numerator), "denominator": list(self.denominator)}


def counts_from_rational(num: Sequence[int], den: Sequence[int], S: int) -> list[int]:
    """N_s from t * d/dt log(num/den): for 1 - a t factors this is sum of a^s.

    Uses Newton's identities on each polynomial: the power sums of the
    reciprocal roots of c(t) = 1 + c_1 t + ... satisfy
    p_k = -k c_k - sum_{i=1}^{k-1} c_i p_{k-i}.
    """
    def power_sums(c):
        c = list(c) + [0] * (S + 1)
        ps = []
        for k in range(1, S + 1):
            v = -k * c[k] - sum(c[i] * ps[k - i - 1] for i in range(1, k))
            ps.append(v)
        return ps

    a, b = power_sums(num), power_sums(den)
    # zeta = num/den, log derivative picks up -sum alpha^s from num and +sum beta^s from den
    return [bb - aa for aa, bb in zip(a, b)]


@dataclass(frozen=True)
class Polygon:
    """A convex lower polygon starting at (0, 0).

    vertices: breakpoints, left to right; slopes: ((slope, multiplicity), ...)
    with non-decreasing slopes.
    """

    vertices: tuple[tuple[int, Fraction], ...]
    slopes: tuple[tuple[Fraction, int], ...]

    @property
    def width(self) -> int:
        return self.vertices[-1][0] if self.vertices else 0

    @property
    def end(self) -> tuple[int, Fraction]:
        return self.vertices[-1] if self.vertices else (0, Fraction(0))

    def ordinate(self, x) -> Fraction:
        """Height of the polygon at abscissa x (0 <= x <= width)."""
        vs = self.vertices
        if not vs or x < 0 or x > vs[-1][0]:
            raise ValueError(f"abscissa {x} outside polygon")
        for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * Fraction(x - x0, x1 - x0)
        return vs[0][1]

    def slope_list(self) -> list[Fraction]:
        return [s for s, k in self.slopes for _ in range(k)]

    @classmethod
    def from_slopes(cls, slopes: Sequence[tuple[Fraction, int]]) -> "Polygon":
        merged: list[list] = []
        for s, k in sorted((Fraction(s), k) for s, k in slopes if k > 0):
            if merged and merged[-1][0] == s:
                merged[-1][1] += k
            else:
                merged.append([s, k])
        verts = [(0, Fraction(0))]
        for s, k in merged:
            x, y = verts[-1]
            verts.append((x + k, y + s * k))
        return cls(tuple(verts), tuple((s, k) for s, k in merged))

    def to_dict(self) -> dict:
        return {
            "vertices": [[x, str(y)] for x, y in self.vertices],
            "slopes": [[str(s), k] for s, k in self.slopes],
        }


@dataclass(frozen=True)
class NewtonPolygon(Polygon):
    points: tuple[tuple[int, Fraction], ...] = ()

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["points"] = [[x, str(y)] for x, y in self.points]
        return d


# --- operations -----------------------------------------------------------------

def series_from_counts(counts: PointCountSequence, use_complement: bool = False) -> ZetaSeries:
    """Coefficients of zeta with log-derivative sum N_s t^(s-1): s c_s = sum_j N_j c_{s-j}."""
    N = counts.complement_counts if use_complement else counts.counts
    c = [Fraction(1)]
    for s in range(1, len(N) + 1):
        c.append(sum(N[j - 1] * c[s - j] for j in range(1, s + 1)) / s)
    return ZetaSeries(counts.q, tuple(c))


def _bareiss_solve(A: list[list[int]], b: list[int]) -> list[Fraction] | None:
    """Unique solution of the (possibly overdetermined) system A x = b.

    Fraction-free elimination on the augmented matrix.  Returns None when the
    system is inconsistent; raises LinAlgError-like ValueError when rank
    deficient.
    """
    rows = len(A)
    cols = len(A[0]) if A else 0
    M = [list(r) + [bb] for r, bb in zip(A, b)]
    prev = 1
    r = 0
    pivots = []
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols + 1):
                num, rem = divmod(M[r][c] * M[i][j] - M[i][c] * M[r][j], prev)
                assert rem == 0, "fraction-free step must divide exactly"
                M[i][j] = num
            M[i][c] = 0
        prev = M[r][c]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    # consistency: rows below rank must have zero right-hand side
    for i in range(r, rows):
        if M[i][cols] != 0:
            return None
    if r < cols:
        raise ValueError("rank deficient")
    x = [Fraction(0)] * cols
    for i in range(cols - 1, -1, -1):
        s = Fraction(M[i][cols]) - sum(M[i][j] * x[j] for j in range(i + 1, cols))
        x[i] = s / M[i][i]
    return x


def _divide_linear(f: Sequence[int], a: int) -> tuple[int, ...] | None:
    """f / (1 - a t) if exact, else None."""
    out = []
    carry = 0
    for c in f:
        v = c + carry  # coefficient of quotient: g_k = f_k + a g_{k-1}
        out.append(v)
        carry = a * v
    # last entry must vanish for exact division
    if out[-1] != 0:
        return None
    return tuple(out[:-1]) if len(out) > 1 else (0,)


def _cancel_common(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    changed = True
    while changed and len(num) > 1 and len(den) > 1:
        changed = False
        lead = abs(den[-1])
        for a in sorted({k for k in range(1, lead + 1) if lead % k == 0}):
            for sa in (a, -a):
                n2, d2 = _divide_linear(num, sa), _divide_linear(den, sa)
                if n2 is not None and d2 is not None:
                    num, den = n2, d2
                    changed = True
                    break
            if changed:
                break
    return num, den


def pade_reconstruct(series: ZetaSeries, deg_num: int, deg_den: int) -> RationalZeta:
    """P/Q with Q Z = P mod t^(S+1), deg P <= deg_num, deg Q <= deg_den, Q(0) = 1.

    If the bounds overshoot the true degrees by k, both are lowered by k until
    the linear system has a unique solution.
    """
    S = series.S
    if S < deg_num + deg_den:
        raise InsufficientCounts(deg_num + deg_den, S)
    c = series.coeffs
    if any(x.denominator != 1 for x in c):
        raise IntegralityViolation("zeta series has non-integral coefficients")
    c = [int(x) for x in c]
    for k in range(0, min(deg_num, deg_den) + 1):
        dn, dd = deg_num - k, deg_den - k
        # unknowns Q_1..Q_dd: for row i in dn+1..S, sum_{j=1}^{dd} Q_j c_{i-j} = -c_i
        A = [[c[i - j] if i - j >= 0 else 0 for j in range(1, dd + 1)] for i in range(dn + 1, S + 1)]
        b = [-c[i] for i in range(dn + 1, S + 1)]
        if dd == 0:
            if any(b):
                raise DegreeBoundsTooSmall(f"no polynomial of degree <= {deg_num} fits")
            sol = []
        else:
            try:
                sol = _bareiss_solve(A, b)
            except ValueError:
                continue
            if sol is None:
                raise DegreeBoundsTooSmall(
                    f"no rational function with degrees ({deg_num}, {deg_den}) fits {S} coefficients")
        Q = [Fraction(1)] + sol
        P = series_mul(Q, c, dn)
        if any(x.denominator != 1 for x in Q + P):
            raise IntegralityViolation(f"reconstructed coefficients not integral: P={P}, Q={Q}")
        num, den = _trim(int(x) for x in P), _trim(int(x) for x in Q)
        num, den = _cancel_common(num, den)
        rz = RationalZeta(series.q, num, den)
        if rz.expand(S) != list(c):
            raise DegreeBoundsTooSmall("reconstruction does not reproduce the series")
        return rz
    raise DegreeBoundsTooSmall(f"degree bounds ({deg_num}, {deg_den}) admit no unique fit")


def extract_middle_factor(series: ZetaSeries, m: int, q: int, b_prim: int) -> tuple[int, ...]:
    """Primitive middle factor P_m of a smooth complete intersection of dimension m.

    Z(t) * prod_{j=0}^m (1 - q^j t) equals P_m for odd m and 1/P_m for even m.
    """
    S = series.S
    if S < b_prim:
        raise InsufficientCounts(b_prim, S)
    prod = series_mul(series.coeffs, trivial_factor(m, q), S)
    if m % 2 == 0:
        prod = series_inverse(prod, S)
    if any(x.denominator != 1 for x in prod):
        raise NotCompleteIntersectionLike(f"non-integral middle factor {prod}")
    prod = [int(x) for x in prod]
    if any(prod[b_prim + 1:]):
        raise NotCompleteIntersectionLike(
            f"middle factor does not truncate at degree {b_prim}: {prod}")
    out = tuple(prod[: b_prim + 1])
    if out[0] != 1:
        raise NotCompleteIntersectionLike("middle factor must have constant term 1")
    return out


def newton_polygon(poly: Sequence[int], p: int, d: int = 1) -> NewtonPolygon:
    """Lower convex hull of (j, v_p(c_j)/d) over nonzero coefficients."""
    if not any(poly):
        raise InvalidInput("zero polynomial")
    if poly[0] != 1:
        raise InvalidInput("Newton polygon needs constant term 1")
    pts = [(j, Fraction(valuation(c, p), d)) for j, c in enumerate(poly) if c != 0]
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.append(((y2 - y1) / (x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(hull), tuple(slopes), tuple(pts))


def divisibility_check(poly: Sequence[int], q: int, kappa: int) -> bool:
    """All reciprocal roots divisible by q^kappa  <=>  q^(kappa j) | c_j for all j."""
    p, d = prime_power(q)
    for j, c in enumerate(poly):
        if j == 0 or c == 0:
            continue
        if valuation(c, p) < d * kappa * j:
            return False
    return True


def weil_symmetry_check(P: Sequence[int], q: int, m: int) -> bool:
    """t^b q^(mb/2) P(1/(q^m t)) = +-P(t), compared in exact arithmetic."""
    b = len(P) - 1
    c = list(P)
    if (m * b) % 2 == 0:
        for eps in (1, -1):
            ok = all(
                Fraction(c[b - j]) == eps * c[j] * Fraction(q) ** (m * (b - 2 * j) // 2)
                for j in range(b + 1)
            )
            if ok:
                return True
        return False
    # odd m*b: compare squares and require one consistent sign
    signs = set()
    for j in range(b + 1):
        lhs = c[b - j] ** 2 * q ** (2 * m * j)
        rhs = c[j] ** 2 * q ** (m * b)
        if lhs != rhs:
            return False
        if c[j] != 0:
            signs.add((c[b - j] > 0) == (c[j] > 0))
    return len(signs) <= 1

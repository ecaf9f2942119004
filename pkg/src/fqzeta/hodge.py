"""Hodge numbers of smooth complete intersections from Euler characteristics.

chi(X, Omega^p_X(k)) is computed from three exact sequences:

* Euler sequence on P^n: chi(Omega^p(k)) = C(n+1, p) chi(O(k-p)) - chi(Omega^(p-1)(k));
* Koszul resolution of O_X by the defining degrees (restriction to X);
* the conormal filtration of Omega^p_{P^n}|_X, with graded pieces
  Omega^(p-j)_X(-sum_{i in S} d_i) for |S| = j, solved for Omega^p_X.

Everything off the middle row is fixed by the Lefschetz hyperplane theorem.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import NamedTuple, Sequence

from .zeta import Polygon

__all__ = [
    "InvalidSpec",
    "InternalInconsistency",
    "CompleteIntersectionSpec",
    "HodgeDiamond",
    "HodgeType",
    "chi_projective",
    "chi_twisted",
    "hodge_numbers",
    "projective_space_diamond",
    "hodge_type",
    "ax_katz_kappa",
    "hodge_polygon",
    "blowup_hodge",
    "verify_12a",
    "euler_number",
]


class InvalidSpec(ValueError):
    pass


class InternalInconsistency(AssertionError):
    pass


@dataclass(frozen=True)
class CompleteIntersectionSpec:
    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        degs = tuple(sorted((int(d) for d in self.degrees), reverse=True))
        object.__setattr__(self, "degrees", degs)
        if not degs:
            raise InvalidSpec("a complete intersection needs r >= 1 equations")
        if any(d < 1 for d in degs):
            raise InvalidSpec(f"degrees must be >= 1, got {degs}")
        if self.n - len(degs) < 0:
            raise InvalidSpec(f"{len(degs)} equations in P^{self.n} leave negative dimension")

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def m(self) -> int:
        return self.n - self.r


def _binom_poly(n: int, k: int) -> int:
    """C(n+k, n) as the polynomial prod_{i=1}^n (k+i) / n!, valid for all integers k."""
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    return num // factorial(n)


def chi_projective(n: int, p: int, k: int) -> int:
    """chi(P^n, Omega^p(k))."""
    total = 0
    # unrolled Euler-sequence recursion
    for j in range(p + 1):
        total += (-1) ** (p - j) * comb(n + 1, j) * _binom_poly(n, k - j)
    return total


@lru_cache(maxsize=None)
def _chi_ci(n: int, degrees: tuple[int, ...], p: int, k: int) -> int:
    r = len(degrees)
    # chi(Omega^p_{P^n}(k)|_X) by the Koszul complex
    restricted = 0
    for size in range(r + 1):
        for S in combinations(degrees, size):
            restricted += (-1) ** size * chi_projective(n, p, k - sum(S))
    # subtract the lower pieces of the conormal filtration
    for j in range(1, min(p, r) + 1):
        for S in combinations(range(r), j):
            restricted -= _chi_ci(n, degrees, p - j, k - sum(degrees[i] for i in S))
    return restricted


def chi_twisted(spec: CompleteIntersectionSpec, p: int, k: int = 0) -> int:
    """chi(X, Omega^p_X(k)) for 0 <= p <= dim X."""
    if not 0 <= p <= spec.m:
        raise InvalidSpec(f"form degree {p} outside [0, {spec.m}]")
    return _chi_ci(spec.n, spec.degrees, p, k)


@dataclass(frozen=True)
class HodgeDiamond:
    """h[p][q] for 0 <= p, q <= m; h_prim[p] = h^{p, m-p}_prim (None if not tracked)."""

    m: int
    h: tuple[tuple[int, ...], ...]
    h_prim: tuple[int, ...] | None = None

    def __getitem__(self, pq: tuple[int, int]) -> int:
        p, q = pq
        if 0 <= p <= self.m and 0 <= q <= self.m:
            return self.h[p][q]
        return 0

    def betti(self, k: int) -> int:
        return sum(self[p, k - p] for p in range(k + 1))

    @property
    def b_prim(self) -> int:
        return sum(self.h_prim) if self.h_prim is not None else 0

    @property
    def has_primitive(self) -> bool:
        return self.b_prim > 0

    def off_diagonal(self) -> list[tuple[int, int, int]]:
        return [(p, q, self.h[p][q]) for p in range(self.m + 1) for q in range(self.m + 1)
                if p != q and self.h[p][q]]

    def check_symmetry(self) -> None:
        m = self.m
        for p in range(m + 1):
            for q in range(m + 1):
                v = self.h[p][q]
                if v < 0 or v != self.h[q][p] or v != self.h[m - p][m - q]:
                    raise InternalInconsistency(f"asymmetric diamond at ({p}, {q})")

    def check_complete_intersection(self) -> None:
        self.check_symmetry()
        m = self.m
        for p in range(m + 1):
            for q in range(m + 1):
                if p + q == m:
                    want = self.h_prim[p] + (1 if 2 * p == m else 0)
                else:
                    want = 1 if p == q else 0
                if self.h[p][q] != want:
                    raise InternalInconsistency(f"h^({p},{q}) = {self.h[p][q]}, expected {want}")

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.h]

    def to_dict(self) -> dict:
        d = {"m": self.m, "h": self.rows()}
        if self.h_prim is not None:
            d["h_prim"] = list(self.h_prim)
        return d

    def render(self) -> str:
        """The diamond drawn with h^{m,m} on top."""
        m = self.m
        lines = []
        width = max(len(str(v)) for r in self.h for v in r)
        for s in range(2 * m, -1, -1):
            entries = [str(self[p, s - p]).rjust(width) for p in range(m, -1, -1) if 0 <= s - p <= m]
            pad = " " * ((width + 1) * (m + 1 - len(entries)) // 2)
            lines.append(pad + " ".join(entries))
        return "\n".join(lines)


class HodgeType(NamedTuple):
    kappa: int
    no_primitive: bool


def hodge_numbers(spec: CompleteIntersectionSpec) -> HodgeDiamond:
    m = spec.m
    prim = []
    for p in range(m + 1):
        chi = chi_twisted(spec, p, 0)
        v = (-1) ** (m - p) * (chi - (-1) ** p)
        if v < 0:
            raise InternalInconsistency(f"negative primitive h^({p},{m - p}) = {v} for {spec}")
        prim.append(v)
    h = [[0] * (m + 1) for _ in range(m + 1)]
    for p in range(m + 1):
        h[p][p] = 1
        h[p][m - p] += prim[p]
    if m % 2 == 0:
        pass  # h^{m/2,m/2} = 1 + prim, set by the two lines above
    diamond = HodgeDiamond(m, tuple(tuple(r) for r in h), tuple(prim))
    diamond.check_complete_intersection()
    return diamond


def projective_space_diamond(n: int) -> HodgeDiamond:
    h = tuple(tuple(1 if p == q else 0 for q in range(n + 1)) for p in range(n + 1))
    return HodgeDiamond(n, h, tuple(0 for _ in range(n + 1)))


def hodge_type(diamond: HodgeDiamond) -> HodgeType:
    """Smallest p with a nonzero primitive h^{p, m-p}; m+1 when there is none."""
    for p, v in enumerate(diamond.h_prim):
        if v:
            return HodgeType(p, False)
    return HodgeType(diamond.m + 1, True)


def ax_katz_kappa(n: int, degrees: Sequence[int]) -> int:
    """floor((n - d_2 - ... - d_r) / d_1), clamped at 0."""
    degs = sorted(degrees, reverse=True)
    if not degs:
        raise InvalidSpec("need at least one degree")
    return max(0, (n - sum(degs[1:])) // degs[0])


def hodge_polygon(diamond: HodgeDiamond, use_primitive: bool = True) -> Polygon:
    """Slope i with multiplicity h^{i, m-i} (primitive numbers if requested)."""
    m = diamond.m
    if use_primitive:
        mult = list(diamond.h_prim)
    else:
        mult = [diamond[i, m - i] for i in range(m + 1)]
    return Polygon.from_slopes([(i, k) for i, k in enumerate(mult)])


def blowup_hodge(kappa: int, d: int, n: int) -> HodgeDiamond:
    """Diamond of the blow-up Y of P^n along X = V(f_1, ..., f_kappa), deg f_i = d.

    h^{a,b}(Y) = h^{a,b}(P^n) + sum_{i=1}^{kappa-1} h^{a-i,b-i}(X).
    """
    if kappa < 1 or d < 1:
        raise InvalidSpec("kappa and d must be >= 1")
    if n - kappa < 0:
        raise InvalidSpec(f"kappa = {kappa} forms in P^{n} cut out an empty expected locus")
    h = [[1 if a == b else 0 for b in range(n + 1)] for a in range(n + 1)]
    if kappa >= 2:
        X = hodge_numbers(CompleteIntersectionSpec(n, (d,) * kappa))
        for i in range(1, kappa):
            for a in range(i, n + 1):
                for b in range(i, n + 1):
                    h[a][b] += X[a - i, b - i]
    diamond = HodgeDiamond(n, tuple(tuple(r) for r in h), None)
    diamond.check_symmetry()
    return diamond


def verify_12a(kappa: int, d: int, n: int) -> bool:
    """Both clauses of the vanishing statement on the computed diamond of Y.

    (i)  h^{q,p}(Y) = 0 for q != p, p <= kappa - 1;
    (ii) some h^{q,p}(Y) != 0 with p >= kappa, q != p  <=>  kappa d <= n.
    """
    Y = blowup_hodge(kappa, d, n)
    off = Y.off_diagonal()
    clause_i = not any(p <= kappa - 1 for p, q, v in off)
    beyond = any(p >= kappa for p, q, v in off)
    clause_ii = beyond == (kappa * d <= n)
    return clause_i and clause_ii


def euler_number(spec: CompleteIntersectionSpec) -> int:
    """Topological Euler characteristic as sum_p (-1)^p chi(Omega^p_X)."""
    return sum((-1) ** p * chi_twisted(spec, p, 0) for p in range(spec.m + 1))

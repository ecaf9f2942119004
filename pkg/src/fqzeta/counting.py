"""Exhaustive point counts of projective varieties over F_{q^s}.

Projective points are indexed 0 .. |P^n(F_q)|-1: first the q^n points with
pivot 0 (x0 = 1), then the q^(n-1) points with pivot 1, and so on.  Inside a
pivot block the free coordinates are the base-q digits of the local index,
x_n least significant.  Counting splits that index range into contiguous
pieces, counts each with a pure kernel and sums.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import multiprocessing as mp
from typing import Iterator, Sequence

import numpy as np

from .ff import TABLE_LIMIT, DenseArrays, FieldDescriptor, FieldElement, build_field, log_tables
from .poly import EvaluationKernel, PolynomialSystem, reduce_and_compile

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "PointCountSequence",
    "projective_space_size",
    "enumerate_projective",
    "count_points",
    "count_tower",
    "cone_count_oracle",
    "counting_cost",
    "mobius",
]

DEFAULT_BUDGET = 10**9
CHUNK = 1 << 16


class BudgetExceeded(RuntimeError):
    def __init__(self, estimated_cost: int, budget: int, max_feasible_S: int | None = None,
                 partial: "PointCountSequence | None" = None):
        self.estimated_cost = estimated_cost
        self.budget = budget
        self.max_feasible_S = max_feasible_S
        self.partial = partial
        msg = f"estimated {estimated_cost} kernel evaluations exceeds budget {budget}"
        if max_feasible_S is not None:
            msg += f"; largest feasible S is {max_feasible_S}"
        super().__init__(msg)


def mobius(n: int) -> int:
    result = 1
    k = 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    if n > 1:
        result = -result
    return result


@dataclass(frozen=True)
class PointCountSequence:
    p: int
    d: int
    n: int
    counts: tuple[int, ...]
    complement_counts: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.complement_counts:
            comp = tuple(projective_space_size(self.n, self.q**s) - N
                         for s, N in enumerate(self.counts, start=1))
            object.__setattr__(self, "complement_counts", comp)

    @property
    def q(self) -> int:
        return self.p**self.d

    @property
    def S(self) -> int:
        return len(self.counts)

    def closed_points(self) -> list[Fraction]:
        """a_e = (1/e) sum_{f | e} mu(e/f) N_f, the number of closed points of degree e."""
        out = []
        for e in range(1, self.S + 1):
            tot = sum(mobius(e // f) * self.counts[f - 1] for f in range(1, e + 1) if e % f == 0)
            out.append(Fraction(tot, e))
        return out

    def check_invariants(self) -> None:
        for s, N in enumerate(self.counts, start=1):
            if not 0 <= N <= projective_space_size(self.n, self.q**s):
                raise ValueError(f"N_{s} = {N} outside [0, |P^n|]")
        for e, a in enumerate(self.closed_points(), start=1):
            if a.denominator != 1 or a < 0:
                raise ValueError(f"closed-point count of degree {e} is {a}")

    def truncated(self, S: int) -> "PointCountSequence":
        return PointCountSequence(self.p, self.d, self.n, self.counts[:S], self.complement_counts[:S])


def projective_space_size(n: int, q: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    return (q ** (n + 1) - 1) // (q - 1)


def enumerate_projective(n: int, field: FieldDescriptor) -> Iterator[tuple[FieldElement, ...]]:
    """One representative per point of P^n(F_q), first nonzero coordinate 1."""
    q = field.order
    elems = list(field.elements())
    zero, one = field.zero, field.one
    for i in range(n + 1):
        free = n - i
        for k in range(q**free):
            digits = []
            for _ in range(free):
                k, r = divmod(k, q)
                digits.append(elems[r])
            yield (zero,) * i + (one,) + tuple(reversed(digits))


def _blocks(n: int, q: int):
    """(pivot, global offset, size) for each pivot block."""
    off = 0
    for i in range(n + 1):
        size = q ** (n - i)
        yield i, off, size
        off += size


def _point_codes(n: int, q: int, pivot: int, lo: int, hi: int) -> np.ndarray:
    local = np.arange(lo, hi, dtype=np.int64)
    pts = np.zeros((hi - lo, n + 1), dtype=np.int64)
    pts[:, pivot] = 1
    for j in range(n, pivot, -1):
        local, r = np.divmod(local, q)
        pts[:, j] = r
    return pts


def _count_range(kernels: Sequence[EvaluationKernel], n: int, field: FieldDescriptor,
                 start: int, stop: int, chunk: int = CHUNK) -> int:
    q = field.order
    use_tables = q <= TABLE_LIMIT
    tables = log_tables(field) if use_tables else None
    arith = None if use_tables else DenseArrays(field)
    total = 0
    for pivot, off, size in _blocks(n, q):
        lo, hi = max(start, off), min(stop, off + size)
        for a in range(lo, hi, chunk):
            b = min(a + chunk, hi)
            pts = _point_codes(n, q, pivot, a - off, b - off)
            for ker in kernels:
                if pts.shape[0] == 0:
                    break
                if use_tables:
                    vals = ker.eval_codes(tables.log[pts], tables)
                    alive = vals == 0
                else:
                    coords = [arith.decode(pts[:, j]) for j in range(n + 1)]
                    alive = ~ker.eval_dense(coords, arith).any(axis=1)
                # short-circuit: only points still on X reach the next equation
                pts = pts[alive]
            total += pts.shape[0]
    return total


def counting_cost(system: PolynomialSystem, q: int) -> int:
    """Upper bound on kernel evaluations for one field: |P^n(F_q)| per equation."""
    if not system.polys:
        return 0
    return projective_space_size(system.n, q) * len(system.polys)


def _default_workers() -> int:
    return os.cpu_count() or 1


def count_points(system: PolynomialSystem, field: FieldDescriptor, workers: int | None = 1,
                 budget: int = DEFAULT_BUDGET) -> int:
    """|X(F_q)| by enumerating projective representatives."""
    n, q = system.n, field.order
    total_pts = projective_space_size(n, q)
    cost = counting_cost(system, q)
    if cost > budget:
        raise BudgetExceeded(cost, budget)
    kernels = [reduce_and_compile(f, field) for f in system.polys]
    kernels = [k for k in kernels if not k.is_zero]
    if not kernels:
        return total_pts
    workers = workers or _default_workers()
    if workers <= 1 or total_pts < 4 * CHUNK:
        return _count_range(kernels, n, field, 0, total_pts)
    bounds = np.linspace(0, total_pts, workers + 1).round().astype(np.int64).tolist()
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else None
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        futs = [pool.submit(_count_range, kernels, n, field, a, b)
                for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        return sum(f.result() for f in futs)


def count_tower(system: PolynomialSystem, p: int, d: int, S: int, workers: int | None = 1,
                budget: int = DEFAULT_BUDGET) -> PointCountSequence:
    """N_s = |X(F_{q^s})| for s = 1..S with q = p^d; each field built independently."""
    if S < 1:
        raise ValueError("S must be >= 1")
    costs = [counting_cost(system, p ** (d * s)) for s in range(1, S + 1)]
    if sum(costs) > budget:
        feasible = 0
        acc = 0
        for c in costs:
            if acc + c > budget:
                break
            acc += c
            feasible += 1
        raise BudgetExceeded(sum(costs), budget, max_feasible_S=feasible)
    counts = []
    for s in range(1, S + 1):
        F = build_field(p, d * s)
        counts.append(count_points(system, F, workers=workers, budget=budget))
    seq = PointCountSequence(p, d, system.n, tuple(counts))
    return seq


def cone_count_oracle(system: PolynomialSystem, field: FieldDescriptor,
                      budget: int = DEFAULT_BUDGET, chunk: int = CHUNK) -> int:
    """Count affine zeros in A^{n+1} (origin included) and divide out homotheties.

    Uses the table-free coefficient-vector arithmetic, so it shares neither the
    enumeration nor the multiplication routine with :func:`count_points`.
    """
    n, q = system.n, field.order
    total = q ** (n + 1)
    if system.polys and total * len(system.polys) > budget:
        raise BudgetExceeded(total * len(system.polys), budget)
    kernels = [reduce_and_compile(f, field) for f in system.polys]
    arith = DenseArrays(field)
    zeros = 0
    if not any(not k.is_zero for k in kernels):
        zeros = total
    else:
        for a in range(0, total, chunk):
            idx = np.arange(a, min(a + chunk, total), dtype=np.int64)
            coords = []
            for _ in range(n + 1):
                idx, r = np.divmod(idx, q)
                coords.append(arith.decode(r))
            ok = np.ones(coords[0].shape[0], dtype=bool)
            for k in kernels:
                ok &= ~k.eval_dense(coords, arith).any(axis=1)
            zeros += int(ok.sum())
    num = zeros - 1
    assert num % (q - 1) == 0, f"affine cone count {zeros} not of the form 1 + (q-1)k"
    return num // (q - 1)

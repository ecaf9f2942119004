"""Divisibility checks tying point counts, zeta factors and Hodge data together.

Every check returns a plain dict section with a ``pass`` key (``None`` when
the check does not apply) so that reports serialize directly to JSON.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from . import hodge as H
from .catalog import VarietyInput
from .counting import BudgetExceeded, PointCountSequence, count_tower, projective_space_size
from .ff import build_field
from .poly import PolynomialSystem
from .zeta import (
    ZetaError,
    ZetaSeries,
    counts_from_rational,
    divisibility_check,
    extract_middle_factor,
    newton_polygon,
    pade_reconstruct,
    prime_power,
    series_from_counts,
    valuation,
    weil_symmetry_check,
)

__all__ = [
    "VerificationReport",
    "ReportOptions",
    "verify_ax_katz",
    "verify_fano_congruence",
    "verify_zeta_ring_membership",
    "verify_eigenvalue_divisibility",
    "verify_slopes_proposition",
    "verify_newton_above_hodge",
    "max_passing_kappa",
    "full_report",
    "DegreeMismatch",
]


class DegreeMismatch(ValueError):
    pass


def _val(c: int, p: int):
    v = valuation(c, p)
    return "inf" if v is None else v


def max_passing_kappa(check, upper: int) -> int:
    """Largest kappa in [0, upper] with check(kappa) true (checks are monotone)."""
    best = -1
    for k in range(upper + 1):
        if not check(k):
            break
        best = k
    return best


def _ax_katz_levels(U: Sequence[int], q: int, kappa: int, per_level: bool) -> list[dict]:
    out = []
    for s, u in enumerate(U, start=1):
        mod = (q**s if per_level else q) ** kappa
        r = u % mod
        out.append({"s": s, "modulus": mod, "remainder": r, "pass": r == 0})
    return out


def verify_ax_katz(system: PolynomialSystem, p: int, d: int, S: int,
                   counts: PointCountSequence | None = None, kappa: int | None = None,
                   workers: int | None = 1, budget: int | None = None) -> dict:
    """(q^s)^kappa divides |U(F_{q^s})| for s <= S, U the complement of X in P^n.

    Smoothness is not needed.  The literal per-field reading with modulus q^kappa
    is reported alongside.
    """
    if counts is None:
        kw = {} if budget is None else {"budget": budget}
        counts = count_tower(system, p, d, S, workers=workers, **kw)
    q = p**d
    if kappa is None:
        kappa = H.ax_katz_kappa(system.n, system.degrees) if system.polys else None
    U = counts.complement_counts
    if kappa is None:
        return {"kappa": None, "levels": [], "literal_levels": [], "pass": True,
                "note": "no equations: U is empty, the congruence is vacuous", "max_kappa": None}
    levels = _ax_katz_levels(U, q, kappa, True)
    literal = _ax_katz_levels(U, q, kappa, False)
    upper = counts.n + 1
    best = max_passing_kappa(lambda k: all(u % (q**s) ** k == 0 for s, u in enumerate(U, 1)), upper)
    sec = {
        "kappa": kappa,
        "levels": levels,
        "literal_levels": literal,
        "pass": all(lv["pass"] for lv in levels),
        "max_kappa": best,
    }
    if kappa == 0:
        sec["note"] = "kappa = 0: modulus 1, vacuous"
    return sec


def verify_fano_congruence(counts: PointCountSequence) -> dict:
    """N_s = 1 mod q^s for every level."""
    q = counts.q
    levels = []
    for s, N in enumerate(counts.counts, start=1):
        r = N % q**s
        levels.append({"s": s, "modulus": q**s, "remainder": r, "pass": r == 1 % q**s})
    return {"levels": levels, "pass": all(lv["pass"] for lv in levels)}


def verify_zeta_ring_membership(series: ZetaSeries, q: int, kappa: int) -> dict:
    """zeta in Z[[q^kappa t]]: v_p(c_s) >= d kappa s for 1 <= s <= S."""
    p, d = prime_power(q)
    coeffs = series.int_coeffs()
    rows = []
    for s, c in enumerate(coeffs[1:], start=1):
        v = valuation(c, p)
        need = d * kappa * s
        rows.append({"s": s, "coefficient": c, "valuation": "inf" if v is None else v,
                     "required": need, "pass": v is None or v >= need})

    bounds = [valuation(c, p) // (d * s) for s, c in enumerate(coeffs[1:], 1) if c]
    return {
        "kappa": kappa,
        "coefficients": rows,
        "pass": all(r["pass"] for r in rows),
        # None: every coefficient vanishes, any kappa passes
        "max_kappa": min(bounds) if bounds else None,
    }


def verify_eigenvalue_divisibility(P: Sequence[int], q: int, kappa: int) -> dict:
    p, _ = prime_power(q)
    return {
        "kappa": kappa,
        "polynomial": list(P),
        "valuations": [_val(c, p) for c in P],
        "pass": divisibility_check(P, q, kappa),
    }


def _middle_factor(counts: PointCountSequence, diamond: H.HodgeDiamond) -> tuple[int, ...]:
    series = series_from_counts(counts)
    return extract_middle_factor(series, diamond.m, counts.q, diamond.b_prim)


def verify_slopes_proposition(system: PolynomialSystem, p: int, d: int, S: int,
                              counts: PointCountSequence | None = None,
                              workers: int | None = 1) -> dict:
    """If the Hodge type kappa_H >= 1, every reciprocal zero/pole is divisible by q^kappa_H."""
    spec = H.CompleteIntersectionSpec(system.n, system.degrees)
    diamond = H.hodge_numbers(spec)
    ht = H.hodge_type(diamond)
    sec: dict[str, Any] = {"kappa_hodge": ht.kappa, "no_primitive": ht.no_primitive}
    if ht.no_primitive:
        sec.update({"pass": None, "note": "no primitive cohomology; hypothesis not applicable"})
        return sec
    if ht.kappa < 1:
        sec.update({"pass": True, "note": "Hodge type 0: vacuous"})
        return sec
    if counts is None:
        counts = count_tower(system, p, d, S, workers=workers)
    q = counts.q
    if counts.S < diamond.b_prim:
        sec.update({"pass": None, "note": f"S = {counts.S} < b_prim = {diamond.b_prim}"})
        return sec
    kappa = min(ht.kappa, spec.m)
    P = _middle_factor(counts, diamond)
    eig = verify_eigenvalue_divisibility(P, q, kappa)
    ring = verify_zeta_ring_membership(series_from_counts(counts, use_complement=True), q, kappa)
    sec.update({"kappa": kappa, "eigenvalues": eig, "ring_membership": ring,
                "pass": eig["pass"] and ring["pass"]})
    return sec


def verify_newton_above_hodge(P: Sequence[int], diamond: H.HodgeDiamond, p: int, d: int) -> dict:
    """Newton polygon of the primitive factor on or above the primitive Hodge polygon."""
    hp = H.hodge_polygon(diamond, use_primitive=True)
    if len(P) - 1 != hp.width:
        raise DegreeMismatch(f"deg P = {len(P) - 1} but primitive Hodge polygon has width {hp.width}")
    if len(P) == 1:
        return {"newton": None, "hodge": hp.to_dict(), "pass": True, "relation": "empty"}
    npoly = newton_polygon(P, p, d)
    above = all(y >= hp.ordinate(x) for x, y in npoly.vertices)
    # Hodge vertices against the Newton polygon too, so polygons compare pointwise
    above = above and all(npoly.ordinate(x) >= y for x, y in hp.vertices)
    same_end = npoly.end == hp.end
    relation = "equal" if npoly.slopes == hp.slopes else "strictly above"
    return {
        "newton": npoly.to_dict(),
        "hodge": hp.to_dict(),
        "shared_endpoints": same_end,
        "relation": relation if above else "below",
        "pass": above and same_end,
    }


@dataclass
class ReportOptions:
    workers: int | None = 1
    kappa_override: int | None = None
    corrupt_counts: dict[int, int] = field(default_factory=dict)


@dataclass
class VerificationReport:
    variety: str
    n: int
    degrees: list[int]
    p: int
    d: int
    S: int
    kappa_axkatz: int | None
    kappa_hodge: int | None = None
    hodge_marker: str | None = None
    counts: list[int] = field(default_factory=list)
    complement_counts: list[int] = field(default_factory=list)
    sections: dict[str, dict] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    provenance: dict[str, Any] = field(default_factory=dict)
    budget_exceeded: bool = False

    @property
    def passed(self) -> bool:
        return all(sec.get("pass") is not False for sec in self.sections.values())

    def failures(self) -> list[str]:
        return [k for k, sec in self.sections.items() if sec.get("pass") is False]

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": 1,
            "variety": self.variety,
            "n": self.n,
            "degrees": self.degrees,
            "field": {"p": self.p, "d": self.d, "q": self.p**self.d},
            "S": self.S,
            "kappa_axkatz": self.kappa_axkatz,
            "kappa_hodge": self.kappa_hodge,
            "hodge_marker": self.hodge_marker,
            "counts": self.counts,
            "complement_counts": self.complement_counts,
            "checks": self.sections,
            "passed": self.passed,
            "failures": self.failures(),
            "notes": self.notes,
            "budget_exceeded": self.budget_exceeded,
            "provenance": self.provenance,
        }


def _reconstruct_zeta(counts: PointCountSequence, diamond: H.HodgeDiamond) -> dict:
    """Reconstruct zeta(X) with Betti-number degree bounds; round-trip the counts."""
    m, b = diamond.m, diamond.b_prim
    dn, dd = (b, m + 1) if m % 2 else (0, m + 1 + b)
    need = dn + dd
    if counts.S < need:
        return {"pass": None, "degree_bounds": [dn, dd],
                "note": f"S = {counts.S} < {need} needed for reconstruction"}
    series = series_from_counts(counts)
    rz = pade_reconstruct(series, dn, dd)
    back = counts_from_rational(rz.numerator, rz.denominator, counts.S)
    return {"degree_bounds": [dn, dd], **rz.to_dict(),
            "round_trip": back == list(counts.counts), "pass": back == list(counts.counts)}


def full_report(entry: VarietyInput, options: ReportOptions | None = None) -> VerificationReport:
    """Run every applicable check on a variety input."""
    opts = options or ReportOptions()
    system = entry.system()
    p, d, S = entry.p, entry.d, entry.S
    q = p**d
    kappa_ak = H.ax_katz_kappa(system.n, system.degrees) if system.polys else None
    rep = VerificationReport(entry.name, system.n, list(system.degrees), p, d, S, kappa_ak)
    rep.provenance = {
        "S_requested": S,
        "budget": entry.budget,
        "fields": [str(build_field(p, d * s)) for s in range(1, S + 1)],
        "smoothness": "trusted flag" if entry.smooth else ("unknown" if entry.smooth is None else "singular"),
        "comparison": "primitive Newton polygon vs primitive Hodge polygon",
    }

    try:
        counts = count_tower(system, p, d, S, workers=opts.workers, budget=entry.budget)
    except BudgetExceeded as exc:
        rep.budget_exceeded = True
        rep.notes.append(f"budget exceeded for S = {S}: {exc}")
        if not exc.max_feasible_S:
            rep.sections["budget"] = {"pass": False, "estimated_cost": exc.estimated_cost}
            return rep
        counts = count_tower(system, p, d, exc.max_feasible_S, workers=opts.workers,
                             budget=entry.budget)
        rep.notes.append(f"partial report computed with S = {counts.S}")
    if opts.corrupt_counts:
        N = list(counts.counts)
        for s, delta in opts.corrupt_counts.items():
            if 1 <= s <= len(N):
                N[s - 1] += delta
        counts = PointCountSequence(counts.p, counts.d, counts.n, tuple(N))
        rep.notes.append(f"counts corrupted by test hook: {opts.corrupt_counts}")
    rep.provenance["S_used"] = counts.S
    rep.counts = list(counts.counts)
    rep.complement_counts = list(counts.complement_counts)

    try:
        counts.check_invariants()
        rep.sections["closed_points"] = {"pass": True,
                                         "closed_points": [int(a) for a in counts.closed_points()]}
    except ValueError as exc:
        rep.sections["closed_points"] = {"pass": False, "error": str(exc)}

    kappa = opts.kappa_override if opts.kappa_override is not None else kappa_ak
    if opts.kappa_override is not None:
        rep.notes.append(f"kappa overridden to {kappa}")
    rep.sections["ax_katz"] = verify_ax_katz(system, p, d, counts.S, counts=counts, kappa=kappa)

    if entry.fano:
        rep.sections["fano"] = verify_fano_congruence(counts)

    u_series = series_from_counts(counts, use_complement=True)
    if kappa is not None:
        try:
            rep.sections["ring_membership"] = verify_zeta_ring_membership(u_series, q, kappa)
        except ZetaError as exc:
            rep.sections["ring_membership"] = {"pass": False, "error": str(exc)}

    # Hodge side
    if not system.polys:
        diamond = H.projective_space_diamond(system.n)
        rep.kappa_hodge = system.n + 1
        rep.hodge_marker = "no primitive cohomology"
        rep.sections["hodge"] = {"diamond": diamond.to_dict(), "pass": None}
        rep.sections["zeta"] = _safe(lambda: _reconstruct_zeta(counts, diamond))
        return rep
    if not (entry.complete_intersection and entry.smooth):
        rep.notes.append("Hodge-side and eigenvalue checks need a trusted smooth complete "
                         "intersection; only count-level congruences were run")
        return rep

    spec = H.CompleteIntersectionSpec(system.n, system.degrees)
    diamond = H.hodge_numbers(spec)
    ht = H.hodge_type(diamond)
    rep.kappa_hodge = ht.kappa
    rep.hodge_marker = "no primitive cohomology" if ht.no_primitive else None
    rep.sections["hodge"] = {"diamond": diamond.to_dict(), "kappa_hodge": ht.kappa,
                             "no_primitive": ht.no_primitive, "pass": None}
    rep.sections["zeta"] = _safe(lambda: _reconstruct_zeta(counts, diamond))

    if counts.S < diamond.b_prim:
        rep.notes.append(f"middle factor needs S >= b_prim = {diamond.b_prim}; "
                         "eigenvalue checks skipped")
        rep.sections["slopes_proposition"] = {"pass": None, "kappa_hodge": ht.kappa,
                                              "note": "reconstruction infeasible"}
        return rep

    try:
        P = _middle_factor(counts, diamond)
    except ZetaError as exc:
        rep.sections["middle_factor"] = {"pass": False, "error": str(exc)}
        return rep
    nwt = newton_polygon(P, p, d) if len(P) > 1 else None
    rep.sections["middle_factor"] = {
        "polynomial": list(P),
        "newton": nwt.to_dict() if nwt else None,
        "weil_symmetric": weil_symmetry_check(P, q, diamond.m),
        "pass": weil_symmetry_check(P, q, diamond.m),
    }
    upper = diamond.m + 1
    max_div = max_passing_kappa(lambda k: divisibility_check(P, q, k), upper)
    eig_kappa = kappa if kappa is not None else 0
    eig = verify_eigenvalue_divisibility(P, q, eig_kappa)
    eig["max_kappa"] = max_div
    rep.sections["eigenvalue_divisibility"] = eig
    rep.sections["slopes_proposition"] = verify_slopes_proposition(system, p, d, counts.S,
                                                                   counts=counts)
    rep.sections["newton_above_hodge"] = _safe(lambda: verify_newton_above_hodge(P, diamond, p, d))
    if ht.no_primitive:
        rep.sections["kappa_agreement"] = {
            "pass": None, "kappa_axkatz": kappa_ak, "kappa_hodge": ht.kappa,
            "max_divisibility_kappa": max_div,
            "note": "no primitive cohomology: comparison skipped",
        }
    else:
        agree = kappa_ak == ht.kappa == max_div
        rep.sections["kappa_agreement"] = {
            "pass": agree, "kappa_axkatz": kappa_ak, "kappa_hodge": ht.kappa,
            "max_divisibility_kappa": max_div,
        }
        if agree and kappa_ak:
            rep.notes.append(f"divisibility sharp at kappa = {kappa_ak}")
    return rep


def _safe(fn) -> dict:
    try:
        return fn()
    except (ZetaError, DegreeMismatch) as exc:
        return {"pass": False, "error": f"{type(exc).__name__}: {exc}"}

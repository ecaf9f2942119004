"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run alone with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
one PASS/FAIL line per criterion.
"""
import time
from fractions import Fraction
from itertools import combinations_with_replacement

from hypothesis import given, settings, strategies as st

from fqzeta.catalog import CATALOG
from fqzeta.congruence import (
    full_report, verify_ax_katz, verify_newton_above_hodge, verify_slopes_proposition,
    verify_zeta_ring_membership,
)
from fqzeta.counting import cone_count_oracle, count_points, count_tower
from fqzeta.ff import build_field
from fqzeta.hodge import (
    CompleteIntersectionSpec, chi_twisted, hodge_numbers, hodge_type, verify_12a,
)
from fqzeta.poly import PolynomialSystem
from fqzeta.zeta import (
    counts_from_rational, divisibility_check, extract_middle_factor, newton_polygon,
    pade_reconstruct, series_from_counts, trivial_factor, weil_symmetry_check,
)
from oracles import fermat_jacobian_prim

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]  # q = 2,3,4,5,7,8,9


def test_projective_space_identity(criterion):
    criterion("1: |P^n(F_q)| = 1 + q + ... + q^n, n <= 4, q in {2,3,4,5,7,8,9}, two paths, < 10 s")
    t0 = time.perf_counter()
    for p, d in FIELDS:
        F = build_field(p, d)
        q = F.order
        for n in range(5):
            empty = PolynomialSystem(n, ())
            want = sum(q**j for j in range(n + 1))
            assert count_points(empty, F) == want, (n, q)
            assert cone_count_oracle(empty, F) == want, (n, q)
    assert time.perf_counter() - t0 < 10


def test_ax_katz_suite(criterion):
    criterion("2: (q^s)^kappa divides |U(F_{q^s})| on the congruence catalog, < 60 s")
    t0 = time.perf_counter()
    expected = {"conic": 1, "elliptic-5": 0, "cubic-surface-f2": 1, "quadric-surface": 1,
                "quadric-surface-nonsplit": 1, "quadric4fold-f3": 2}
    for name, kappa in expected.items():
        e = CATALOG[name]
        sec = verify_ax_katz(e.system(), e.p, e.d, e.S)
        assert sec["kappa"] == kappa, name
        assert sec["pass"], name
        for lv in sec["levels"]:
            assert lv["modulus"] == (e.q ** lv["s"]) ** kappa
    assert time.perf_counter() - t0 < 60


def test_sharpness_witness(criterion):
    criterion("3: split quadric fourfold over F_3 has |U| = 3^5 - 3^2; ring membership at 2 not 3")
    e = CATALOG["quadric4fold-f3"]
    counts = count_tower(e.system(), 3, 1, 1)
    assert counts.complement_counts == (3**5 - 3**2,)
    F3 = build_field(3)
    assert 364 - cone_count_oracle(e.system(), F3) == 3**5 - 3**2
    u = series_from_counts(counts, use_complement=True)
    assert verify_zeta_ring_membership(u, 3, 2)["pass"]
    assert not verify_zeta_ring_membership(u, 3, 3)["pass"]


def test_zeta_reconstruction(criterion):
    criterion("4: zeta of P^1, P^2, the F_5 elliptic curve and the F_2 cubic surface, < 5 min")
    t0 = time.perf_counter()
    for name, n in (("p1", 1), ("p2", 2)):
        e = CATALOG[name]
        counts = count_tower(e.system(), 2, 1, n + 1)
        rz = pade_reconstruct(series_from_counts(counts), 0, n + 1)
        assert rz.numerator == (1,) and rz.denominator == trivial_factor(n, 2)

    e = CATALOG["elliptic-5"]
    first = count_tower(e.system(), 5, 1, 2)
    P1 = extract_middle_factor(series_from_counts(first), 1, 5, 2)
    assert P1 == (1, 2, 5)
    predicted = counts_from_rational(P1, trivial_factor(1, 5), 4)
    brute = count_tower(e.system(), 5, 1, 4)
    assert predicted[2:] == list(brute.counts[2:])

    e = CATALOG["cubic-surface-f2"]
    counts = count_tower(e.system(), 2, 1, 6)
    P2 = extract_middle_factor(series_from_counts(counts), 2, 2, 6)
    assert len(P2) == 7
    assert divisibility_check(P2, 2, 1)
    assert weil_symmetry_check(P2, 2, 2)
    assert time.perf_counter() - t0 < 300


def test_newton_above_hodge(criterion):
    criterion("5: Newton = Hodge for the ordinary F_5 curve, strictly above for the supersingular F_7 curve")
    E = hodge_numbers(CompleteIntersectionSpec(2, (3,)))
    e = CATALOG["elliptic-5"]
    P = extract_middle_factor(series_from_counts(count_tower(e.system(), 5, 1, 2)), 1, 5, 2)
    sec = verify_newton_above_hodge(P, E, 5, 1)
    assert sec["pass"] and sec["relation"] == "equal"

    e = CATALOG["elliptic-7-ss"]
    counts = count_tower(e.system(), 7, 1, 2)
    assert counts.counts[0] == 8  # a = q + 1 - N_1 = 0
    P = extract_middle_factor(series_from_counts(counts), 1, 7, 2)
    assert newton_polygon(P, 7).slope_list() == [Fraction(1, 2)] * 2
    sec = verify_newton_above_hodge(P, E, 7, 1)
    assert sec["pass"] and sec["relation"] == "strictly above"
    assert [s for s, _ in sec["hodge"]["slopes"]] == ["0", "1"]


def test_hodge_diamonds(criterion):
    criterion("6: genus formula, quartic surface vs Jacobian ring, duality and symmetry on the grid, < 30 s")
    t0 = time.perf_counter()
    for d in range(1, 7):
        D = hodge_numbers(CompleteIntersectionSpec(2, (d,)))
        assert D[1, 0] == (d - 1) * (d - 2) // 2
    K3 = hodge_numbers(CompleteIntersectionSpec(3, (4,)))
    assert [K3[2, 0], K3[1, 1], K3[0, 2]] == [1, 20, 1]
    assert list(K3.h_prim) == fermat_jacobian_prim(3, 4)
    for n in range(1, 9):
        for r in range(1, min(3, n) + 1):
            for degs in combinations_with_replacement(range(6, 0, -1), r):
                spec = CompleteIntersectionSpec(n, degs)
                D = hodge_numbers(spec)
                D.check_symmetry()
                D.check_complete_intersection()
                for p in range(spec.m + 1):
                    assert chi_twisted(spec, p) == (-1) ** spec.m * chi_twisted(spec, spec.m - p)
    assert time.perf_counter() - t0 < 30


def test_kappa_agreement(criterion):
    criterion("7: kappa_axkatz = kappa_hodge = max divisibility kappa on the smooth catalog")
    compared = 0
    for name, e in CATALOG.items():
        if not (e.smooth and e.complete_intersection):
            continue
        rep = full_report(e)
        sec = rep.sections.get("kappa_agreement")
        if sec is None or sec["pass"] is None:
            continue  # no primitive cohomology, or S too small to reconstruct
        assert sec["pass"], (name, sec)
        compared += 1
    assert compared >= 6


def test_blowup_grid(criterion):
    criterion("8: verify_12a true on 1 <= kappa <= 3, 1 <= d <= 5, kappa <= n <= 8, < 10 s")
    t0 = time.perf_counter()
    failing = [(k, d, n) for k in range(1, 4) for d in range(1, 6) for n in range(k, 9)
               if not verify_12a(k, d, n)]
    assert time.perf_counter() - t0 < 10
    assert not failing, f"{len(failing)} of 105 grid cells fail, e.g. {failing[:6]}"


def _diagonal_quadric(coeffs):
    return " + ".join(f"{c}*x{i}^2" for i, c in enumerate(coeffs))


_SMOOTH = [e.name for e in CATALOG.values() if e.smooth and e.complete_intersection]


@settings(max_examples=25, deadline=None)
@given(st.one_of(
    st.sampled_from(_SMOOTH),
    st.tuples(st.sampled_from([3, 5]), st.lists(st.integers(1, 4), min_size=4, max_size=4)),
    st.lists(st.integers(1, 2), min_size=6, max_size=6),
))
def _slopes_proposition_holds(case):
    if isinstance(case, str):
        e = CATALOG[case]
        system, p, S = e.system(), e.p, e.S
    else:
        # diagonal quadrics with unit coefficients are smooth in odd characteristic
        if isinstance(case, tuple):
            p, coeffs = case
            coeffs = [c % p or 1 for c in coeffs]
            system, S = PolynomialSystem.from_strings(3, [_diagonal_quadric(coeffs)]), 2
        else:
            system, p, S = PolynomialSystem.from_strings(5, [_diagonal_quadric(case)]), 3, 1
        spec = CompleteIntersectionSpec(system.n, system.degrees)
        assert hodge_type(hodge_numbers(spec)).kappa >= 1
    sec = verify_slopes_proposition(system, p, 1, S)
    assert sec["pass"] is not False, sec


def test_slopes_proposition(criterion):
    criterion("9: no smooth input with kappa_H >= 1 fails divisibility at kappa_H")
    _slopes_proposition_holds()


def test_counting_performance(criterion):
    criterion("10: cubic surface over F_{2^7} counted in < 5 s on 4 workers, same as 1 worker")
    e = CATALOG["cubic-surface-f2"]
    F = build_field(2, 7)
    t0 = time.perf_counter()
    par = count_points(e.system(), F, workers=4)
    elapsed = time.perf_counter() - t0
    seq = count_points(e.system(), F, workers=1)
    assert par == seq
    assert elapsed < 5, f"{elapsed:.2f} s"

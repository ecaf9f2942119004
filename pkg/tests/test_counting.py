import pytest
from hypothesis import given, settings, strategies as st

from fqzeta.catalog import CATALOG
from fqzeta.counting import (
    BudgetExceeded, PointCountSequence, cone_count_oracle, count_points, count_tower,
    enumerate_projective, mobius, projective_space_size,
)
from fqzeta.ff import build_field
from fqzeta.poly import PolynomialSystem
from oracles import affine_cone_count_mod_p


@pytest.mark.parametrize("n,q,size", [(3, 4, 85), (0, 7, 1), (5, 2, 63)])
def test_projective_space_size(n, q, size):
    assert projective_space_size(n, q) == size


def test_enumerate_projective_order():
    F2 = build_field(2)
    pts = [tuple(int(c) for c in pt) for pt in enumerate_projective(1, F2)]
    assert pts == [(1, 0), (1, 1), (0, 1)]


@pytest.mark.parametrize("n,pm", [(2, (3, 1)), (2, (2, 2)), (3, (2, 1)), (1, (5, 1))])
def test_enumerate_projective_representatives(n, pm):
    F = build_field(*pm)
    pts = list(enumerate_projective(n, F))
    assert len(pts) == projective_space_size(n, F.order)
    assert len(set(pts)) == len(pts)
    for pt in pts:
        first = next(c for c in pt if c)
        assert first == F.one


def test_count_examples():
    F2 = build_field(2)
    assert count_points(PolynomialSystem(3), F2) == 15
    quad = PolynomialSystem.from_strings(3, ["x0*x3 - x1*x2"])
    assert count_points(quad, F2) == 9
    cubic = PolynomialSystem.from_strings(3, ["x0^3+x1^3+x2^3+x3^3"])
    assert count_points(cubic, F2) % 2 == 1


def test_count_tower_examples():
    assert count_tower(PolynomialSystem(1), 2, 1, 3).counts == (3, 5, 9)
    quad = PolynomialSystem.from_strings(3, ["x0*x3 - x1*x2"])
    assert count_tower(quad, 2, 1, 2).counts[:2] == (9, 25)
    ell = PolynomialSystem.from_strings(2, ["x1^2*x2 - x0^3 + x0*x2^2"])
    seq = count_tower(ell, 5, 1, 2)
    assert seq.counts[0] == 8
    assert seq.complement_counts == (31 - 8, 651 - seq.counts[1])


def test_cone_oracle_examples():
    assert cone_count_oracle(PolynomialSystem(2), build_field(3)) == 13
    for q in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        assert cone_count_oracle(PolynomialSystem.from_strings(1, ["x0"]), build_field(*q)) == 1


PRIME_FIELD_CASES = [
    ("x0*x3 - x1*x2", 3, 2), ("x0*x3 - x1*x2", 3, 3), ("x0^3+x1^3+x2^3+x3^3", 3, 2),
    ("x1^2*x2 - x0^3 + x0*x2^2", 2, 5), ("x1^2*x2 - x0^3 - x0*x2^2", 2, 7),
    ("x0*x1 + x2^2 + x3^2", 3, 3), ("x0^4 + x1^4 + x2^4", 2, 3),
]


@pytest.mark.parametrize("eq,n,p", PRIME_FIELD_CASES)
def test_count_matches_naive_modular_oracle(eq, n, p):
    system = PolynomialSystem.from_strings(n, [eq])
    terms = [list(f.terms) for f in system.polys]
    assert count_points(system, build_field(p)) == affine_cone_count_mod_p(terms, n, p)


def _catalog_small():
    for name, e in CATALOG.items():
        for s in range(1, e.S + 1):
            q = e.q**s
            if q ** (e.n + 1) <= 10**7 and (e.p, e.d * s) != (7, 4):
                yield pytest.param(name, s, id=f"{name}-s{s}")


@pytest.mark.parametrize("name,s", list(_catalog_small()))
def test_representatives_equal_cone(name, s):
    e = CATALOG[name]
    F = build_field(e.p, e.d * s)
    system = e.system()
    assert count_points(system, F) == cone_count_oracle(system, F)


def test_determinism_across_workers():
    system = CATALOG["cubic-surface-f2"].system()
    F = build_field(2, 7)
    results = {w: count_points(system, F, workers=w) for w in (1, 2, 8)}
    assert len(set(results.values())) == 1


def test_budget_exceeded_reports_cost_and_feasible_S():
    system = CATALOG["cubic-surface-f2"].system()
    with pytest.raises(BudgetExceeded) as exc:
        count_points(system, build_field(2, 7), budget=1000)
    assert exc.value.estimated_cost == projective_space_size(3, 128)
    with pytest.raises(BudgetExceeded) as exc:
        count_tower(system, 2, 1, 6, budget=400)
    # costs 15 + 85 + 585 + ... -> only s = 1, 2 fit
    assert exc.value.max_feasible_S == 2


def test_raising_S_keeps_earlier_counts():
    system = CATALOG["quadric-surface-nonsplit"].system()
    short = count_tower(system, 3, 1, 2)
    long = count_tower(system, 3, 1, 4)
    assert long.counts[:2] == short.counts


def test_mobius():
    assert [mobius(k) for k in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


@pytest.mark.parametrize("name", [k for k in CATALOG if k != "elliptic-7-ss"])
def test_closed_point_positivity_on_catalog(name):
    e = CATALOG[name]
    seq = count_tower(e.system(), e.p, e.d, e.S)
    seq.check_invariants()
    assert all(a.denominator == 1 and a >= 0 for a in seq.closed_points())


def test_closed_point_positivity_rejects_bad_counts():
    bad = PointCountSequence(2, 1, 1, (3, 4))  # a_2 = (4 - 3)/2
    with pytest.raises(ValueError):
        bad.check_invariants()


@settings(max_examples=25)
@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.sampled_from([2, 3, 5]))
def test_random_conics_dual_path(coeffs, p):
    a, b, c, d, e, f = coeffs
    text = f"{a}*x0^2 + {b}*x1^2 + {c}*x2^2 + {d}*x0*x1 + {e}*x0*x2 + {f}*x1*x2"
    try:
        system = PolynomialSystem.from_strings(2, [text])
    except Exception:
        return  # zero polynomial
    for m in (1, 2):
        F = build_field(p, m)
        assert count_points(system, F) == cone_count_oracle(system, F)

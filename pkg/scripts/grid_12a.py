"""Tabulate the blow-up vanishing grid and explain every failing cell.

For each (kappa, d, n) prints the verdict of both clauses and the off-diagonal
Hodge numbers of Y responsible for a failure.
"""
import argparse

from fqzeta.hodge import blowup_hodge


def clauses(kappa: int, d: int, n: int) -> tuple[bool, bool, list]:
    off = blowup_hodge(kappa, d, n).off_diagonal()
    low = [(p, q, v) for p, q, v in off if p <= kappa - 1]
    high = any(p >= kappa for p, q, v in off)
    return not low, high == (kappa * d <= n), off


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kappa-max", type=int, default=3)
    ap.add_argument("--d-max", type=int, default=5)
    ap.add_argument("--n-max", type=int, default=8)
    args = ap.parse_args()

    total = bad_i = bad_ii = 0
    for k in range(1, args.kappa_max + 1):
        for d in range(1, args.d_max + 1):
            for n in range(k, args.n_max + 1):
                ok_i, ok_ii, off = clauses(k, d, n)
                total += 1
                bad_i += not ok_i
                bad_ii += not ok_ii
                if not (ok_i and ok_ii):
                    shown = ", ".join(f"h^{p},{q}={v}" for p, q, v in off[:4]) or "none"
                    print(f"kappa={k} d={d} n={n}: clause(i) {ok_i}, clause(ii) {ok_ii}; "
                          f"kd<=n {k * d <= n}; off-diagonal: {shown}")
    print(f"\n{total} cells; clause (i) fails in {bad_i}, clause (ii) fails in {bad_ii}")


if __name__ == "__main__":
    main()

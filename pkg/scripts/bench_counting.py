"""Time projective point counting for the Fermat cubic surface over F_{2^s}."""
import argparse
import time

from fqzeta.catalog import CATALOG
from fqzeta.counting import count_points, projective_space_size
from fqzeta.ff import build_field


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s-max", type=int, default=7)
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 4])
    args = ap.parse_args()

    system = CATALOG["cubic-surface-f2"].system()
    print(f"{'s':>3}{'|P^3|':>12}{'workers':>9}{'N_s':>10}{'seconds':>10}")
    for s in range(1, args.s_max + 1):
        F = build_field(2, s)
        results = set()
        for w in args.workers:
            t0 = time.perf_counter()
            N = count_points(system, F, workers=w)
            dt = time.perf_counter() - t0
            results.add(N)
            print(f"{s:>3}{projective_space_size(3, F.order):>12}{w:>9}{N:>10}{dt:>10.3f}")
        assert len(results) == 1, "worker count changed the result"


if __name__ == "__main__":
    main()

"""Run the full verification pipeline over the built-in catalog and tabulate kappa values."""
import argparse
import json

from fqzeta.catalog import CATALOG
from fqzeta.congruence import ReportOptions, full_report


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = []
    for name, entry in CATALOG.items():
        rep = full_report(entry, ReportOptions(workers=args.workers))
        agree = rep.sections.get("kappa_agreement", {})
        rows.append({
            "variety": name,
            "q": entry.q,
            "S": rep.provenance.get("S_used"),
            "kappa_axkatz": rep.kappa_axkatz,
            "kappa_hodge": rep.kappa_hodge,
            "max_div": agree.get("max_divisibility_kappa"),
            "passed": rep.passed,
        })
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'variety':<26}{'q':>4}{'S':>3}{'AK':>5}{'H':>4}{'div':>5}  verdict")
    for r in rows:
        cols = [str(r[k]) if r[k] is not None else "-" for k in ("kappa_axkatz", "kappa_hodge", "max_div")]
        print(f"{r['variety']:<26}{r['q']:>4}{r['S']:>3}{cols[0]:>5}{cols[1]:>4}{cols[2]:>5}  "
              f"{'pass' if r['passed'] else 'FAIL'}")


if __name__ == "__main__":
    main()

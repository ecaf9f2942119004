"""Rewrite the pinned CLI outputs in tests/golden/ (review the diff before committing)."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from golden_cases import CASES, GOLDEN_DIR, run  # noqa: E402


def main() -> int:
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        code, out = run(argv)
        (GOLDEN_DIR / f"{name}.json").write_text(out)
        print(f"{name:<36} exit {code}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""CLI invocations whose JSON output is pinned under tests/golden/."""
import contextlib
import io
from pathlib import Path

from fqzeta.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"

_VERIFY = ["p1", "p2", "p3", "conic", "elliptic-5", "elliptic-7-ss", "quadric-surface",
           "quadric-surface-nonsplit", "quadric-threefold", "quadric4fold-f3",
           "quadric4fold-nonsplit-f3", "cubic-surface-f2", "quartic-curve", "quartic-surface", "del-pezzo-4",
           "cubic-cone"]

CASES: dict[str, list[str]] = {
    **{f"verify-{name}": ["verify", name] for name in _VERIFY},
    "count-p3": ["count", "p3"],
    "count-quadric-surface": ["count", "quadric-surface", "--S", "2"],
    "zeta-elliptic-5": ["zeta", "elliptic-5"],
    "zeta-p1": ["zeta", "p1"],
    "hodge-quartic-surface": ["hodge", "--n", "3", "--degrees", "4"],
    "hodge-cubic-surface": ["hodge", "--n", "3", "--degrees", "3"],
    "catalog": ["catalog"],
}


def run(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv + ["--json", "--workers", "1"] if argv[0] not in ("hodge", "catalog")
                    else argv + ["--json"])
    return code, buf.getvalue()

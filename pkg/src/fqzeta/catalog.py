"""Variety input documents and the built-in catalog."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

from .counting import DEFAULT_BUDGET
from .poly import PolynomialSystem

__all__ = ["SCHEMA_VERSION", "InputError", "VarietyInput", "CATALOG", "get_entry"]

SCHEMA_VERSION = 1


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class VarietyInput:
    name: str
    n: int
    equations: tuple[str, ...]
    p: int
    d: int = 1
    S: int = 1
    smooth: bool | None = None
    fano: bool | None = None
    complete_intersection: bool | None = None
    budget: int = DEFAULT_BUDGET
    description: str = ""

    def system(self) -> PolynomialSystem:
        return PolynomialSystem.from_strings(self.n, self.equations)

    @property
    def q(self) -> int:
        return self.p**self.d

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "VarietyInput":
        if not isinstance(doc, dict):
            raise InputError("input document must be a JSON object")
        version = doc.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise InputError(f"unsupported schema_version {version!r}")
        missing = [k for k in ("name", "n", "equations", "p") if k not in doc]
        if missing:
            raise InputError(f"missing required keys: {', '.join(missing)}")
        flags = doc.get("flags", {}) or {}
        unknown = set(flags) - {"smooth", "fano", "complete_intersection"}
        if unknown:
            raise InputError(f"unknown flags: {sorted(unknown)}")
        budget = (doc.get("budget") or {}).get("max_evaluations", DEFAULT_BUDGET)
        try:
            entry = cls(
                name=str(doc["name"]),
                n=int(doc["n"]),
                equations=tuple(str(e) for e in doc["equations"]),
                p=int(doc["p"]),
                d=int(doc.get("d", 1)),
                S=int(doc.get("S", 1)),
                smooth=flags.get("smooth"),
                fano=flags.get("fano"),
                complete_intersection=flags.get("complete_intersection"),
                budget=int(budget),
                description=str(doc.get("description", "")),
            )
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc)) from exc
        entry.validate()
        return entry

    def validate(self) -> None:
        from .ff import is_prime

        if not is_prime(self.p):
            raise InputError(f"p = {self.p} is not prime")
        if self.d < 1 or self.S < 1:
            raise InputError("d and S must be >= 1")
        if self.n < 0:
            raise InputError("n must be >= 0")
        self.system()  # parse and homogeneity errors surface here

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "n": self.n,
            "equations": list(self.equations),
            "p": self.p,
            "d": self.d,
            "S": self.S,
            "flags": {
                "smooth": self.smooth,
                "fano": self.fano,
                "complete_intersection": self.complete_intersection,
            },
            "budget": {"max_evaluations": self.budget},
            "description": self.description,
        }

    def with_overrides(self, **kw) -> "VarietyInput":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


def _ci(name, n, eqs, p, S, *, d=1, fano=None, desc=""):
    return VarietyInput(name, n, tuple(eqs), p, d, S, smooth=True, fano=fano,
                        complete_intersection=True, description=desc)


CATALOG: dict[str, VarietyInput] = {
    e.name: e
    for e in [
        VarietyInput("p1", 1, (), 2, 1, 3, smooth=True, fano=True, complete_intersection=False,
                     description="projective line"),
        VarietyInput("p2", 2, (), 2, 1, 3, smooth=True, fano=True, complete_intersection=False,
                     description="projective plane"),
        VarietyInput("p3", 3, (), 2, 2, 1, smooth=True, fano=True, complete_intersection=False,
                     description="projective 3-space over F_4"),
        _ci("conic", 2, ["x0*x2 - x1^2"], 3, 3, fano=True, desc="smooth plane conic"),
        _ci("elliptic-5", 2, ["x1^2*x2 - x0^3 + x0*x2^2"], 5, 4, fano=False,
            desc="ordinary elliptic curve y^2 z = x^3 - x z^2 over F_5"),
        _ci("elliptic-7-ss", 2, ["x1^2*x2 - x0^3 - x0*x2^2"], 7, 4, fano=False,
            desc="supersingular elliptic curve y^2 z = x^3 + x z^2 over F_7"),
        _ci("quartic-curve", 2, ["x0^4 + x1^4 + x2^4"], 3, 6, fano=False,
            desc="Fermat quartic curve (genus 3) over F_3"),
        _ci("cubic-surface-f2", 3, ["x0^3 + x1^3 + x2^3 + x3^3"], 2, 6, fano=True,
            desc="Fermat cubic surface over F_2"),
        _ci("quadric-surface", 3, ["x0*x3 - x1*x2"], 2, 4, fano=True,
            desc="split quadric surface (P^1 x P^1)"),
        _ci("quadric-surface-nonsplit", 3, ["x0*x1 + x2^2 + x3^2"], 3, 3, fano=True,
            desc="non-split quadric surface over F_3"),
        _ci("quadric-threefold", 4, ["x0*x1 + x2*x3 + x4^2"], 3, 2, fano=True,
            desc="smooth quadric threefold; no primitive cohomology"),
        _ci("quadric4fold-f3", 5, ["x0*x1 + x2*x3 + x4*x5"], 3, 1, fano=True,
            desc="split quadric fourfold over F_3"),
        _ci("quadric4fold-nonsplit-f3", 5, ["x0^2 + x1^2 + x2^2 + x3^2 + x4^2 + x5^2"], 3, 1,
            fano=True, desc="non-split quadric fourfold over F_3"),
        _ci("quartic-surface", 3, ["x0^4 + x1^4 + x2^4 + x3^4"], 3, 2, fano=False,
            desc="Fermat quartic K3 surface over F_3"),
        _ci("del-pezzo-4", 4, ["x0^2 + x1^2 + x2^2 + x3^2 + x4^2",
                               "x1^2 + 2*x2^2 + 3*x3^2 + 4*x4^2"], 5, 1, fano=True,
            desc="intersection of two quadrics in P^4 over F_5"),
        VarietyInput("cubic-cone", 3, ("x0^3 + x1^3 + x2^3",), 2, 1, 3, smooth=False, fano=None,
                     complete_intersection=None, description="singular cone over a plane cubic"),
    ]
}


def get_entry(name: str) -> VarietyInput:
    try:
        return CATALOG[name]
    except KeyError:
        raise InputError(f"unknown catalog entry {name!r}; try one of {sorted(CATALOG)}") from None

"""Verdict records shared by the checking modules and the command line."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

__all__ = ["Assertion", "Report", "SCHEMA_VERSION"]

SCHEMA_VERSION = "1"


@dataclass
class Assertion:
    """One checked claim.

    Attributes:
        name: Short statement of the claim.
        verdict: ``True``/``False``, or ``None`` when undecided.
        tag: Citation tag naming the display the claim reproduces.
        ledger: Dimension counts and other numbers backing the verdict.
        detail: Free-form explanation, mostly for failures.
        applicable: ``False`` when the check degenerates (reported as N/A).
    """

    name: str
    verdict: bool | None
    tag: str = ""
    ledger: dict = field(default_factory=dict)
    detail: str = ""
    applicable: bool = True

    @property
    def status(self) -> str:
        if not self.applicable:
            return "N/A"
        return {True: "PASS", False: "FAIL", None: "UNDECIDED"}[self.verdict]

    @property
    def ok(self) -> bool:
        return not self.applicable or self.verdict is True

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "tag": self.tag,
            "ledger": {k: _plain(v) for k, v in self.ledger.items()},
            "detail": self.detail,
        }

    def line(self) -> str:
        tag = f"  [{self.tag}]" if self.tag else ""
        return f"{self.name}: {self.status}{tag}"


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if hasattr(v, "item"):
        return v.item()
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)


@dataclass
class Report:
    """An ordered list of assertions plus stored witnesses and timings."""

    title: str
    assertions: list[Assertion] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def add(self, name: str, verdict, tag: str = "", ledger: dict | None = None, detail: str = "", applicable: bool = True) -> Assertion:
        a = Assertion(name, None if verdict is None else bool(verdict), tag, dict(ledger or {}), detail, applicable)
        self.assertions.append(a)
        return a

    def extend(self, other: "Report", prefix: str = "") -> None:
        for a in other.assertions:
            self.assertions.append(Assertion(prefix + a.name, a.verdict, a.tag, a.ledger, a.detail, a.applicable))
        self.witnesses.update({prefix + k: v for k, v in other.witnesses.items()})
        self.timings.update({prefix + k: v for k, v in other.timings.items()})

    @property
    def passed(self) -> bool:
        return all(a.ok for a in self.assertions)

    def failures(self) -> list[Assertion]:
        return [a for a in self.assertions if not a.ok]

    def __getitem__(self, name: str) -> Assertion:
        for a in self.assertions:
            if a.name == name:
                return a
        raise KeyError(name)

    @contextmanager
    def timed(self, key: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[key] = round(time.perf_counter() - t0, 3)

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "title": self.title,
            "passed": self.passed,
            "assertions": [a.to_dict() for a in self.assertions],
        }
        if timings:
            out["timings"] = dict(self.timings)
        return out

    def text(self) -> str:
        lines = [self.title, "=" * len(self.title)]
        lines += [a.line() for a in self.assertions]
        for a in self.failures():
            if a.detail:
                lines.append(f"  first failure detail ({a.name}): {a.detail}")
                break
        return "\n".join(lines)

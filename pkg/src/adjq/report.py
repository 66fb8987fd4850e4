"""Verification reports: axiom checks never throw, they return one of these."""

from __future__ import annotations


class Report:
    """Outcome of an exact axiom verification."""

    __slots__ = ("subject", "failures")

    def __init__(self, subject: str, failures=()):
        self.subject = subject
        self.failures = tuple(failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self):
        state = "ok" if self.ok else f"{len(self.failures)} failure(s)"
        return f"Report({self.subject}: {state})"

    def summary(self) -> str:
        if self.ok:
            return f"{self.subject}: PASS"
        lines = [f"{self.subject}: FAIL"]
        lines.extend(f"  - {f}" for f in self.failures)
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "failures": list(self.failures)}

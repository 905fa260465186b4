"""Machine-readable pass/fail records shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Failure:
    input: str
    lhs: str
    rhs: str
    residual: str

    def to_dict(self) -> dict:
        return {"input": self.input, "lhs": self.lhs,
                "rhs": self.rhs, "residual": self.residual}


@dataclass
class CheckReport:
    """Outcome of one exact check; status 'pass' iff failures is empty."""

    check_name: str
    params: dict[str, str] = field(default_factory=dict)
    max_degree: int | None = None
    status: str = "pass"          # pass | fail | error | skip
    failures: list[Failure] = field(default_factory=list)
    elapsed_ms: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def add_failure(self, input_text: str, lhs: str, rhs: str, residual: str,
                    limit: int = 5) -> None:
        if len(self.failures) < limit:
            self.failures.append(Failure(input_text, lhs, rhs, residual))
        self.status = "fail"

    def merge(self, other: "CheckReport", prefix: str = "") -> None:
        """Fold a sub-check into this report, tagging its failures."""
        for f in other.failures:
            tag = f"{prefix}{f.input}" if prefix else f.input
            if len(self.failures) < 20:
                self.failures.append(Failure(tag, f.lhs, f.rhs, f.residual))
        self.notes.extend(f"{prefix}{n}" if prefix else n for n in other.notes)
        if other.status == "error":
            self.status = "error"
        elif other.status == "fail" and self.status != "error":
            self.status = "fail"

    def to_dict(self, include_timings: bool = False) -> dict:
        d = {
            "check_name": self.check_name,
            "params": dict(sorted(self.params.items())),
            "max_degree": self.max_degree,
            "status": self.status,
            "failures": [f.to_dict() for f in self.failures],
            "notes": list(self.notes),
        }
        # wall-clock time is excluded by default so that identical configs
        # serialize to identical bytes
        if include_timings:
            d["elapsed_ms"] = self.elapsed_ms
        return d

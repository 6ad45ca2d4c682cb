from __future__ import annotations

from dataclasses import asdict, dataclass, field

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"


@dataclass
class CheckResult:
    """Outcome of one law check.

    ``witness`` holds encoded elements only, so a result serializes to JSON
    and can be replayed against a freshly built oracle.
    """

    law_id: str
    status: str
    witness: dict | None = None
    seed: int | None = None
    samples_used: int = 0
    note: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "CheckResult":
        return cls(**data)


def passed(law_id, seed=None, samples=0, witness=None, note="", **stats):
    return CheckResult(law_id, PASS, witness, seed, samples, note, stats)


def failed(law_id, witness, seed=None, samples=0, note="", **stats):
    return CheckResult(law_id, FAIL, witness, seed, samples, note, stats)


def inapplicable(law_id, note, seed=None, samples=0, witness=None, **stats):
    return CheckResult(law_id, INAPPLICABLE, witness, seed, samples, note, stats)

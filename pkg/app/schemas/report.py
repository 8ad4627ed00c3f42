from datetime import datetime
from enum import Enum
from typing import Any, Dict, List

from pydantic import BaseModel, Field

from app.schemas.run_config import RunConfig


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class CheckRecord(BaseModel):
    check_id: str
    citation: str
    expected: Any = None
    actual: Any = None
    status: CheckStatus
    elapsed: float = 0.0
    message: str = ""


class ReportHeader(BaseModel):
    version: str
    seed: int
    config: Dict[str, Any]
    created_at: datetime = Field(default_factory=datetime.utcnow)


class VerificationReport(BaseModel):
    header: ReportHeader
    checks: List[CheckRecord] = Field(default_factory=list)

    @classmethod
    def start(cls, version: str, config: RunConfig) -> "VerificationReport":
        header = ReportHeader(version=version, seed=config.seed, config=config.model_dump(mode="json"))
        return cls(header=header)

    def add(self, record: CheckRecord) -> None:
        self.checks.append(record)
        self.checks.sort(key=lambda r: r.check_id)

    @property
    def failed(self) -> List[CheckRecord]:
        return [r for r in self.checks if r.status == CheckStatus.FAIL]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def counts(self) -> Dict[str, int]:
        result = {status.value: 0 for status in CheckStatus}
        for record in self.checks:
            result[record.status.value] += 1
        return result

    def to_text(self) -> str:
        lines = [f"{r.status.value.upper():7s} {r.check_id:40s} {r.elapsed:8.3f}s  {r.citation}" for r in self.checks]
        counts = self.counts()
        lines.append(f"\n{counts['pass']} ok, {counts['fail']} falhas, {counts['skipped']} ignoradas")
        return "\n".join(lines)

"""Verification reports: deterministic text plus a structured JSON form.

Every value in a report is exact (integers and p/q rationals rendered as
strings); no decimal approximations appear anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

VERIFIED = "verified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

_EXIT_CODES = {VERIFIED: 0, REFUTED: 1, INCONCLUSIVE: 2}
EXIT_INPUT_ERROR = 3


def fmt(value):
    """Render a value exactly: ints, Fractions, vectors, matrices."""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(fmt(v) for v in value) + "]"
    return str(value)


@dataclass
class CheckEntry:
    name: str
    verdict: str
    values: dict = field(default_factory=dict)
    certificate: dict = field(default_factory=dict)


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)

    def add(self, name, verdict, values=None, certificate=None):
        self.checks.append(
            CheckEntry(
                name=name,
                verdict=verdict,
                values={k: fmt(v) for k, v in (values or {}).items()},
                certificate={k: fmt(v) for k, v in (certificate or {}).items()},
            )
        )

    @property
    def overall(self):
        if any(c.verdict == REFUTED for c in self.checks):
            return REFUTED
        if any(c.verdict == INCONCLUSIVE for c in self.checks):
            return INCONCLUSIVE
        if self.checks and all(c.verdict == VERIFIED for c in self.checks):
            return VERIFIED
        return INCONCLUSIVE

    @property
    def exit_code(self):
        return _EXIT_CODES[self.overall]

    def render_text(self):
        lines = ["command: %s" % self.command]
        for c in self.checks:
            lines.append("check %s: %s" % (c.name, c.verdict))
            for k in sorted(c.values):
                lines.append("  value %s = %s" % (k, c.values[k]))
            for k in sorted(c.certificate):
                lines.append("  certificate %s = %s" % (k, c.certificate[k]))
        lines.append("overall: %s" % self.overall)
        return "\n".join(lines) + "\n"

    def to_json(self):
        return json.dumps(
            {
                "command": self.command,
                "checks": [
                    {
                        "name": c.name,
                        "verdict": c.verdict,
                        "values": c.values,
                        "certificate": c.certificate,
                    }
                    for c in self.checks
                ],
                "overall": self.overall,
            },
            indent=2,
            sort_keys=True,
        ) + "\n"

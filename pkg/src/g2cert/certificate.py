"""Structured verification records and certificate emission.

Every fact the engine checks becomes a CheckRecord carrying the expected
value, the value found, how it was justified (direct computation or a
logged axiom), and a pass flag.  Records aggregate into sections and steps,
and the whole run serialises deterministically to JSON or a plain-text
report.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

JUSTIFICATION_DIRECT = "direct"
JUSTIFICATION_AXIOM = "axiom"


@dataclass(frozen=True)
class CheckRecord:
    name: str
    expected: Any
    found: Any
    ok: bool
    justification: str = JUSTIFICATION_DIRECT
    via: str | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "found": self.found,
            "justification": self.justification,
            "via": self.via,
            "pass": self.ok,
        }


@dataclass(frozen=True)
class Section:
    title: str
    checks: tuple[CheckRecord, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "checks": [c.to_json() for c in self.checks],
            "pass": self.ok,
        }


@dataclass(frozen=True)
class StepRecord:
    step_id: int
    kind: str
    quote: str
    checks: tuple[CheckRecord, ...]
    collection_after: tuple[str, ...]
    skipped: bool = False

    @property
    def ok(self) -> bool:
        return not self.skipped and all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {
            "id": self.step_id,
            "kind": self.kind,
            "quote": self.quote,
            "checks": [c.to_json() for c in self.checks],
            "collection_after": list(self.collection_after),
            "skipped": self.skipped,
            "pass": self.ok,
        }


@dataclass(frozen=True)
class Certificate:
    header: dict
    lemma1: Section
    corollary: Section
    proposition: Section
    steps: tuple[StepRecord, ...]
    final_identification: Section | None
    functor_string: str
    overall_pass: bool

    def to_json(self) -> dict:
        return {
            "header": self.header,
            "lemma1": self.lemma1.to_json(),
            "corollary": self.corollary.to_json(),
            "proposition": self.proposition.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "final_identification": (
                self.final_identification.to_json()
                if self.final_identification is not None else None
            ),
            "functor_string": self.functor_string,
            "overall_pass": self.overall_pass,
        }


def emit(cert: Certificate, fmt: str = "text", timestamp: int | None = None) -> str:
    """Serialise a certificate; deterministic given a fixed timestamp."""
    header = dict(cert.header)
    header["emitted_at"] = timestamp if timestamp is not None else 0
    doc = cert.to_json()
    doc["header"] = header
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=False)
    if fmt == "text":
        return _render_text(cert, header)
    raise ValueError(f"unknown certificate format {fmt!r}")


def _render_text(cert: Certificate, header: dict) -> str:
    lines = []
    lines.append("derived-equivalence verification certificate")
    lines.append(f"tool {header.get('tool_version')}  calibration: {header.get('calibration', {}).get('assignment')}")
    for section in (cert.lemma1, cert.corollary, cert.proposition):
        lines.append(_section_line(section))
        for c in section.checks:
            if not c.ok:
                lines.append(f"    FAIL {c.name}: expected {c.expected}, found {c.found}")
    for s in cert.steps:
        status = "SKIP" if s.skipped else ("PASS" if s.ok else "FAIL")
        lines.append(f"  step {s.step_id:>2} [{s.kind}] {status}  ({len(s.checks)} checks)  {s.quote}")
        if not s.skipped:
            for c in s.checks:
                if not c.ok:
                    lines.append(f"    FAIL {c.name}: expected {c.expected}, found {c.found} [{c.via or c.justification}]")
        if s.collection_after:
            lines.append(f"       -> {', '.join(s.collection_after)}")
    if cert.final_identification is not None:
        lines.append(_section_line(cert.final_identification))
        for c in cert.final_identification.checks:
            if not c.ok:
                lines.append(f"    FAIL {c.name}: expected {c.expected}, found {c.found}")
    lines.append(f"  functor: {cert.functor_string}")
    lines.append(f"overall: {'PASS' if cert.overall_pass else 'FAIL'}")
    return "\n".join(lines)


def _section_line(section: Section) -> str:
    status = "PASS" if section.ok else "FAIL"
    return f"  {section.title}: {status} ({len(section.checks)} checks)"


def profile_json(profile) -> dict:
    return profile.to_json()


def check(name: str, expected, found, ok: bool,
          justification: str = JUSTIFICATION_DIRECT, via: str | None = None) -> CheckRecord:
    return CheckRecord(name, expected, found, ok, justification, via)

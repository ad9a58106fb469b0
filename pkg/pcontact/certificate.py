"""
Certificates - deterministic output of every CLI command

A certificate echoes the command and its inputs, states a verdict and
carries a command-specific body. The structured format is JSON with sorted
keys and a versioned header, so identical inputs and seed give
byte-identical text; parse_certificate reads it back. The table format is
for people and is not parsed.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from pcontact.errors import SectionFormatError

CERTIFICATE_FORMAT = "pcontact-certificate"
CERTIFICATE_VERSION = 1


def toolchain_version() -> str:
    from pcontact import __version__
    return f"pcontact {__version__}"


@dataclass
class Certificate:
    """Outcome of one command"""
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    verdict: str = ""
    body: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    toolchain: str = field(default_factory=toolchain_version)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format": CERTIFICATE_FORMAT,
            "version": CERTIFICATE_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "body": self.body,
            "seed": self.seed,
            "toolchain_version": self.toolchain,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True) + "\n"

    def save_to_file(self, filepath: str, fmt: str = "json"):
        with open(filepath, "w", encoding="utf-8") as f:
            f.write(emit(self, fmt))


def emit(cert: Certificate, fmt: str = "json") -> str:
    """Serialize as 'json' (parseable) or 'table'"""
    if fmt == "json":
        return cert.to_json()
    if fmt == "table":
        return render_table(cert)
    raise ValueError(f"unknown format {fmt!r}")


def parse_certificate(text: str) -> Certificate:
    """Inverse of emit(cert, 'json')"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SectionFormatError(f"line {e.lineno}, column {e.colno}", e.msg)
    if not isinstance(data, dict) or data.get("format") != CERTIFICATE_FORMAT:
        raise SectionFormatError("header", f"format must be {CERTIFICATE_FORMAT!r}")
    if data.get("version") != CERTIFICATE_VERSION:
        raise SectionFormatError("header", f"unsupported version {data.get('version')!r}")
    try:
        return Certificate(
            command=data["command"],
            inputs=data["inputs"],
            verdict=data["verdict"],
            body=data["body"],
            seed=data["seed"],
            toolchain=data["toolchain_version"],
        )
    except KeyError as e:
        raise SectionFormatError("header", f"missing field {e}")


# ============================================================================
# Table rendering
# ============================================================================

def _scalar_text(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if value is None:
        return "-"
    return str(value)


def _render_rows(rows: List[Dict[str, Any]], indent: str) -> List[str]:
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    cells = [[_scalar_text(row.get(c)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = [indent + "  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append(indent + "  ".join("-" * w for w in widths))
    for r in cells:
        lines.append(indent + "  ".join(v.ljust(w) for v, w in zip(r, widths)))
    return lines


def _render_value(key: str, value: Any, indent: str) -> List[str]:
    if isinstance(value, dict):
        lines = [f"{indent}{key}:"]
        for k in sorted(value):
            lines.extend(_render_value(k, value[k], indent + "  "))
        return lines
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        flat = all(not isinstance(x, (dict, list)) for v in value for x in v.values())
        if flat:
            return [f"{indent}{key}:"] + _render_rows(value, indent + "  ")
        lines = [f"{indent}{key}:"]
        for i, v in enumerate(value):
            lines.extend(_render_value(f"[{i}]", v, indent + "  "))
        return lines
    if isinstance(value, list):
        return [f"{indent}{key}: " + ", ".join(_scalar_text(v) for v in value)]
    return [f"{indent}{key}: {_scalar_text(value)}"]


def render_table(cert: Certificate) -> str:
    lines = ["=" * 70, f"{cert.command.upper()} CERTIFICATE", "=" * 70]
    lines.append(f"verdict: {cert.verdict}")
    if cert.seed is not None:
        lines.append(f"seed: {cert.seed}")
    lines.append(f"toolchain: {cert.toolchain}")
    lines.append("")
    lines.append("inputs:")
    for key in sorted(cert.inputs):
        lines.extend(_render_value(key, cert.inputs[key], "  "))
    lines.append("")
    for key in sorted(cert.body):
        lines.extend(_render_value(key, cert.body[key], ""))
    lines.append("=" * 70)
    return "\n".join(lines) + "\n"

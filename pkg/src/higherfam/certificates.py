"""JSON certificates for positivity scans."""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .coefficients import PositivityReport, verify_positivity

SCHEMA_VERSION = "1.0"

# Fields that legitimately differ between a run and its replay.
VOLATILE_FIELDS = ("timestamp", "elapsed_seconds", "tool_version")


def make_certificate(report: PositivityReport) -> dict:
    payload = report.payload()
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "parameters": dict(payload["verified"]),
        "violations": payload["violations"],
        "verified": payload["verified"],
        "observations": payload["observations"],
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "elapsed_seconds": round(report.elapsed, 3),
    }


def result_payload(cert: dict) -> dict:
    return {k: v for k, v in cert.items() if k not in VOLATILE_FIELDS}


def write_certificate(cert: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(cert, indent=2) + "\n", encoding="utf-8")


def load_certificate(path: str | Path) -> dict:
    cert = json.loads(Path(path).read_text(encoding="utf-8"))
    if cert.get("command") != "verify":
        raise ValueError(f"unsupported certificate command {cert.get('command')!r}")
    return cert


def replay_certificate(cert: dict, workers: int = 1) -> tuple[bool, dict]:
    """Re-run the recorded scan; returns (payload matches, fresh certificate)."""
    p = cert["parameters"]
    report = verify_positivity(p["i_lo"], p["i_hi"], p["j_list"], p["strict"], workers=workers)
    fresh = make_certificate(report)
    return result_payload(fresh) == result_payload(cert), fresh

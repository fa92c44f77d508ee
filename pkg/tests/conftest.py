"""Shared test helpers."""

from __future__ import annotations

import contextlib
import io

from k3moduli import cli


def valid_discs(bound: int) -> list[int]:
    """Negative discriminants d with |d| <= bound, descending from -3."""
    return [d for d in range(-3, -bound - 1, -1) if d % 4 in (0, 1)]


def run_cli(argv: list[str]) -> tuple[int, str]:
    """Invoke the CLI in-process; returns (exit code, stdout)."""
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli.main(argv)
    return code, out.getvalue()

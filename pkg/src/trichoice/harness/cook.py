"""Convert ``f(n) <= c*n**k`` (with finitely many exceptions) into ``f(n) <= n**k' + k'``."""

from __future__ import annotations

from collections.abc import Mapping


def cook_exponent(k: int, c: int, exceptions: Mapping[int, int] | None = None) -> int:
    """``k' = k + b + c + d`` with ``2**b >= c`` minimal and ``d`` the largest exception value."""
    if c < 1:
        raise ValueError("c must be >= 1")
    d = max(exceptions.values(), default=0) if exceptions else 0
    b = (c - 1).bit_length()
    return k + b + c + d


def parse_exceptions(text: str) -> dict[int, int]:
    """Lines of ``n value`` (or ``n=value``); ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].replace("=", " ").strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'n value'")
        out[int(parts[0])] = int(parts[1])
    return out

"""Head-position table for a periodic workspace, checked against an explicit sweep."""

from __future__ import annotations

from trichoice.pm import head_position, last_write_time, next_read_time


def sweep_trace(pi: int, tmax: int) -> list[int]:
    """Head cell at each time ``0..tmax`` by literally walking 0 -> pi -> 0 -> ..."""
    pos, step, out = 0, 1, []
    for _ in range(tmax + 1):
        out.append(pos)
        if pos + step < 0 or pos + step > pi:
            step = -step
        pos += step
    return out


def headmath_table(pi: int, tmax: int) -> tuple[list[tuple], bool]:
    """Rows ``(t, h, w, r)`` plus whether every entry agrees with the sweep trace."""
    trace = sweep_trace(pi, tmax + 2 * pi)
    rows, ok = [], True
    for t in range(tmax + 1):
        h, w, r = head_position(t, pi), last_write_time(t, pi), next_read_time(t, pi)
        earlier = [s for s in range(t) if trace[s] == trace[t]]
        expect_w = earlier[-1] if t > pi and earlier else None
        expect_r = next(s for s in range(t + 1, len(trace)) if trace[s] == trace[t])
        ok &= h == trace[t] and w == expect_w and r == expect_r
        rows.append((t, h, w, r))
    return rows, ok

"""Brute-force ground truth for periodic machines and NTMs.

Nothing here touches trichoice relations or the closed-form head formulas
in the search itself: tapes are flat lists and the head moves one cell per
step in the direction implied by the entered state.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from trichoice.ntm import BLANK, LEFT_END, NtmSpec
from trichoice.pm import PmChoice, PmSpec, TapeGeometry, initial_tape, last_write_time

Trichoice = tuple[Optional[PmChoice], Optional[PmChoice], PmChoice]


@dataclass(frozen=True)
class EnumerationBudget:
    max_computations: int = 10**6
    max_depth: int = 10**6
    node_cap: int = 10**7

    def __post_init__(self) -> None:
        if min(self.max_computations, self.max_depth, self.node_cap) <= 0:
            raise ValueError("budget fields must be positive")


@dataclass
class Enumeration:
    computations: list[tuple[PmChoice, ...]]
    exhausted: bool


def enumerate_computations(
    spec: PmSpec,
    input: Sequence[str],
    geometry: TapeGeometry,
    t: int,
    budget: EnumerationBudget = EnumerationBudget(),
) -> Enumeration:
    """All maximal valid computations of length at most ``t + 1``.

    A computation is maximal when it reaches time ``t`` or no move applies.
    Depth-first; each branch owns a copy of its tape.
    """
    horizon = min(t, budget.max_depth)
    exhausted = horizon == t
    out: list[tuple[PmChoice, ...]] = []
    start = initial_tape(input, geometry)
    # (tape, head, state, choices so far)
    stack = [(start, 0, spec.initial_state, ())]
    while stack:
        tape, head, state, seq = stack.pop()
        nexts = sorted(spec.next_choices(state, tape[head])) if len(seq) <= horizon else []
        if not nexts:
            if seq:
                out.append(seq)
                if len(out) >= budget.max_computations and stack:
                    return Enumeration(out, False)
            continue
        for c in reversed(nexts):
            new = list(tape)
            new[head] = c.symbol
            stack.append((new, head + spec.displacement(c.state), c.state, seq + (c,)))
    return Enumeration(out, exhausted)


@dataclass
class OracleRelations:
    relations: list[set[Trichoice]]
    exhausted: bool


def relations_from_computations(
    computations: Sequence[Sequence[PmChoice]], pi: int, t: int
) -> list[set[Trichoice]]:
    """Decompose computations into their per-time trichoices."""
    rel: list[set[Trichoice]] = [set() for _ in range(t + 1)]
    for seq in computations:
        for i, c in enumerate(seq[: t + 1]):
            w = last_write_time(i, pi)
            rel[i].add((None if w is None else seq[w], seq[i - 1] if i else None, c))
    while rel and not rel[-1]:
        rel.pop()
    return rel + [set() for _ in range(t + 1 - len(rel))]


def oracle_relations(
    spec: PmSpec,
    input: Sequence[str],
    geometry: TapeGeometry,
    t: int,
    budget: EnumerationBudget = EnumerationBudget(),
) -> OracleRelations:
    """R_0..R_t by layered exploration over (per-cell writer, last choice, head).

    Every distinct computation prefix collapses onto its node; the future of
    a prefix depends only on the node, so the layer-``t`` trichoices are
    exactly those of all ``t``-computations.
    """
    tape = initial_tape(input, geometry)
    # Cells hold the choice that last wrote them, or None for the initial symbol.
    empty = tuple(None for _ in tape)
    rel: list[set[Trichoice]] = []
    layer: set = set()
    for c in spec.next_choices(spec.initial_state, tape[0]):
        layer.add((_write(empty, 0, c), c, 0))
    rel.append({(None, None, c) for _, c, _ in layer})
    for _ in range(t):
        if not layer:
            rel.append(set())
            continue
        nxt = set()
        now: set[Trichoice] = set()
        for cells, last, head in layer:
            h = head + spec.displacement(last.state)
            writer = cells[h]
            x = tape[h] if writer is None else writer.symbol
            for c in spec.next_choices(last.state, x):
                now.add((writer, last, c))
                nxt.add((_write(cells, h, c), c, h))
        if len(nxt) > budget.node_cap:
            rel.append(now)
            rel.extend(set() for _ in range(t + 1 - len(rel)))
            return OracleRelations(rel, False)
        rel.append(now)
        layer = nxt
    return OracleRelations(rel, True)


def _write(cells: tuple, h: int, c: PmChoice) -> tuple:
    return cells[:h] + (c,) + cells[h + 1 :]


@dataclass(frozen=True)
class AcceptResult:
    accepted: bool
    time: int | None  # moves taken to first reach an accepting state

    def __bool__(self) -> bool:
        return self.accepted


class StateSpaceExceeded(RuntimeError):
    pass


def config_bfs_accepts(
    machine: NtmSpec | PmSpec,
    input: Sequence[str],
    geometry: TapeGeometry | None = None,
    bound: int = 0,
    node_cap: int = 10**7,
) -> AcceptResult:
    """Breadth-first search over (tape, state, head) up to ``bound`` moves."""
    if isinstance(machine, PmSpec):
        if geometry is None:
            raise ValueError("periodic machines need a tape geometry")
        tape = tuple(initial_tape(input, geometry))
        step = _pm_steps
    else:
        tape = (LEFT_END, *input)
        step = _ntm_steps
    start = (tape, machine.initial_state, 0)
    frontier = {start}
    seen = {start}
    for moves in range(bound + 1):
        if any(state in machine.accepting for _, state, _ in frontier):
            return AcceptResult(True, moves)
        if moves == bound:
            break
        nxt = set()
        for node in frontier:
            for succ in step(machine, node):
                if succ not in seen:
                    nxt.add(succ)
        seen |= nxt
        if len(seen) > node_cap:
            raise StateSpaceExceeded(f"state-space budget exceeded ({node_cap} nodes)")
        frontier = nxt
        if not frontier:
            break
    return AcceptResult(False, None)


def halts_within(spec: NtmSpec, input: Sequence[str], bound: int, node_cap: int = 10**7) -> bool:
    """True iff every computation of ``spec`` on ``input`` halts within ``bound`` moves."""
    layer = {((LEFT_END, *input), spec.initial_state, 0)}
    for _ in range(bound + 1):
        layer = {succ for node in layer for succ in _ntm_steps(spec, node)}
        if not layer:
            return True
        if len(layer) > node_cap:
            raise StateSpaceExceeded(f"state-space budget exceeded ({node_cap} nodes)")
    return False


def _pm_steps(spec: PmSpec, node):
    tape, state, head = node
    for q, y in spec.next_choices(state, tape[head]):
        h = head + spec.displacement(q)
        assert 0 <= h < len(tape), "periodic machine left its tape"
        yield tape[:head] + (y,) + tape[head + 1 :], q, h


def _ntm_steps(spec: NtmSpec, node):
    tape, state, head = node
    for q, y, d in spec.next_choices(state, tape[head]):
        h = head + d
        if h < 0:
            continue
        new = tape[:head] + (y,) + tape[head + 1 :]
        if h == len(new):
            new += (BLANK,)
        yield new, q, h


def accepts_by_enumeration(
    spec: PmSpec, input: Sequence[str], geometry: TapeGeometry, t: int,
    budget: EnumerationBudget = EnumerationBudget(),
) -> AcceptResult | None:
    """Acceptance read off the enumerated computations; None if truncated."""
    if spec.initial_state in spec.accepting:
        return AcceptResult(True, 0)
    en = enumerate_computations(spec, input, geometry, t, budget)
    if not en.exhausted:
        return None
    best = None
    for seq in en.computations:
        for i, c in enumerate(seq):
            if c.state in spec.accepting:
                best = i + 1 if best is None else min(best, i + 1)
                break
    return AcceptResult(best is not None, best)

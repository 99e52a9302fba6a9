"""Periodic machines: sweeping NTMs that reverse only at the tape ends.

The head position at time ``t`` depends only on ``t`` and the workspace
bound ``pi`` (a power of two), so the last-write time and the next-reread
time of the scanned cell are closed-form functions too.  They are computed
with masks and shifts only.

``last_write_time`` uses ``t % pi == 0`` (not ``t % 2pi == 0``) for the
end-cell branch.  With the ``2pi`` test, a right-end reread at
``t = pi (mod 2pi)`` would yield ``w(t) = t``; the ``pi`` test gives
``t - 2pi`` there, which is the true previous visit.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from trichoice.ntm import BLANK, LEFT_END, RIGHT_END


class PmMove(NamedTuple):
    from_state: str
    read: str
    to_state: str
    write: str


class PmChoice(NamedTuple):
    state: str
    symbol: str

    def __str__(self) -> str:
        return f"{self.state}/{self.symbol}"


@dataclass(frozen=True)
class PmSpec:
    states_L: frozenset[str]
    states_R: frozenset[str]
    input_alphabet: frozenset[str]
    tape_alphabet: frozenset[str]
    initial_state: str
    accepting: frozenset[str]
    moves: frozenset[PmMove]
    _delta: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        for name in ("states_L", "states_R", "input_alphabet", "tape_alphabet",
                     "accepting", "moves"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        delta: dict[tuple[str, str], set[PmChoice]] = defaultdict(set)
        for m in self.moves:
            delta[m.from_state, m.read].add(PmChoice(m.to_state, m.write))
        object.__setattr__(self, "_delta", {k: frozenset(v) for k, v in delta.items()})

    @property
    def states(self) -> frozenset[str]:
        return self.states_L | self.states_R

    @property
    def inner_alphabet(self) -> frozenset[str]:
        return self.tape_alphabet - {LEFT_END, RIGHT_END}

    @property
    def choice_space(self) -> int:
        """``|Q'| * |Y|``, the number of distinct choices."""
        return len(self.states) * len(self.tape_alphabet)

    @property
    def is_deterministic(self) -> bool:
        return all(len(v) <= 1 for v in self._delta.values())

    def next_choices(self, state: str, symbol: str) -> frozenset[PmChoice]:
        if state in self.accepting:
            return frozenset()
        return self._delta.get((state, symbol), frozenset())

    def displacement(self, state: str) -> int:
        return -1 if state in self.states_L else 1


def validate_pm(spec: PmSpec) -> list[str]:
    out = []
    inner = spec.inner_alphabet
    if spec.states_L & spec.states_R:
        out.append(f"partition: states in both Q_L and Q_R: {sorted(spec.states_L & spec.states_R)}")
    for sym in (LEFT_END, RIGHT_END, BLANK):
        if sym not in spec.tape_alphabet:
            out.append(f"tape alphabet: missing reserved symbol {sym!r}")
    for sym in (LEFT_END, RIGHT_END, BLANK):
        if sym in spec.input_alphabet:
            out.append(f"input alphabet: reserved symbol {sym!r} not allowed")
    for x in sorted(spec.input_alphabet - spec.tape_alphabet):
        out.append(f"input alphabet: symbol {x!r} not in tape_alphabet")
    if spec.initial_state not in spec.states_L:
        out.append(f"initial state: {spec.initial_state!r} not in Q_L")
    for q in sorted(spec.accepting - spec.states):
        out.append(f"accepting: {q!r} not a state")
    states = spec.states
    for m in sorted(spec.moves):
        p, x, q, y = m
        tag = f"({p}, {x}, {q}, {y})"
        if p not in states or q not in states:
            out.append(f"unknown state: {tag}")
            continue
        if x not in spec.tape_alphabet or y not in spec.tape_alphabet:
            out.append(f"unknown symbol: {tag}")
            continue
        if p in spec.accepting:
            out.append(f"move from accepting state: {tag}")
        left = p in spec.states_L
        if x == LEFT_END:
            if not left:
                out.append(f"unreachable condition (Q_R at left end): {tag}")
            elif q not in spec.states_R or y != LEFT_END:
                out.append(f"left end must reverse to Q_R writing ^: {tag}")
        elif x == RIGHT_END:
            if left:
                out.append(f"unreachable condition (Q_L at right end): {tag}")
            elif q not in spec.states_L or y != RIGHT_END:
                out.append(f"right-end must reverse to Q_L writing $: {tag}")
        else:
            same_side = spec.states_L if left else spec.states_R
            if q not in same_side:
                out.append(f"mid-tape reversal: {tag}")
            if y not in inner:
                out.append(f"endmarker written mid-tape: {tag}")
    return out


@dataclass(frozen=True)
class TapeGeometry:
    n: int
    pi: int
    k_prime: int | None = None

    def __post_init__(self) -> None:
        if self.pi < 1 or self.pi & (self.pi - 1):
            raise ValueError(f"pi must be a power of two, got {self.pi}")
        if self.pi < self.n + 1:
            raise ValueError(f"pi={self.pi} leaves no room for input of length {self.n}")
        if self.k_prime is not None and self.pi > self.n**self.k_prime + self.k_prime:
            raise ValueError(f"pi={self.pi} exceeds n^k'+k'")


class NoPowerOfTwo(ValueError):
    pass


def select_pi(n: int, k_prime: int) -> int:
    """Smallest power of two in ``[n + 1, n**k_prime + k_prime]``."""
    if k_prime < 1:
        raise ValueError("k_prime must be >= 1")
    lo, hi = n + 1, n**k_prime + k_prime
    pi = 1 << (lo - 1).bit_length()
    if pi > hi:
        raise NoPowerOfTwo(f"no power of two in [{lo}, {hi}]")
    return pi


def initial_tape(input: Sequence[str], geometry: TapeGeometry) -> list[str]:
    if len(input) != geometry.n:
        raise ValueError(f"input length {len(input)} != n={geometry.n}")
    pi = geometry.pi
    return [LEFT_END, *input] + [BLANK] * (pi - 1 - geometry.n) + [RIGHT_END]


def head_position(t: int, pi: int) -> int:
    r = t & (pi - 1)
    return r if not t & pi else pi - r


def last_write_time(t: int, pi: int) -> int | None:
    if t <= pi:
        return None
    r = t & (pi - 1)
    return t - (pi << 1) if r == 0 else t - (r << 1)


def next_read_time(t: int, pi: int) -> int:
    return t + ((pi - (t & (pi - 1))) << 1)


def pm_next_choices(spec: PmSpec, state: str, symbol: str) -> frozenset[PmChoice]:
    return spec.next_choices(state, symbol)


def is_valid_pm_computation(
    choices: Sequence[PmChoice], input: Sequence[str], geometry: TapeGeometry, spec: PmSpec
) -> bool:
    """Check a choice sequence against the oblivious read rule.

    Times ``0..pi`` read the initial tape; later times read the symbol
    written at ``last_write_time``.
    """
    tape = initial_tape(input, geometry)
    pi = geometry.pi
    state = spec.initial_state
    for i, c in enumerate(choices):
        w = last_write_time(i, pi)
        x = tape[i] if w is None else choices[w].symbol
        if c not in spec.next_choices(state, x):
            return False
        state = c.state
    return True

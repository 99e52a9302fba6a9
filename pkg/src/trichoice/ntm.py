"""Single-tape nondeterministic Turing machines with a left endmarker.

Covers complete-configuration semantics and the normalization between
configuration chains and choice sequences.  Displacements are encoded as
``L = -1`` and ``R = +1`` so that head positions are plain prefix sums.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

LEFT_END = "^"
RIGHT_END = "$"
BLANK = "_"
RESERVED = (LEFT_END, RIGHT_END, BLANK)

L = -1
R = 1
DISPLACEMENT_NAMES = {L: "L", R: "R"}
DISPLACEMENTS = {"L": L, "R": R}


class Move(NamedTuple):
    from_state: str
    read: str
    to_state: str
    write: str
    displacement: int


class NtmChoice(NamedTuple):
    state: str
    symbol: str
    displacement: int

    def __str__(self) -> str:
        return f"{self.state}/{self.symbol}/{DISPLACEMENT_NAMES[self.displacement]}"


@dataclass(frozen=True)
class NtmSpec:
    states: frozenset[str]
    input_alphabet: frozenset[str]
    tape_alphabet: frozenset[str]
    initial_state: str
    accepting: frozenset[str]
    moves: frozenset[Move]
    _delta: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        for name in ("states", "input_alphabet", "tape_alphabet", "accepting", "moves"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        delta: dict[tuple[str, str], set[NtmChoice]] = defaultdict(set)
        for m in self.moves:
            delta[m.from_state, m.read].add(NtmChoice(m.to_state, m.write, m.displacement))
        object.__setattr__(
            self, "_delta", {key: frozenset(v) for key, v in delta.items()}
        )

    def next_choices(self, state: str, symbol: str) -> frozenset[NtmChoice]:
        return self._delta.get((state, symbol), frozenset())

    @property
    def is_deterministic(self) -> bool:
        return all(len(v) <= 1 for v in self._delta.values())


def validate_ntm(spec: NtmSpec) -> list[str]:
    """Return one diagnostic per violated well-formedness rule (empty if clean)."""
    out = []
    if BLANK not in spec.tape_alphabet or BLANK in spec.input_alphabet:
        out.append("blank: blank must be in tape_alphabet - input_alphabet")
    if LEFT_END not in spec.tape_alphabet or LEFT_END in spec.input_alphabet:
        out.append("left-endmarker: ^ must be in tape_alphabet - input_alphabet")
    if RIGHT_END in spec.tape_alphabet:
        out.append("right-endmarker: $ is reserved for periodic machines")
    for x in sorted(spec.input_alphabet - spec.tape_alphabet):
        out.append(f"input alphabet: symbol {x!r} not in tape_alphabet")
    if spec.initial_state not in spec.states:
        out.append(f"initial state: {spec.initial_state!r} not a state")
    for q in sorted(spec.accepting - spec.states):
        out.append(f"accepting: {q!r} not a state")
    for m in sorted(spec.moves):
        tag = _fmt_move(m)
        if m.from_state not in spec.states or m.to_state not in spec.states:
            out.append(f"unknown state: {tag}")
        if m.read not in spec.tape_alphabet or m.write not in spec.tape_alphabet:
            out.append(f"unknown symbol: {tag}")
        if m.displacement not in (L, R):
            out.append(f"bad displacement: {tag}")
        if m.from_state in spec.accepting:
            out.append(f"move from accepting state: {tag}")
        if m.read == LEFT_END and (m.write != LEFT_END or m.displacement != R):
            out.append(f"left-endmarker constraint: {tag}")
        if m.read != LEFT_END and m.write == LEFT_END:
            out.append(f"left-endmarker written mid-tape: {tag}")
    return out


def _fmt_move(m: Move) -> str:
    return f"({m.from_state}, {m.read}, {m.to_state}, {m.write}, {DISPLACEMENT_NAMES.get(m.displacement, m.displacement)})"


@dataclass(frozen=True)
class CompleteConfiguration:
    """``(left, state, right)``; the head scans ``right[0]`` or blank.

    Trailing blanks of ``right`` are dropped on construction so that equal
    tapes compare equal.
    """

    left: tuple[str, ...]
    state: str
    right: tuple[str, ...]

    def __post_init__(self) -> None:
        right = tuple(self.right)
        end = len(right)
        while end and right[end - 1] == BLANK:
            end -= 1
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", right[:end])

    @property
    def scanned(self) -> str:
        return self.right[0] if self.right else BLANK

    @property
    def head(self) -> int:
        return len(self.left)

    def __str__(self) -> str:
        return f"{''.join(self.left)}[{self.state}]{''.join(self.right)}"


def initial_configuration(spec: NtmSpec, input: Sequence[str]) -> CompleteConfiguration:
    return CompleteConfiguration((), spec.initial_state, (LEFT_END, *input))


def successors(c: CompleteConfiguration, spec: NtmSpec) -> set[CompleteConfiguration]:
    x = c.scanned
    rest = c.right[1:]
    out = set()
    for q, y, d in spec.next_choices(c.state, x):
        if d == R:
            out.add(CompleteConfiguration(c.left + (y,), q, rest))
        elif c.left:
            out.add(CompleteConfiguration(c.left[:-1], q, (c.left[-1], y) + rest))
    return out


def displacement_sum(choices: Sequence[NtmChoice], i: int, j: int) -> int:
    """Sum of displacements of ``choices[i..j]`` inclusive; 0 when ``i > j``."""
    if i > j:
        return 0
    n = len(choices)
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"time range [{i}, {j}] outside 0..{n - 1}")
    return sum(c.displacement for c in choices[i : j + 1])


def ntm_writer_time(choices: Sequence[NtmChoice], j: int) -> int | None:
    """Latest ``i < j`` whose choice wrote the cell scanned at time ``j + 1``."""
    if not 0 <= j < len(choices):
        raise IndexError(j)
    total = 0
    for i in range(j, -1, -1):
        total += choices[i].displacement
        if i < j and total == 0:
            return i
    return None


def _initial_symbol(input: Sequence[str], cell: int) -> str:
    if cell == 0:
        return LEFT_END
    return input[cell - 1] if cell <= len(input) else BLANK


def is_valid_ntm_computation(
    choices: Sequence[NtmChoice], input: Sequence[str], spec: NtmSpec
) -> bool:
    if not choices:
        return True
    if choices[0] not in spec.next_choices(spec.initial_state, LEFT_END):
        return False
    head = choices[0].displacement
    for j in range(len(choices) - 1):
        w = ntm_writer_time(choices, j)
        x = choices[w].symbol if w is not None else _initial_symbol(input, head)
        if choices[j + 1] not in spec.next_choices(choices[j].state, x):
            return False
        head += choices[j + 1].displacement
    return True


class NotASuccessorChain(ValueError):
    pass


def normalize_run(
    configs: Sequence[CompleteConfiguration], spec: NtmSpec
) -> list[NtmChoice]:
    """Turn ``C_-1, C_0, ..., C_t`` into the choices ``c_0, ..., c_t``."""
    out = []
    for i, (a, b) in enumerate(zip(configs, configs[1:])):
        if b not in successors(a, spec):
            raise NotASuccessorChain(f"not a successor chain at step {i}: {a} -> {b}")
        d = b.head - a.head
        if d == R:
            y = b.left[-1]
        else:
            y = b.right[1] if len(b.right) > 1 else BLANK
        choice = NtmChoice(b.state, y, d)
        # Each successor pair pins down exactly one choice.
        matching = [
            c for c in spec.next_choices(a.state, a.scanned)
            if c.state == b.state and c.displacement == d
            and _apply(a, c) == b
        ]
        assert matching == [choice], f"ambiguous move at step {i}: {matching}"
        out.append(choice)
    return out


def _apply(c: CompleteConfiguration, ch: NtmChoice) -> CompleteConfiguration:
    rest = c.right[1:]
    if ch.displacement == R:
        return CompleteConfiguration(c.left + (ch.symbol,), ch.state, rest)
    return CompleteConfiguration(c.left[:-1], ch.state, (c.left[-1], ch.symbol) + rest)


def denormalize_run(
    choices: Sequence[NtmChoice], input: Sequence[str], spec: NtmSpec
) -> list[CompleteConfiguration]:
    if not is_valid_ntm_computation(choices, input, spec):
        raise ValueError("not a valid computation")
    config = initial_configuration(spec, input)
    out = [config]
    for ch in choices:
        config = _apply(config, ch)
        out.append(config)
    return out

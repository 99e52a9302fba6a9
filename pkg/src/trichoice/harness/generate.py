"""Seeded random machines that satisfy the sweep / left-end rules by construction."""

from __future__ import annotations

import random
from dataclasses import dataclass

from trichoice.ntm import BLANK, LEFT_END, RIGHT_END, L, R, Move, NtmSpec
from trichoice.pm import PmMove, PmSpec

# relative weights for branching factors 0, 1, 2, 3
BRANCH_WEIGHTS = (1, 4, 2, 1)


@dataclass(frozen=True)
class Caps:
    max_states: int = 2  # per side for periodic machines
    max_symbols: int = 2  # non-reserved tape symbols
    max_input_symbols: int = 2
    max_branching: int = 3
    deterministic: bool = False
    accept_probability: float = 0.9

    def __post_init__(self) -> None:
        if min(self.max_states, self.max_symbols, self.max_input_symbols) < 1:
            raise ValueError("caps must be positive")


def _branching(rng: random.Random, caps: Caps) -> int:
    if caps.deterministic:
        return 0 if rng.random() < 0.1 else 1
    top = min(caps.max_branching, 3)
    return rng.choices(range(top + 1), weights=BRANCH_WEIGHTS[: top + 1])[0]


def _symbols(rng: random.Random, caps: Caps) -> tuple[list[str], list[str]]:
    n_inputs = rng.randint(1, min(caps.max_input_symbols, caps.max_symbols))
    n_work = rng.randint(0, caps.max_symbols - n_inputs)
    inputs = [chr(ord("a") + i) for i in range(n_inputs)]
    work = [chr(ord("x") + i) for i in range(n_work)]
    return inputs, work


def gen_random_pm(seed: int, caps: Caps = Caps()) -> PmSpec:
    rng = random.Random(seed)
    left = [f"l{i}" for i in range(rng.randint(1, caps.max_states))]
    right = [f"r{i}" for i in range(rng.randint(1, caps.max_states))]
    inputs, work = _symbols(rng, caps)
    inner = [BLANK, *inputs, *work]
    accepting: set[str] = set()
    if rng.random() < caps.accept_probability:
        pool = left[1:] + right
        accepting = set(rng.sample(pool, rng.randint(1, min(2, len(pool)))))
    moves = set()
    conditions = [(p, LEFT_END, right, [LEFT_END]) for p in left]
    conditions += [(p, x, left, inner) for p in left for x in inner]
    conditions += [(p, x, right, inner) for p in right for x in inner]
    conditions += [(p, RIGHT_END, left, [RIGHT_END]) for p in right]
    for p, x, targets, writes in conditions:
        if p in accepting:
            continue
        options = [(q, y) for q in targets for y in writes]
        for q, y in rng.sample(options, min(_branching(rng, caps), len(options))):
            moves.add(PmMove(p, x, q, y))
    return PmSpec(
        states_L=frozenset(left),
        states_R=frozenset(right),
        input_alphabet=frozenset(inputs),
        tape_alphabet=frozenset([LEFT_END, RIGHT_END, *inner]),
        initial_state="l0",
        accepting=frozenset(accepting),
        moves=frozenset(moves),
    )


def gen_random_ntm(seed: int, caps: Caps = Caps(max_states=3)) -> NtmSpec:
    rng = random.Random(seed)
    states = [f"q{i}" for i in range(rng.randint(1, caps.max_states))]
    inputs, work = _symbols(rng, caps)
    inner = [BLANK, *inputs, *work]
    accepting: set[str] = set()
    if rng.random() < caps.accept_probability and len(states) > 1:
        accepting = {rng.choice(states[1:])}
    moves = set()
    for p in states:
        if p in accepting:
            continue
        for x in [LEFT_END, *inner]:
            if x == LEFT_END:
                options = [(q, LEFT_END, R) for q in states]
            else:
                options = [(q, y, d) for q in states for y in inner for d in (L, R)]
            for q, y, d in rng.sample(options, min(_branching(rng, caps), len(options))):
                moves.add(Move(p, x, q, y, d))
    return NtmSpec(
        states=frozenset(states),
        input_alphabet=frozenset(inputs),
        tape_alphabet=frozenset([LEFT_END, *inner]),
        initial_state="q0",
        accepting=frozenset(accepting),
        moves=frozenset(moves),
    )


def random_input(rng: random.Random, alphabet, max_len: int = 4) -> tuple[str, ...]:
    symbols = sorted(alphabet)
    n = rng.randint(0, max_len)
    return tuple(rng.choice(symbols) for _ in range(n))

"""Compile a time-bounded NTM into an equivalent periodic machine.

The periodic machine keeps the NTM's state together with its last head
displacement (``p.L`` / ``p.R``).  Moves that keep the displacement, and
moves at the left end, are copied one-for-one.  A move ``m`` that reverses
the displacement between the ends is deferred: the machine writes the
compound symbol ``[m]`` in place, sweeps on to the tape end in ``L[m]`` or
``R[m]``, turns around, sweeps back to ``[m]`` and only then performs the
move.

Names inside compound states and symbols spell ``^`` as ``/l`` and ``_`` as
``/b`` so they stay valid machine-file tokens.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product

from trichoice.ntm import BLANK, LEFT_END, RIGHT_END, L, R, NtmSpec, validate_ntm
from trichoice.pm import PmMove, PmSpec, TapeGeometry, validate_pm

_ESCAPES = {LEFT_END: "/l", BLANK: "/b"}
_D = {L: "L", R: "R"}


class ReductionError(ValueError):
    def __init__(self, diagnostics: list[str]) -> None:
        super().__init__("invalid source machine:\n" + "\n".join(diagnostics))
        self.diagnostics = diagnostics


def normal_state(p: str, d: int) -> str:
    return f"{p}.{_D[d]}"


def _spell(m: tuple) -> str:
    p, x, q, y, d = m
    return ",".join([p, _ESCAPES.get(x, x), q, _ESCAPES.get(y, y), _D[d]])


def compound_state(side: int, m: tuple) -> str:
    return f"{_D[side]}[{_spell(m)}]"


def compound_symbol(m: tuple) -> str:
    return f"[{_spell(m)}]"


def pi_policy(n: int, k: int) -> int:
    """Workspace for input length ``n``: ``n**k + k`` rounded up to a power of two."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 1
    bound = n**k + k
    return 1 << (bound - 1).bit_length()


def simulation_time_bound(n: int, k: int) -> int:
    bound = n**k + k  # 0**0 == 1
    return (4 * bound - 1) * bound


@dataclass(frozen=True)
class ReductionOutput:
    pm: PmSpec
    k: int

    def pi(self, n: int) -> int:
        return pi_policy(n, self.k)

    def time_bound(self, n: int) -> int:
        return simulation_time_bound(n, self.k)

    def geometry(self, n: int) -> TapeGeometry:
        # with k = 0 the input is not placed on the tape at all
        return TapeGeometry(0 if self.k == 0 else n, self.pi(n))

    def tape_input(self, input: Sequence[str]) -> tuple[str, ...]:
        return () if self.k == 0 else tuple(input)


def compile_ntm_to_pm(spec: NtmSpec, k: int) -> ReductionOutput:
    problems = validate_ntm(spec)
    if k < 0:
        problems.append("time exponent k must be >= 0")
    if k == 0:
        first = {q for q, _, _ in spec.next_choices(spec.initial_state, LEFT_END)}
        readers = sorted(
            f"({m.from_state}, {m.read}, ...)" for m in spec.moves
            if m.from_state in first and m.read != LEFT_END
        )
        if readers:
            problems.append(f"k=0 source reads past the left end: {', '.join(readers)}")
    if problems:
        raise ReductionError(problems)

    Q = sorted(spec.states)
    Y = sorted(spec.tape_alphabet)
    inner = [a for a in Y if a != LEFT_END]
    all_m = [m for m in product(Q, Y, Q, Y, (L, R))]

    states_L = {normal_state(p, L) for p in Q} | {compound_state(L, m) for m in all_m}
    states_R = {normal_state(p, R) for p in Q} | {compound_state(R, m) for m in all_m}
    tape = set(Y) | {RIGHT_END} | {compound_symbol(m) for m in all_m}
    clash = (set(Y) & {compound_symbol(m) for m in all_m}) | (
        {normal_state(p, d) for p in Q for d in (L, R)}
        & {compound_state(s, m) for m in all_m for s in (L, R)}
    )
    if clash:
        raise ReductionError([f"name collision with compound names: {sorted(clash)}"])

    moves: set[PmMove] = set()
    for p, x, q, y, d in sorted(spec.moves):
        m = (p, x, q, y, d)
        if x == LEFT_END:
            moves.add(PmMove(normal_state(p, L), x, normal_state(q, R), y))
            continue
        for last in (L, R):
            src = normal_state(p, last)
            if d == last:
                moves.add(PmMove(src, x, normal_state(q, d), y))
                continue
            # reversal between the ends: record, sweep out, turn, sweep back, execute
            out_state, back_state = compound_state(last, m), compound_state(d, m)
            turn_at = LEFT_END if last == L else RIGHT_END
            moves.add(PmMove(src, x, out_state, compound_symbol(m)))
            for a in inner:
                moves.add(PmMove(out_state, a, out_state, a))
                moves.add(PmMove(back_state, a, back_state, a))
            moves.add(PmMove(out_state, turn_at, back_state, turn_at))
            moves.add(PmMove(back_state, compound_symbol(m), normal_state(q, d), y))

    pm = PmSpec(
        states_L=frozenset(states_L),
        states_R=frozenset(states_R),
        input_alphabet=spec.input_alphabet,
        tape_alphabet=frozenset(tape),
        initial_state=normal_state(spec.initial_state, L),
        accepting=frozenset(normal_state(f, d) for f in spec.accepting for d in (L, R)),
        moves=frozenset(moves),
    )
    assert not validate_pm(pm), validate_pm(pm)
    return ReductionOutput(pm, k)

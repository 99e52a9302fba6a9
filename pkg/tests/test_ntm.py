import itertools
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trichoice.harness.generate import Caps, gen_random_ntm
from trichoice.ntm import (
    BLANK,
    LEFT_END,
    CompleteConfiguration,
    Move,
    NotASuccessorChain,
    NtmChoice,
    denormalize_run,
    displacement_sum,
    initial_configuration,
    is_valid_ntm_computation,
    normalize_run,
    ntm_writer_time,
    successors,
    validate_ntm,
)


def flat_run(spec, input, choices):
    """Execute choices on a list tape; None if some step is not a move."""
    tape, head, state = [LEFT_END, *input], 0, spec.initial_state
    for c in choices:
        if head == len(tape):
            tape.append(BLANK)
        if c not in spec.next_choices(state, tape[head]):
            return None
        tape[head] = c.symbol
        head += c.displacement
        state = c.state
        if head < 0:
            return None
    return tape, head, state


def random_chain(spec, input, rng, length):
    chain = [initial_configuration(spec, input)]
    for _ in range(length):
        nxt = sorted(successors(chain[-1], spec), key=str)
        if not nxt:
            break
        chain.append(rng.choice(nxt))
    return chain


def test_bounce_is_valid(bounce):
    assert validate_ntm(bounce) == []


@pytest.mark.parametrize(
    "move, fragment",
    [
        (Move("q0", "^", "q1", "^", -1), "left-endmarker constraint"),
        (Move("q0", "^", "q1", "a", 1), "left-endmarker constraint"),
        (Move("f", "a", "q1", "a", 1), "move from accepting state"),
        (Move("q0", "a", "q1", "^", 1), "left-endmarker written mid-tape"),
        (Move("q0", "a", "zz", "a", 1), "unknown state"),
    ],
)
def test_validate_rejects(bounce, move, fragment):
    bad = replace(bounce, moves=bounce.moves | {move})
    assert any(fragment in d for d in validate_ntm(bad))


def test_successors_first_move_is_forced(bounce):
    start = initial_configuration(bounce, ("a", "a"))
    assert successors(start, bounce) == {CompleteConfiguration(("^",), "q0", ("a", "a"))}


def test_successors_branch_and_blank(bounce):
    c = CompleteConfiguration(("^",), "q0", ("a",))
    assert successors(c, bounce) == {
        CompleteConfiguration(("^", "b"), "q1", ()),
        CompleteConfiguration(("^", "a"), "q0", ()),
    }
    # scanning a blank past the input, turning left drops the trailing blank
    c = CompleteConfiguration(("^", "b"), "q1", ())
    assert successors(c, bounce) == {CompleteConfiguration(("^",), "q2", ("b",))}


def test_trailing_blanks_are_stripped():
    assert CompleteConfiguration((), "q", ("a", "_", "_")) == CompleteConfiguration((), "q", ("a",))


def test_successors_agree_with_flat_tape(bounce):
    # every successor chain corresponds to a flat-tape run of the same choices
    rng = random.Random(3)
    for _ in range(50):
        chain = random_chain(bounce, ("a", "a", "a"), rng, 8)
        choices = normalize_run(chain, bounce)
        tape, head, state = flat_run(bounce, ("a", "a", "a"), choices)
        last = chain[-1]
        assert (last.head, last.state) == (head, state)
        assert list(last.left + last.right) == [s for s in tape[: len(last.left + last.right)]]


def test_displacement_sum():
    cs = [NtmChoice("q", "a", d) for d in (1, 1, -1, 1, -1, -1)]
    assert displacement_sum(cs, 0, 5) == 0
    assert displacement_sum(cs, 1, 2) == 0
    assert displacement_sum(cs, 3, 2) == 0
    with pytest.raises(IndexError):
        displacement_sum(cs, 0, 6)


def test_writer_time_on_bounce(bounce):
    cs = [NtmChoice("q0", "^", 1), NtmChoice("q1", "b", 1), NtmChoice("q2", "a", -1), NtmChoice("f", "b", 1)]
    assert [ntm_writer_time(cs, j) for j in range(4)] == [None, None, 1, 2]
    assert is_valid_ntm_computation(cs, ("a", "a"), bounce)


@given(st.lists(st.sampled_from((-1, 1)), min_size=1, max_size=30), st.data())
def test_writer_time_matches_positions(ds, data):
    j = data.draw(st.integers(0, len(ds) - 1))
    cs = [NtmChoice("q", "a", d) for d in ds]
    before = [sum(ds[:i]) for i in range(len(ds))]
    after_j = sum(ds[: j + 1])
    writers = [i for i in range(j) if before[i] == after_j]
    assert ntm_writer_time(cs, j) == (max(writers) if writers else None)


def test_validity_matches_flat_tape_exhaustively(bounce):
    universe = sorted({(m.to_state, m.write, m.displacement) for m in bounce.moves})
    universe = [NtmChoice(*c) for c in universe]
    for input in [(), ("a",), ("a", "a"), ("b", "a")]:
        for n in range(5):
            for seq in itertools.product(universe, repeat=n):
                expect = flat_run(bounce, input, seq) is not None
                assert is_valid_ntm_computation(seq, input, bounce) == expect


def test_validity_is_prefix_closed():
    rng = random.Random(11)
    for seed in range(20):
        spec = gen_random_ntm(seed, Caps(max_states=3))
        input = tuple(rng.choice(sorted(spec.input_alphabet)) for _ in range(3))
        choices = normalize_run(random_chain(spec, input, rng, 20), spec)
        assert is_valid_ntm_computation(choices, input, spec)
        for k in range(len(choices)):
            assert is_valid_ntm_computation(choices[:k], input, spec)


def test_empty_and_single_config(bounce):
    assert is_valid_ntm_computation([], ("a",), bounce)
    start = initial_configuration(bounce, ("a",))
    assert normalize_run([start], bounce) == []
    assert denormalize_run([], ("a",), bounce) == [start]


def test_normalize_rejects_skipped_step(bounce):
    chain = random_chain(bounce, ("a", "a"), random.Random(0), 3)
    with pytest.raises(NotASuccessorChain):
        normalize_run([chain[0], chain[2]], bounce)


def test_denormalize_rejects_invalid(bounce):
    with pytest.raises(ValueError):
        denormalize_run([NtmChoice("q1", "b", 1)], ("a",), bounce)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 50))
def test_round_trip(seed, length):
    rng = random.Random(seed)
    spec = gen_random_ntm(seed % 50, Caps(max_states=3))
    input = tuple(rng.choice(sorted(spec.input_alphabet)) for _ in range(rng.randint(0, 4)))
    chain = random_chain(spec, input, rng, length)
    assert denormalize_run(normalize_run(chain, spec), input, spec) == chain

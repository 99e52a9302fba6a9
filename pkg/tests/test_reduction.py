import itertools
from dataclasses import replace

import pytest

from tests.conftest import machine
from trichoice.harness.generate import Caps, gen_random_ntm
from trichoice.harness.machine_file import parse_machine, serialize_machine
from trichoice.ntm import LEFT_END, RIGHT_END, Move, NtmSpec
from trichoice.oracle import config_bfs_accepts, enumerate_computations, halts_within
from trichoice.pm import PmChoice, validate_pm
from trichoice.reduction import (
    ReductionError,
    compile_ntm_to_pm,
    compound_state,
    compound_symbol,
    normal_state,
    pi_policy,
    simulation_time_bound,
)

L, R = -1, 1

TWO_REVERSALS = """
    [machine]
    kind=ntm
    [states]
    q0 p q s f
    [initial]
    q0
    [accepting]
    f
    [input_alphabet]
    a
    [tape_alphabet]
    ^ _ a b
    [delta]
    q0 ^ q0 ^ R
    q0 a p a R
    p a q a L
    q a s a R
    s a f a R
"""


def _ntm(moves, states=("q0", "f"), symbols=("^", "_", "a", "b")):
    return NtmSpec(
        states=frozenset(states),
        input_alphabet=frozenset({"a"}),
        tape_alphabet=frozenset(symbols),
        initial_state="q0",
        accepting=frozenset({"f"}),
        moves=frozenset(moves),
    )


def _trace(out, input):
    en = enumerate_computations(out.pm, input, out.geometry(len(input)), out.time_bound(len(input)))
    assert en.exhausted and len(en.computations) == 1
    return list(en.computations[0])


def test_state_count():
    out = compile_ntm_to_pm(_ntm([Move("q0", "^", "f", "^", R)]), 1)
    assert len(out.pm.states_L) == 130 == len(out.pm.states_R)
    assert out.pm.initial_state == "q0.L"
    assert out.pm.accepting == {"f.L", "f.R"}
    assert RIGHT_END in out.pm.tape_alphabet


@pytest.mark.parametrize("n, k, pi", [(3, 1, 4), (3, 2, 16), (5, 0, 1), (0, 0, 1), (2, 1, 4), (7, 1, 8)])
def test_pi_policy(n, k, pi):
    assert pi_policy(n, k) == pi


@pytest.mark.parametrize("n, k, bound", [(3, 1, 60), (0, 0, 3), (2, 1, 33)])
def test_time_bound(n, k, bound):
    assert simulation_time_bound(n, k) == bound


def test_pi_policy_rejects_negative_k():
    with pytest.raises(ValueError):
        pi_policy(2, -1)


def test_invalid_source():
    with pytest.raises(ReductionError, match="invalid source machine"):
        compile_ntm_to_pm(_ntm([Move("q0", "^", "f", "a", R)]), 1)


def test_k0_rejects_reading_input():
    spec = _ntm([Move("q0", "^", "q0", "^", R), Move("q0", "a", "f", "a", R)])
    with pytest.raises(ReductionError, match="k=0"):
        compile_ntm_to_pm(spec, 0)


def test_k0_degenerate_tape():
    out = compile_ntm_to_pm(_ntm([Move("q0", "^", "f", "^", R)]), 0)
    g = out.geometry(5)
    assert (g.n, g.pi) == (0, 1)
    res = config_bfs_accepts(out.pm, out.tape_input("aaaaa"), g, out.time_bound(5))
    assert res.accepted and res.time == 1


def test_reversal_at_cell_two_trace():
    m = ("p", "a", "q", "b", L)
    spec = _ntm(
        [Move("q0", "^", "q0", "^", R), Move("q0", "a", "p", "a", R), Move(*m), Move("q", "a", "f", "a", R)],
        states=("q0", "p", "q", "f"),
    )
    out = compile_ntm_to_pm(spec, 1)
    assert out.pi(2) == 4
    trace = _trace(out, ("a", "a"))
    assert trace == [
        PmChoice("q0.R", "^"),
        PmChoice("p.R", "a"),
        PmChoice("R[p,a,q,b,L]", "[p,a,q,b,L]"),
        PmChoice("R[p,a,q,b,L]", "_"),
        PmChoice("L[p,a,q,b,L]", "$"),
        PmChoice("L[p,a,q,b,L]", "_"),
        PmChoice("q.L", "b"),
        # back on cell 1 in q.L, the rightward move is a second reversal
        PmChoice("L[q,a,f,a,R]", "[q,a,f,a,R]"),
        PmChoice("R[q,a,f,a,R]", "^"),
        PmChoice("f.R", "a"),
    ]
    # the reversal costs at most pi + (pi - 1) moves
    start = next(i for i, c in enumerate(trace) if c.symbol == compound_symbol(m))
    done = next(i for i, c in enumerate(trace) if c == PmChoice("q.L", "b"))
    assert done - start + 1 <= 2 * out.pi(2) - 1
    # the compound symbol is written once and consumed once
    assert sum(c.symbol == compound_symbol(m) for c in trace) == 1


def test_both_reversal_directions_trace():
    out = compile_ntm_to_pm(machine(TWO_REVERSALS), 1)
    trace = _trace(out, ("a", "a"))
    assert [str(c) for c in trace] == [
        "q0.R/^",
        "p.R/a",
        "R[p,a,q,a,L]/[p,a,q,a,L]",
        "R[p,a,q,a,L]/_",
        "L[p,a,q,a,L]/$",
        "L[p,a,q,a,L]/_",
        "q.L/a",
        "L[q,a,s,a,R]/[q,a,s,a,R]",
        "R[q,a,s,a,R]/^",
        "s.R/a",
        "f.R/a",
    ]
    ntm = config_bfs_accepts(machine(TWO_REVERSALS), ("a", "a"), bound=5)
    assert ntm.accepted and ntm.time == 5


def test_names():
    m = ("p", "^", "q", "_", R)
    assert normal_state("p", L) == "p.L"
    assert compound_state(L, m) == "L[p,/l,q,/b,R]"
    assert compound_symbol(m) == "[p,/l,q,/b,R]"


def test_compiled_machines_are_valid_and_reproducible():
    for seed in range(100):
        spec = gen_random_ntm(seed, Caps(max_states=3, max_symbols=2))
        out = compile_ntm_to_pm(spec, 1)
        assert validate_pm(out.pm) == []
        text = serialize_machine(out.pm)
        assert parse_machine(text) == out.pm
        assert serialize_machine(compile_ntm_to_pm(spec, 1).pm) == text


def _inputs(spec, max_len):
    return [x for n in range(max_len + 1) for x in itertools.product(sorted(spec.input_alphabet), repeat=n)]


def test_rightward_sources_run_move_for_move():
    checked = 0
    for seed in range(300):
        spec = gen_random_ntm(seed, Caps(max_states=3, max_symbols=3))
        spec = replace(spec, moves=frozenset(m for m in spec.moves if m.displacement == R))
        out = compile_ntm_to_pm(spec, 1)
        for x in _inputs(spec, 3):
            if not halts_within(spec, x, len(x) + 1):
                continue
            a = config_bfs_accepts(spec, x, bound=len(x) + 1)
            b = config_bfs_accepts(out.pm, x, out.geometry(len(x)), out.time_bound(len(x)))
            assert (a.accepted, a.time) == (b.accepted, b.time)
            checked += 1
    assert checked > 100


def test_acceptance_is_preserved_one_way():
    # NTM acceptance within the bound always carries over, time-bounded or not
    for seed in range(60):
        spec = gen_random_ntm(seed, Caps(max_states=3, max_symbols=3))
        out = compile_ntm_to_pm(spec, 1)
        for x in _inputs(spec, 2):
            if config_bfs_accepts(spec, x, bound=len(x) + 1).accepted:
                assert config_bfs_accepts(out.pm, x, out.geometry(len(x)), out.time_bound(len(x))).accepted


def test_left_end_moves_copied():
    out = compile_ntm_to_pm(machine(TWO_REVERSALS), 1)
    assert out.pm.next_choices("q0.L", LEFT_END) == {PmChoice("q0.R", LEFT_END)}

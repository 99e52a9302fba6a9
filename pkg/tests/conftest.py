import textwrap

import pytest

from trichoice.harness.machine_file import parse_machine


def machine(text: str):
    return parse_machine(textwrap.dedent(text))


# Deterministic sweeper: walks right over the input rewriting a->b, turns at
# the right end, walks back, turns at the left end and accepts on the next
# cell if it reads b.
SWEEPER = """
    [machine]
    kind=pm
    [states_L]
    l0 back
    [states_R]
    go check acc
    [initial]
    l0
    [accepting]
    acc
    [input_alphabet]
    a
    [tape_alphabet]
    ^ $ _ a b
    [delta]
    l0 ^ go ^
    go a go b
    go _ go _
    go $ back $
    back b back b
    back _ back _
    back ^ check ^
    check b acc b
"""

# Branches at time 0 into two right-sweepers that write different symbols.
FORK = """
    [machine]
    kind=pm
    [states_L]
    l0 lx ly
    [states_R]
    rx ry acc
    [initial]
    l0
    [accepting]
    acc
    [input_alphabet]
    a
    [tape_alphabet]
    ^ $ _ a x y
    [delta]
    l0 ^ rx ^
    l0 ^ ry ^
    rx a rx x
    rx _ rx x
    ry a ry y
    ry _ ry y
    rx $ lx $
    ry $ ly $
    lx x lx x
    ly y ly y
    lx ^ acc ^
"""


@pytest.fixture
def sweeper():
    return machine(SWEEPER)


@pytest.fixture
def fork():
    return machine(FORK)


# Small NTM: on "aa" it rewrites the first a, turns round on the second,
# and accepts after four moves.
BOUNCE = """
    [machine]
    kind=ntm
    [states]
    q0 q1 q2 f
    [initial]
    q0
    [accepting]
    f
    [input_alphabet]
    a b
    [tape_alphabet]
    ^ _ a b
    [delta]
    q0 ^ q0 ^ R
    q0 a q1 b R
    q0 a q0 a R
    q1 a q2 a L
    q1 _ q2 _ L
    q2 b f b R
"""


@pytest.fixture
def bounce():
    return machine(BOUNCE)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance_log.LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

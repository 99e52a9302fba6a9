"""Shared generators for engine tests."""

import random

from trichoice.engine import executed, init_pivot_delta, run_relations
from trichoice.harness.generate import Caps, gen_random_pm, random_input
from trichoice.oracle import EnumerationBudget, enumerate_computations
from trichoice.pm import TapeGeometry, last_write_time


def random_instance(seed, caps=Caps(max_states=2, max_symbols=2), max_len=3):
    rng = random.Random(seed)
    spec = gen_random_pm(rng.getrandbits(32), caps)
    input = random_input(rng, spec.input_alphabet, max_len)
    return spec, input, TapeGeometry(len(input), 1 << len(input).bit_length())


def pivot_deltas(count, seed=0, caps=Caps(max_states=2, max_symbols=2), per_instance=4):
    """``(spec, input, geometry, t, pivot, delta)`` for pivots past the first sweep."""
    instances = (random_instance(s, caps) for s in range(seed, seed + 10**6))
    return deltas_from(instances, count, per_instance)


def deltas_from(instances, count, per_instance=4):
    out = []
    for spec, input, g in instances:
        if len(out) >= count:
            break
        series = run_relations(spec, input, g, 3 * g.pi)
        found = [
            (spec, input, g, t, c, init_pivot_delta(series.relations[: t + 1], c))
            for t in range(g.pi, len(series.relations))
            for c in sorted(executed(series.relations[t]))
        ]
        # spread the picks over the whole run
        step = max(1, len(found) // per_instance)
        out.extend(found[::step][:per_instance])
    return out[:count]


def composed_trichoices(spec, input, g, t, pivot, delta, budget=EnumerationBudget()):
    """Trichoice lists of every enumerated computation composed from ``delta``.

    None when the enumeration was truncated.
    """
    en = enumerate_computations(spec, input, g, t, budget)
    if not en.exhausted:
        return None
    found = []
    for seq in en.computations:
        if len(seq) <= t or seq[t] != pivot:
            continue
        tris = []
        for i, c in enumerate(seq[: t + 1]):
            w = last_write_time(i, g.pi)
            tris.append((None if w is None else seq[w], seq[i - 1] if i else None, c))
        if all(tri in delta[i] for i, tri in enumerate(tris)):
            found.append(tris)
    return found

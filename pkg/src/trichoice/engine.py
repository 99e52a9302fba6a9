"""Trichoice relations for periodic machines.

``S_t`` is the set of trichoices ``(writer, pred, cur)`` computed at time
``t``.  ``S_{t+1}`` is derived from ``S_0..S_t`` by pivoting on each choice
executed at ``t``, deleting ill-referenced trichoices from the pivoted
history until nothing changes, and reading the symbols written by the
surviving writers.

Choices are compared by value; ``None`` stands for an absent reference.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional

from trichoice.ntm import LEFT_END
from trichoice.pm import (
    PmChoice,
    PmSpec,
    TapeGeometry,
    initial_tape,
    last_write_time,
    next_read_time,
)

Trichoice = tuple[Optional[PmChoice], Optional[PmChoice], PmChoice]
Relation = frozenset  # frozenset[Trichoice]


class CaseId(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass
class Counters:
    lambda_steps: int = 0
    deletions: int = 0
    sweeps: int = 0
    lfp_calls: int = 0

    def add(self, other: Counters) -> None:
        self.lambda_steps += other.lambda_steps
        self.deletions += other.deletions
        self.sweeps += other.sweeps
        self.lfp_calls += other.lfp_calls

    @property
    def total(self) -> int:
        return self.lambda_steps + self.deletions + self.sweeps


@dataclass
class RelationSeries:
    geometry: TapeGeometry
    relations: list[Relation]
    counters: list[Counters] = field(default_factory=list)

    @property
    def horizon(self) -> int:
        return len(self.relations) - 1

    def __getitem__(self, t: int) -> Relation:
        return self.relations[t]


def executed(rel) -> set[PmChoice]:
    return {c for _, _, c in rel}


def size_bound(spec: PmSpec) -> int:
    c = spec.choice_space
    return c + c * c + c**3


def bootstrap_s0(spec: PmSpec, geometry: TapeGeometry) -> Relation:
    return frozenset((None, None, c) for c in spec.next_choices(spec.initial_state, LEFT_END))


class PivotError(ValueError):
    pass


def init_pivot_delta(relations: Sequence[Relation], pivot: PmChoice) -> list[set[Trichoice]]:
    """Copy ``S_0..S_t`` keeping only trichoices that execute ``pivot`` at ``t``."""
    t = len(relations) - 1
    last = {tri for tri in relations[t] if tri[2] == pivot}
    if not last:
        raise PivotError(f"pivot {pivot} not executed at t={t}")
    return [set(r) for r in relations[:t]] + [last]


class Delta:
    """Mutable subrelation series with indexes for closure queries."""

    def __init__(self, rels: Sequence[set[Trichoice]], pi: int, counters: Counters | None = None):
        self.rels = [set(r) for r in rels]
        self.pi = pi
        self.t = len(self.rels) - 1
        self.counters = counters if counters is not None else Counters()
        # per time: executed-choice multiplicity, (pred, cur) -> multiplicity
        self._exec = [Counter(c for _, _, c in r) for r in self.rels]
        self._links: list[dict[PmChoice | None, Counter]] = []
        for r in self.rels:
            links: dict = {}
            for _, p, c in r:
                links.setdefault(p, Counter())[c] += 1
            self._links.append(links)
        # (time, choice) -> closure frontiers; cleared on every deletion
        self._cache: dict[tuple[int, PmChoice], list[frozenset]] = {}

    def remove(self, j: int, tri: Trichoice) -> None:
        w, p, c = tri
        self.rels[j].discard(tri)
        self._exec[j][c] -= 1
        if not self._exec[j][c]:
            del self._exec[j][c]
        links = self._links[j][p]
        links[c] -= 1
        if not links[c]:
            del links[c]
            if not links:
                del self._links[j][p]
        self._cache.clear()
        self.counters.deletions += 1

    def is_executed(self, i: int, c: PmChoice) -> bool:
        return c in self._exec[i]

    def successors(self, j: int, c: PmChoice) -> set[PmChoice]:
        """Choices executed at ``j + 1`` with a trichoice whose pred is ``c``."""
        links = self._links[j + 1].get(c)
        return set(links) if links else set()

    def closure(self, i: int, c: PmChoice, m: int) -> frozenset[PmChoice]:
        if i + m > self.t:
            raise ValueError(f"closure horizon {i + m} exceeds t={self.t}")
        key = (i, c)
        frontiers = self._cache.get(key)
        if frontiers is None:
            frontiers = [frozenset([c]) if c in self._exec[i] else frozenset()]
            self._cache[key] = frontiers
        while len(frontiers) <= m:
            k = len(frontiers) - 1
            cur = frontiers[k]
            nxt: set[PmChoice] = set()
            if cur:
                links = self._links[i + k + 1]
                for a in cur:
                    got = links.get(a)
                    if got:
                        nxt.update(got)
            self.counters.lambda_steps += 1
            frontiers.append(frozenset(nxt))
        return frontiers[m]

    def has_reader(self, r: int, writer: PmChoice, candidates: frozenset[PmChoice]) -> bool:
        return any(w == writer and c in candidates for w, _, c in self.rels[r])

    def snapshot(self) -> list[frozenset[Trichoice]]:
        return [frozenset(r) for r in self.rels]


def lambda_closure(delta: Sequence[set[Trichoice]], i: int, c: PmChoice, m: int) -> frozenset[PmChoice]:
    """Choices reachable from ``c`` at ``i`` by ``m`` predecessor-successor links."""
    if i + m >= len(delta):
        raise ValueError(f"closure horizon {i + m} exceeds t={len(delta) - 1}")
    cur = frozenset([c]) if any(x == c for _, _, x in delta[i]) else frozenset()
    for k in range(1, m + 1):
        cur = frozenset(x for _, p, x in delta[i + k] if p in cur)
    return cur


def _ill_referenced(d: Delta, j: int, tri: Trichoice) -> CaseId | None:
    w, p, c = tri
    t, pi = d.t, d.pi
    if j > 0 and c not in d.closure(j - 1, p, 1):
        return CaseId.I
    if j < t and not d.closure(j, c, 1):
        return CaseId.II
    if j > pi:
        wt = last_write_time(j, pi)
        if c not in d.closure(wt, w, j - wt):
            return CaseId.III
    r = next_read_time(j, pi)
    if r <= t and not d.has_reader(r, c, d.closure(j, c, r - j)):
        return CaseId.IV
    return None


def ill_referenced_case(
    delta: Sequence[set[Trichoice]], j: int, tri: Trichoice, geometry: TapeGeometry
) -> CaseId | None:
    """First deletion case (I..IV) that applies to ``tri`` in ``delta[j]``, if any."""
    if tri not in delta[j]:
        raise ValueError(f"{tri} not in delta[{j}]")
    return _ill_referenced(Delta(delta, geometry.pi), j, tri)


def lfp(
    delta: Sequence[set[Trichoice]],
    geometry: TapeGeometry,
    *,
    rng: random.Random | None = None,
    counters: Counters | None = None,
) -> list[frozenset[Trichoice]]:
    """Delete ill-referenced trichoices until a full sweep deletes nothing.

    Sweeps go through times in ascending order and delete as soon as a case
    applies.  With ``rng`` the time order and the trichoice order inside each
    time are shuffled on every sweep instead.
    """
    d = Delta(delta, geometry.pi, counters)
    d.counters.lfp_calls += 1
    times = list(range(d.t + 1))
    stable = False
    while not stable:
        stable = True
        d.counters.sweeps += 1
        if rng is not None:
            rng.shuffle(times)
        for j in times:
            tris = sorted(d.rels[j], key=_tri_key)
            if rng is not None:
                rng.shuffle(tris)
            for tri in tris:
                if _ill_referenced(d, j, tri) is not None:
                    d.remove(j, tri)
                    stable = False
    return d.snapshot()


def _tri_key(tri: Trichoice):
    return tuple(("", "") if x is None else x for x in tri)


def advance(
    relations: Sequence[Relation],
    spec: PmSpec,
    input: Sequence[str],
    geometry: TapeGeometry,
    counters: Counters | None = None,
) -> Relation:
    """Compute ``S_{t+1}`` from ``S_0..S_t``."""
    counters = counters if counters is not None else Counters()
    t = len(relations) - 1
    s_t = relations[t]
    nxt: set[Trichoice] = set()
    if not s_t:
        return frozenset()
    pi = geometry.pi
    if t + 1 <= pi:
        x = initial_tape(input, geometry)[t + 1]
        for ct in executed(s_t):
            nxt.update((None, ct, c) for c in spec.next_choices(ct.state, x))
        return frozenset(nxt)
    wt = last_write_time(t + 1, pi)
    for ct in sorted(executed(s_t)):
        survivors = lfp(init_pivot_delta(relations, ct), geometry, counters=counters)
        for w in executed(survivors[wt]):
            nxt.update((w, ct, c) for c in spec.next_choices(ct.state, w.symbol))
    return frozenset(nxt)


def run_relations(
    spec: PmSpec, input: Sequence[str], geometry: TapeGeometry, horizon: int
) -> RelationSeries:
    """``S_0..S_horizon``; stops early once a relation is empty."""
    bound = size_bound(spec)
    series = RelationSeries(geometry, [bootstrap_s0(spec, geometry)], [Counters()])
    while series.horizon < horizon and series.relations[-1]:
        c = Counters()
        s = advance(series.relations, spec, input, geometry, c)
        assert len(s) <= bound, f"|S_t|={len(s)} exceeds {bound}"
        series.relations.append(s)
        series.counters.append(c)
    return series


@dataclass
class Decision:
    accepted: bool
    time: int | None = None  # -1 when the initial state accepts
    choice: PmChoice | None = None
    halt_time: int | None = None  # first t with S_t empty, if reached
    series: RelationSeries | None = None


def first_acceptance(spec: PmSpec, relations: Sequence[Relation]) -> tuple[int, PmChoice] | None:
    for t, s in enumerate(relations):
        hits = sorted(c for _, _, c in s if c.state in spec.accepting)
        if hits:
            return t, hits[0]
    return None


def decide_acceptance(
    spec: PmSpec, input: Sequence[str], geometry: TapeGeometry, horizon: int
) -> Decision:
    """Accept iff the initial state accepts or some ``S_t`` executes an accepting choice."""
    if spec.initial_state in spec.accepting:
        return Decision(True, -1)
    bound = size_bound(spec)
    series = RelationSeries(geometry, [bootstrap_s0(spec, geometry)], [Counters()])
    while True:
        t = series.horizon
        hit = first_acceptance(spec, series.relations[t:])
        if hit:
            return Decision(True, t, hit[1], series=series)
        if not series.relations[t]:
            return Decision(False, halt_time=t, series=series)
        if t >= horizon:
            return Decision(False, series=series)
        c = Counters()
        nxt = advance(series.relations, spec, input, geometry, c)
        assert len(nxt) <= bound
        series.relations.append(nxt)
        series.counters.append(c)

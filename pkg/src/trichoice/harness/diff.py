"""Engine-versus-oracle comparison, reports and counterexample shrinking."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace

from trichoice.engine import Counters, first_acceptance, run_relations, size_bound
from trichoice.harness.machine_file import machine_hash
from trichoice.oracle import (
    EnumerationBudget,
    StateSpaceExceeded,
    config_bfs_accepts,
    oracle_relations,
)
from trichoice.pm import PmChoice, PmSpec, TapeGeometry

DEFAULT_BUDGET = EnumerationBudget(node_cap=200_000)


class Verdict(str, enum.Enum):
    EQUAL = "EQUAL"
    ENGINE_SUPERSET = "ENGINE_SUPERSET"
    MISSING = "MISSING"
    INCONCLUSIVE = "INCONCLUSIVE"


def render_choice(c: PmChoice | None) -> str:
    return "-" if c is None else f"{c.state}/{c.symbol}"


def render_trichoice(t: int, tri) -> str:
    w, p, c = tri
    return f"t={t} w={render_choice(w)} p={render_choice(p)} c={render_choice(c)}"


def dump_relations(relations: Sequence[Iterable]) -> str:
    """One line per trichoice, sorted for byte-stable output."""
    lines = [render_trichoice(t, tri) for t, rel in enumerate(relations) for tri in rel]
    return "".join(line + "\n" for line in sorted(lines))


def format_input(input: Sequence[str]) -> str:
    return ",".join(input)


def parse_input(text: str) -> tuple[str, ...]:
    """``"a,b"`` or ``"ab"``; names longer than one character need commas."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        return tuple(s.strip() for s in text.split(",") if s.strip())
    return tuple(text)


@dataclass
class DiffReport:
    machine: str
    input: tuple[str, ...]
    pi: int
    horizon: int
    rows: list[Verdict] = field(default_factory=list)
    engine_accepts: bool = False
    engine_accept_moves: int | None = None
    oracle_accepts: bool | None = None
    oracle_accept_moves: int | None = None
    extra: list[str] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)
    counters: Counters = field(default_factory=Counters)
    max_size: int = 0
    size_bound: int = 0

    @property
    def verdict(self) -> Verdict:
        if Verdict.MISSING in self.rows or (self.oracle_accepts and not self.engine_accepts):
            return Verdict.MISSING
        if Verdict.INCONCLUSIVE in self.rows or self.oracle_accepts is None:
            return Verdict.INCONCLUSIVE
        if Verdict.ENGINE_SUPERSET in self.rows or self.engine_accepts != self.oracle_accepts:
            return Verdict.ENGINE_SUPERSET
        return Verdict.EQUAL

    @property
    def size_ok(self) -> bool:
        return self.max_size <= self.size_bound

    def render(self) -> str:
        lines = [
            f"machine={self.machine}",
            f"input={format_input(self.input)}",
            f"pi={self.pi}",
            f"horizon={self.horizon}",
            f"verdict={self.verdict.value}",
            f"engine_accept={_yn(self.engine_accepts)}",
            f"engine_accept_moves={_opt(self.engine_accept_moves)}",
            f"oracle_accept={_yn(self.oracle_accepts)}",
            f"oracle_accept_moves={_opt(self.oracle_accept_moves)}",
            f"max_relation_size={self.max_size}",
            f"size_bound={self.size_bound}",
            f"counter.lambda_steps={self.counters.lambda_steps}",
            f"counter.deletions={self.counters.deletions}",
            f"counter.sweeps={self.counters.sweeps}",
            f"counter.lfp_calls={self.counters.lfp_calls}",
        ]
        lines += [f"row t={t} verdict={v.value}" for t, v in enumerate(self.rows)]
        lines += [f"extra {x}" for x in self.extra]
        lines += [f"missing {x}" for x in self.missing]
        return "\n".join(lines) + "\n"


def _yn(flag: bool | None) -> str:
    return "unknown" if flag is None else ("accept" if flag else "reject")


def _opt(v) -> str:
    return "-" if v is None else str(v)


def parse_report_header(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        key, sep, value = line.partition("=")
        if sep and " " not in key:
            out[key] = value
    return out


def diff_run(
    spec: PmSpec,
    input: Sequence[str],
    geometry: TapeGeometry,
    horizon: int,
    budget: EnumerationBudget = DEFAULT_BUDGET,
) -> DiffReport:
    """Run engine and oracle on one instance and classify every time step."""
    input = tuple(input)
    report = DiffReport(machine_hash(spec), input, geometry.pi, horizon)
    series = run_relations(spec, input, geometry, horizon)
    engine = series.relations + [frozenset()] * (horizon + 1 - len(series.relations))
    for c in series.counters:
        report.counters.add(c)
    report.size_bound = size_bound(spec)
    report.max_size = max(len(s) for s in engine)

    if spec.initial_state in spec.accepting:
        report.engine_accepts, report.engine_accept_moves = True, 0
    else:
        hit = first_acceptance(spec, engine)
        if hit:
            report.engine_accepts, report.engine_accept_moves = True, hit[0] + 1

    oracle = oracle_relations(spec, input, geometry, horizon, budget)
    try:
        acc = config_bfs_accepts(spec, input, geometry, horizon + 1, budget.node_cap)
        report.oracle_accepts, report.oracle_accept_moves = acc.accepted, acc.time
    except StateSpaceExceeded:
        report.oracle_accepts = None

    for t in range(horizon + 1):
        s, r = engine[t], oracle.relations[t]
        lacking = r - s
        if lacking:
            report.rows.append(Verdict.MISSING)
        elif not oracle.exhausted:
            report.rows.append(Verdict.INCONCLUSIVE)
        elif s != r:
            report.rows.append(Verdict.ENGINE_SUPERSET)
        else:
            report.rows.append(Verdict.EQUAL)
        report.extra += sorted(render_trichoice(t, tri) for tri in s - r) if oracle.exhausted else []
        report.missing += sorted(render_trichoice(t, tri) for tri in lacking)
    return report


@dataclass(frozen=True)
class Instance:
    spec: PmSpec
    input: tuple[str, ...]
    pi: int
    horizon_multiplier: int = 4

    @property
    def geometry(self) -> TapeGeometry:
        return TapeGeometry(len(self.input), self.pi)

    @property
    def horizon(self) -> int:
        return self.horizon_multiplier * self.pi

    def run(self, budget: EnumerationBudget = DEFAULT_BUDGET) -> DiffReport:
        return diff_run(self.spec, self.input, self.geometry, self.horizon, budget)


def _candidates(inst: Instance) -> Iterable[Instance]:
    for m in sorted(inst.spec.moves):
        yield replace(inst, spec=replace(inst.spec, moves=inst.spec.moves - {m}))
    for i in range(len(inst.input)):
        yield replace(inst, input=inst.input[:i] + inst.input[i + 1 :])
    if inst.pi // 2 >= len(inst.input) + 1:
        yield replace(inst, pi=inst.pi // 2)


def shrink(
    inst: Instance, verdict: Verdict, budget: EnumerationBudget = DEFAULT_BUDGET
) -> tuple[Instance, DiffReport]:
    """Greedily drop moves, input symbols and workspace while ``verdict`` persists."""
    report = inst.run(budget)
    assert report.verdict == verdict
    progress = True
    while progress:
        progress = False
        for cand in _candidates(inst):
            r = cand.run(budget)
            if r.verdict == verdict:
                inst, report, progress = cand, r, True
                break
    return inst, report

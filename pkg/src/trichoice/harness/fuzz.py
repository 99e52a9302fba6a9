"""Seeded differential fuzz campaigns with persisted, shrunk findings."""

from __future__ import annotations

import hashlib
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from trichoice.harness.diff import (
    DEFAULT_BUDGET,
    DiffReport,
    Instance,
    Verdict,
    format_input,
    parse_input,
    parse_report_header,
    shrink,
)
from trichoice.harness.generate import Caps, gen_random_pm, random_input
from trichoice.harness.machine_file import parse_machine, serialize_machine
from trichoice.oracle import EnumerationBudget


@dataclass(frozen=True)
class FuzzConfig:
    seed: int
    trials: int
    out: Path
    max_states: int = 3
    max_input_symbols: int = 2
    max_symbols: int = 3
    max_pi: int = 8
    horizon_multiplier: int = 4
    max_input_len: int = 4
    workers: int = 1
    shrink: bool = True
    budget: EnumerationBudget = DEFAULT_BUDGET

    @property
    def caps(self) -> Caps:
        return Caps(self.max_states, self.max_symbols, self.max_input_symbols)


def trial_seed(master: int, i: int) -> int:
    digest = hashlib.blake2b(f"{master}:{i}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def smallest_pi(n: int) -> int:
    return 1 << n.bit_length()


def trial_instance(config: FuzzConfig, i: int) -> Instance:
    rng = random.Random(trial_seed(config.seed, i))
    spec = gen_random_pm(rng.getrandbits(64), config.caps)
    max_len = min(config.max_input_len, config.max_pi - 1)
    input = random_input(rng, spec.input_alphabet, max_len)
    return Instance(spec, input, smallest_pi(len(input)), config.horizon_multiplier)


@dataclass
class TrialResult:
    index: int
    verdict: Verdict
    report: DiffReport
    bundle: str | None = None
    shrunk_verdict: Verdict | None = None


def bundle_name(inst: Instance) -> str:
    text = serialize_machine(inst.spec) + format_input(inst.input) + f"|{inst.pi}"
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def write_bundle(out: Path, inst: Instance, report: DiffReport) -> str:
    name = bundle_name(inst)
    (out / f"{name}.pm").write_text(serialize_machine(inst.spec))
    (out / f"{name}.input").write_text(format_input(inst.input) + "\n")
    (out / f"{name}.report").write_text(report.render())
    return name


def load_bundle(out: Path, name: str) -> tuple[Instance, dict[str, str]]:
    spec = parse_machine((out / f"{name}.pm").read_text())
    input = parse_input((out / f"{name}.input").read_text())
    header = parse_report_header((out / f"{name}.report").read_text())
    pi, horizon = int(header["pi"]), int(header["horizon"])
    return Instance(spec, input, pi, horizon // pi), header


def reverify_bundle(out: Path, name: str, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    """Re-run a persisted finding and check it still shows its recorded verdict."""
    inst, header = load_bundle(out, name)
    return inst.run(budget).verdict.value == header["verdict"]


def run_trial(config: FuzzConfig, i: int) -> TrialResult:
    inst = trial_instance(config, i)
    report = inst.run(config.budget)
    result = TrialResult(i, report.verdict, report)
    if report.verdict is Verdict.EQUAL:
        return result
    # budget-exhausted trials are kept as-is; shrinking them would rerun the oracle to its cap
    if config.shrink and report.verdict is not Verdict.INCONCLUSIVE:
        inst, report = shrink(inst, report.verdict, config.budget)
    result.shrunk_verdict = report.verdict
    result.bundle = write_bundle(config.out, inst, report)
    return result


def _run_trial(args):
    return run_trial(*args)


@dataclass
class CampaignSummary:
    config: FuzzConfig
    counts: Counter = field(default_factory=Counter)
    findings: list[tuple[int, str, str]] = field(default_factory=list)
    size_violations: int = 0
    results: list[TrialResult] = field(default_factory=list)

    @property
    def has_findings(self) -> bool:
        return any(v != Verdict.INCONCLUSIVE.value for _, v, _ in self.findings)

    def render(self) -> str:
        lines = [
            f"seed={self.config.seed}",
            f"trials={self.config.trials}",
        ]
        lines += [f"count.{v.value}={self.counts.get(v, 0)}" for v in Verdict]
        lines.append(f"size_violations={self.size_violations}")
        lines += [f"finding trial={i} verdict={v} bundle={b}" for i, v, b in self.findings]
        return "\n".join(lines) + "\n"


def fuzz(config: FuzzConfig) -> CampaignSummary:
    """Run ``config.trials`` trials; every non-EQUAL trial is persisted."""
    config.out.mkdir(parents=True, exist_ok=True)
    jobs = [(config, i) for i in range(config.trials)]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            results = list(pool.map(_run_trial, jobs, chunksize=8))
    else:
        results = [_run_trial(job) for job in jobs]
    summary = CampaignSummary(config, results=results)
    for r in results:
        summary.counts[r.verdict] += 1
        if not r.report.size_ok:
            summary.size_violations += 1
        if r.bundle:
            summary.findings.append((r.index, r.verdict.value, r.bundle))
    (config.out / "summary.txt").write_text(summary.render())
    return summary

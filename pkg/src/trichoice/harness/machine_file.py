"""Line-oriented machine files.

::

    # comment
    [machine]
    kind=pm
    [states_L]
    l0
    [states_R]
    r0
    [initial]
    l0
    [accepting]
    r0
    [input_alphabet]
    a
    [tape_alphabet]
    ^ $ _ a
    [delta]
    l0 ^ r0 ^

NTM files use ``kind=ntm``, a single ``[states]`` section and five-field
``[delta]`` lines ending in ``L`` or ``R``.  ``^``, ``$`` and ``_`` are the
left endmarker, right endmarker and blank.
"""

from __future__ import annotations

import hashlib
import re

from trichoice.ntm import DISPLACEMENT_NAMES, DISPLACEMENTS, RESERVED, Move, NtmSpec, validate_ntm
from trichoice.pm import PmMove, PmSpec, validate_pm

TOKEN = re.compile(r"[A-Za-z0-9.\[\],/]+")
HEADER = re.compile(r"\[([A-Za-z_]+)\]")

SECTIONS = {
    "ntm": ("states", "initial", "accepting", "input_alphabet", "tape_alphabet", "delta"),
    "pm": ("states_L", "states_R", "initial", "accepting", "input_alphabet",
           "tape_alphabet", "delta"),
}


class MachineFileError(ValueError):
    def __init__(self, diagnostics: list[str]) -> None:
        super().__init__("\n".join(diagnostics))
        self.diagnostics = diagnostics


def _is_token(tok: str) -> bool:
    return tok in RESERVED or TOKEN.fullmatch(tok) is not None


def parse_machine(text: str) -> NtmSpec | PmSpec:
    errors: list[str] = []
    kind = None
    section = None
    tokens: dict[str, list[str]] = {}
    delta: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = HEADER.fullmatch(line)
        if header:
            name = header.group(1)
            if name != "machine" and (kind is None or name not in SECTIONS[kind]):
                errors.append(f"line {lineno}: unexpected section [{name}]")
                section = None
                continue
            if name in tokens or (name == "delta" and delta):
                errors.append(f"line {lineno}: duplicate section [{name}]")
            section = name
            if name not in ("machine", "delta"):
                tokens.setdefault(name, [])
            continue
        if section is None:
            errors.append(f"line {lineno}: content outside a section")
        elif section == "machine":
            key, _, value = line.partition("=")
            if key.strip() != "kind" or value.strip() not in SECTIONS:
                errors.append(f"line {lineno}: expected kind=ntm or kind=pm")
            else:
                kind = value.strip()
        else:
            parts = line.split()
            bad = [p for p in parts if not _is_token(p)]
            if section == "delta":
                # the displacement field of an NTM move is not a name
                if kind == "ntm" and len(parts) == 5:
                    bad = [p for p in parts[:4] if not _is_token(p)]
                delta.append((lineno, parts))
            else:
                tokens[section].extend(parts)
            for b in bad:
                errors.append(f"line {lineno}: bad token {b!r}")
    if kind is None:
        errors.append("missing [machine] kind=ntm|pm")
        raise MachineFileError(errors)
    for name in SECTIONS[kind]:
        if name != "delta" and name not in tokens:
            errors.append(f"missing section [{name}]")
    initial = tokens.get("initial", [])
    if len(initial) != 1:
        errors.append(f"[initial] needs exactly one state, got {len(initial)}")
    width = 5 if kind == "ntm" else 4
    moves = []
    for lineno, parts in delta:
        if len(parts) != width:
            errors.append(f"line {lineno}: delta needs {width} fields, got {len(parts)}")
            continue
        if kind == "ntm":
            if parts[4] not in DISPLACEMENTS:
                errors.append(f"line {lineno}: displacement must be L or R")
                continue
            moves.append(Move(*parts[:4], DISPLACEMENTS[parts[4]]))
        else:
            moves.append(PmMove(*parts))
    if errors:
        raise MachineFileError(errors)
    common = dict(
        initial_state=initial[0],
        accepting=frozenset(tokens["accepting"]),
        input_alphabet=frozenset(tokens["input_alphabet"]),
        tape_alphabet=frozenset(tokens["tape_alphabet"]),
        moves=frozenset(moves),
    )
    if kind == "ntm":
        return NtmSpec(states=frozenset(tokens["states"]), **common)
    return PmSpec(states_L=frozenset(tokens["states_L"]),
                  states_R=frozenset(tokens["states_R"]), **common)


def validate_machine(spec: NtmSpec | PmSpec) -> list[str]:
    return validate_ntm(spec) if isinstance(spec, NtmSpec) else validate_pm(spec)


def serialize_machine(spec: NtmSpec | PmSpec) -> str:
    """Canonical text: fixed section order, sorted names, sorted delta lines."""
    kind = "ntm" if isinstance(spec, NtmSpec) else "pm"
    lines = ["[machine]", f"kind={kind}"]
    for name in SECTIONS[kind]:
        lines.append(f"[{name}]")
        if name == "delta":
            for m in sorted(spec.moves):
                fields = list(m)
                if kind == "ntm":
                    fields[4] = DISPLACEMENT_NAMES[fields[4]]
                lines.append(" ".join(fields))
        elif name == "initial":
            lines.append(spec.initial_state)
        else:
            values = sorted(getattr(spec, name))
            if values:
                lines.append(" ".join(values))
    return "\n".join(lines) + "\n"


def machine_hash(spec: NtmSpec | PmSpec) -> str:
    return hashlib.sha256(serialize_machine(spec).encode()).hexdigest()[:16]

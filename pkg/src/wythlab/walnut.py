"""Reader and writer for the Walnut word-automaton text format.

The canonical form written here is:

    msd_fib
    <state-id> <output>
    0 -> <state-id>
    1 -> <state-id>
    ...

with one block per state in state order, state 0 initial, and transition
lines in digit order.  Absent digits mean the transition is undefined.
Import of the exported text reproduces the automaton exactly.
"""
from __future__ import annotations

import re

from .morphisms import DFAO

__all__ = ["to_walnut", "from_walnut", "WalnutFormatError"]

_HEADER = "msd_fib"
_STATE_RE = re.compile(r"^(\d+)\s+(-?\d+)$")
_EDGE_RE = re.compile(r"^([01])\s*->\s*(\d+)$")


class WalnutFormatError(ValueError):
    """Raised when automaton text does not parse."""


def to_walnut(d: DFAO) -> str:
    """Render the automaton in canonical text form.

    Outputs must be integers; state numbering is preserved, which keeps the
    export of a promoted substitution aligned with its letter numbering.
    """
    if d.initial != 0:
        raise ValueError("canonical form requires state 0 to be initial")
    lines = [_HEADER]
    for state, (out, edges) in enumerate(zip(d.outputs, d.transitions)):
        if not isinstance(out, int) or isinstance(out, bool):
            raise ValueError(f"state {state} output {out!r} is not an integer")
        lines.append(f"{state} {out}")
        for digit, target in enumerate(edges):
            if target is not None:
                lines.append(f"{digit} -> {target}")
    return "\n".join(lines) + "\n"


def from_walnut(text: str) -> DFAO:
    """Parse automaton text in the canonical form."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != _HEADER:
        raise WalnutFormatError(f"expected leading '{_HEADER}' token")
    outputs: list[int] = []
    transitions: list[list[int | None]] = []
    current: list[int | None] | None = None
    for ln in lines[1:]:
        m = _STATE_RE.match(ln)
        if m:
            state, out = int(m.group(1)), int(m.group(2))
            if state != len(outputs):
                raise WalnutFormatError(
                    f"state {state} out of order (expected {len(outputs)})"
                )
            outputs.append(out)
            current = [None, None]
            transitions.append(current)
            continue
        m = _EDGE_RE.match(ln)
        if m:
            if current is None:
                raise WalnutFormatError(f"transition before any state: {ln!r}")
            digit, target = int(m.group(1)), int(m.group(2))
            if current[digit] is not None:
                raise WalnutFormatError(f"duplicate digit {digit} transition")
            current[digit] = target
            continue
        raise WalnutFormatError(f"unparseable line: {ln!r}")
    if not outputs:
        raise WalnutFormatError("automaton has no states")
    n = len(outputs)
    for state, edges in enumerate(transitions):
        for target in edges:
            if target is not None and target >= n:
                raise WalnutFormatError(
                    f"state {state} references missing state {target}"
                )
    return DFAO(
        transitions=tuple((e[0], e[1]) for e in transitions),
        outputs=tuple(outputs),
    )

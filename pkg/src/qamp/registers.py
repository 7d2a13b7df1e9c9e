"""Named register layout: subsystem names mapped to qubit index ranges.

Circuit code addresses subsystems by name only; the concrete qubit order is
a private convention.  Per operand there is an n-qubit row register (R) and
column register (C), a one-qubit real/imaginary label (M) and a one-qubit
slack flag (K); B and BT are the two post-selection ancillae and Q1..Q3 the
optional manipulation-control flags.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import ParameterError, ValidationError

#: canonical allocation order, from qubit 0 upward
CANONICAL_ORDER = ("M1", "M2", "R1", "C1", "R2", "C2", "K1", "K2", "B", "BT")
CONTROL_FLAGS = ("Q1", "Q2", "Q3")


@dataclass(frozen=True)
class RegisterLayout:
    """Immutable name-to-qubit-range map for matrices of size 2**n."""

    n: int
    slices: Mapping[str, range]
    control_flags_present: bool

    @property
    def total_qubits(self) -> int:
        return sum(len(r) for r in self.slices.values())

    def qubits(self, name: str) -> range:
        try:
            return self.slices[name]
        except KeyError:
            raise ParameterError(f"unknown subsystem {name!r}") from None

    def start(self, name: str) -> int:
        return self.qubits(name).start

    def width(self, name: str) -> int:
        return len(self.qubits(name))

    def summary(self) -> dict:
        """Plain structure for reports: name -> [first, last] qubit, plus totals."""
        return {
            "n": self.n,
            "total_qubits": self.total_qubits,
            "subsystems": {name: [r.start, r.stop - 1] for name, r in self.slices.items()},
        }


def layout_for(n: int, with_controls: bool = False) -> RegisterLayout:
    """Canonical layout: 4n+6 qubits, plus 3 when control flags are requested."""
    if n < 1:
        raise ParameterError(f"matrix register width must be at least 1, got {n}")
    widths = {name: (n if name in ("R1", "C1", "R2", "C2") else 1) for name in CANONICAL_ORDER}
    names = list(CANONICAL_ORDER)
    if with_controls:
        names += list(CONTROL_FLAGS)
        widths.update({flag: 1 for flag in CONTROL_FLAGS})
    slices = {}
    cursor = 0
    for name in names:
        slices[name] = range(cursor, cursor + widths[name])
        cursor += widths[name]
    return RegisterLayout(n=n, slices=slices, control_flags_present=with_controls)


def basis_index(layout: RegisterLayout, assignment: Mapping[str, int]) -> int:
    """Amplitude index for a per-subsystem assignment; unnamed subsystems are 0.

    Values are little-endian within each slice.
    """
    index = 0
    for name, value in assignment.items():
        r = layout.qubits(name)
        v = int(value)
        if not 0 <= v < (1 << len(r)):
            raise ValidationError(f"value {value} overflows subsystem {name} of width {len(r)}")
        index |= v << r.start
    return index

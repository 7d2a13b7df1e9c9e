"""Amplitude encoding of a prepared matrix and its inverse readout.

A prepared matrix (scaled entries plus slack b) occupies four subsystems: an
n-qubit row register R, an n-qubit column register C, the one-qubit
real/imaginary label M, and the one-qubit slack flag K.  Components are
placed directly:

    amplitude(M=m, R=j, C=k, K=1) = component m of entry (j, k)
    amplitude(M=m, R=0, C=0, K=0) = component m of b

with every other amplitude zero, so all amplitudes are real and their
squares sum to one.  State preparation is direct amplitude assignment; no
gate-level preparation circuit is synthesized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexmat import ComplexMatrix, PreparedMatrix
from .errors import DimensionError, ParameterError, ValidationError
from .registers import RegisterLayout, basis_index
from .statevector import StateVector

#: encode refuses states whose squared norm strays further than this from 1
ENCODE_NORM_TOL = 1e-10


@dataclass(frozen=True)
class EncodedBlock:
    """Where one encoded matrix lives inside a layout.

    ``fixed`` pins non-block subsystems to known basis values (after the
    conditional measurement both ancillae sit in |1>, control flags keep
    their input value); any subsystem not mentioned is expected in |0>.
    """

    layout: RegisterLayout
    m: str
    r: str
    c: str
    k: str
    side: str = "custom"
    fixed: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for name in (self.m, self.r, self.c, self.k, *(n for n, _ in self.fixed)):
            self.layout.qubits(name)  # raises on unknown subsystem

    @classmethod
    def for_side(cls, layout: RegisterLayout, side: str) -> "EncodedBlock":
        if side == "first":
            return cls(layout, m="M1", r="R1", c="C1", k="K1", side="first")
        if side == "second":
            return cls(layout, m="M2", r="R2", c="C2", k="K2", side="second")
        raise ParameterError(f"side must be 'first' or 'second', got {side!r}")

    @classmethod
    def pipeline_output(cls, layout: RegisterLayout, extra_fixed=()) -> "EncodedBlock":
        """Block holding a decoded product: rows from the first operand,
        columns from the second, both ancillae post-selected to |1>."""
        fixed = (("B", 1), ("BT", 1)) + tuple(extra_fixed)
        return cls(layout, m="M1", r="R1", c="C2", k="K1", side="output", fixed=fixed)

    def fixed_bits(self) -> int:
        bits = 0
        for name, value in self.fixed:
            bits |= basis_index(self.layout, {name: value})
        return bits


def encode(pm: PreparedMatrix, side: str, layout: RegisterLayout) -> StateVector:
    """Write a prepared matrix into a fresh statevector on one side's
    subsystems; every other qubit stays in |0>."""
    block = EncodedBlock.for_side(layout, side)
    if pm.n != layout.n:
        raise DimensionError(f"matrix width n={pm.n} does not fit layout n={layout.n}")
    amps = np.zeros(1 << layout.total_qubits, dtype=np.complex128)
    m_bit = 1 << layout.start(block.m)
    r_pos = layout.start(block.r)
    c_pos = layout.start(block.c)
    k_bit = 1 << layout.start(block.k)
    entries = pm.matrix.entries
    for j in range(pm.matrix.dim):
        for k in range(pm.matrix.dim):
            base = (j << r_pos) | (k << c_pos) | k_bit
            amps[base] = entries[j, k].real
            amps[base | m_bit] = entries[j, k].imag
    amps[0] = pm.b.real
    amps[m_bit] = pm.b.imag
    defect = abs(float(np.sum(np.abs(amps) ** 2)) - 1.0)
    if defect > ENCODE_NORM_TOL:
        raise ValidationError(f"encoded state norm defect {defect:.3e} exceeds {ENCODE_NORM_TOL}")
    return StateVector(layout.total_qubits, amps)


def decode(state: StateVector, block: EncodedBlock) -> tuple[ComplexMatrix, complex, float]:
    """Read (matrix, slack) back out of a statevector.

    The residual is the total squared weight found outside the encoding
    support (including any imaginary amplitude parts, which a well-formed
    encoding never has).  It is reported rather than enforced so pipeline
    tests can assert that garbage really was removed.
    """
    layout = block.layout
    dim = 1 << layout.n
    m_bit = 1 << layout.start(block.m)
    r_pos = layout.start(block.r)
    c_pos = layout.start(block.c)
    k_bit = 1 << layout.start(block.k)
    fixed = block.fixed_bits()
    amps = state.amplitudes
    entries = np.zeros((dim, dim), dtype=np.complex128)
    support = np.empty(2 * dim * dim + 2, dtype=np.int64)
    pos = 0
    for j in range(dim):
        for k in range(dim):
            base = fixed | (j << r_pos) | (k << c_pos) | k_bit
            entries[j, k] = complex(amps[base].real, amps[base | m_bit].real)
            support[pos] = base
            support[pos + 1] = base | m_bit
            pos += 2
    b = complex(amps[fixed].real, amps[fixed | m_bit].real)
    support[pos] = fixed
    support[pos + 1] = fixed | m_bit
    off_support = np.ones(amps.size, dtype=bool)
    off_support[support] = False
    residual = float(np.sum(np.abs(amps[off_support]) ** 2))
    residual += float(np.sum(amps[support].imag ** 2))
    return ComplexMatrix(layout.n, entries), b, residual

"""Dense statevector engine with bit-mask gate kernels.

Convention: qubit 0 is the least significant bit of the amplitude index, so
the basis state |q_{Q-1} ... q_1 q_0> sits at index sum(q_i << i).

Gates carry an explicit control list with per-control polarity; polarity-0
controls fire on |0>, which is how the pipeline projects onto an all-zero
subspace without extra NOT gates.  Kernels operate on a fresh copy of the
amplitude array through pure elementwise writes to disjoint locations, so
results are deterministic and inputs are never mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, MeasurementError, ParameterError, ValidationError

_SQRT1_2 = 1.0 / math.sqrt(2.0)

GATE_KINDS = ("X", "Z", "H", "SWAP", "CNOT", "MULTI_CONTROLLED")

_index_cache: dict[int, np.ndarray] = {}


def _indices(num_qubits: int) -> np.ndarray:
    """Readonly 0..2**Q-1 index array, cached per width."""
    got = _index_cache.get(num_qubits)
    if got is None:
        got = np.arange(1 << num_qubits, dtype=np.int64)
        got.setflags(write=False)
        _index_cache[num_qubits] = got
    return got


_bit_cache: dict[tuple[int, int], np.ndarray] = {}


def _bit_is_one(num_qubits: int, qubit: int) -> np.ndarray:
    """Readonly boolean array: bit ``qubit`` of each amplitude index."""
    key = (num_qubits, qubit)
    got = _bit_cache.get(key)
    if got is None:
        got = ((_indices(num_qubits) >> qubit) & 1).astype(bool)
        got.setflags(write=False)
        _bit_cache[key] = got
    return got


def _check_qubit(num_qubits: int, qubit: int) -> None:
    if not 0 <= qubit < num_qubits:
        raise DimensionError(f"qubit {qubit} out of range for a {num_qubits}-qubit state")


@dataclass
class StateVector:
    """Complex amplitudes over the 2**num_qubits basis states."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.num_qubits < 0 or arr.shape != (1 << self.num_qubits,):
            raise DimensionError(
                f"expected {1 << max(self.num_qubits, 0)} amplitudes for "
                f"{self.num_qubits} qubits, got shape {arr.shape}"
            )
        self.amplitudes = arr

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probability(self, qubit: int, outcome: int) -> float:
        """Exact marginal probability of reading ``qubit`` as ``outcome``."""
        _check_qubit(self.num_qubits, qubit)
        if outcome not in (0, 1):
            raise ParameterError(f"outcome must be 0 or 1, got {outcome}")
        bit = (_indices(self.num_qubits) >> qubit) & 1
        return float(np.sum(np.abs(self.amplitudes[bit == outcome]) ** 2))

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())


@dataclass(frozen=True)
class GateSpec:
    """One gate: a kind, target qubits, and (qubit, polarity) controls.

    X, Z and H take one target; SWAP exactly two; CNOT is an X with a single
    positive control; MULTI_CONTROLLED applies X to every target when all
    controls match their polarity.
    """

    kind: str
    targets: tuple[int, ...]
    controls: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "controls", tuple((int(q), int(p)) for q, p in self.controls))
        if self.kind not in GATE_KINDS:
            raise ParameterError(f"unknown gate kind {self.kind!r}")
        if self.kind == "SWAP":
            if len(self.targets) != 2:
                raise ValidationError("SWAP takes exactly two targets")
        elif self.kind in ("X", "Z", "H", "CNOT"):
            if len(self.targets) != 1:
                raise ValidationError(f"{self.kind} takes exactly one target")
        elif not self.targets:
            raise ValidationError("MULTI_CONTROLLED needs at least one target")
        if self.kind == "CNOT" and len(self.controls) != 1:
            raise ValidationError("CNOT takes exactly one control")
        touched = list(self.targets) + [q for q, _ in self.controls]
        if len(set(touched)) != len(touched):
            raise ValidationError(
                f"gate qubits overlap: targets={self.targets} controls={self.controls}"
            )
        if any(q < 0 for q in touched):
            raise ValidationError("qubit indices must be nonnegative")
        if any(p not in (0, 1) for _, p in self.controls):
            raise ValidationError("control polarity must be 0 or 1")

    @classmethod
    def x(cls, target: int, controls=()) -> "GateSpec":
        return cls("X", (target,), tuple(controls))

    @classmethod
    def z(cls, target: int, controls=()) -> "GateSpec":
        return cls("Z", (target,), tuple(controls))

    @classmethod
    def h(cls, target: int, controls=()) -> "GateSpec":
        return cls("H", (target,), tuple(controls))

    @classmethod
    def swap(cls, a: int, b: int, controls=()) -> "GateSpec":
        return cls("SWAP", (a, b), tuple(controls))

    @classmethod
    def cnot(cls, control: int, target: int) -> "GateSpec":
        return cls("CNOT", (target,), ((control, 1),))

    @classmethod
    def multi_controlled_x(cls, targets, controls) -> "GateSpec":
        return cls("MULTI_CONTROLLED", tuple(targets), tuple(controls))


def init_basis(num_qubits: int, basis_index: int) -> StateVector:
    """State with amplitude 1 on a single basis index."""
    if num_qubits < 0:
        raise DimensionError(f"qubit count must be nonnegative, got {num_qubits}")
    dim = 1 << num_qubits
    if not 0 <= basis_index < dim:
        raise ParameterError(f"basis index {basis_index} out of range for {num_qubits} qubits")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[basis_index] = 1.0
    return StateVector(num_qubits, amps)


def apply_gate(state: StateVector, gate: GateSpec) -> StateVector:
    """Apply one gate, returning a new statevector.

    Only amplitude pairs whose control bits match every polarity are touched;
    all other amplitudes carry over unchanged.  Each kernel is expressed as a
    whole-array gather/blend over the bit-mask selection, so the result is
    bit-identical to a sequential pairwise update.
    """
    q = state.num_qubits
    for t in gate.targets:
        _check_qubit(q, t)
    for cq, _ in gate.controls:
        _check_qubit(q, cq)

    idx = _indices(q)
    match = None
    if gate.controls:
        cmask = 0
        cpattern = 0
        for cq, pol in gate.controls:
            cmask |= 1 << cq
            cpattern |= pol << cq
        match = (idx & cmask) == cpattern

    amps = state.amplitudes

    if gate.kind in ("X", "CNOT", "MULTI_CONTROLLED"):
        flip = 0
        for t in gate.targets:
            flip |= 1 << t
        flipped = amps[idx ^ flip]
        out = flipped if match is None else np.where(match, flipped, amps)
    elif gate.kind == "Z":
        sel = _bit_is_one(q, gate.targets[0])
        if match is not None:
            sel = sel & match
        out = np.where(sel, -amps, amps)
    elif gate.kind == "H":
        t = gate.targets[0]
        partner = amps[idx ^ (1 << t)]
        # rows of the 2x2 kernel: (a + b) and (a - b), both scaled by 1/sqrt(2)
        mixed = (np.where(_bit_is_one(q, t), -amps, amps) + partner) * _SQRT1_2
        out = mixed if match is None else np.where(match, mixed, amps)
    else:  # SWAP: exchange amplitudes where the two target bits differ
        b0 = 1 << gate.targets[0]
        b1 = 1 << gate.targets[1]
        differ = _bit_is_one(q, gate.targets[0]) != _bit_is_one(q, gate.targets[1])
        if match is not None:
            differ = differ & match
        out = amps[np.where(differ, idx ^ (b0 | b1), idx)]

    return StateVector(q, out)


def tensor(state_a: StateVector, state_b: StateVector) -> StateVector:
    """Tensor product with ``state_b`` occupying the low-order qubits."""
    amps = np.kron(state_a.amplitudes, state_b.amplitudes)
    return StateVector(state_a.num_qubits + state_b.num_qubits, amps)


def project_and_renormalize(
    state: StateVector, qubit: int, outcome: int
) -> tuple[StateVector, float]:
    """Collapse ``qubit`` onto ``outcome``.

    Returns the renormalized survivor and the pre-projection weight of the
    selected outcome subspace.
    """
    _check_qubit(state.num_qubits, qubit)
    if outcome not in (0, 1):
        raise ParameterError(f"outcome must be 0 or 1, got {outcome}")
    idx = _indices(state.num_qubits)
    keep = ((idx >> qubit) & 1) == outcome
    prob = float(np.sum(np.abs(state.amplitudes[keep]) ** 2))
    if prob == 0.0:
        raise MeasurementError(
            f"outcome {outcome} on qubit {qubit} has zero probability", probability=0.0
        )
    amps = np.where(keep, state.amplitudes, 0.0) / math.sqrt(prob)
    return StateVector(state.num_qubits, amps), prob


def sample_measure(state: StateVector, qubit: int, rng_seed: int, shots: int) -> dict[int, int]:
    """Counts of 0/1 outcomes for ``shots`` independent reads of ``qubit``.

    Draws a single binomial from the exact marginal; deterministic for a
    fixed seed.
    """
    if shots < 1:
        raise ParameterError(f"shots must be at least 1, got {shots}")
    p1 = min(1.0, max(0.0, state.probability(qubit, 1)))
    rng = np.random.default_rng(rng_seed)
    ones = int(rng.binomial(shots, p1))
    return {0: shots - ones, 1: ones}

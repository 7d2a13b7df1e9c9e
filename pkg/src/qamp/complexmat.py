"""Complex matrices, the slack-scaling transform, and classical product oracles.

Matrices are dense, square, and sized N = 2**n so row and column indices fit
an n-qubit register.  Where the algebra mirrors the real/imaginary label
convention of the quantum encoding, entries are handled through their
components a_jk = a_jk0 + i * a_jk1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, ParameterError, ValidationError

#: absolute per-entry tolerance when holding a decoded result against an oracle
ORACLE_TOL = 1e-10

#: tolerance on the slack identity |b|^2 + sum |entries|^2 = 1
NORM_TOL = 1e-12


@dataclass
class ComplexMatrix:
    """Dense square complex matrix of size 2**n x 2**n, entries finite."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise DimensionError(f"register width must be a nonnegative integer, got {self.n!r}")
        self.n = int(self.n)
        dim = 1 << self.n
        arr = np.array(self.entries, dtype=np.complex128)
        if arr.shape != (dim, dim):
            raise DimensionError(
                f"expected a {dim}x{dim} matrix for n={self.n}, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValidationError("matrix entries must be finite")
        self.entries = arr

    @property
    def dim(self) -> int:
        return 1 << self.n

    def weight(self) -> float:
        """Sum of squared entry magnitudes."""
        return float(np.sum(np.abs(self.entries) ** 2))

    def copy(self) -> "ComplexMatrix":
        return ComplexMatrix(self.n, self.entries.copy())


def _square_matrix(entries) -> ComplexMatrix:
    arr = np.array(entries, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    dim = arr.shape[0]
    n = dim.bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise DimensionError(f"matrix side {dim} is not a power of two")
    return ComplexMatrix(n, arr)


@dataclass
class PreparedMatrix:
    """A scaled matrix plus the slack amplitude that tops its norm up to one.

    ``matrix`` holds the original input divided by (s_original + c), and
    ``b`` is chosen so that |b|^2 + sum of squared entry magnitudes equals
    one exactly.  :func:`prepare` guarantees both; :meth:`validate` rechecks
    them on hand-built instances.
    """

    matrix: ComplexMatrix
    b: complex
    s_original: float
    c: float

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def scale(self) -> float:
        """Factor mapping the scaled matrix back to the original input."""
        return self.s_original + self.c

    def validate(self, tol: float = NORM_TOL) -> None:
        w = self.matrix.weight()
        if w >= 1.0:
            raise ValidationError(f"scaled matrix weight {w} is not strictly below 1")
        total = abs(self.b) ** 2 + w
        if abs(total - 1.0) > tol:
            raise ValidationError(f"|b|^2 + weight = {total!r} deviates from 1 beyond {tol}")

    @classmethod
    def from_scaled(cls, matrix, b_phase: float = 0.0) -> "PreparedMatrix":
        """Wrap an already-scaled matrix, assigning the unit scale record.

        The slack magnitude is forced by the unit-norm identity; ``b_phase``
        rotates it in the complex plane.  The recorded (s_original, c) pair is
        the unique consistent one with s_original + c = 1.
        """
        m = matrix if isinstance(matrix, ComplexMatrix) else _square_matrix(matrix)
        w = m.weight()
        if w >= 1.0:
            raise ParameterError(f"scaled matrix weight {w} must be strictly below 1")
        b = math.sqrt(1.0 - w) * cmath.exp(1j * b_phase)
        return cls(matrix=m.copy(), b=complex(b), s_original=w, c=1.0 - w)


def pad_to_square(rows: Sequence[Sequence[complex]]) -> ComplexMatrix:
    """Embed a rectangular array into the smallest 2**n square, zero padded."""
    rows = [list(r) for r in rows]
    if len(rows) == 0:
        raise DimensionError("cannot pad an empty matrix")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DimensionError(f"rows have inconsistent lengths {sorted(widths)}")
    (cols,) = widths
    if cols == 0:
        raise DimensionError("cannot pad a matrix with empty rows")
    side = max(len(rows), cols)
    n = (side - 1).bit_length()
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=np.complex128)
    out[: len(rows), :cols] = np.array(rows, dtype=np.complex128)
    return ComplexMatrix(n, out)


def prepare(a: ComplexMatrix, c: float = 1.0, b_phase: float | None = None) -> PreparedMatrix:
    """Scale ``a`` by 1/(s + c), s its squared-magnitude sum, and attach slack.

    The slack amplitude is real and nonnegative unless ``b_phase`` is given.
    For c <= 1/4 certain weights s make the scaled sum reach 1, in which case
    no valid slack exists and a parameter error is raised; any c > 1/4 is safe
    for every finite input.
    """
    if not (c > 0):  # also rejects NaN
        raise ParameterError(f"slack parameter c must be positive, got {c}")
    if not np.all(np.isfinite(a.entries)):
        raise ValidationError("matrix entries must be finite")
    s = a.weight()
    scaled = ComplexMatrix(a.n, a.entries / (s + c))
    w = scaled.weight()
    if w >= 1.0:
        raise ParameterError(
            f"c={c} is too small for this matrix: scaled weight {w} is not strictly below 1"
        )
    mag = math.sqrt(1.0 - w)
    b = complex(mag) if b_phase is None else mag * cmath.exp(1j * b_phase)
    return PreparedMatrix(matrix=scaled, b=complex(b), s_original=s, c=float(c))


def matmul_oracle(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Reference product accumulated entrywise from real/imaginary components.

    Deliberately a plain triple loop; this is the independent check every
    decoded quantum product is held against, so it stays free of the array
    machinery used elsewhere.
    """
    if a.n != b.n:
        raise DimensionError(f"cannot multiply matrices of widths n={a.n} and n={b.n}")
    dim = a.dim
    a0, a1 = a.entries.real, a.entries.imag
    b0, b1 = b.entries.real, b.entries.imag
    out = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(dim):
        for k in range(dim):
            re = 0.0
            im = 0.0
            for l in range(dim):
                re += a0[j, l] * b0[l, k] - a1[j, l] * b1[l, k]
                im += a0[j, l] * b1[l, k] + a1[j, l] * b0[l, k]
            out[j, k] = complex(re, im)
    return ComplexMatrix(a.n, out)


def dagger_oracle(a: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return ComplexMatrix(a.n, a.entries.conj().T.copy())


# --- file schema -----------------------------------------------------------
#
# Matrix document:   {"n": int, "entries": [[[re, im], ...], ...]}  row major
# Prepared document: the above plus {"b": [re, im], "s_original": f, "c": f}


def matrix_to_obj(m: ComplexMatrix) -> dict:
    return {
        "n": m.n,
        "entries": [[[float(v.real), float(v.imag)] for v in row] for row in m.entries],
    }


def _require_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ValidationError(f"{where} must be finite, got {value!r}")
    return float(value)


def _pair(value, where: str) -> complex:
    if not isinstance(value, list) or len(value) != 2:
        raise ValidationError(f"{where} must be a [re, im] pair")
    return complex(_require_number(value[0], where), _require_number(value[1], where))


def matrix_from_obj(obj) -> ComplexMatrix:
    """Parse the matrix document schema, naming the offending field on error."""
    if not isinstance(obj, dict):
        raise ValidationError("matrix document must be a JSON object")
    if "n" not in obj:
        raise ValidationError("missing field: n")
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValidationError(f"field n must be a nonnegative integer, got {n!r}")
    if "entries" not in obj:
        raise ValidationError("missing field: entries")
    entries = obj["entries"]
    dim = 1 << n
    if not isinstance(entries, list) or len(entries) != dim:
        raise ValidationError(f"field entries must be a list of {dim} rows")
    out = np.zeros((dim, dim), dtype=np.complex128)
    for j, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != dim:
            raise ValidationError(f"entries[{j}] must be a list of {dim} [re, im] pairs")
        for k, pair in enumerate(row):
            out[j, k] = _pair(pair, f"entries[{j}][{k}]")
    return ComplexMatrix(n, out)


def prepared_to_obj(pm: PreparedMatrix) -> dict:
    obj = matrix_to_obj(pm.matrix)
    obj["b"] = [float(pm.b.real), float(pm.b.imag)]
    obj["s_original"] = float(pm.s_original)
    obj["c"] = float(pm.c)
    return obj


def prepared_from_obj(obj) -> PreparedMatrix:
    m = matrix_from_obj(obj)
    for key in ("b", "s_original", "c"):
        if key not in obj:
            raise ValidationError(f"missing field: {key}")
    b = _pair(obj["b"], "field b")
    pm = PreparedMatrix(
        matrix=m,
        b=b,
        s_original=_require_number(obj["s_original"], "field s_original"),
        c=_require_number(obj["c"], "field c"),
    )
    return pm

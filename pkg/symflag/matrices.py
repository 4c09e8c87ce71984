"""
Dense matrices over the exact or float backend.

Exact matrices are numpy object arrays of Fraction/Surd entries; float matrices
are float64 arrays. Every Mat is read-only after construction.
"""
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .config import FLOAT_ABS_TOL, FLOAT_REL_TOL
from .errors import FieldError, MatrixFormatError, MatrixIndexError, MatrixShapeError, NotNilpotentError
from .scalars import Backend, Scalar, coerce, format_scalar, parse_scalar, to_exact


class Mat:
    __slots__ = ("_data", "backend")

    def __init__(self, data, backend: Backend | str = Backend.EXACT):
        backend = Backend.parse(backend)
        arr = np.asarray(data, dtype=object if backend is Backend.EXACT else np.float64)
        if arr.ndim != 2:
            raise MatrixShapeError(f"Expected a 2-dimensional array, got shape {arr.shape}")
        if backend is Backend.EXACT:
            converted = np.empty(arr.shape, dtype=object)
            for index, value in np.ndenumerate(arr):
                converted[index] = to_exact(value)
            arr = converted
        else:
            arr = arr.copy()
        arr.flags.writeable = False
        self._data = arr
        self.backend = backend

    @classmethod
    def _wrap(cls, arr: np.ndarray, backend: Backend) -> "Mat":
        obj = cls.__new__(cls)
        # callers hand over freshly allocated arrays
        if backend is Backend.FLOAT and arr.dtype != np.float64:
            arr = arr.astype(np.float64)
        arr.flags.writeable = False
        obj._data = arr
        obj.backend = backend
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], backend: Backend | str = Backend.EXACT) -> "Mat":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise MatrixShapeError("Rows have different lengths")
        backend = Backend.parse(backend)
        arr = np.empty((len(rows), width), dtype=object if backend is Backend.EXACT else np.float64)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                arr[i, j] = coerce(value, backend)
        return cls._wrap(arr, backend)

    @classmethod
    def zeros(cls, rows: int, cols: int, backend: Backend | str = Backend.EXACT) -> "Mat":
        backend = Backend.parse(backend)
        if backend is Backend.EXACT:
            arr = np.empty((rows, cols), dtype=object)
            arr.fill(Fraction(0))
        else:
            arr = np.zeros((rows, cols))
        return cls._wrap(arr, backend)

    @classmethod
    def identity(cls, size: int, backend: Backend | str = Backend.EXACT) -> "Mat":
        return cls.diag([1] * size, backend)

    @classmethod
    def diag(cls, values: Iterable, backend: Backend | str = Backend.EXACT) -> "Mat":
        backend = Backend.parse(backend)
        values = [coerce(v, backend) for v in values]
        m = cls.zeros(len(values), len(values), backend)
        return m.replace({(i, i): v for i, v in enumerate(values)})

    @classmethod
    def assemble(cls, blocks: Sequence[Sequence["Mat"]]) -> "Mat":
        """Build a matrix from a grid of blocks (`numpy.block`)."""
        backend = blocks[0][0].backend
        for row in blocks:
            for b in row:
                _check_backend(blocks[0][0], b)
        return cls._wrap(np.block([[b._data for b in row] for row in blocks]), backend)

    @classmethod
    def hstack(cls, mats: Sequence["Mat"]) -> "Mat":
        for m in mats[1:]:
            _check_backend(mats[0], m)
        return cls._wrap(np.hstack([m._data for m in mats]), mats[0].backend)

    @classmethod
    def vstack(cls, mats: Sequence["Mat"]) -> "Mat":
        for m in mats[1:]:
            _check_backend(mats[0], m)
        return cls._wrap(np.vstack([m._data for m in mats]), mats[0].backend)

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "Mat":
        return Mat._wrap(self._data.T.copy(), self.backend)

    def __getitem__(self, key):
        value = self._data[key]
        if isinstance(value, np.ndarray):
            if value.ndim == 2:
                return Mat._wrap(value.copy(), self.backend)
            return value.copy()
        return value

    def block(self, i: int, j: int, size: int = 2) -> "Mat":
        """The (i, j) block (0-based) of a matrix cut into size x size blocks."""
        return self[size * i:size * (i + 1), size * j:size * (j + 1)]

    def replace(self, updates: dict) -> "Mat":
        arr = self._data.copy()
        for (i, j), value in updates.items():
            arr[i, j] = coerce(value, self.backend)
        return Mat._wrap(arr, self.backend)

    def with_block(self, row: int, col: int, block: "Mat") -> "Mat":
        """Copy with `block` written at entry offset (row, col), 0-based."""
        _check_backend(self, block)
        arr = self._data.copy()
        arr[row:row + block.rows, col:col + block.cols] = block._data
        return Mat._wrap(arr, self.backend)

    def scale_rows(self, factors: Sequence) -> "Mat":
        """diag(factors) @ self without the dense product."""
        if len(factors) != self.rows:
            raise MatrixShapeError(f"Need {self.rows} row factors, got {len(factors)}")
        column = np.empty((self.rows, 1), dtype=object if self.backend is Backend.EXACT else np.float64)
        for i, factor in enumerate(factors):
            column[i, 0] = coerce(factor, self.backend)
        return Mat._wrap(self._data * column, self.backend)

    def entries(self) -> list:
        return list(self._data.flat)

    def __matmul__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        _check_backend(self, other)
        if self.cols != other.rows:
            raise MatrixShapeError(f"Cannot multiply {self.shape} by {other.shape}")
        if self.backend is Backend.EXACT and self.cols == 0:
            return Mat.zeros(self.rows, other.cols, self.backend)
        return Mat._wrap(self._data @ other._data, self.backend)

    def __add__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        _check_same_shape(self, other)
        return Mat._wrap(self._data + other._data, self.backend)

    def __sub__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        _check_same_shape(self, other)
        return Mat._wrap(self._data - other._data, self.backend)

    def __neg__(self) -> "Mat":
        return Mat._wrap(-self._data, self.backend)

    def __mul__(self, scalar) -> "Mat":
        if isinstance(scalar, Mat):
            return NotImplemented
        return Mat._wrap(self._data * coerce(scalar, self.backend), self.backend)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Mat":
        if isinstance(scalar, Mat):
            return NotImplemented
        if self.backend is Backend.EXACT:
            return self * (Fraction(1) / to_exact(scalar))
        return Mat._wrap(self._data / float(scalar), self.backend)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.backend is other.backend and self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def equals(self, other: "Mat", rel_tol: float = FLOAT_REL_TOL, abs_tol: float = FLOAT_ABS_TOL) -> bool:
        """Exact equality in the exact backend, `numpy.allclose` otherwise."""
        if self.shape != other.shape:
            return False
        if self.backend is Backend.EXACT and other.backend is Backend.EXACT:
            return self == other
        return bool(np.allclose(self.to_float()._data, other.to_float()._data, rtol=rel_tol, atol=abs_tol))

    def is_zero(self, abs_tol: float | None = None) -> bool:
        if self.backend is Backend.EXACT:
            return all(x == 0 for x in self._data.flat)
        tol = FLOAT_ABS_TOL if abs_tol is None else abs_tol
        return bool(np.all(np.abs(self._data) <= tol))

    def to_float(self) -> "Mat":
        if self.backend is Backend.FLOAT:
            return self
        arr = np.empty(self.shape, dtype=np.float64)
        for index, value in np.ndenumerate(self._data):
            arr[index] = float(value)
        return Mat._wrap(arr, Backend.FLOAT)

    def to_exact(self) -> "Mat":
        if self.backend is Backend.EXACT:
            return self
        return Mat(self._data, Backend.EXACT)

    def to_backend(self, backend: Backend | str) -> "Mat":
        backend = Backend.parse(backend)
        return self.to_exact() if backend is Backend.EXACT else self.to_float()

    def commutator(self, other: "Mat") -> "Mat":
        return self @ other - other @ self

    def max_abs(self) -> float:
        if self._data.size == 0:
            return 0.0
        return max(abs(float(x)) for x in self._data.flat)

    def det(self) -> Scalar:
        if not self.is_square:
            raise MatrixShapeError(f"Determinant of a non-square {self.shape} matrix")
        if self.backend is Backend.EXACT:
            return bareiss_determinant(self._data.tolist())
        if self.rows == 0:
            return 1.0
        return float(np.linalg.det(self._data))

    def rank(self, abs_tol: float | None = None) -> int:
        if self.backend is Backend.EXACT:
            return len(_rref_exact(self._data.tolist(), self.cols)[1])
        if self._data.size == 0:
            return 0
        s = np.linalg.svd(self._data, compute_uv=False)
        tol = (FLOAT_REL_TOL if abs_tol is None else abs_tol) * max(1.0, s[0])
        return int(np.sum(s > tol))

    def kernel(self, abs_tol: float | None = None) -> "Mat":
        """Basis of the right null space, one vector per column."""
        if self.backend is Backend.EXACT:
            reduced, pivots = _rref_exact(self._data.tolist(), self.cols)
            free = [c for c in range(self.cols) if c not in pivots]
            basis = np.empty((self.cols, len(free)), dtype=object)
            basis.fill(Fraction(0))
            for k, f in enumerate(free):
                basis[f, k] = Fraction(1)
                for row, p in enumerate(pivots):
                    basis[p, k] = -reduced[row][f]
            return Mat._wrap(basis, self.backend)
        _, s, vh = np.linalg.svd(self._data)
        tol = (FLOAT_REL_TOL if abs_tol is None else abs_tol) * max(1.0, s[0] if s.size else 1.0)
        rank = int(np.sum(s > tol))
        return Mat._wrap(vh[rank:].T.copy(), self.backend)

    def solve(self, rhs: "Mat") -> "Mat":
        """Solve self @ X = rhs for square invertible self."""
        _check_backend(self, rhs)
        if not self.is_square or self.rows != rhs.rows:
            raise MatrixShapeError(f"Cannot solve {self.shape} system with right-hand side {rhs.shape}")
        if self.backend is Backend.FLOAT:
            return Mat._wrap(np.linalg.solve(self._data, rhs._data), self.backend)
        augmented = np.hstack([self._data, rhs._data]).tolist()
        reduced, pivots = _rref_exact(augmented, self.cols)
        if pivots != list(range(self.cols)):
            raise ZeroDivisionError("Singular matrix")
        return Mat._wrap(np.array([row[self.cols:] for row in reduced], dtype=object).reshape(rhs.shape), self.backend)

    def inverse(self) -> "Mat":
        return self.solve(Mat.identity(self.rows, self.backend))

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "backend": self.backend.value,
            "entries": [format_scalar(x, self.backend) for x in self._data.flat],
        }

    @classmethod
    def from_dict(cls, document: dict) -> "Mat":
        try:
            rows, cols = document["rows"], document["cols"]
            backend = Backend.parse(document["backend"])
            entries = document["entries"]
        except (KeyError, TypeError, ValueError) as e:
            raise MatrixFormatError(f"Malformed matrix document: {e}") from None
        if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
            raise MatrixFormatError(f"rows and cols must be positive integers, got {rows!r} x {cols!r}")
        if not isinstance(entries, list) or len(entries) != rows * cols:
            raise MatrixFormatError(f"Expected {rows * cols} entries")
        try:
            values = [parse_scalar(str(e), backend) for e in entries]
        except FieldError as e:
            raise MatrixFormatError(str(e)) from None
        return cls.from_rows([values[i * cols:(i + 1) * cols] for i in range(rows)], backend)

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, {self.backend.value})"

    def __str__(self):
        body = [[format_scalar(x, self.backend) for x in row] for row in self._data]
        return "\n".join("[" + ", ".join(row) + "]" for row in body)


def _check_backend(a: Mat, b: Mat):
    if a.backend is not b.backend:
        raise MatrixShapeError(f"Backend mismatch: {a.backend.value} vs {b.backend.value}")


def _check_same_shape(a: Mat, b: Mat):
    _check_backend(a, b)
    if a.shape != b.shape:
        raise MatrixShapeError(f"Shape mismatch: {a.shape} vs {b.shape}")


def bareiss_determinant(rows: list[list]) -> Scalar:
    """Fraction-free Bareiss elimination; every division is exact."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    previous = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / previous
        previous = pivot
    return to_exact(sign * a[n - 1][n - 1])


def _rref_exact(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of the first `ncols` columns; returns (rows, pivot columns)."""
    a = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rref_float(arr: np.ndarray, abs_tol: float = FLOAT_REL_TOL) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with partial pivoting; entries below tolerance count as zero."""
    a = np.array(arr, dtype=np.float64)
    rows, cols = a.shape
    tol = abs_tol * max(1.0, float(np.abs(a).max(initial=0.0)))
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) <= tol:
            a[r:, c] = 0.0
            continue
        a[[r, p]] = a[[p, r]]
        a[r] /= a[r, c]
        others = [i for i in range(rows) if i != r]
        a[others] -= np.outer(a[others, c], a[r])
        a[others, c] = 0.0
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Mat) -> tuple[Mat, list[int]]:
    if m.backend is Backend.EXACT:
        reduced, pivots = _rref_exact(m.data.tolist(), m.cols)
        return Mat._wrap(np.array(reduced, dtype=object).reshape(m.shape), m.backend), pivots
    reduced, pivots = rref_float(m.data)
    return Mat._wrap(reduced, m.backend), pivots


def det_submatrix(m: Mat, rows: Sequence[int], cols: Sequence[int]) -> Scalar:
    """
    Determinant of the submatrix on the given rows and columns.

    :param m: Mat
    :param rows: 1-based row indices, in the order they are taken
    :param cols: 1-based column indices, in the order they are taken
    :return: the minor; exact in the exact backend
    """
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise MatrixIndexError(f"Index lists have different lengths: {len(rows)} vs {len(cols)}")
    if not rows:
        raise MatrixIndexError("Index lists must be non-empty")
    for name, indices, bound in (("row", rows, m.rows), ("column", cols, m.cols)):
        if len(set(indices)) != len(indices):
            raise MatrixIndexError(f"Duplicate {name} index in {indices}")
        bad = [i for i in indices if not 1 <= i <= bound]
        if bad:
            raise MatrixIndexError(f"{name.capitalize()} index {bad[0]} out of range 1..{bound}")
    sub = m.data[np.ix_([i - 1 for i in rows], [j - 1 for j in cols])]
    return Mat._wrap(sub, m.backend).det()


def nilpotent_exp(n_mat: Mat) -> Mat:
    """exp(N) for nilpotent N, summing the series until a power vanishes."""
    if not n_mat.is_square:
        raise MatrixShapeError(f"Exponential of a non-square {n_mat.shape} matrix")
    size = n_mat.rows
    result = Mat.identity(size, n_mat.backend)
    term = result
    for k in range(1, size + 1):
        term = (term @ n_mat) / k
        if term.is_zero():
            return result
        result = result + term
    raise NotNilpotentError(f"Matrix power {size} is nonzero; the matrix is not nilpotent")

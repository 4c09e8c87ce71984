"""
Bivariate polynomials in (alpha, beta) with exact or float coefficients.

Coefficients are keyed by (degree in alpha, degree in beta). Exact zeros are
never stored, so the zero polynomial has no terms and degree -1.
"""
from fractions import Fraction
from typing import Mapping

import numpy as np
import sympy

from .scalars import Backend, Scalar, coerce, format_scalar, to_float, to_sympy

ALPHA, BETA = sympy.symbols("alpha beta", real=True)


class BivarPoly:
    __slots__ = ("_coeffs", "backend")

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None, backend: Backend | str = Backend.EXACT):
        backend = Backend.parse(backend)
        cleaned = {}
        for (i, j), value in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"Negative exponent ({i}, {j})")
            value = coerce(value, backend)
            if value != 0:
                cleaned[(int(i), int(j))] = value
        self._coeffs = cleaned
        self.backend = backend

    @classmethod
    def constant(cls, value, backend: Backend | str = Backend.EXACT) -> "BivarPoly":
        return cls({(0, 0): value}, backend)

    @classmethod
    def alpha(cls, backend: Backend | str = Backend.EXACT) -> "BivarPoly":
        return cls({(1, 0): 1}, backend)

    @classmethod
    def beta(cls, backend: Backend | str = Backend.EXACT) -> "BivarPoly":
        return cls({(0, 1): 1}, backend)

    @property
    def coeffs(self) -> dict[tuple[int, int], Scalar]:
        return dict(self._coeffs)

    def coefficient(self, i: int, j: int) -> Scalar:
        return self._coeffs.get((i, j), coerce(0, self.backend))

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._coeffs), default=-1)

    def degree_in(self, variable: str) -> int:
        index = 0 if variable == "alpha" else 1
        return max((key[index] for key in self._coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self._coeffs

    def homogeneous_part(self, k: int) -> "BivarPoly":
        return BivarPoly({key: c for key, c in self._coeffs.items() if sum(key) == k}, self.backend)

    def leading_form(self) -> "BivarPoly":
        return self.homogeneous_part(self.degree)

    def _aligned(self, other) -> tuple["BivarPoly", "BivarPoly", Backend]:
        """Both operands in a common backend; float wins over exact."""
        if not isinstance(other, BivarPoly):
            other = BivarPoly.constant(other, self.backend)
        backend = Backend.FLOAT if Backend.FLOAT in (self.backend, other.backend) else Backend.EXACT
        return self.to_backend(backend), other.to_backend(backend), backend

    def __add__(self, other) -> "BivarPoly":
        a, b, backend = self._aligned(other)
        out = dict(a._coeffs)
        for key, c in b._coeffs.items():
            out[key] = out.get(key, 0) + c
        return BivarPoly(out, backend)

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({key: -c for key, c in self._coeffs.items()}, self.backend)

    def __sub__(self, other) -> "BivarPoly":
        a, b, _ = self._aligned(other)
        return a + (-b)

    def __rsub__(self, other) -> "BivarPoly":
        return (-self) + other

    def __mul__(self, other) -> "BivarPoly":
        a, b, backend = self._aligned(other)
        out: dict[tuple[int, int], Scalar] = {}
        for (i1, j1), c1 in a._coeffs.items():
            for (i2, j2), c2 in b._coeffs.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivarPoly(out, backend)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.backend is other.backend and self._coeffs == other._coeffs

    __hash__ = None

    def equals(self, other: "BivarPoly", rel_tol: float = 1e-9, abs_tol: float = 1e-12) -> bool:
        if self.backend is Backend.EXACT and other.backend is Backend.EXACT:
            return self == other
        keys = set(self._coeffs) | set(other._coeffs)
        return all(
            np.isclose(to_float(self.coefficient(*k)), to_float(other.coefficient(*k)), rtol=rel_tol, atol=abs_tol)
            for k in keys
        )

    def evaluate(self, alpha, beta):
        """Value at (alpha, beta); exact when the coefficients and the point are exact."""
        total = 0.0 if self.backend is Backend.FLOAT else Fraction(0)
        for (i, j), c in self._coeffs.items():
            total = total + c * alpha ** i * beta ** j
        return total

    __call__ = evaluate

    def derivative(self, variable: str) -> "BivarPoly":
        out = {}
        for (i, j), c in self._coeffs.items():
            if variable == "alpha" and i:
                out[(i - 1, j)] = c * i
            elif variable == "beta" and j:
                out[(i, j - 1)] = c * j
        return BivarPoly(out, self.backend)

    def shift_constant(self, delta) -> "BivarPoly":
        return self + BivarPoly.constant(delta, self.backend)

    def beta_coefficients(self, alpha: float) -> np.ndarray:
        """Float coefficients (highest power first) of beta ↦ p(alpha, beta), for `numpy.roots`."""
        degree = self.degree_in("beta")
        out = np.zeros(max(degree, 0) + 1)
        for (i, j), c in self._coeffs.items():
            out[degree - j] += float(c) * alpha ** i
        return out

    def to_backend(self, backend: Backend | str) -> "BivarPoly":
        backend = Backend.parse(backend)
        if backend is self.backend:
            return self
        if backend is Backend.FLOAT:
            return BivarPoly({k: float(c) for k, c in self._coeffs.items()}, backend)
        return BivarPoly(self._coeffs, backend)

    def to_float(self) -> "BivarPoly":
        return self.to_backend(Backend.FLOAT)

    def to_sympy(self, rational: bool = True) -> sympy.Expr:
        """
        Sympy expression in ALPHA, BETA. Float coefficients are converted to
        their exact binary rational values when `rational` is set.
        """
        expr = sympy.Integer(0)
        for (i, j), c in sorted(self._coeffs.items()):
            if self.backend is Backend.FLOAT:
                coefficient = sympy.Rational(float(c)) if rational else sympy.Float(c)
            else:
                coefficient = to_sympy(c)
            expr += coefficient * ALPHA ** i * BETA ** j
        return expr

    def to_dict(self) -> dict:
        return {f"{i},{j}": format_scalar(c, self.backend) for (i, j), c in sorted(self._coeffs.items())}

    def __repr__(self):
        return f"BivarPoly(degree={self.degree}, terms={len(self._coeffs)}, {self.backend.value})"

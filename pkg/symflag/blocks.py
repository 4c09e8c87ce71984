"""
2x2 block calculus over the basis I, R, T, P.

    I = [[1, 0], [0, 1]]    R = [[0, -1], [1, 0]]
    T = [[1, 0], [0, -1]]   P = [[0, 1], [1, 0]]

det(iI + rR + tT + pP) = i² + r² − t² − p², and the traceless symmetric
blocks are exactly the span of T and P.
"""
from dataclasses import dataclass
from fractions import Fraction

from .errors import MatrixShapeError
from .matrices import Mat
from .scalars import Backend, Scalar, coerce, format_scalar, is_zero

BASIS_ROWS = {
    "I": ((1, 0), (0, 1)),
    "R": ((0, -1), (1, 0)),
    "T": ((1, 0), (0, -1)),
    "P": ((0, 1), (1, 0)),
}


def basis_matrix(name: str, backend: Backend | str = Backend.EXACT) -> Mat:
    return Mat.from_rows(BASIS_ROWS[name], backend)


def _half(x, backend: Backend):
    return x * Fraction(1, 2) if backend is Backend.EXACT else x * 0.5


@dataclass(frozen=True)
class Block2:
    i_coef: Scalar
    r_coef: Scalar
    t_coef: Scalar
    p_coef: Scalar
    backend: Backend = Backend.EXACT

    @classmethod
    def zero(cls, backend: Backend | str = Backend.EXACT) -> "Block2":
        backend = Backend.parse(backend)
        z = coerce(0, backend)
        return cls(z, z, z, z, backend)

    def to_mat(self) -> Mat:
        i, r, t, p = self.i_coef, self.r_coef, self.t_coef, self.p_coef
        return Mat.from_rows([[i + t, p - r], [p + r, i - t]], self.backend)

    def determinant(self) -> Scalar:
        i, r, t, p = self.i_coef, self.r_coef, self.t_coef, self.p_coef
        return i * i + r * r - t * t - p * p

    def coefficients(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return self.i_coef, self.r_coef, self.t_coef, self.p_coef

    def is_traceless_symmetric(self, abs_tol: float | None = None) -> bool:
        kwargs = {} if abs_tol is None else {"abs_tol": abs_tol}
        return is_zero(self.i_coef, self.backend, **kwargs) and is_zero(self.r_coef, self.backend, **kwargs)

    def to_dict(self) -> dict:
        return {name: format_scalar(value, self.backend) for name, value in zip("IRTP", self.coefficients())}


def block2_decompose(b: Mat) -> Block2:
    """Coordinates of a 2x2 matrix over (I, R, T, P)."""
    if b.shape != (2, 2):
        raise MatrixShapeError(f"Expected a 2x2 block, got {b.shape}")
    (a, bb), (c, d) = b.data.tolist()
    backend = b.backend
    return Block2(
        i_coef=_half(a + d, backend),
        r_coef=_half(c - bb, backend),
        t_coef=_half(a - d, backend),
        p_coef=_half(bb + c, backend),
        backend=backend,
    )


def adjugate2(a: Mat) -> Mat:
    """[[d, -b], [-c, a]]; A @ adjugate2(A) = det(A) * I."""
    if a.shape != (2, 2):
        raise MatrixShapeError(f"Expected a 2x2 matrix, got {a.shape}")
    (p, q), (r, s) = a.data.tolist()
    return Mat.from_rows([[s, -q], [-r, p]], a.backend)

"""
Symplectic forms on R^{2n}, group membership, antiprincipal minors, random
sampling and the two structural embeddings.

The standard form is ω(x, y) = xᵀJy with J e_i = (−1)^i e_{2n−i+1}; the
hermitian form uses J_h, which carries R blocks in the corners and down the
middle of the diagonal. The orthogonal matrix f of `build_f` satisfies
f J fᵀ = J_h, so conjugation by f moves between the two pictures.
"""
import random
from dataclasses import InitVar, dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .blocks import basis_matrix
from .config import FLOAT_ABS_TOL, FLOAT_REL_TOL, KEY_LEMMA_FLOAT_TOL
from .errors import MatrixIndexError, MatrixShapeError, NotSymplecticError, RepresentationError
from .matrices import Mat, det_submatrix
from .scalars import Backend, Scalar, exact_sqrt, format_scalar


class FormKind(str, Enum):
    STANDARD = "standard"
    HERMITIAN = "hermitian"


class FormDirection(str, Enum):
    TO_STANDARD = "to_standard"
    TO_HERMITIAN = "to_hermitian"


@dataclass(frozen=True, eq=False)
class SymplecticForm:
    n: int
    kind: FormKind
    gram: Mat

    def __post_init__(self):
        size = 2 * self.n
        if self.gram.shape != (size, size):
            raise MatrixShapeError(f"Gram matrix must be {size}x{size}, got {self.gram.shape}")
        minus_identity = -Mat.identity(size, self.gram.backend)
        if not self.gram.T.equals(-self.gram) or not (self.gram @ self.gram).equals(minus_identity):
            raise NotSymplecticError(f"{self.kind.value} gram matrix must be antisymmetric with square -I")

    @property
    def dim(self) -> int:
        return 2 * self.n

    def gram_for(self, backend: Backend) -> Mat:
        return self.gram.to_backend(backend)

    def apply(self, m: Mat) -> Mat:
        """gram @ m; the standard gram is a signed antidiagonal, so rows are reversed and signed."""
        if self.kind is FormKind.STANDARD:
            return m[::-1, :].scale_rows(_antidiagonal_signs(self.dim))
        return self.gram_for(m.backend) @ m

    def omega(self, x: Mat, y: Mat) -> Scalar:
        return (x.T @ self.gram_for(x.backend) @ y)[0, 0]

    def gram_of(self, basis: Mat) -> Mat:
        """Matrix of ω restricted to the span of the columns of `basis`."""
        return basis.T @ self.gram_for(basis.backend) @ basis

    def is_isotropic(self, basis: Mat, abs_tol: float | None = None) -> bool:
        gram = self.gram_of(basis)
        if basis.backend is Backend.FLOAT and abs_tol is None:
            abs_tol = FLOAT_REL_TOL * max(1.0, basis.max_abs()) ** 2
        return gram.is_zero(abs_tol)

    def perp(self, basis: Mat, abs_tol: float | None = None) -> Mat:
        """Basis of the ω-perpendicular of span(basis): the kernel of basisᵀ·gram."""
        return (basis.T @ self.gram_for(basis.backend)).kernel(abs_tol)


@lru_cache(maxsize=None)
def _antidiagonal_signs(size: int) -> tuple[int, ...]:
    return tuple((-1) ** i for i in range(size))


@dataclass(frozen=True, eq=False)
class GroupElement:
    form: SymplecticForm
    mat: Mat
    # products and closed-form inverses of members are members
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        if validate and not is_symplectic(self.mat, self.form):
            raise NotSymplecticError(f"Matrix does not preserve the {self.form.kind.value} form")

    @property
    def backend(self) -> Backend:
        return self.mat.backend

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.form, self.mat @ other.mat, validate=other.form is not self.form)

    def inverse(self) -> "GroupElement":
        return symplectic_inverse(self)


@lru_cache(maxsize=None)
def standard_J(n: int, backend: Backend | str = Backend.EXACT) -> SymplecticForm:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    size = 2 * n
    # column i carries (−1)^i in row 2n−i+1 (1-based)
    gram = Mat.zeros(size, size, backend).replace({(size - i, i - 1): (-1) ** i for i in range(1, size + 1)})
    return SymplecticForm(n, FormKind.STANDARD, gram)


def hermitian_J_h(n: int, backend: Backend | str = Backend.EXACT) -> SymplecticForm:
    """Gram matrix of Im h for h of signature (n−1, 1): R in the corners and on the inner diagonal."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    r = basis_matrix("R", backend)
    gram = Mat.zeros(2 * n, 2 * n, backend)
    for i, j in [(0, n - 1), (n - 1, 0)] + [(k, k) for k in range(1, n - 1)]:
        gram = gram.with_block(2 * i, 2 * j, r)
    return SymplecticForm(n, FormKind.HERMITIAN, gram)


@lru_cache(maxsize=None)
def build_f(n: int) -> Mat:
    """
    The orthogonal matrix with f J fᵀ = J_h.

    Block rows pair block k with its mirror n−1−k: the upper half uses
    (I, −I)/√2, the lower half (T, T)/√2, the corners are I and −I and, for
    odd n, the middle block is T.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    half_root = exact_sqrt(2) / 2
    identity, t = basis_matrix("I"), basis_matrix("T")
    f = Mat.zeros(2 * n, 2 * n)
    f = f.with_block(0, 0, identity).with_block(2 * (n - 1), 2 * (n - 1), -identity)
    for k in range(1, n - 1):
        mirror = n - 1 - k
        if k == mirror:
            f = f.with_block(2 * k, 2 * k, t)
        elif k < mirror:
            f = f.with_block(2 * k, 2 * k, identity * half_root).with_block(2 * k, 2 * mirror, identity * -half_root)
        else:
            f = f.with_block(2 * k, 2 * mirror, t * half_root).with_block(2 * k, 2 * k, t * half_root)
    if f @ standard_J(n).gram @ f.T != hermitian_J_h(n).gram:
        raise RepresentationError(f"f J f^T != J_h for n={n}")
    return f


def change_of_form(g: Mat, direction: FormDirection | str = FormDirection.TO_STANDARD) -> Mat:
    """g ↦ f⁻¹gf (hermitian to standard picture) or g ↦ fgf⁻¹ (back)."""
    if not g.is_square or g.rows % 2:
        raise MatrixShapeError(f"Expected a 2n x 2n matrix, got {g.shape}")
    direction = FormDirection(direction)
    f = build_f(g.rows // 2).to_backend(g.backend)
    if direction is FormDirection.TO_STANDARD:
        return f.T @ g @ f
    return f @ g @ f.T


def change_of_form_basis(basis: Mat, direction: FormDirection | str = FormDirection.TO_STANDARD) -> Mat:
    """Carry subspaces along with `change_of_form`: V ↦ f⁻¹V, or back V ↦ fV."""
    direction = FormDirection(direction)
    f = build_f(basis.rows // 2).to_backend(basis.backend)
    return f.T @ basis if direction is FormDirection.TO_STANDARD else f @ basis


def is_symplectic(g: Mat, form: SymplecticForm, rel_tol: float = FLOAT_REL_TOL, abs_tol: float | None = None) -> bool:
    if g.shape != form.gram.shape:
        raise MatrixShapeError(f"Matrix {g.shape} does not match the {form.dim}x{form.dim} form")
    gram = form.gram_for(g.backend)
    lhs = g.T @ form.apply(g)
    if g.backend is Backend.EXACT:
        return lhs == gram
    if abs_tol is None:
        abs_tol = max(FLOAT_ABS_TOL, rel_tol * g.max_abs() ** 2)
    return lhs.equals(gram, rel_tol, abs_tol)


def symplectic_inverse(g: GroupElement) -> GroupElement:
    """−J gᵀ J = J (J g)ᵀ, which is g⁻¹ for any gram with J² = −I."""
    return GroupElement(g.form, g.form.apply(g.form.apply(g.mat).T), validate=False)


def _as_mat(g) -> Mat:
    return g.mat if isinstance(g, GroupElement) else g


def antiprincipal_minor(g: Mat | GroupElement, k: int) -> Scalar:
    """p_k(g) = det g[{1..k}, {2n, 2n−1, ..., 2n−k+1}]."""
    m = _as_mat(g)
    size = m.rows
    if not m.is_square:
        raise MatrixShapeError(f"Expected a square matrix, got {m.shape}")
    if not 1 <= k <= size:
        raise MatrixIndexError(f"k={k} out of range 1..{size}")
    return det_submatrix(m, range(1, k + 1), range(size, size - k, -1))


def _wedge_sign(indices: Sequence[int]) -> int:
    """Sign of e_{i1} ∧ ... ∧ e_{im} relative to e_1 ∧ ... ∧ e_m; 0 on a repeat."""
    if len(set(indices)) != len(indices):
        return 0
    inversions = sum(1 for a in range(len(indices)) for b in range(a + 1, len(indices)) if indices[a] > indices[b])
    return -1 if inversions % 2 else 1


def antiprincipal_minor_wedge(g: Mat | GroupElement, k: int) -> Scalar:
    """
    Slow oracle for p_k: the coefficient of e_1 ∧ ... ∧ e_2n in
    g e_2n ∧ ... ∧ g e_{2n−k+1} ∧ e_{k+1} ∧ ... ∧ e_2n, expanded coordinate by coordinate.
    """
    m = _as_mat(g)
    size = m.rows
    if not 1 <= k <= size:
        raise MatrixIndexError(f"k={k} out of range 1..{size}")
    tail = list(range(k, size))
    total = m.data[0, 0] * 0
    for choice in product(range(size), repeat=k):
        sign = _wedge_sign(list(choice) + tail)
        if not sign:
            continue
        term = m.data[0, 0] * 0 + sign
        for j, row in enumerate(choice):
            term = term * m.data[row, size - 1 - j]
        total = total + term
    return total


@dataclass(frozen=True)
class MinorResidual:
    k: int
    minor: Scalar
    inverse_minor: Scalar
    residual: Scalar
    passed: bool


@dataclass(frozen=True)
class KeyLemmaReport:
    backend: Backend
    residuals: tuple[MinorResidual, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.residuals)

    def to_dict(self) -> dict:
        fmt = lambda x: format_scalar(x, self.backend)
        return {
            "passed": self.passed,
            "residuals": {str(r.k): fmt(r.residual) for r in self.residuals},
            "minors": {str(r.k): [fmt(r.minor), fmt(r.inverse_minor)] for r in self.residuals},
        }


def verify_key_lemma(g: GroupElement, k_range: Iterable[int] | None = None) -> KeyLemmaReport:
    """Compare p_k(g⁻¹) with (−1)^k p_k(g) for every k; failures are reported, not raised."""
    ks = list(range(1, g.form.n + 1) if k_range is None else k_range)
    inverse = symplectic_inverse(g).mat
    results = []
    for k in ks:
        minor = antiprincipal_minor(g.mat, k)
        inverse_minor = antiprincipal_minor(inverse, k)
        residual = inverse_minor - (-1) ** k * minor
        if g.backend is Backend.EXACT:
            passed = residual == 0
        else:
            passed = abs(residual) <= KEY_LEMMA_FLOAT_TOL * max(1.0, abs(minor))
        results.append(MinorResidual(k, minor, inverse_minor, residual, bool(passed)))
    return KeyLemmaReport(g.backend, tuple(results))


_TORUS_VALUES = (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, Fraction(2, 3))


def _random_rational(rng: random.Random, scale: Fraction) -> Fraction:
    q = rng.choice((1, 2, 3, 4))
    return Fraction(rng.randint(-q, q), q) * scale


def random_symplectic(
    n: int,
    seed: int,
    scale: float = 1.0,
    backend: Backend | str = Backend.EXACT,
    form: SymplecticForm | None = None,
) -> GroupElement:
    """
    Deterministic random element of Sp(form).

    Float: expm of Z = gram⁻¹S with S symmetric, entries uniform in [−scale, scale].
    Exact: a torus element (standard form only) times 2n+2 transvections
    x ↦ x + c·v·(vᵀ gram x) with small rational v and c.
    """
    if n < 1 or scale <= 0:
        raise ValueError(f"Need n >= 1 and scale > 0, got n={n}, scale={scale}")
    backend = Backend.parse(backend)
    form = form or standard_J(n)
    size = 2 * n
    if backend is Backend.FLOAT:
        rng = np.random.default_rng(seed)
        upper = np.triu(rng.uniform(-scale, scale, (size, size)))
        s = upper + np.triu(upper, 1).T
        z = -form.gram.to_float().data @ s
        return GroupElement(form, Mat(scipy.linalg.expm(z), Backend.FLOAT))

    rng = random.Random(seed)
    scale_q = Fraction(scale).limit_denominator(1000)
    if form.kind is FormKind.STANDARD:
        lambdas = [Fraction(rng.choice(_TORUS_VALUES)) for _ in range(n)]
        mat = Mat.diag(lambdas + [1 / x for x in reversed(lambdas)])
    else:
        mat = Mat.identity(size)
    for _ in range(size + 2):
        v = Mat.from_rows([[_random_rational(rng, scale_q)] for _ in range(size)])
        c = _random_rational(rng, scale_q) or Fraction(1)
        mat = mat - (mat @ v) @ form.apply(v).T * c
    # torus elements and transvections are exact members
    return GroupElement(form, mat, validate=False)


def embed_block_matrix(m: Mat, middle: Mat | None = None) -> Mat:
    """[[A, B], [C, D]] ↦ [[A, 0, B], [0, middle, 0], [C, 0, D]] with a 2x2 middle block (zero by default)."""
    if not m.is_square or m.rows % 2:
        raise MatrixShapeError(f"Expected a 2n x 2n matrix, got {m.shape}")
    n = m.rows // 2
    backend = m.backend
    middle = Mat.zeros(2, 2, backend) if middle is None else middle.to_backend(backend)
    zero = lambda r, c: Mat.zeros(r, c, backend)
    return Mat.assemble([
        [m[:n, :n], zero(n, 2), m[:n, n:]],
        [zero(2, n), middle, zero(2, n)],
        [m[n:, :n], zero(n, 2), m[n:, n:]],
    ])


def embed_sp(g: GroupElement) -> GroupElement:
    """Sp(2n) → Sp(2n+2), adding a trivial 2-dimensional summand in the middle."""
    if g.form.kind is not FormKind.STANDARD:
        raise ValueError("embed_sp expects an element of the standard symplectic group")
    embedded = embed_block_matrix(g.mat, Mat.identity(2, g.backend))
    return GroupElement(standard_J(g.form.n + 1), embedded)

"""
The representation ρ_n of SL(2,C) into Sp(2n,R), its limit set in F_{2,2n−2},
and the horocyclic groups of SU(n−1,1) in the hermitian picture.

For even n the triple (H, X, Y) is written down block by block with
c_k = sqrt(kn − k²); odd n embeds the n−1 triple with a zero middle block.
Every triple is checked against its bracket relations before it is returned.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Sequence

from .blocks import Block2, basis_matrix, block2_decompose
from .errors import MatrixShapeError, NotSymplecticError, RepresentationError
from .flags import ThetaFlag, ThetaSet, standard_flag, standard_opp_flag
from .matrices import Mat, nilpotent_exp
from .scalars import Backend, ExactField, Scalar, coerce, exact_sqrt, format_scalar
from .symplectic import embed_block_matrix, hermitian_J_h, is_symplectic, standard_J


@dataclass(frozen=True, eq=False)
class Sl2Triple:
    n: int
    H: Mat
    X: Mat
    Y: Mat
    scalar_field: ExactField = field(default_factory=ExactField)

    @property
    def dim(self) -> int:
        return 2 * self.n

    @cached_property
    def float_mats(self) -> tuple[Mat, Mat, Mat]:
        return self.H.to_float(), self.X.to_float(), self.Y.to_float()

    def generator(self, alpha, beta, backend: Backend | str = Backend.EXACT) -> Mat:
        """αX + βY."""
        backend = Backend.parse(backend)
        if backend is Backend.EXACT:
            x, y = self.X, self.Y
        else:
            _, x, y = self.float_mats
        return x * alpha + y * beta

    def exp(self, alpha, beta, backend: Backend | str = Backend.EXACT) -> Mat:
        return nilpotent_exp(self.generator(alpha, beta, backend))

    @cached_property
    def exp_coefficients(self) -> dict[tuple[int, int], Mat]:
        """
        exp(αX + βY) = Σ α^i β^j X^i Y^j / (i! j!), since X and Y commute.
        Only the nonzero coefficient matrices are kept.
        """
        out = {}
        x_power = Mat.identity(self.dim)
        for i in range(self.dim):
            term = x_power
            for j in range(self.dim):
                if term.is_zero():
                    break
                out[(i, j)] = term / (factorial(i) * factorial(j))
                term = term @ self.Y
            x_power = x_power @ self.X
            if x_power.is_zero():
                break
        return out

    @cached_property
    def float_exp_coefficients(self) -> dict[tuple[int, int], Mat]:
        return {key: m.to_float() for key, m in self.exp_coefficients.items()}

    def exp_coefficients_for(self, backend: Backend | str) -> dict[tuple[int, int], Mat]:
        return self.exp_coefficients if Backend.parse(backend) is Backend.EXACT else self.float_exp_coefficients

    def h_spectrum(self) -> list[Scalar]:
        return [self.H.data[i, i] for i in range(self.dim)]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "radicands": list(self.scalar_field.radicands),
            "H": self.H.to_dict(),
            "X": self.X.to_dict(),
            "Y": self.Y.to_dict(),
        }


def top_right_degree(n: int) -> int:
    """Degree of the top right block of exp(αX + βY): n − 1 for even n, n − 2 for odd n."""
    return n - 1 if n % 2 == 0 else n - 2


def expected_h_spectrum(n: int) -> list[int]:
    """(n−1, n−1, n−3, n−3, ..., 1−n, 1−n); odd n gets a (0, 0) pair in the middle."""
    if n % 2:
        even = expected_h_spectrum(n - 1)
        half = len(even) // 2
        return even[:half] + [0, 0] + even[half:]
    return [n - 2 * k + 1 for k in range(1, n + 1) for _ in range(2)]


def in_symplectic_algebra(m: Mat, n: int) -> bool:
    gram = standard_J(n).gram_for(m.backend)
    return (m.T @ gram + gram @ m).is_zero()


def bracket_relations(triple: Sl2Triple) -> dict[str, bool]:
    h, x, y = triple.H, triple.X, triple.Y
    return {
        "[H,X]=2X": h.commutator(x) == x * 2,
        "[H,Y]=2Y": h.commutator(y) == y * 2,
        "[X,Y]=0": x.commutator(y).is_zero(),
        "[X,X^T]=H": x.commutator(x.T) == h,
        "X in sp(2n)": in_symplectic_algebra(x, triple.n),
        "Y in sp(2n)": in_symplectic_algebra(y, triple.n),
    }


@lru_cache(maxsize=None)
def build_rho(n: int) -> Sl2Triple:
    """The triple ρ_n(H), ρ_n(X), ρ_n(Y) over Q(sqrt(kn − k²))."""
    if n < 2:
        raise ValueError(f"rho_n needs n >= 2, got {n}")
    if n % 2:
        base = build_rho(n - 1)
        triple = Sl2Triple(n, *(embed_block_matrix(m) for m in (base.H, base.X, base.Y)), scalar_field=base.scalar_field)
    else:
        radicands = [k * n - k * k for k in range(1, n)]
        scalar_field = ExactField.saturate(radicands)
        c = [scalar_field.require(exact_sqrt(r)) for r in radicands]
        identity, r_block = basis_matrix("I"), basis_matrix("R")
        t_block, p_block = basis_matrix("T"), basis_matrix("P")
        h = Mat.diag(expected_h_spectrum(n))
        x = y = Mat.zeros(2 * n, 2 * n)
        for k in range(1, n):
            ck = c[k - 1]
            if 2 * k < n:
                xb, yb = identity * ck, r_block * ck
            elif 2 * k == n:
                xb, yb = t_block * ck, p_block * ck
            else:
                xb, yb = identity * -ck, r_block * ck
            x = x.with_block(2 * (k - 1), 2 * k, xb)
            y = y.with_block(2 * (k - 1), 2 * k, yb)
        triple = Sl2Triple(n, h, x, y, scalar_field)
    failed = [name for name, ok in bracket_relations(triple).items() if not ok]
    if failed:
        raise RepresentationError(f"rho_{n} fails {', '.join(failed)}")
    return triple


def simple_root_values(h: Mat) -> list[Scalar]:
    """
    α_i(H) = λ_i − λ_{i+1} (i < n) and α_n(H) = 2λ_n for H = diag(λ_1..λ_n, −λ_n..−λ_1).
    """
    n = h.rows // 2
    lam = [h.data[i, i] for i in range(n)]
    return [lam[i] - lam[i + 1] for i in range(n - 1)] + [lam[n - 1] * 2]


def middle_to_end_permutation(n: int) -> Mat:
    """Permutation moving the middle 2 coordinates of R^{2n} (odd n) to the end."""
    if n % 2 == 0:
        raise ValueError(f"Only odd n has a middle block, got {n}")
    half = n - 1
    order = list(range(half)) + list(range(half + 2, 2 * n)) + [half, half + 1]
    return Mat.identity(2 * n)[:, order]


def odd_reduction_holds(n: int) -> bool:
    """
    For odd n, conjugating X and Y by `middle_to_end_permutation` gives the n−1
    matrices padded with a zero block, and the top right blocks of the
    exponential coefficients agree with those of n−1.
    """
    triple, base = build_rho(n), build_rho(n - 1)
    perm = middle_to_end_permutation(n)
    for big, small in ((triple.X, base.X), (triple.Y, base.Y)):
        padded = Mat.zeros(2 * n, 2 * n).with_block(0, 0, small)
        if perm.T @ big @ perm != padded:
            return False
    big_blocks = {k: m.block(0, n - 1) for k, m in triple.exp_coefficients.items()}
    small_blocks = {k: m.block(0, n - 2) for k, m in base.exp_coefficients.items()}
    keys = set(big_blocks) | set(small_blocks)
    zero = Mat.zeros(2, 2)
    return all(big_blocks.get(k, zero) == small_blocks.get(k, zero) for k in keys)


def is_complex_linear(m: Mat) -> bool:
    """Whether m commutes with multiplication by i, i.e. diag(R, ..., R)."""
    if not m.is_square or m.rows % 2:
        raise MatrixShapeError(f"Expected a 2n x 2n matrix, got {m.shape}")
    j = Mat.zeros(m.rows, m.cols, m.backend)
    r = basis_matrix("R", m.backend)
    for k in range(m.rows // 2):
        j = j.with_block(2 * k, 2 * k, r)
    commutator = m.commutator(j)
    return commutator.is_zero() if m.backend is Backend.EXACT else commutator.is_zero(1e-9 * max(1.0, m.max_abs()))


@dataclass(frozen=True)
class LimitPoint:
    """exp(αX + βY)·τ₋, or τ₊ when both parameters are None."""
    alpha: Scalar | None = None
    beta: Scalar | None = None

    @classmethod
    def at_infinity(cls) -> "LimitPoint":
        return cls()

    @property
    def is_infinite(self) -> bool:
        return self.alpha is None and self.beta is None


def _backend_of(*values) -> Backend:
    return Backend.FLOAT if any(isinstance(v, float) for v in values) else Backend.EXACT


def limit_point(triple: Sl2Triple, alpha, beta=None) -> ThetaFlag:
    """The SL-type flag of F_{2,2n−2} at (alpha, beta); pass a LimitPoint for τ₊."""
    point = alpha if isinstance(alpha, LimitPoint) else LimitPoint(alpha, beta)
    theta = ThetaSet.sl_type(triple.n)
    if point.is_infinite:
        return standard_flag(theta)
    backend = _backend_of(point.alpha, point.beta)
    return standard_opp_flag(theta, backend=backend).transformed(triple.exp(point.alpha, point.beta, backend))


def top_right_block(triple: Sl2Triple, alpha, beta) -> Block2:
    """Block (1, n) of exp(αX + βY) over (I, R, T, P)."""
    backend = _backend_of(alpha, beta)
    return block2_decompose(triple.exp(alpha, beta, backend).block(0, triple.n - 1))


def _combination(backend: Backend, **coefficients) -> Mat:
    out = Mat.zeros(2, 2, backend)
    for name, value in coefficients.items():
        out = out + basis_matrix(name, backend) * value
    return out


def _check_hermitian_unipotent(m: Mat, n: int) -> Mat:
    if not is_symplectic(m, hermitian_J_h(n)):
        raise NotSymplecticError(f"Horocyclic element does not preserve omega_h for n={n}")
    return m


def _vector(values: Sequence, length: int, name: str, backend: Backend) -> list[Scalar]:
    values = list(values)
    if len(values) != length:
        raise MatrixShapeError(f"{name} must have {length} entries, got {len(values)}")
    return [coerce(v, backend) for v in values]


@dataclass(frozen=True)
class UPrimeParams:
    """Coordinates of U′ = exp(𝔤_α ⊕ 𝔤_2α)."""
    alpha: tuple = ()
    beta: tuple = ()
    gamma: object = 0

    def to_dict(self, backend: Backend = Backend.EXACT) -> dict:
        fmt = lambda x: format_scalar(coerce(x, backend), backend)
        return {"alpha": [fmt(a) for a in self.alpha], "beta": [fmt(b) for b in self.beta], "gamma": fmt(self.gamma)}


@dataclass(frozen=True)
class UParams:
    """Coordinates of the horocyclic group U of τ₊ in Sp(ω_h)."""
    u: tuple = ()
    v: tuple = ()
    w: tuple = ()
    z: tuple = ()
    b: object = 0
    c: object = 0
    d: object = 0

    @classmethod
    def zeros(cls, n: int) -> "UParams":
        zero = (0,) * (n - 2)
        return cls(zero, zero, zero, zero)

    def to_dict(self, backend: Backend = Backend.EXACT) -> dict:
        fmt = lambda x: format_scalar(coerce(x, backend), backend)
        out = {name: [fmt(x) for x in getattr(self, name)] for name in "uvwz"}
        out.update({name: fmt(getattr(self, name)) for name in "bcd"})
        return out


def su_horocyclic_U_prime(params: UPrimeParams, n: int, backend: Backend | str = Backend.EXACT) -> Mat:
    """
        [ I   −αᵀ⊗I + β⊗R   −½(|α|²+|β|²)I + γR ]
        [ 0   I             α⊗I + β⊗R           ]
        [ 0   0             I                   ]
    """
    backend = Backend.parse(backend)
    alpha = _vector(params.alpha, n - 2, "alpha", backend)
    beta = _vector(params.beta, n - 2, "beta", backend)
    gamma = coerce(params.gamma, backend)
    half = Fraction(1, 2) if backend is Backend.EXACT else 0.5
    norm2 = sum((a * a for a in alpha), coerce(0, backend)) + sum((b * b for b in beta), coerce(0, backend))
    last = 2 * (n - 1)
    m = Mat.identity(2 * n, backend)
    for j, (a, b) in enumerate(zip(alpha, beta)):
        m = m.with_block(0, 2 + 2 * j, _combination(backend, I=-a, R=b))
        m = m.with_block(2 + 2 * j, last, _combination(backend, I=a, R=b))
    m = m.with_block(0, last, _combination(backend, I=-norm2 * half, R=gamma))
    return _check_hermitian_unipotent(m, n)


def su_horocyclic_U(params: UParams, n: int, backend: Backend | str = Backend.EXACT) -> Mat:
    """
        [ I   −conj(F)ᵀ   q I + bR + cT + dP ]
        [ 0   I           F                  ]
        [ 0   0           I                  ]

    with F = u⊗I + v⊗R + w⊗T + z⊗P and q = ½(−|u|² − |v|² + |w|² + |z|²).
    """
    backend = Backend.parse(backend)
    u, v, w, z = (_vector(getattr(params, name), n - 2, name, backend) for name in "uvwz")
    zero = coerce(0, backend)
    half = Fraction(1, 2) if backend is Backend.EXACT else 0.5
    q = half * (sum((x * x for x in w + z), zero) - sum((x * x for x in u + v), zero))
    last = 2 * (n - 1)
    m = Mat.identity(2 * n, backend)
    for j in range(n - 2):
        m = m.with_block(0, 2 + 2 * j, _combination(backend, I=-u[j], R=v[j], T=w[j], P=z[j]))
        m = m.with_block(2 + 2 * j, last, _combination(backend, I=u[j], R=v[j], T=w[j], P=z[j]))
    m = m.with_block(0, last, _combination(backend, I=q, R=params.b, T=params.c, P=params.d))
    return _check_hermitian_unipotent(m, n)

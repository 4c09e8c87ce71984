"""
Θ-flags, antipodality, horocyclic subgroups and the inversion map.

A flag is stored as one 2n x k_max matrix whose first k columns span the
k-dimensional component. Bases are kept in a nested reduced echelon form, so
two flags are equal exactly when their bases are equal.

Symplectic Θ ⊂ {1..n} describes isotropic flags. Linear Θ (the SL-type
flags of F_{2,2n−2}) allows dimensions up to 2n−1 and carries no form.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .config import ANTIPODAL_FLOAT_TOL, FLOAT_REL_TOL
from .errors import FlagError, MatrixShapeError, NotAntipodalError, NotSymplecticError
from .matrices import Mat, nilpotent_exp, rref
from .scalars import Backend, coerce, exact_sign
from .symplectic import SymplecticForm, antiprincipal_minor, is_symplectic, standard_J
from .utils import derive_seed


@dataclass(frozen=True)
class ThetaSet:
    n: int
    members: tuple[int, ...]
    linear: bool = False

    def __post_init__(self):
        members = tuple(self.members)
        if self.n < 1:
            raise FlagError(f"n must be positive, got {self.n}")
        if not members:
            raise FlagError("Theta must be non-empty")
        if any(b <= a for a, b in zip(members, members[1:])):
            raise FlagError(f"Theta members must be strictly increasing: {list(members)}")
        upper = 2 * self.n - 1 if self.linear else self.n
        if members[0] < 1 or members[-1] > upper:
            raise FlagError(f"Theta {list(members)} is not inside 1..{upper}")
        object.__setattr__(self, "members", members)

    @classmethod
    def parse(cls, n: int, text: str) -> "ThetaSet":
        try:
            members = tuple(sorted({int(part) for part in text.split(",") if part.strip()}))
        except ValueError:
            raise FlagError(f"Theta must be a comma separated list of integers, got {text!r}") from None
        return cls(n, members)

    @classmethod
    def full(cls, n: int) -> "ThetaSet":
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def sl_type(cls, n: int) -> "ThetaSet":
        """Dimensions {2, 2n−2} of F_{2,2n−2} (a single 2 when n = 2)."""
        if n < 2:
            raise FlagError(f"F_(2,2n-2) needs n >= 2, got {n}")
        return cls(n, tuple(sorted({2, 2 * n - 2})), linear=True)

    @property
    def k_max(self) -> int:
        return self.members[-1]

    @property
    def dim(self) -> int:
        return 2 * self.n

    def boundaries(self) -> list[int]:
        size = self.dim
        return sorted({0, size} | set(self.members) | {size - k for k in self.members})

    def segment_of(self) -> list[int]:
        """Segment index of every coordinate for the block structure of U_Θ."""
        bounds = self.boundaries()
        out = []
        for s, (lo, hi) in enumerate(zip(bounds, bounds[1:])):
            out.extend([s] * (hi - lo))
        return out

    def issubset(self, other: "ThetaSet") -> bool:
        return self.n == other.n and self.linear == other.linear and set(self.members) <= set(other.members)

    def to_dict(self) -> dict:
        return {"n": self.n, "theta": list(self.members), "kind": "linear" if self.linear else "isotropic"}


def theta_even(n: int) -> ThetaSet:
    """The even integers of 1..n."""
    if n < 2:
        raise FlagError(f"No even members below n={n}")
    return ThetaSet(n, tuple(range(2, n + 1, 2)))


def _canonical_basis(basis: Mat, dims: Sequence[int]) -> Mat:
    """
    Nested reduced echelon form: each new segment is first cleared at the pivot
    columns of the earlier segments, then row reduced on its own.
    """
    vectors = basis.T
    rows: list[np.ndarray] = []
    pivots: list[int] = []
    previous = 0
    for d in dims:
        segment = vectors[previous:d, :].data.copy()
        for row_vec, p in zip(rows, pivots):
            for i in range(segment.shape[0]):
                coefficient = segment[i, p]
                if coefficient != 0:
                    segment[i, :] = segment[i, :] - coefficient * row_vec
        reduced, new_pivots = rref(Mat._wrap(segment, basis.backend))
        if len(new_pivots) != d - previous:
            raise FlagError(f"Flag basis is rank deficient in dimensions {previous + 1}..{d}")
        for i, p in enumerate(new_pivots):
            rows.append(reduced.data[i, :].copy())
            pivots.append(p)
        previous = d
    return Mat._wrap(np.array(rows, dtype=basis.data.dtype).reshape(len(rows), basis.rows), basis.backend).T


@dataclass(frozen=True, eq=False)
class ThetaFlag:
    theta: ThetaSet
    basis: Mat
    form: SymplecticForm | None = None

    @classmethod
    def from_basis(cls, theta: ThetaSet, basis: Mat, form: SymplecticForm | None = None) -> "ThetaFlag":
        """Canonicalize and validate; symplectic Θ defaults to the standard form."""
        if basis.rows != theta.dim or basis.cols < theta.k_max:
            raise MatrixShapeError(f"Flag basis must be {theta.dim} x >= {theta.k_max}, got {basis.shape}")
        if not theta.linear and form is None:
            form = standard_J(theta.n)
        if form is not None and theta.linear:
            raise FlagError("Linear flags of F_(2,2n-2) carry no form")
        canonical = _canonical_basis(basis[:, :theta.k_max], theta.members)
        if form is not None and not form.is_isotropic(canonical):
            raise FlagError(f"Flag is not isotropic for the {form.kind.value} form")
        return cls(theta, canonical, form)

    @property
    def backend(self) -> Backend:
        return self.basis.backend

    def subspace(self, k: int) -> Mat:
        if k not in self.theta.members:
            raise FlagError(f"Dimension {k} is not part of Theta {list(self.theta.members)}")
        return self.basis[:, :k]

    def transformed(self, g: Mat) -> "ThetaFlag":
        return ThetaFlag.from_basis(self.theta, g @ self.basis, self.form)

    def to_backend(self, backend: Backend | str) -> "ThetaFlag":
        return ThetaFlag.from_basis(self.theta, self.basis.to_backend(backend), self.form)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThetaFlag):
            return NotImplemented
        return self.theta == other.theta and self.basis.equals(other.basis)

    __hash__ = None

    def to_dict(self) -> dict:
        return {**self.theta.to_dict(), "basis": self.basis.to_dict()}


def standard_flag(theta: ThetaSet, form: SymplecticForm | None = None, backend: Backend | str = Backend.EXACT) -> ThetaFlag:
    """τ_Θ: V^i = span(e_1, ..., e_i)."""
    identity = Mat.identity(theta.dim, backend)
    return ThetaFlag.from_basis(theta, identity[:, :theta.k_max], form)


def standard_opp_flag(theta: ThetaSet, form: SymplecticForm | None = None, backend: Backend | str = Backend.EXACT) -> ThetaFlag:
    """τ_Θ^opp: V^i = span(e_2n, ..., e_{2n−i+1})."""
    identity = Mat.identity(theta.dim, backend)
    columns = list(range(theta.dim - 1, theta.dim - 1 - theta.k_max, -1))
    return ThetaFlag.from_basis(theta, identity[:, columns], form)


def _transverse(v: Mat, w: Mat, abs_tol: float | None) -> bool:
    """Whether span(v) ⊕ span(w) is the whole space (the column counts add up)."""
    if v.cols + w.cols != v.rows:
        return False
    if v.backend is Backend.EXACT and w.backend is Backend.EXACT:
        return Mat.hstack([v, w]).det() != 0
    qv = np.linalg.qr(v.to_float().data)[0]
    qw = np.linalg.qr(w.to_float().data)[0]
    tol = ANTIPODAL_FLOAT_TOL if abs_tol is None else abs_tol
    return abs(np.linalg.det(np.hstack([qv, qw]))) > tol


def components_transverse(f: ThetaFlag, i: int, g: ThetaFlag, j: int, abs_tol: float | None = None) -> bool:
    """V_f^i ⊕ V_g^j = R^{2n}."""
    v, w = f.subspace(i), g.subspace(j)
    if v.backend is not w.backend:
        v, w = v.to_float(), w.to_float()
    return _transverse(v, w, abs_tol)


def are_antipodal(f: ThetaFlag, g: ThetaFlag, abs_tol: float | None = None) -> bool:
    """
    Symplectic Θ: V^i ⊕ (W^i)^⊥ = R^{2n} for every i ∈ Θ.
    Linear Θ: V^i ⊕ W^{2n−i} = R^{2n} for every i ∈ Θ.
    """
    if f.theta != g.theta:
        raise FlagError(f"Cannot compare flags of types {f.theta.to_dict()} and {g.theta.to_dict()}")
    size = f.theta.dim
    for i in f.theta.members:
        if f.theta.linear:
            if size - i not in g.theta.members:
                raise FlagError(f"Linear Theta {list(f.theta.members)} is not closed under i -> 2n-i")
            if not components_transverse(f, i, g, size - i, abs_tol):
                return False
            continue
        v = f.subspace(i)
        complement = f.form.perp(g.subspace(i))
        if v.backend is not complement.backend:
            v, complement = v.to_float(), complement.to_float()
        if not _transverse(v, complement, abs_tol):
            return False
    return True


def horocyclic_coordinates(theta: ThetaSet) -> list[tuple[int, int]]:
    """
    Free entries (0-based) of the horocyclic parameterization.

    Linear Θ: every entry above the block diagonal. Symplectic Θ: one entry
    of each anti-transpose pair (a, b) ~ (2n−1−b, 2n−1−a) of 𝔲_Θ.
    """
    seg = theta.segment_of()
    size = theta.dim
    positions = [(a, b) for a in range(size) for b in range(size) if seg[a] < seg[b]]
    if theta.linear:
        return positions
    return [(a, b) for a, b in positions if (a, b) <= (size - 1 - b, size - 1 - a)]


def _check_unipotent_structure(theta: ThetaSet, m: Mat):
    seg = theta.segment_of()
    size = theta.dim
    tol = FLOAT_REL_TOL * max(1.0, m.max_abs()) if m.backend is Backend.FLOAT else 0
    for a in range(size):
        for b in range(size):
            if seg[a] < seg[b]:
                continue
            expected = 1 if a == b else 0
            value = m.data[a, b]
            if (value != expected) if m.backend is Backend.EXACT else abs(value - expected) > tol:
                raise FlagError(f"Entry ({a + 1}, {b + 1}) breaks the block unipotent structure of U_Theta")


@dataclass(frozen=True, eq=False)
class UnipotentElement:
    theta: ThetaSet
    mat: Mat

    def __post_init__(self):
        if self.mat.shape != (self.theta.dim, self.theta.dim):
            raise MatrixShapeError(f"Expected a {self.theta.dim}x{self.theta.dim} matrix, got {self.mat.shape}")
        _check_unipotent_structure(self.theta, self.mat)
        if not self.theta.linear and not is_symplectic(self.mat, standard_J(self.theta.n)):
            raise NotSymplecticError("Horocyclic element does not preserve the symplectic form")

    @property
    def backend(self) -> Backend:
        return self.mat.backend

    def __matmul__(self, other: "UnipotentElement") -> "UnipotentElement":
        return UnipotentElement(self.theta, self.mat @ other.mat)

    def inverse(self) -> "UnipotentElement":
        """(I + N)⁻¹ = Σ (−N)^k."""
        size = self.theta.dim
        nil = self.mat - Mat.identity(size, self.backend)
        result = Mat.identity(size, self.backend)
        term = result
        for _ in range(size):
            term = -(term @ nil)
            if term.is_zero():
                break
            result = result + term
        return UnipotentElement(self.theta, result)

    def act(self, flag: ThetaFlag) -> ThetaFlag:
        return flag.transformed(self.mat)


def horocyclic_element(
    theta: ThetaSet,
    params: Sequence | Mapping[tuple[int, int], object] = (),
    backend: Backend | str = Backend.EXACT,
) -> UnipotentElement:
    """
    Element of U_Θ from its free coordinates (see `horocyclic_coordinates`).

    Missing parameters are zero. Linear Θ takes the entries directly; symplectic
    Θ takes coordinates of 𝔲_Θ and returns the exponential, so the dependent
    entries are computed rather than supplied.
    """
    backend = Backend.parse(backend)
    coords = horocyclic_coordinates(theta)
    if isinstance(params, Mapping):
        unknown = [key for key in params if tuple(key) not in coords]
        if unknown:
            raise MatrixShapeError(f"Positions {unknown} are not free coordinates of U_Theta")
        values = {tuple(key): value for key, value in params.items()}
    else:
        params = list(params)
        if params and len(params) != len(coords):
            raise MatrixShapeError(f"Expected {len(coords)} parameters, got {len(params)}")
        values = dict(zip(coords, params))
    size = theta.dim
    updates = {}
    for (a, b), value in values.items():
        value = coerce(value, backend)
        updates[(a, b)] = value
        if not theta.linear:
            partner = (size - 1 - b, size - 1 - a)
            if partner != (a, b):
                updates[partner] = value * (-1) ** (a + b + 1)
    generator = Mat.zeros(size, size, backend).replace(updates)
    if theta.linear:
        return UnipotentElement(theta, Mat.identity(size, backend) + generator)
    return UnipotentElement(theta, nilpotent_exp(generator))


def random_unipotent(theta: ThetaSet, rng: random.Random, values: Sequence = (-2, -1, 0, 1, 2), backend: Backend | str = Backend.EXACT) -> UnipotentElement:
    """Horocyclic element with every free coordinate drawn from `values`."""
    return horocyclic_element(theta, [rng.choice(values) for _ in horocyclic_coordinates(theta)], backend)


def _invertible(m: Mat) -> bool:
    if m.backend is Backend.EXACT:
        return m.det() != 0
    s = np.linalg.svd(m.data, compute_uv=False)
    return s.size > 0 and s[-1] > FLOAT_REL_TOL * max(1.0, s[0])


def solve_unipotent(tau: ThetaFlag, theta: ThetaSet | None = None) -> UnipotentElement:
    """The unique u ∈ U_Θ with u·τ_Θ^opp = tau."""
    theta = theta or tau.theta
    if tau.theta != theta:
        raise FlagError(f"Flag type {tau.theta.to_dict()} does not match {theta.to_dict()}")
    size = theta.dim
    backend = tau.backend
    basis = tau.basis
    u = Mat.identity(size, backend).data.copy()

    # columns in the last k_max positions come from the components of tau,
    # normalized so that their bottom k rows form the identity
    done = 0
    for k in theta.members:
        component = basis[:, :k]
        bottom = component[size - k:, :]
        if not _invertible(bottom):
            raise NotAntipodalError(f"Flag is not antipodal to the standard flag (dimension {k})")
        normalized = component @ bottom.inverse()
        for c in range(size - k, size - done):
            u[:, c] = normalized.data[:, c - (size - k)]
        done = k

    if not theta.linear:
        # the remaining columns are fixed by symplecticity: (e_c + x)ᵀ J Q = J[c, bottom]
        k_max = theta.k_max
        gram = standard_J(theta.n).gram_for(backend)
        q = Mat._wrap(u[:, size - k_max:].copy(), backend)
        jq = gram @ q
        top = jq[:k_max, :]
        for c in range(size - k_max):
            rhs = Mat._wrap(
                np.array([[gram.data[c, size - k_max + d] - jq.data[c, d]] for d in range(k_max)], dtype=u.dtype),
                backend,
            )
            x = top.T.solve(rhs)
            column = Mat.identity(size, backend).data[:, c].copy()
            column[:k_max] = column[:k_max] + x.data[:, 0]
            u[:, c] = column

    try:
        element = UnipotentElement(theta, Mat._wrap(u, backend))
    except NotSymplecticError:
        raise FlagError("Flag is not isotropic, no symplectic horocyclic element reaches it") from None
    if element.act(standard_opp_flag(theta, tau.form, backend)) != tau:
        raise FlagError("Horocyclic solve did not reproduce the flag")
    return element


def inversion(tau: ThetaFlag, theta: ThetaSet | None = None) -> ThetaFlag:
    """ι(u·τ_Θ^opp) = u⁻¹·τ_Θ^opp."""
    u = solve_unipotent(tau, theta)
    return u.inverse().act(standard_opp_flag(tau.theta, tau.form, tau.backend))


def is_doubly_transverse(tau: ThetaFlag) -> bool:
    """tau ∈ C(τ_Θ) ∩ C(τ_Θ^opp)."""
    return are_antipodal(tau, standard_flag(tau.theta, tau.form, tau.backend)) and are_antipodal(
        tau, standard_opp_flag(tau.theta, tau.form, tau.backend)
    )


def minor_criterion(u: UnipotentElement) -> bool:
    """∀k ∈ Θ: p_k(u) ≠ 0."""
    return all(antiprincipal_minor(u.mat, k) != 0 for k in u.theta.members)


def project_flag(tau: ThetaFlag, theta_sub: ThetaSet) -> ThetaFlag:
    """π: F_Θ → F_Θ′, forgetting the components outside Θ′."""
    if not theta_sub.issubset(tau.theta):
        raise FlagError(f"{list(theta_sub.members)} is not a subset of {list(tau.theta.members)}")
    return ThetaFlag.from_basis(theta_sub, tau.basis[:, :theta_sub.k_max], tau.form)


def _same_span(a: Mat, b: Mat) -> bool:
    rank = a.rank()
    return rank == b.rank() == Mat.hstack([a, b]).rank()


def iso_component(flag: ThetaFlag, form: SymplecticForm | None = None) -> ThetaFlag:
    """The isotropic 2-plane of a linear {2, 2n−2} flag of the form (V ⊂ V^⊥)."""
    n = flag.theta.n
    if flag.theta != ThetaSet.sl_type(n):
        raise FlagError("Expected a flag of F_(2,2n-2)")
    form = form or standard_J(n)
    plane = flag.subspace(2)
    if not _same_span(flag.subspace(2 * n - 2), form.perp(plane)):
        raise FlagError("The (2n-2)-component is not the perpendicular of the 2-component")
    return ThetaFlag.from_basis(ThetaSet(n, (2,)), plane, form)


def linear_flag_from_isotropic(flag: ThetaFlag) -> ThetaFlag:
    """Iso_2 → F_{2,2n−2}, V ↦ (V ⊂ V^⊥)."""
    n = flag.theta.n
    plane = flag.subspace(2)
    current = plane
    perp = flag.form.perp(plane)
    for j in range(perp.cols):
        candidate = Mat.hstack([current, perp[:, j:j + 1]])
        if candidate.rank() > current.rank():
            current = candidate
    return ThetaFlag.from_basis(ThetaSet.sl_type(n), current)


@dataclass(frozen=True)
class SignSample:
    index: int
    signs: dict[int, tuple[int, int]]

    def flips(self, k: int) -> bool:
        forward, backward = self.signs[k]
        return forward == -backward != 0

    def persists(self, k: int) -> bool:
        forward, backward = self.signs[k]
        return forward == backward != 0


@dataclass(frozen=True)
class PropertyICertificate:
    theta: ThetaSet
    samples: tuple[SignSample, ...] = field(default_factory=tuple)

    @property
    def odd_members(self) -> tuple[int, ...]:
        return tuple(k for k in self.theta.members if k % 2)

    @property
    def counterexamples(self) -> list[tuple[int, int]]:
        """(sample index, k) pairs where an odd k kept its sign or an even k lost it."""
        bad = []
        for sample in self.samples:
            for k in self.theta.members:
                ok = sample.flips(k) if k % 2 else sample.persists(k)
                if not ok:
                    bad.append((sample.index, k))
        return bad

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    @property
    def obstruction(self) -> bool:
        """Property (I) follows from the sign obstruction: some odd k flips on every sample."""
        return self.passed and bool(self.odd_members)

    @property
    def note(self) -> str:
        scope = (
            "Certifies the minor-sign obstruction only; "
            "connected components of C(tau) and C(tau_opp) are not enumerated."
        )
        if self.odd_members:
            return f"Theta contains an odd integer {list(self.odd_members)}: p_k flips sign under inversion. {scope}"
        return f"Theta is even-only: every p_k keeps its sign under inversion (sign persistence), no obstruction. {scope}"

    def to_dict(self) -> dict:
        return {
            **self.theta.to_dict(),
            "samples": len(self.samples),
            "passed": self.passed,
            "obstruction": self.obstruction,
            "counterexamples": [list(c) for c in self.counterexamples],
            "note": self.note,
        }


def sample_sign_pattern(theta: ThetaSet, rng: random.Random, index: int = 0, max_attempts: int = 1000) -> SignSample:
    """Signs of p_k(u), p_k(u⁻¹) for one random doubly transverse u ∈ U_Θ."""
    for _ in range(max_attempts):
        u = random_unipotent(theta, rng, values=(-2, -1, Fraction(-1, 2), Fraction(1, 2), 1, 2))
        minors = {k: antiprincipal_minor(u.mat, k) for k in theta.members}
        if all(m != 0 for m in minors.values()):
            inverse = u.inverse().mat
            return SignSample(index, {k: (exact_sign(minors[k]), exact_sign(antiprincipal_minor(inverse, k))) for k in theta.members})
    raise FlagError(f"No doubly transverse sample found in {max_attempts} attempts")


def property_I_certificate(theta: ThetaSet, n: int | None = None, samples: int = 100, seed: int = 0) -> PropertyICertificate:
    """Sample doubly transverse u ∈ U_Θ and record the antiprincipal minor signs of u and u⁻¹."""
    if n is not None and n != theta.n:
        raise FlagError(f"Theta is for n={theta.n}, not n={n}")
    records = tuple(sample_sign_pattern(theta, random.Random(derive_seed(seed, i)), i) for i in range(samples))
    return PropertyICertificate(theta, records)

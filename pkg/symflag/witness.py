"""
Witnesses of non-antipodality for the two limit sets.

SL(2,C): for g in the horocyclic group of τ₊, find (g′, α, β) with g′ a small
perturbation of g and det (g′ exp(αX + βY))_{1n} = 0. The T and P coefficients
of that block are polynomials whose common real root is found by elimination
(resultant in β, Sturm isolation in α, back substitution, Newton polish); a
ray from the root then brackets a zero of the determinant.

SU(n−1,1): the witness is in closed form.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np
import sympy

from .blocks import Block2, basis_matrix, block2_decompose
from .config import (
    BISECTION_STEPS,
    FLOAT_REL_TOL,
    JITTER_RETRIES,
    KEY_LEMMA_FLOAT_TOL,
    NEWTON_STEPS,
    RAY_DOUBLINGS,
    ROOT_ISOLATION_WIDTH,
    WITNESS_EPSILON,
    WITNESS_TOL,
)
from .errors import BracketingError, FlagError, NotSymplecticError, RepresentationError, RootNotFoundError
from .flags import (
    ThetaFlag,
    ThetaSet,
    UnipotentElement,
    are_antipodal,
    components_transverse,
    standard_opp_flag,
)
from .matrices import Mat
from .polynomials import ALPHA, BETA, BivarPoly
from .representations import (
    Sl2Triple,
    UParams,
    UPrimeParams,
    su_horocyclic_U,
    su_horocyclic_U_prime,
    top_right_degree,
)
from .scalars import Backend, coerce, exact_sqrt, format_scalar
from .symplectic import FormDirection, change_of_form, standard_J


class Verdict(str, Enum):
    WITNESS_FOUND = "witness_found"
    DEGENERATE = "degenerate_perturbed_retry"
    FAILED = "failed"


@dataclass(frozen=True)
class BlockPolynomials:
    """The (I, R, T, P) coefficients of a 2x2 block as polynomials in (α, β)."""
    f_I: BivarPoly
    f_R: BivarPoly
    f_T: BivarPoly
    f_P: BivarPoly

    def __iter__(self):
        return iter((self.f_I, self.f_R, self.f_T, self.f_P))

    def determinant(self) -> BivarPoly:
        """f_I² + f_R² − f_T² − f_P²."""
        return self.f_I * self.f_I + self.f_R * self.f_R - self.f_T * self.f_T - self.f_P * self.f_P

    def evaluate(self, alpha, beta) -> Block2:
        i, r, t, p = (f(alpha, beta) for f in self)
        return Block2(i, r, t, p, self.f_T.backend)

    def shifted(self, delta_t, delta_p) -> "BlockPolynomials":
        return BlockPolynomials(self.f_I, self.f_R, self.f_T.shift_constant(delta_t), self.f_P.shift_constant(delta_p))

    def to_dict(self) -> dict:
        return {name: f.to_dict() for name, f in zip(("f_I", "f_R", "f_T", "f_P"), self)}


def horocyclic_from_matrix(g: Mat, n: int) -> UnipotentElement:
    """Read g as an element of the horocyclic group of τ₊: isotropic {2} when symplectic, else SL-type."""
    try:
        return UnipotentElement(ThetaSet(n, (2,)), g)
    except (FlagError, NotSymplecticError):
        pass
    try:
        return UnipotentElement(ThetaSet.sl_type(n), g)
    except FlagError as e:
        raise FlagError(f"g is not in the horocyclic group of tau_+: {e}") from None


def _as_horocyclic(g, n: int) -> UnipotentElement:
    if isinstance(g, UnipotentElement):
        if g.theta not in (ThetaSet(n, (2,)), ThetaSet.sl_type(n)):
            raise FlagError(f"g lies in U_Theta for {g.theta.to_dict()}, not in the horocyclic group of tau_+")
        return g
    return horocyclic_from_matrix(g, n)


def extract_fT_fP(g, triple: Sl2Triple) -> BlockPolynomials:
    """
    Expand Z_{1n} = Σ_j g_{1j} exp(αX + βY)_{jn} over the monomials α^i β^j and
    decompose every coefficient block over (I, R, T, P).
    """
    element = _as_horocyclic(g, triple.n)
    backend = element.backend
    top_rows = element.mat[0:2, :]
    last = 2 * (triple.n - 1)
    parts = [{}, {}, {}, {}]
    for key, coefficient in triple.exp_coefficients_for(backend).items():
        block = block2_decompose(top_rows @ coefficient[:, last:])
        for part, value in zip(parts, block.coefficients()):
            part[key] = value
    return BlockPolynomials(*(BivarPoly(part, backend) for part in parts))


def leading_forms_match(polys: BlockPolynomials, triple: Sl2Triple) -> bool:
    """The degree-d parts of f_T and f_P equal those of the bare exponential, and f_I, f_R have lower degree."""
    d = top_right_degree(triple.n)
    bare = extract_fT_fP(UnipotentElement(ThetaSet.sl_type(triple.n), Mat.identity(2 * triple.n, polys.f_T.backend)), triple)
    return (
        polys.f_T.homogeneous_part(d).equals(bare.f_T.homogeneous_part(d))
        and polys.f_P.homogeneous_part(d).equals(bare.f_P.homogeneous_part(d))
        and polys.f_I.degree < d
        and polys.f_R.degree < d
    )


def _to_fraction(c) -> Fraction:
    r = sympy.Rational(c)
    return Fraction(int(r.p), int(r.q))


def _horner(coeffs: list[Fraction], x: Fraction) -> Fraction:
    value = Fraction(0)
    for c in coeffs:
        value = value * x + c
    return value


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_variations(sequence: list[list[Fraction]], x: Fraction) -> int:
    signs = [s for s in (_sign(_horner(c, x)) for c in sequence) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def resultant_in_alpha(f_t: BivarPoly, f_p: BivarPoly) -> sympy.Poly:
    """Res_β(f_T, f_P) with float coefficients converted to exact binary rationals."""
    res = sympy.resultant(f_t.to_sympy(), f_p.to_sympy(), BETA)
    return sympy.Poly(sympy.expand(res), ALPHA, domain="QQ")


def isolate_real_roots(poly: sympy.Poly, width: float = ROOT_ISOLATION_WIDTH) -> list[tuple[Fraction, Fraction]]:
    """
    Disjoint intervals (lo, hi], one per distinct real root, each of width at
    most `width` (an exact root comes back as (r, r)).

    Sturm sequence of the squarefree part with bisection from the Cauchy bound.
    """
    if poly.is_zero or poly.degree() <= 0:
        return []
    p = poly.sqf_part()
    sequence = [[_to_fraction(c) for c in q.all_coeffs()] for q in sympy.sturm(p)]
    coeffs = sequence[0]
    bound = 1 + max((abs(c / coeffs[0]) for c in coeffs[1:]), default=Fraction(0))
    width_q = Fraction(width)

    def count(a: Fraction, b: Fraction) -> int:
        return _sign_variations(sequence, a) - _sign_variations(sequence, b)

    def refine(a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
        if _horner(coeffs, b) == 0:
            return b, b
        while b - a > width_q:
            m = (a + b) / 2
            pm = _horner(coeffs, m)
            if pm == 0:
                return m, m
            pa = _horner(coeffs, a)
            left = count(a, m) == 1 if pa == 0 else _sign(pa) != _sign(pm)
            if left:
                b = m
            else:
                a = m
        return a, b

    isolated = []
    pending = [(-bound, bound)]
    while pending:
        a, b = pending.pop()
        k = count(a, b)
        if k == 0:
            continue
        if k == 1:
            isolated.append(refine(a, b))
            continue
        m = (a + b) / 2
        pending.extend([(a, m), (m, b)])
    return sorted(isolated)


def _beta_candidates(f_t: BivarPoly, f_p: BivarPoly, alpha: float) -> list[float]:
    for poly in (f_t, f_p):
        coeffs = poly.beta_coefficients(alpha)
        scale = max(1.0, float(np.abs(coeffs).max(initial=0.0)))
        significant = np.nonzero(np.abs(coeffs) > FLOAT_REL_TOL * scale)[0]
        if significant.size == 0:
            continue
        trimmed = coeffs[significant[0]:]
        if trimmed.size == 1:
            return []
        roots = np.roots(trimmed)
        return [float(r.real) for r in roots if abs(r.imag) <= 1e-6 * (1.0 + abs(r))]
    return [0.0]


def _newton(f_t: BivarPoly, f_p: BivarPoly, alpha: float, beta: float, steps: int = NEWTON_STEPS) -> tuple[float, float]:
    jacobian = [[f.derivative(v) for v in ("alpha", "beta")] for f in (f_t, f_p)]
    for _ in range(steps):
        value = np.array([f_t(alpha, beta), f_p(alpha, beta)], dtype=float)
        jac = np.array([[d(alpha, beta) for d in row] for row in jacobian], dtype=float)
        try:
            step = np.linalg.solve(jac, value)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        alpha, beta = alpha - step[0], beta - step[1]
        if math.hypot(*step) <= 1e-15 * (1.0 + math.hypot(alpha, beta)):
            break
    return alpha, beta


def _coefficient_scale(*polys: BivarPoly) -> float:
    return 1.0 + max((abs(float(c)) for p in polys for c in p.coeffs.values()), default=0.0)


@dataclass(frozen=True)
class RootResult:
    alpha: float
    beta: float
    residual: float
    delta_t: float = 0.0
    delta_p: float = 0.0
    attempts: int = 1
    resultant_degree: int = 0
    bezout_count: int = 0
    real_roots: int = 0
    degenerate: bool = False

    @property
    def perturbation_norm(self) -> float:
        """Frobenius norm of δ_T·T + δ_P·P."""
        return math.sqrt(2.0) * math.hypot(self.delta_t, self.delta_p)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "residual": self.residual,
            "attempts": self.attempts,
            "resultant_degree": self.resultant_degree,
            "bezout_count": self.bezout_count,
            "real_roots": self.real_roots,
            "degenerate": self.degenerate,
        }


def _solve_once(f_t: BivarPoly, f_p: BivarPoly, d: int) -> tuple[RootResult | None, str, int, int]:
    """One elimination pass; returns (root or None, degeneracy reason, resultant degree, real roots)."""
    resultant = resultant_in_alpha(f_t, f_p)
    if resultant.is_zero:
        return None, "zero resultant", -1, 0
    degree = resultant.degree()
    intervals = isolate_real_roots(resultant)
    if not intervals:
        return None, "no real root", degree, 0
    tolerance = FLOAT_REL_TOL * _coefficient_scale(f_t, f_p)
    best = None
    for lo, hi in intervals:
        alpha = float((lo + hi) / 2)
        for beta in _beta_candidates(f_t, f_p, alpha):
            a, b = _newton(f_t, f_p, alpha, beta)
            residual = math.hypot(f_t(a, b), f_p(a, b))
            if best is None or residual < best.residual:
                best = RootResult(a, b, residual, resultant_degree=degree, bezout_count=d * d, real_roots=len(intervals))
    if best is None or best.residual > tolerance:
        return None, "no real pair", degree, len(intervals)
    reason = "degree deficit" if degree < d * d else ""
    return best, reason, degree, len(intervals)


def common_real_root(
    f_t: BivarPoly,
    f_p: BivarPoly,
    epsilon: float = WITNESS_EPSILON,
    seed: int = 0,
    retries: int = JITTER_RETRIES,
) -> RootResult:
    """
    A common real root of f_T and f_P.

    When elimination degenerates (zero resultant, a resultant of degree below
    d², no real root) the constant terms are jittered by δ ~ U(−ε/2, ε/2) and
    the pass is repeated. A root found only under a degree deficit is returned
    with `degenerate` set.
    """
    d = max(f_t.degree, f_p.degree)
    if d < 1:
        raise ValueError("common_real_root needs polynomials of degree >= 1")
    f_t, f_p = f_t.to_float(), f_p.to_float()
    rng = np.random.default_rng(seed)
    delta_t = delta_p = 0.0
    fallback = None
    reason = ""
    for attempt in range(1, retries + 2):
        root, reason, _, _ = _solve_once(f_t.shift_constant(delta_t), f_p.shift_constant(delta_p), d)
        if root is not None:
            root = RootResult(
                root.alpha, root.beta, root.residual, delta_t, delta_p, attempt,
                root.resultant_degree, root.bezout_count, root.real_roots, degenerate=bool(reason),
            )
            if not reason:
                return root
            fallback = fallback or root
        delta_t, delta_p = (float(x) for x in rng.uniform(-epsilon / 2, epsilon / 2, 2))
    if fallback is not None:
        return fallback
    raise RootNotFoundError(f"No common real root of f_T, f_P after {retries} perturbed retries ({reason})")


@dataclass
class WitnessReport:
    kind: str
    n: int
    verdict: Verdict
    witness: dict = field(default_factory=dict)
    residual: str = ""
    perturbation: dict = field(default_factory=dict)
    trace: dict = field(default_factory=dict)
    confirmed: bool | None = None
    note: str = ""
    input: dict = field(default_factory=dict)
    locus: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.WITNESS_FOUND

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "n": self.n,
            "verdict": self.verdict.value,
            "witness": self.witness,
            "residual": self.residual,
            "perturbation": self.perturbation,
            "trace": self.trace,
            "confirmed_non_antipodal": self.confirmed,
            "input": self.input,
        }
        if self.note:
            out["note"] = self.note
        return out


def _perturb(element: UnipotentElement, delta_t: float, delta_p: float) -> UnipotentElement:
    if delta_t == 0 and delta_p == 0:
        return element
    n = element.theta.n
    shift = basis_matrix("T", Backend.FLOAT) * delta_t + basis_matrix("P", Backend.FLOAT) * delta_p
    top_right = element.mat.block(0, n - 1) + shift
    return UnipotentElement(element.theta, element.mat.with_block(0, 2 * (n - 1), top_right))


def block_determinant(g: Mat, triple: Sl2Triple, alpha, beta) -> float:
    """det (g exp(αX + βY))_{1n}, computed from the matrix product."""
    z = g @ triple.exp(alpha, beta, g.backend)
    return z.block(0, triple.n - 1).det()


def ray_search(phi, tol: float) -> tuple[float, int, int]:
    """
    Radius r ≥ 0 with |phi(r)| ≤ tol, for phi ≥ 0 at 0 and negative far out.
    Returns (r, doublings, bisection steps).
    """
    value = phi(0.0)
    if abs(value) <= tol:
        return 0.0, 0, 0
    if value < 0:
        raise BracketingError(f"det is negative ({value:.3e}) at the common root")
    lo, hi = 0.0, 1.0
    doublings = 0
    value = phi(hi)
    while value > tol:
        doublings += 1
        if doublings > RAY_DOUBLINGS:
            raise BracketingError(f"det stays positive along the ray after {RAY_DOUBLINGS} doublings")
        lo, hi = hi, hi * 2
        value = phi(hi)
    radius, steps = hi, 0
    # phi(lo) > tol, phi(hi) < -tol
    target = tol / 4
    while abs(value) > target and steps < BISECTION_STEPS:
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        steps += 1
        value = phi(mid)
        radius = mid
        if value > 0:
            lo = mid
        else:
            hi = mid
    return radius, doublings, steps


def sl2c_witness(
    g,
    triple: Sl2Triple,
    epsilon: float = WITNESS_EPSILON,
    tol: float = WITNESS_TOL,
    seed: int = 0,
    record_locus: bool = False,
) -> WitnessReport:
    """
    (g′, α, β) with ‖g′ − g‖ ≤ ε and |det (g′ exp(αX + βY))_{1n}| ≤ tol.

    The determinant is ≥ 0 at a common root of f_T, f_P and negative far out,
    so the ray from the root in direction (1, 1)/√2 brackets a zero.
    """
    if epsilon <= 0 or tol <= 0:
        raise ValueError(f"epsilon and tol must be positive, got {epsilon}, {tol}")
    element = _as_horocyclic(g, triple.n)
    element = UnipotentElement(element.theta, element.mat.to_float())
    report = WitnessReport("sl2c", triple.n, Verdict.FAILED, input={"g": element.mat.to_dict()})
    polys = extract_fT_fP(element, triple)
    try:
        root = common_real_root(polys.f_T, polys.f_P, epsilon, seed)
    except RootNotFoundError as e:
        report.note = str(e)
        return report

    perturbed = _perturb(element, root.delta_t, root.delta_p)
    determinant = polys.shifted(root.delta_t, root.delta_p).determinant()
    dx = dy = 1.0 / math.sqrt(2.0)
    base_alpha, base_beta = root.alpha, root.beta
    locus = []

    def phi(r: float) -> float:
        a, b = base_alpha + r * dx, base_beta + r * dy
        value = float(determinant(a, b))
        if record_locus:
            locus.append((a, b, value))
        return value

    try:
        radius, doublings, steps = ray_search(phi, tol)
    except BracketingError as e:
        report.note = str(e)
        report.trace = root.to_dict()
        return report
    alpha, beta = base_alpha + radius * dx, base_beta + radius * dy

    residual = abs(block_determinant(perturbed.mat, triple, alpha, beta))
    theta = element.theta
    tau_minus = standard_opp_flag(theta, backend=Backend.FLOAT)
    confirmed = not are_antipodal(
        tau_minus.transformed(triple.exp(alpha, beta, Backend.FLOAT)),
        perturbed.inverse().act(tau_minus),
        abs_tol=KEY_LEMMA_FLOAT_TOL,
    )
    if residual <= tol and root.perturbation_norm <= epsilon:
        verdict = Verdict.WITNESS_FOUND
    elif root.degenerate:
        verdict = Verdict.DEGENERATE
    else:
        verdict = Verdict.FAILED
    report.verdict = verdict
    report.witness = {"alpha": alpha, "beta": beta}
    report.residual = repr(residual)
    report.perturbation = {"delta_T": root.delta_t, "delta_P": root.delta_p, "norm": root.perturbation_norm}
    report.trace = {**root.to_dict(), "ray_doublings": doublings, "bisection_steps": steps}
    report.confirmed = confirmed
    report.locus = locus
    return report


def su_witness_parameters(params: UParams, n: int, backend: Backend | str = Backend.EXACT) -> UPrimeParams:
    """
    α = w − u and β = z − v kill the I coefficient −½|α+u|² − ½|β+v|² + ½|w|² + ½|z|²
    of (g g′)_{1n}; γ = sqrt(t² + p²) − r₀ then makes det = r² − t² − p² vanish.
    """
    backend = Backend.parse(backend)
    u, v, w, z = ([coerce(x, backend) for x in getattr(params, name)] for name in "uvwz")
    alpha = [wi - ui for wi, ui in zip(w, u)]
    beta = [zi - vi for zi, vi in zip(z, v)]
    dot = lambda x, y: sum((a * b for a, b in zip(x, y)), coerce(0, backend))
    r0 = coerce(params.b, backend) + dot(v, alpha) - dot(u, beta)
    t = coerce(params.c, backend) + dot(w, alpha) + dot(z, beta)
    p = coerce(params.d, backend) + dot(z, alpha) - dot(w, beta)
    root = exact_sqrt(t * t + p * p) if backend is Backend.EXACT else math.sqrt(t * t + p * p)
    return UPrimeParams(tuple(alpha), tuple(beta), root - r0)


def su_witness(params: UParams, n: int, backend: Backend | str = Backend.EXACT, tol: float = WITNESS_TOL) -> WitnessReport:
    """Closed form g′ ∈ U′ with det (g g′)_{1n} = 0, checked again in the standard picture."""
    if n < 3:
        raise ValueError(f"The SU witness needs n >= 3, got {n}")
    backend = Backend.parse(backend)
    g = su_horocyclic_U(params, n, backend)
    prime = su_witness_parameters(params, n, backend)
    product = g @ su_horocyclic_U_prime(prime, n, backend)
    block = block2_decompose(product.block(0, n - 1))
    det = block.determinant()
    if backend is Backend.EXACT:
        residual_ok = det == 0
    else:
        # det is a difference of squares of the block coefficients
        scale = max(1.0, max(abs(c) for c in block.coefficients())) ** 2
        residual_ok = abs(det) <= tol * scale

    theta = ThetaSet(n, (2,))
    standard_picture = change_of_form(product, FormDirection.TO_STANDARD)
    tau_minus = standard_opp_flag(theta, backend=backend)
    moved = ThetaFlag.from_basis(theta, standard_picture @ tau_minus.basis, standard_J(n))
    confirmed = not are_antipodal(moved, tau_minus, abs_tol=None if backend is Backend.EXACT else KEY_LEMMA_FLOAT_TOL)

    return WitnessReport(
        "su",
        n,
        Verdict.WITNESS_FOUND if residual_ok else Verdict.FAILED,
        witness=prime.to_dict(backend),
        residual=format_scalar(abs(det) if backend is Backend.FLOAT else det, backend),
        perturbation={"norm": 0.0},
        trace={"block": block.to_dict()},
        confirmed=confirmed,
        input=params.to_dict(backend),
    )


@dataclass(frozen=True)
class NonMaximalityResult:
    block: Block2
    determinant: object
    transverse: bool
    reverse_determinant: object
    antipodal: bool

    def to_dict(self) -> dict:
        fmt = lambda x: format_scalar(x, self.block.backend)
        return {
            "block": self.block.to_dict(),
            "determinant": fmt(self.determinant),
            "transverse": self.transverse,
            "reverse_determinant": fmt(self.reverse_determinant),
            "antipodal": self.antipodal,
        }


def non_maximality_report(alpha, beta, gamma, n: int, backend: Backend | str = Backend.EXACT) -> NonMaximalityResult:
    """
    For g = [[I, 0, I], [0, I, 0], [0, 0, I]] and g′ ∈ U′, (g⁻¹g′)_{1n} must be
    −½(|α|² + |β|² + 2)I + γR, so the 2-plane of g′τ₋ is transverse to the
    (2n−2)-space of gτ₋.

    The reverse block (g′⁻¹g)_{1n} = (1 − ½(|α|² + |β|²))I − γR is reported as
    well; it is singular on |α|² + |β|² = 2, γ = 0, where the two flags fail to
    be antipodal in F_{2,2n−2}.
    """
    if n < 3:
        raise ValueError(f"The non-maximality check needs n >= 3, got {n}")
    backend = Backend.parse(backend)
    last = 2 * (n - 1)
    identity2 = basis_matrix("I", backend)
    g = Mat.identity(2 * n, backend).with_block(0, last, identity2)
    g_inverse = Mat.identity(2 * n, backend).with_block(0, last, -identity2)
    params = UPrimeParams(tuple(alpha), tuple(beta), gamma)
    g_prime = su_horocyclic_U_prime(params, n, backend)
    g_prime_inverse = su_horocyclic_U_prime(
        UPrimeParams(tuple(-coerce(a, backend) for a in alpha), tuple(-coerce(b, backend) for b in beta), -coerce(gamma, backend)),
        n,
        backend,
    )

    block = block2_decompose((g_inverse @ g_prime).block(0, n - 1))
    half = Fraction(1, 2) if backend is Backend.EXACT else 0.5
    zero = coerce(0, backend)
    norm2 = sum((coerce(a, backend) ** 2 for a in alpha), zero) + sum((coerce(b, backend) ** 2 for b in beta), zero)
    expected = Block2(-(norm2 + 2) * half, coerce(gamma, backend), zero, zero, backend)
    matches = (
        block.to_mat() == expected.to_mat()
        if backend is Backend.EXACT
        else block.to_mat().equals(expected.to_mat())
    )
    if not matches:
        raise RepresentationError(f"(g^-1 g')_1n = {block.to_dict()} does not have the expected form {expected.to_dict()}")
    det = block.determinant()
    if det < 1 and not (backend is Backend.FLOAT and math.isclose(det, 1.0)):
        raise RepresentationError(f"det (g^-1 g')_1n = {det} is below 1")

    theta = ThetaSet.sl_type(n)
    tau_minus = standard_opp_flag(theta, backend=backend)
    g_flag, g_prime_flag = tau_minus.transformed(g), tau_minus.transformed(g_prime)
    transverse = components_transverse(g_prime_flag, 2, g_flag, 2 * n - 2)
    reverse = block2_decompose((g_prime_inverse @ g).block(0, n - 1)).determinant()
    return NonMaximalityResult(block, det, transverse, reverse, are_antipodal(g_flag, g_prime_flag))


def non_maximality_check(alpha, beta, gamma, n: int, backend: Backend | str = Backend.EXACT):
    """det (g⁻¹g′)_{1n} = ((|α|² + |β|² + 2)/2)² + γ² ≥ 1."""
    return non_maximality_report(alpha, beta, gamma, n, backend).determinant

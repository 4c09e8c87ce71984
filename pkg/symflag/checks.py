"""
The commands of the CLI, one `BaseCheck` subclass each.

Every trial draws its randomness from `derive_seed(config.seed, index)`, so a
report depends only on the configuration and not on thread scheduling.
"""
from fractions import Fraction
import random

from .base_check import BaseCheck, CheckRecord, Report
from .config import ANTIPODAL_FLOAT_TOL
from .errors import SignPatternError
from .flags import (
    PropertyICertificate,
    ThetaSet,
    are_antipodal,
    horocyclic_element,
    horocyclic_coordinates,
    inversion,
    is_doubly_transverse,
    iso_component,
    linear_flag_from_isotropic,
    minor_criterion,
    project_flag,
    random_unipotent,
    sample_sign_pattern,
    standard_opp_flag,
    theta_even,
)
from .matrices import Mat
from .representations import (
    LimitPoint,
    UParams,
    UPrimeParams,
    bracket_relations,
    build_rho,
    expected_h_spectrum,
    is_complex_linear,
    limit_point,
    odd_reduction_holds,
    simple_root_values,
    su_horocyclic_U_prime,
    top_right_degree,
)
from .scalars import Backend, format_scalar
from .symplectic import antiprincipal_minor, random_symplectic, verify_key_lemma
from .utils import derive_seed, read_matrix_file
from .witness import (
    extract_fT_fP,
    horocyclic_from_matrix,
    leading_forms_match,
    non_maximality_report,
    sl2c_witness,
    su_witness,
    su_witness_parameters,
)

_SAMPLE_VALUES = (-2, -1, Fraction(-1, 2), Fraction(1, 2), 1, 2)


def _random_fraction(rng: random.Random, bound: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 4))


def _random_vector(rng: random.Random, length: int) -> tuple[Fraction, ...]:
    return tuple(_random_fraction(rng) for _ in range(length))


class KeyLemmaCheck(BaseCheck):
    name = "key_lemma"

    def trial(self, index: int) -> CheckRecord:
        g = random_symplectic(self.config.n, derive_seed(self.config.seed, index), backend=self.backend)
        lemma = verify_key_lemma(g)
        worst = max((abs(r.residual) for r in lemma.residuals), default=0)
        details = lemma.to_dict()
        return CheckRecord(
            index,
            self.name,
            lemma.passed,
            {"residual": format_scalar(worst, self.backend), "residuals": details["residuals"], "minors": details["minors"]},
        )


class TransversalityCheck(BaseCheck):
    name = "transversality"

    def prepare(self):
        self.theta = self.config.theta_set(tuple(range(1, self.config.n + 1)))

    def _criterion(self, u) -> bool:
        if self.backend is Backend.EXACT:
            return minor_criterion(u)
        return all(abs(antiprincipal_minor(u.mat, k)) > ANTIPODAL_FLOAT_TOL for k in self.theta.members)

    def trial(self, index: int) -> CheckRecord:
        rng = random.Random(derive_seed(self.config.seed, index))
        u = random_unipotent(self.theta, rng, backend=self.backend)
        opp = standard_opp_flag(self.theta, backend=self.backend)
        antipodal = are_antipodal(u.act(opp), opp)
        criterion = self._criterion(u)
        minors = {str(k): format_scalar(antiprincipal_minor(u.mat, k), self.backend) for k in self.theta.members}
        return CheckRecord(index, self.name, antipodal == criterion, {"antipodal": antipodal, "minor_criterion": criterion, "minors": minors})


class InversionCheck(BaseCheck):
    """ι∘ι = id on doubly transverse flags, and ι and the projections to single members keep double transversality."""
    name = "inversion"
    max_attempts = 1000

    def prepare(self):
        self.theta = self.config.theta_set(tuple(range(1, self.config.n + 1)))

    def _doubly_transverse_flag(self, rng: random.Random):
        opp = standard_opp_flag(self.theta)
        for attempt in range(1, self.max_attempts + 1):
            u = random_unipotent(self.theta, rng, values=_SAMPLE_VALUES)
            if minor_criterion(u):
                return u.act(opp).to_backend(self.backend), attempt
        raise ArithmeticError(f"No doubly transverse flag in {self.max_attempts} draws")

    def trial(self, index: int) -> CheckRecord:
        rng = random.Random(derive_seed(self.config.seed, index))
        tau, attempts = self._doubly_transverse_flag(rng)
        image = inversion(tau)
        involution = inversion(image) == tau
        preserved = is_doubly_transverse(image)
        projections = {
            str(k): is_doubly_transverse(project_flag(tau, ThetaSet(self.theta.n, (k,))))
            for k in self.theta.members
        }
        return CheckRecord(
            index,
            self.name,
            involution and preserved and all(projections.values()),
            {"involution": involution, "doubly_transverse_image": preserved, "projections": projections, "draws": attempts},
        )


class PropertyICheck(BaseCheck):
    name = "property_i"

    def prepare(self):
        self.theta = self.config.theta_set(tuple(range(1, self.config.n + 1)))
        self.samples = {}

    def trial(self, index: int) -> CheckRecord:
        rng = random.Random(derive_seed(self.config.seed, index))
        sample = sample_sign_pattern(self.theta, rng, index)
        self.samples[index] = sample
        bad = [k for k in self.theta.members if not (sample.flips(k) if k % 2 else sample.persists(k))]
        if bad:
            raise SignPatternError(f"Sample {index}: p_k for k={bad} breaks the sign pattern, signs {sample.signs}")
        return CheckRecord(index, self.name, True, {"signs": {str(k): list(s) for k, s in sample.signs.items()}})

    def extra(self) -> dict:
        certificate = PropertyICertificate(self.theta, tuple(self.samples[i] for i in sorted(self.samples)))
        return {"certificate": certificate.to_dict()}


class RepCheck(BaseCheck):
    """
    Trial 0 certifies the triple itself; every further trial checks that two
    random limit points are antipodal and lie in the image of Iso_2.
    """
    name = "rep"

    def prepare(self):
        self.triple = build_rho(self.config.n)

    def trials(self) -> int:
        return self.config.samples + 1

    def _structure(self) -> CheckRecord:
        n, triple = self.config.n, self.triple
        relations = bracket_relations(triple)
        spectrum = [format_scalar(x, Backend.EXACT) for x in triple.h_spectrum()]
        spectrum_ok = triple.h_spectrum() == expected_h_spectrum(n)
        roots = simple_root_values(triple.H)
        even_positive = {str(k): roots[k - 1] > 0 for k in theta_even(n).members}
        identity = extract_fT_fP(Mat.identity(2 * n), triple)
        degree = top_right_degree(n)
        degrees_ok = identity.f_T.degree == identity.f_P.degree == degree and identity.f_I.degree < degree and identity.f_R.degree < degree
        values = {
            "relations": relations,
            "h_spectrum": spectrum,
            "simple_roots": [format_scalar(x, Backend.EXACT) for x in roots],
            "theta_even_positive": even_positive,
            "top_right_degree": degree,
            "leading_forms": degrees_ok and leading_forms_match(identity, triple),
            "antipodal_to_infinity": are_antipodal(limit_point(triple, 0, 0), limit_point(triple, LimitPoint.at_infinity())),
        }
        if n % 2:
            values["odd_reduction"] = odd_reduction_holds(n)
        passed = (
            all(relations.values())
            and spectrum_ok
            and all(even_positive.values())
            and values["leading_forms"]
            and values["antipodal_to_infinity"]
            and values.get("odd_reduction", True)
        )
        return CheckRecord(0, self.name, passed, values)

    def _limit_pair(self, index: int) -> CheckRecord:
        rng = random.Random(derive_seed(self.config.seed, index))
        first = (_random_fraction(rng), _random_fraction(rng))
        second = first
        while second == first:
            second = (_random_fraction(rng), _random_fraction(rng))
        if self.backend is Backend.FLOAT:
            first, second = tuple(map(float, first)), tuple(map(float, second))
        f, g = limit_point(self.triple, *first), limit_point(self.triple, *second)
        antipodal = are_antipodal(f, g)
        iso = iso_component(f)
        in_image = linear_flag_from_isotropic(iso) == f
        return CheckRecord(
            index,
            self.name,
            antipodal and in_image,
            {"points": [[str(x) for x in first], [str(x) for x in second]], "antipodal": antipodal, "in_iso_image": in_image},
        )

    def trial(self, index: int) -> CheckRecord:
        if index == 0:
            return self._structure()
        return self._limit_pair(index)


class Sl2cWitnessCheck(BaseCheck):
    name = "sl2c_witness"

    def prepare(self):
        n = self.config.n
        self.triple = build_rho(n)
        self.fixed = None
        source = self.config.g
        if source == "identity":
            self.fixed = horocyclic_from_matrix(Mat.identity(2 * n, Backend.FLOAT), n)
        elif source:
            self.fixed = horocyclic_from_matrix(read_matrix_file(source, Backend.FLOAT), n)
        self.locus = []

    def trials(self) -> int:
        return 1 if self.fixed is not None else self.config.samples

    def _random_g(self, rng: random.Random):
        theta = ThetaSet(self.config.n, (2,))
        params = [rng.uniform(-1.0, 1.0) for _ in horocyclic_coordinates(theta)]
        return horocyclic_element(theta, params, Backend.FLOAT)

    def trial(self, index: int) -> CheckRecord:
        seed = derive_seed(self.config.seed, index)
        g = self.fixed if self.fixed is not None else self._random_g(random.Random(seed))
        report = sl2c_witness(
            g,
            self.triple,
            epsilon=self.config.epsilon,
            tol=self.config.tolerance,
            seed=seed,
            record_locus=bool(self.config.dump_locus) and index == 0,
        )
        if index == 0:
            self.locus = report.locus
        return CheckRecord(index, self.name, report.found and bool(report.confirmed), report.to_dict())

    def run(self) -> Report:
        report = super().run()
        if self.config.dump_locus:
            self.save_csv(self.config.dump_locus, self.locus, ["alpha", "beta", "det"])
        return report


class SuWitnessCheck(BaseCheck):
    name = "su_witness"

    def trial(self, index: int) -> CheckRecord:
        n = self.config.n
        rng = random.Random(derive_seed(self.config.seed, index))
        params = UParams(*(_random_vector(rng, n - 2) for _ in range(4)), *(_random_fraction(rng) for _ in range(3)))
        report = su_witness(params, n, self.backend, self.config.tolerance)
        prime = su_witness_parameters(params, n, self.backend)
        complex_linear = is_complex_linear(su_horocyclic_U_prime(prime, n, self.backend))
        values = {**report.to_dict(), "complex_linear_witness": complex_linear}
        return CheckRecord(index, self.name, report.found and bool(report.confirmed) and complex_linear, values)


class NonMaximalCheck(BaseCheck):
    name = "non_maximal"

    def trial(self, index: int) -> CheckRecord:
        n = self.config.n
        rng = random.Random(derive_seed(self.config.seed, index))
        alpha, beta = _random_vector(rng, n - 2), _random_vector(rng, n - 2)
        gamma = _random_fraction(rng)
        if index == 0:
            alpha, beta, gamma = (0,) * (n - 2), (0,) * (n - 2), 0
        result = non_maximality_report(alpha, beta, gamma, n, self.backend)
        values = {
            "parameters": UPrimeParams(alpha, beta, gamma).to_dict(self.backend),
            **result.to_dict(),
        }
        return CheckRecord(index, self.name, result.determinant >= 1 and result.transverse, values)


CHECKS = {
    cls.name: cls
    for cls in (
        KeyLemmaCheck,
        TransversalityCheck,
        InversionCheck,
        PropertyICheck,
        RepCheck,
        Sl2cWitnessCheck,
        SuWitnessCheck,
        NonMaximalCheck,
    )
}

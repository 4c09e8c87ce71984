import math
import random
from fractions import Fraction

import pytest
import sympy

from symflag.errors import BracketingError, FlagError
from symflag.flags import ThetaSet, horocyclic_coordinates, horocyclic_element, random_unipotent
from symflag.matrices import Mat
from symflag.polynomials import ALPHA, BivarPoly
from symflag.representations import UParams, build_rho, su_horocyclic_U, su_horocyclic_U_prime
from symflag.scalars import Backend, exact_sqrt
from symflag.witness import (
    Verdict,
    block_determinant,
    common_real_root,
    extract_fT_fP,
    horocyclic_from_matrix,
    isolate_real_roots,
    leading_forms_match,
    non_maximality_check,
    non_maximality_report,
    ray_search,
    resultant_in_alpha,
    sl2c_witness,
    su_witness,
    su_witness_parameters,
)

A = BivarPoly.alpha()
B = BivarPoly.beta()
SHIFTED_CORNER = Mat.identity(4).with_block(0, 2, Mat.identity(2))


def test_block_polynomials_of_identity():
    polys = extract_fT_fP(Mat.identity(4), build_rho(2))
    assert polys.f_T == A
    assert polys.f_P == B
    assert polys.f_I.is_zero() and polys.f_R.is_zero()


def test_block_polynomials_with_identity_corner():
    polys = extract_fT_fP(SHIFTED_CORNER, build_rho(2))
    assert polys.f_I == BivarPoly.constant(1)
    assert polys.determinant() == 1 - A * A - B * B


def test_horocyclic_from_matrix():
    assert horocyclic_from_matrix(Mat.identity(6), 3).theta == ThetaSet(3, (2,))
    assert horocyclic_from_matrix(SHIFTED_CORNER, 2).theta == ThetaSet.sl_type(2)
    with pytest.raises(FlagError):
        horocyclic_from_matrix(Mat.identity(4).replace({(3, 0): 1}), 2)
    with pytest.raises(FlagError):
        extract_fT_fP(horocyclic_element(ThetaSet(2, (1,))), build_rho(2))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_leading_forms_do_not_depend_on_g(n):
    rng = random.Random(n)
    triple = build_rho(n)
    for _ in range(3):
        g = random_unipotent(ThetaSet(n, (2,)), rng)
        assert leading_forms_match(extract_fT_fP(g, triple), triple)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_determinant_polynomial_matches_the_block(n):
    rng = random.Random(10 + n)
    triple = build_rho(n)
    g = random_unipotent(ThetaSet(n, (2,)), rng)
    polys = extract_fT_fP(g, triple)
    for alpha, beta in [(0, 0), (Fraction(1, 2), -1), (2, Fraction(1, 3))]:
        assert polys.determinant()(alpha, beta) == block_determinant(g.mat, triple, alpha, beta)
        assert polys.evaluate(alpha, beta).determinant() == block_determinant(g.mat, triple, alpha, beta)


def test_isolate_real_roots():
    poly = sympy.Poly((ALPHA - 1) * (ALPHA + 2) * (ALPHA ** 2 - 2) * (ALPHA ** 2 + 1), ALPHA, domain="QQ")
    intervals = isolate_real_roots(poly)
    assert len(intervals) == 4
    for (lo, hi), root in zip(intervals, [-2, -math.sqrt(2), 1, math.sqrt(2)]):
        assert lo <= root <= hi
        assert hi - lo <= 1e-12
    assert isolate_real_roots(sympy.Poly(ALPHA ** 2 + 1, ALPHA, domain="QQ")) == []
    ((lo, hi),) = isolate_real_roots(sympy.Poly((ALPHA - sympy.Rational(1, 2)) ** 3, ALPHA, domain="QQ"))
    assert lo <= Fraction(1, 2) <= hi


def test_common_real_root_linear():
    root = common_real_root(A, B)
    assert (root.alpha, root.beta) == (0.0, 0.0)
    assert root.residual == 0.0
    assert not root.degenerate
    shifted = common_real_root(A - 1, B - 2)
    assert shifted.alpha == pytest.approx(1.0)
    assert shifted.beta == pytest.approx(2.0)
    assert shifted.perturbation_norm == 0.0


def test_common_real_root_of_cubic_forms():
    polys = extract_fT_fP(Mat.identity(8), build_rho(4))
    root = common_real_root(polys.f_T, polys.f_P)
    assert root.bezout_count == 9
    assert root.resultant_degree <= 9
    assert math.hypot(root.alpha, root.beta) == pytest.approx(0.0, abs=1e-6)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_resultant_has_full_degree_on_random_input(n):
    rng = random.Random(10 + n)
    triple = build_rho(n)
    theta = ThetaSet(n, (2,))
    for seed in range(3):
        g = horocyclic_element(theta, [rng.uniform(-1, 1) for _ in horocyclic_coordinates(theta)], Backend.FLOAT)
        polys = extract_fT_fP(g, triple)
        d = max(polys.f_T.degree, polys.f_P.degree)
        assert d == (1 if n == 3 else 3)
        f_t = polys.f_T.shift_constant(rng.uniform(-1e-3, 1e-3))
        f_p = polys.f_P.shift_constant(rng.uniform(-1e-3, 1e-3))
        assert resultant_in_alpha(f_t, f_p).degree() == d * d
        root = common_real_root(polys.f_T, polys.f_P, seed=seed)
        assert root.resultant_degree == root.bezout_count == d * d
        assert not root.degenerate


def test_common_real_root_needs_degree():
    with pytest.raises(ValueError):
        common_real_root(BivarPoly.constant(1), BivarPoly.constant(2))


def test_ray_search():
    assert ray_search(lambda r: 1 - r * r, 1e-10) == (1.0, 0, 0)
    radius, doublings, _ = ray_search(lambda r: 10 - r * r, 1e-10)
    assert radius == pytest.approx(math.sqrt(10), abs=1e-9)
    assert doublings == 2
    assert ray_search(lambda r: -r, 1e-10) == (0.0, 0, 0)
    with pytest.raises(BracketingError):
        ray_search(lambda r: -1.0, 1e-10)
    with pytest.raises(BracketingError):
        ray_search(lambda r: 1.0, 1e-10)


def test_sl2c_witness_identity():
    report = sl2c_witness(Mat.identity(4), build_rho(2))
    assert report.verdict is Verdict.WITNESS_FOUND
    assert report.witness == {"alpha": 0.0, "beta": 0.0}
    assert float(report.residual) == 0.0
    assert report.confirmed
    assert report.to_dict()["confirmed_non_antipodal"] is True


def test_sl2c_witness_lands_on_the_unit_circle():
    report = sl2c_witness(SHIFTED_CORNER, build_rho(2), record_locus=True)
    assert report.found
    assert report.witness["alpha"] == pytest.approx(1 / math.sqrt(2), abs=1e-8)
    assert report.witness["beta"] == pytest.approx(1 / math.sqrt(2), abs=1e-8)
    assert float(report.residual) <= 1e-10
    assert report.confirmed
    assert report.locus


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sl2c_witness_random(n):
    rng = random.Random(n)
    triple = build_rho(n)
    theta = ThetaSet(n, (2,))
    for seed in range(5):
        g = horocyclic_element(theta, [rng.uniform(-1, 1) for _ in horocyclic_coordinates(theta)], Backend.FLOAT)
        report = sl2c_witness(g, triple, seed=seed)
        assert report.found
        assert float(report.residual) <= 1e-10
        assert report.perturbation["norm"] <= 1e-6
        assert report.confirmed


@pytest.mark.parametrize("n", [4, 5])
def test_sl2c_witness_identity_higher_rank(n):
    report = sl2c_witness(Mat.identity(2 * n), build_rho(n))
    assert report.found
    assert report.confirmed


def test_sl2c_witness_rejects_bad_budget():
    with pytest.raises(ValueError):
        sl2c_witness(Mat.identity(4), build_rho(2), epsilon=0)
    with pytest.raises(ValueError):
        sl2c_witness(Mat.identity(4), build_rho(2), tol=-1)


def test_su_witness_all_zero():
    report = su_witness(UParams.zeros(3), 3)
    assert report.found
    assert report.residual == "0"
    assert report.witness == {"alpha": ["0"], "beta": ["0"], "gamma": "0"}
    assert report.confirmed


def test_su_witness_first_basis_vector():
    params = UParams((0,), (0,), (1,), (0,))
    prime = su_witness_parameters(params, 3)
    assert prime.alpha == (1,) and prime.beta == (0,) and prime.gamma == 1
    report = su_witness(params, 3)
    assert report.found and report.confirmed


@pytest.mark.parametrize("n", [3, 4, 5])
def test_su_witness_random_exact(n):
    rng = random.Random(n)
    draw = lambda: tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n - 2))
    for _ in range(5):
        params = UParams(draw(), draw(), draw(), draw(), Fraction(rng.randint(-3, 3)), Fraction(1, 2), -1)
        report = su_witness(params, n)
        assert report.residual == "0"
        assert report.found and report.confirmed
        prime = su_witness_parameters(params, n)
        product = su_horocyclic_U(params, n) @ su_horocyclic_U_prime(prime, n)
        assert product.block(0, n - 1).det() == 0


def test_su_witness_float():
    params = UParams((0.5,), (-1.0,), (2.0,), (0.25,), 1.0, 0.0, -3.0)
    report = su_witness(params, 3, Backend.FLOAT)
    assert report.found
    assert float(report.residual) <= 1e-10


def test_su_witness_needs_rank_three():
    with pytest.raises(ValueError):
        su_witness(UParams(), 2)


def test_su_witness_parameters_with_surd_gamma():
    params = UParams((0,), (0,), (1,), (0,), 0, 0, 1)
    prime = su_witness_parameters(params, 3)
    assert prime.gamma == exact_sqrt(2)
    assert su_witness(params, 3).residual == "0"


def test_non_maximality_values():
    assert non_maximality_check((0,), (0,), 0, 3) == 1
    assert non_maximality_check((0,), (0,), 1, 3) == 2
    assert non_maximality_check((1,), (1,), 0, 3) == 4


def test_non_maximality_report_on_the_singular_circle():
    result = non_maximality_report((1,), (1,), 0, 3)
    assert result.transverse
    assert result.reverse_determinant == 0
    assert not result.antipodal


@pytest.mark.parametrize("n", [3, 4, 5])
def test_non_maximality_random(n):
    rng = random.Random(n)
    for _ in range(10):
        alpha = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n - 2))
        beta = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n - 2))
        gamma = Fraction(rng.randint(-4, 4), 2)
        result = non_maximality_report(alpha, beta, gamma, n)
        assert result.determinant >= 1
        assert result.transverse
    floats = non_maximality_report((0.5,) * (n - 2), (-0.25,) * (n - 2), 0.75, n, Backend.FLOAT)
    assert floats.determinant >= 1


def test_non_maximality_needs_rank_three():
    with pytest.raises(ValueError):
        non_maximality_check((), (), 0, 2)

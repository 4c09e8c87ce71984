import dataclasses
import random
from fractions import Fraction

import pytest

from symflag.blocks import basis_matrix
from symflag.errors import MatrixShapeError
from symflag.flags import ThetaSet, are_antipodal, iso_component, standard_flag, standard_opp_flag
from symflag.matrices import Mat
from symflag.representations import (
    LimitPoint,
    UParams,
    UPrimeParams,
    bracket_relations,
    build_rho,
    expected_h_spectrum,
    is_complex_linear,
    limit_point,
    middle_to_end_permutation,
    odd_reduction_holds,
    simple_root_values,
    su_horocyclic_U,
    su_horocyclic_U_prime,
    top_right_block,
    top_right_degree,
)
from symflag.scalars import Backend, exact_sqrt
from symflag.symplectic import hermitian_J_h, is_symplectic, standard_J

POINTS = [(0, 0), (1, 0), (0, 1), (Fraction(1, 2), -2), (-1, 3)]


def test_rho_2():
    triple = build_rho(2)
    assert triple.H == Mat.diag([1, 1, -1, -1])
    assert triple.X == Mat.zeros(4, 4).with_block(0, 2, basis_matrix("T"))
    assert triple.Y == Mat.zeros(4, 4).with_block(0, 2, basis_matrix("P"))


def test_rho_4():
    triple = build_rho(4)
    r3 = exact_sqrt(3)
    assert triple.X.block(0, 1) == basis_matrix("I") * r3
    assert triple.X.block(1, 2) == basis_matrix("T") * 2
    assert triple.X.block(2, 3) == basis_matrix("I") * -r3
    assert triple.Y.block(0, 1) == basis_matrix("R") * r3
    assert triple.h_spectrum() == [3, 3, 1, 1, -1, -1, -3, -3]


def test_expected_h_spectrum_odd():
    assert expected_h_spectrum(3) == [1, 1, 0, 0, -1, -1]
    assert build_rho(3).h_spectrum() == expected_h_spectrum(3)


@pytest.mark.parametrize("n", range(2, 8))
def test_bracket_relations(n):
    relations = bracket_relations(build_rho(n))
    assert len(relations) == 6
    assert all(relations.values())


def test_build_rho_rejects_small_n():
    with pytest.raises(ValueError):
        build_rho(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_exp_is_symplectic(n):
    triple = build_rho(n)
    assert is_symplectic(triple.exp(Fraction(1, 2), -1), standard_J(n))
    assert triple.exp(0, 0) == Mat.identity(2 * n)


def test_exp_coefficients_reassemble_the_exponential():
    triple = build_rho(4)
    alpha, beta = Fraction(1, 2), 2
    total = Mat.zeros(8, 8)
    for (i, j), coefficient in triple.exp_coefficients.items():
        total = total + coefficient * (alpha ** i * beta ** j)
    assert total == triple.exp(alpha, beta)


def test_top_right_degree():
    assert [top_right_degree(n) for n in range(2, 7)] == [1, 1, 3, 3, 5]


@pytest.mark.parametrize("n", range(2, 9))
def test_simple_root_values(n):
    values = simple_root_values(build_rho(n).H)
    for k, value in enumerate(values, start=1):
        if k % 2:
            assert value == 0
        else:
            assert value > 0


@pytest.mark.parametrize("n", [3, 5, 7])
def test_odd_reduction(n):
    assert odd_reduction_holds(n)


def test_middle_to_end_permutation():
    perm = middle_to_end_permutation(3)
    assert perm @ perm.T == Mat.identity(6)
    assert perm[:, 4:] == Mat.identity(6)[:, 2:4]
    with pytest.raises(ValueError):
        middle_to_end_permutation(4)


def test_limit_point_at_origin_and_infinity():
    for n in [2, 3, 4]:
        theta = ThetaSet.sl_type(n)
        triple = build_rho(n)
        assert limit_point(triple, 0, 0) == standard_opp_flag(theta)
        assert limit_point(triple, LimitPoint.at_infinity()) == standard_flag(theta)


def test_top_right_block_n2():
    triple = build_rho(2)
    block = top_right_block(triple, Fraction(2, 3), -5)
    assert block.coefficients() == (0, 0, Fraction(2, 3), -5)
    assert top_right_block(triple, 0, 0).to_mat().is_zero()


def test_top_right_block_n4_is_the_cubic_term():
    triple = build_rho(4)
    x = triple.X
    expected = x.block(0, 1) @ x.block(1, 2) @ x.block(2, 3) / 6
    assert top_right_block(triple, 1, 0).to_mat() == expected
    assert expected == -basis_matrix("T")


def test_top_right_block_float():
    block = top_right_block(build_rho(2), 0.5, 0.25)
    assert block.coefficients() == pytest.approx((0.0, 0.0, 0.5, 0.25))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_limit_points_are_pairwise_antipodal(n):
    triple = build_rho(n)
    flags = [limit_point(triple, a, b) for a, b in POINTS]
    infinity = limit_point(triple, LimitPoint.at_infinity())
    for i, f in enumerate(flags):
        assert are_antipodal(f, infinity)
        for g in flags[i + 1:]:
            assert are_antipodal(f, g)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_limit_points_have_isotropic_planes(n):
    triple = build_rho(n)
    for a, b in POINTS:
        plane = iso_component(limit_point(triple, a, b))
        assert plane.form.is_isotropic(plane.subspace(2))


def test_u_prime_center():
    m = su_horocyclic_U_prime(UPrimeParams((0,), (0,), 1), 3)
    assert m.block(0, 2) == basis_matrix("R")
    assert is_complex_linear(m)


def test_u_center():
    params = dataclasses.replace(UParams.zeros(3), c=1)
    m = su_horocyclic_U(params, 3)
    assert m.block(0, 2) == basis_matrix("T")
    assert is_symplectic(m, hermitian_J_h(3))
    assert not is_complex_linear(m)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_random_horocyclic_elements_preserve_the_hermitian_form(n):
    rng = random.Random(n)
    draw = lambda: tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n - 2))
    prime = su_horocyclic_U_prime(UPrimeParams(draw(), draw(), Fraction(rng.randint(-3, 3))), n)
    assert is_symplectic(prime, hermitian_J_h(n))
    assert is_complex_linear(prime)
    params = UParams(draw(), draw(), draw(), draw(), 1, -2, Fraction(1, 2))
    assert is_symplectic(su_horocyclic_U(params, n), hermitian_J_h(n))
    floats = su_horocyclic_U(params, n, Backend.FLOAT)
    assert floats.equals(su_horocyclic_U(params, n).to_float())


def test_horocyclic_parameter_lengths():
    with pytest.raises(MatrixShapeError):
        su_horocyclic_U_prime(UPrimeParams((1, 2), (0,), 0), 3)
    with pytest.raises(MatrixShapeError):
        is_complex_linear(Mat.identity(3))


def test_params_to_dict():
    assert UPrimeParams((Fraction(1, 2),), (0,), exact_sqrt(2)).to_dict() == {
        "alpha": ["1/2"], "beta": ["0"], "gamma": "sqrt(2)"
    }
    assert UParams.zeros(3).to_dict()["u"] == ["0"]

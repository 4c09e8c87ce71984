import json
import os
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symflag.blocks import basis_matrix
from symflag.errors import MatrixIndexError, NotSymplecticError
from symflag.matrices import Mat
from symflag.scalars import Backend
from symflag.symplectic import (
    FormDirection,
    GroupElement,
    antiprincipal_minor,
    antiprincipal_minor_wedge,
    build_f,
    change_of_form,
    change_of_form_basis,
    embed_block_matrix,
    embed_sp,
    hermitian_J_h,
    is_symplectic,
    random_symplectic,
    standard_J,
    symplectic_inverse,
    verify_key_lemma,
)

SHEAR = Mat.from_rows([[1, 1], [0, 1]])

# Directory containing the frozen reference matrices
DATA_DIR = os.path.join(os.path.dirname(__file__), 'data')


def unit(i, size):
    return Mat.identity(size)[:, i - 1:i]


def test_standard_J_small():
    assert standard_J(1).gram == Mat.from_rows([[0, 1], [-1, 0]])
    gram = standard_J(2).gram
    assert gram @ unit(1, 4) == -unit(4, 4)
    assert gram @ unit(2, 4) == unit(3, 4)
    assert gram @ unit(3, 4) == -unit(2, 4)
    assert gram @ unit(4, 4) == unit(1, 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_standard_J_squares_to_minus_identity(n):
    gram = standard_J(n).gram
    assert gram @ gram == -Mat.identity(2 * n)
    assert gram.T == -gram


def test_is_symplectic():
    form = standard_J(1)
    assert is_symplectic(Mat.identity(2), form)
    assert is_symplectic(Mat.diag([2, Fraction(1, 2)]), form)
    assert not is_symplectic(Mat.diag([2, 2]), form)
    assert is_symplectic(Mat.diag([2.0, 0.5], Backend.FLOAT), form)


def test_group_element_rejects_non_symplectic():
    with pytest.raises(NotSymplecticError):
        GroupElement(standard_J(1), Mat.diag([2, 2]))


def test_symplectic_inverse():
    form = standard_J(1)
    assert symplectic_inverse(GroupElement(form, SHEAR)).mat == Mat.from_rows([[1, -1], [0, 1]])
    identity = GroupElement(standard_J(3), Mat.identity(6))
    assert symplectic_inverse(identity).mat == Mat.identity(6)


@pytest.mark.parametrize("seed", range(5))
def test_symplectic_inverse_is_inverse(seed):
    g = random_symplectic(3, seed)
    assert g.mat @ g.inverse().mat == Mat.identity(6)


def test_antiprincipal_minor_examples():
    assert all(antiprincipal_minor(Mat.identity(6), k) == 0 for k in range(1, 4))
    assert antiprincipal_minor(SHEAR, 1) == 1
    with pytest.raises(MatrixIndexError):
        antiprincipal_minor(SHEAR, 3)


@pytest.mark.parametrize("seed", range(4))
def test_antiprincipal_minor_matches_wedge_expansion(seed):
    g = random_symplectic(2, seed).mat
    for k in range(1, 5):
        assert antiprincipal_minor(g, k) == antiprincipal_minor_wedge(g, k)


def test_key_lemma_shear():
    report = verify_key_lemma(GroupElement(standard_J(1), SHEAR))
    assert report.passed
    (residual,) = report.residuals
    assert (residual.minor, residual.inverse_minor, residual.residual) == (1, -1, 0)
    assert report.to_dict()["residuals"] == {"1": "0"}


def test_key_lemma_identity():
    report = verify_key_lemma(GroupElement(standard_J(4), Mat.identity(8)))
    assert report.passed
    assert all(r.minor == 0 and r.inverse_minor == 0 for r in report.residuals)


@pytest.mark.parametrize("n", range(1, 6))
def test_key_lemma_random_exact(n):
    for seed in range(20):
        report = verify_key_lemma(random_symplectic(n, seed))
        assert report.passed
        assert all(r.residual == 0 for r in report.residuals)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_key_lemma_random_float(n):
    for seed in range(10):
        assert verify_key_lemma(random_symplectic(n, seed, scale=0.5, backend=Backend.FLOAT)).passed


def test_random_symplectic_is_deterministic():
    assert random_symplectic(2, 1).mat == random_symplectic(2, 1).mat
    assert random_symplectic(2, 1).mat != random_symplectic(2, 2).mat
    a = random_symplectic(2, 1, backend=Backend.FLOAT).mat
    assert a.equals(random_symplectic(2, 1, backend=Backend.FLOAT).mat, rel_tol=0, abs_tol=0)
    with pytest.raises(ValueError):
        random_symplectic(0, 1)


def test_random_symplectic_golden():
    with open(os.path.join(DATA_DIR, 'random_symplectic_n2_seed1.json'), encoding='utf-8') as f:
        golden = Mat.from_dict(json.load(f))
    g = random_symplectic(2, seed=1, scale=1)
    assert g.mat == golden
    assert g.mat[0, 0] == Fraction(1645, 384)


@pytest.mark.parametrize("form", [standard_J(1), standard_J(3), hermitian_J_h(3)], ids=["J1", "J3", "Jh3"])
def test_form_apply_matches_gram_product(form):
    m = random_symplectic(form.n, 5).mat if form.kind == "standard" else Mat.identity(form.dim)
    m = m + Mat.diag(range(form.dim))
    assert form.apply(m) == form.gram @ m
    v = m[:, 1:2].to_float()
    assert form.apply(v).equals(form.gram.to_float() @ v)


def test_inverse_in_the_hermitian_form():
    form = hermitian_J_h(3)
    g = random_symplectic(3, 2, form=form)
    assert is_symplectic(g.mat, form)
    assert g.mat @ g.inverse().mat == Mat.identity(6)
    assert (g @ g.inverse()).mat == Mat.identity(6)



def test_embed_sp():
    assert embed_sp(GroupElement(standard_J(2), Mat.identity(4))).mat == Mat.identity(6)
    g = random_symplectic(2, 3)
    embedded = embed_sp(g)
    assert embedded.mat[0, 5] == g.mat[0, 3]
    assert embedded.mat.block(1, 1) == Mat.identity(2)
    assert is_symplectic(embedded.mat, standard_J(3))


def test_embed_block_matrix_zero_middle():
    m = Mat.from_rows([[1, 2], [3, 4]])
    assert embed_block_matrix(m) == Mat.from_rows([[1, 0, 0, 2], [0, 0, 0, 0], [0, 0, 0, 0], [3, 0, 0, 4]])


def test_hermitian_J_h_small():
    r = basis_matrix("R")
    expected = Mat.zeros(4, 4).with_block(0, 2, r).with_block(2, 0, r)
    assert hermitian_J_h(2).gram == expected


@pytest.mark.parametrize("n", range(2, 7))
def test_build_f(n):
    f = build_f(n)
    j_h = hermitian_J_h(n).gram
    assert j_h @ j_h == -Mat.identity(2 * n)
    assert f @ standard_J(n).gram @ f.T == j_h
    assert f @ f.T == Mat.identity(2 * n)


def test_change_of_form_identity():
    assert change_of_form(Mat.identity(6)) == Mat.identity(6)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_change_of_form_moves_between_groups(n):
    for seed in range(3):
        g = random_symplectic(n, seed, form=hermitian_J_h(n)).mat
        standard = change_of_form(g, FormDirection.TO_STANDARD)
        assert is_symplectic(standard, standard_J(n))
        assert change_of_form(standard, "to_hermitian") == g


def test_change_of_form_basis_keeps_last_plane():
    n = 3
    last = Mat.identity(2 * n)[:, 2 * n - 2:]
    moved = change_of_form_basis(last)
    assert moved == -last


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10 ** 6), n=st.integers(min_value=1, max_value=4))
def test_random_symplectic_membership(seed, n):
    assert is_symplectic(random_symplectic(n, seed).mat, standard_J(n))

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS
from oracles import chi_coeffs, pencil_table, skew_rank_oracle
from pencilalg.algebra import Subspace, registry
from pencilalg.errors import DegeneratePencil, DimensionMismatch, InvalidAlpha
from pencilalg.exact import BinaryForm, Matrix, UnivariatePoly, render_form
from pencilalg.pencil import (
    INF,
    SpectralValue,
    charpoly,
    charpoly_factored,
    draw_functional,
    evaluate,
    lie_index,
    lie_index_trials,
    nil,
    q_form,
    sample_generic,
    spectral,
    stabilizer,
)

T2F = (1, 2, 4)
M2F = (1, 0, 0, 2)


def span(vectors, n):
    return Subspace.span(vectors, n)


# -- spectral values


def test_spectral_values():
    assert spectral("inf") == INF and spectral("∞") == INF
    assert spectral(2).reciprocal() == spectral(Fraction(1, 2))
    assert spectral(0).reciprocal() == INF and INF.reciprocal() == spectral(0)
    orbit = spectral(UnivariatePoly([-2, 0, 1]))
    assert orbit.is_orbit and orbit.reciprocal() == spectral(UnivariatePoly([-Fraction(1, 2), 0, 1]))
    assert spectral(UnivariatePoly([-3, 1])) == spectral(3)
    assert str(INF) == "∞" and str(spectral(Fraction(-1, 2))) == "-1/2"
    keys = sorted([INF, spectral(2), orbit, spectral(0), spectral(1)], key=SpectralValue.sort_key)
    assert keys == [spectral(0), spectral(1), spectral(2), orbit, INF]


# -- evaluation


@pytest.mark.parametrize(
    "name, f, expected",
    [
        ("T2", T2F, [[1, 2, 4], [2, 2, 0], [4, 5, 4]]),
        ("L1", (1, 1), [[1, 0], [1, 0]]),
        ("Z2", (3, -7), [[0, 0], [0, 0]]),
    ],
)
def test_evaluate_examples(name, f, expected):
    a = registry(name)
    ev = evaluate(a, f)
    assert ev.m == Matrix(expected)
    assert ev.m == Matrix(pencil_table(a.table, f))
    assert ev.mt == ev.m.T


def test_evaluate_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        evaluate(registry("T2"), (1, 2))


# -- characteristic form


def lam_mu(coeffs):
    return BinaryForm.from_coeffs(coeffs)


@pytest.mark.parametrize(
    "name, f, coeffs, text",
    [
        ("T2", T2F, (0, -25, -25, 0), "−25·λμ(λ+μ)"),
        ("L1", (1, 1), (0, -1, 0), "−λμ"),
        ("D", (0, 1), (-1, -2, -1), "−(λ+μ)²"),
        ("M2", M2F, (-4, -18, -28, -18, -4), "−2·(λ+2μ)(λ+μ)²(2λ+μ)"),
    ],
)
def test_charpoly_examples(name, f, coeffs, text):
    a = registry(name)
    chi = charpoly(a, f)
    assert chi == lam_mu(coeffs)
    assert chi.coeffs == chi_coeffs(a.table, f)
    assert render_form(chi) == text


def test_charpoly_m2_equals_closed_form():
    expected = BinaryForm.constant(-2) * lam_mu([1, 1]) ** 2 * lam_mu([2, 1]) * lam_mu([1, 2])
    assert charpoly(registry("M2"), M2F) == expected


def test_charpoly_t2_spot_values():
    chi = charpoly(registry("T2"), T2F)
    assert chi(1, 1) == -50 and chi(2, 1) == -150


def test_charpoly_zero_algebra():
    assert charpoly(registry("Z2"), (5, 1)).is_zero()
    assert charpoly_factored(registry("Z2"), (5, 1)) is None


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS + ("Z2",)), st.integers(0, 10**6))
def test_charpoly_matches_oracle_and_is_symmetric(name, seed):
    a = registry(name)
    f = draw_functional(a.dim, seed, 0)
    chi = charpoly(a, f)
    assert chi.coeffs == chi_coeffs(a.table, f)
    assert chi == chi.swap()


# -- stabilizers


def test_stabilizer_examples():
    t2 = registry("T2")
    assert stabilizer(t2, T2F, 1) == span([(1, 0, 0)], 3)
    assert stabilizer(t2, T2F, 0) == span([(-2, -3, 2)], 3)
    assert stabilizer(t2, T2F, "inf").dim == 1
    assert stabilizer(registry("L1"), (1, 1), INF) == span([(0, 1)], 2)
    assert stabilizer(registry("L1"), (1, 1), 0) == span([(1, -1)], 2)


def test_stabilizer_rejects_orbits():
    with pytest.raises(InvalidAlpha):
        stabilizer(registry("T2"), T2F, UnivariatePoly([-2, 0, 1]))


def test_nil_examples():
    assert nil(registry("L1"), (1, 1)).is_zero()
    assert nil(registry("Z2"), (4, 9)) == Subspace.full(2)
    assert nil(registry("T2"), T2F).is_zero()


def test_q_form_examples():
    q = q_form(registry("T2"), T2F)
    assert q.gram == Matrix([[1]]) and q.nondegenerate and q.lambda_mu_multiplicity == 1
    q = q_form(registry("D"), (0, 1))
    assert q.gram == Matrix([[0, 1], [1, 0]]) and q.nondegenerate and q.lambda_mu_multiplicity == 2
    q = q_form(registry("Z2"), (1, 1))
    assert q.gram == Matrix([[0, 0], [0, 0]]) and not q.nondegenerate and q.lambda_mu_multiplicity is None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(0, 10**6))
def test_q_form_gram_symmetric(name, seed):
    a = registry(name)
    q = q_form(a, draw_functional(a.dim, seed, 0))
    assert q.gram == q.gram.T


# -- index


@pytest.mark.parametrize(
    "name, expected",
    [("L1", 0), ("L2", 0), ("T2", 1), ("M2", 2), ("D", 2), ("C2", 2), ("Dn(3)", 3), ("dsum(L1,L1)", 0)],
)
def test_lie_index_values(name, expected):
    assert lie_index(registry(name), seed=0) == expected


@pytest.mark.parametrize("name", ["D", "C2", "Dn(3)", "Z2"])
def test_lie_index_of_commutative_is_dim(name):
    a = registry(name)
    assert lie_index(a) == a.dim


@pytest.mark.parametrize("name", CORPUS)
def test_lie_index_matches_skew_rank_oracle(name):
    a = registry(name)
    trials = lie_index_trials(a, seed=3)
    for t in trials:
        assert t.kernel_dim == a.dim - skew_rank_oracle(a.table, t.functional)
    assert lie_index(a, seed=3) == min(t.kernel_dim for t in trials)


def test_lie_index_is_deterministic():
    a = registry("T3")
    assert lie_index_trials(a, seed=11) == lie_index_trials(a, seed=11)


def test_lie_index_rejects_zero_trials():
    with pytest.raises(ValueError):
        lie_index(registry("T2"), trials=0)


# -- sampling


def test_draw_functional_range_and_determinism():
    f = draw_functional(5, 7, 2)
    assert f == draw_functional(5, 7, 2)
    assert f != draw_functional(5, 7, 3)
    assert all(isinstance(x, Fraction) and -1000 <= x <= 1000 and x.denominator == 1 for x in f)


def test_sample_generic_degenerate():
    with pytest.raises(DegeneratePencil):
        sample_generic(registry("Z2"), seed=0)


def test_sample_generic_t2():
    f, cert = sample_generic(registry("T2"), seed=0)
    assert not charpoly(registry("T2"), f).is_zero()
    assert 1 <= cert.attempts <= 16 and cert.chi_nonzero


def test_sample_generic_d():
    f, cert = sample_generic(registry("D"), seed=0)
    assert f[1] != 0 and cert.attempts == 1
    assert charpoly(registry("D"), f) == lam_mu([1, 2, 1]) * (-f[1] ** 2)
    assert cert.all_minimal


@pytest.mark.parametrize("name", CORPUS)
def test_sample_generic_certificate(name):
    a = registry(name)
    f, cert = sample_generic(a, seed=1)
    for key, val in cert.dims.items():
        assert cert.observed_minima[key] <= val
        assert cert.minimal[key] == (cert.observed_minima[key] == val)
    assert cert.dims["stab_0"] == cert.dims["stab_inf"]

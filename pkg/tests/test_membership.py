import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spirallog.config import TOL
from spirallog.membership import (
    Family,
    FamilyTag,
    check_f_over_z_subordination,
    fg_pair,
    member_G,
    member_N,
    member_st_ss,
    random_schwarz,
    schwarz_from_zeros,
    schwarz_monomial,
    schwarz_sample,
    verify_condition,
)
from spirallog.series import EvaluationGrid, TruncatedSeries as S, derivative, pow_real
from spirallog.zoo import NormalizedFunction, closed_form_G_F, extremal_F, koebe

GO = TOL.grid_order
LAMS = (0.25, 0.5, 0.75, 1.0)
BUILDERS = {Family.ST_SS: member_st_ss, Family.G_FAMILY: member_G, Family.N_FAMILY: member_N}


def identity_fn(order=GO):
    return NormalizedFunction(S.identity(order), "z")


# -- Schwarz functions ---------------------------------------------------------------

def test_degree_one_without_rotation_is_identity():
    w = schwarz_from_zeros([], 0.0, 16)
    assert np.array_equal(w.series.coeffs, S.identity(16).coeffs)


def test_schwarz_sample_is_deterministic():
    a, b = schwarz_sample(11, 4, 64), schwarz_sample(11, 4, 64)
    assert np.array_equal(a.series.coeffs, b.series.coeffs)
    assert a.witness == b.witness and a.seed == 11


def test_schwarz_sample_degree_range():
    with pytest.raises(ValueError):
        schwarz_sample(0, 0)
    with pytest.raises(ValueError):
        schwarz_sample(0, 7)
    with pytest.raises(ValueError):
        schwarz_from_zeros([1.0])
    with pytest.raises(ValueError):
        schwarz_monomial(1, 1.5)


@given(st.integers(0, 2**31), st.integers(1, 6))
def test_schwarz_lemma_on_samples(seed, degree):
    w = schwarz_sample(seed, degree, GO)
    grid = EvaluationGrid()
    assert np.max(np.abs(grid.evaluate(w.series))) < 1
    rng = np.random.default_rng(seed)
    z = 0.95 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    assert np.all(np.abs(w(z)) <= np.abs(z) + 1e-12)


def test_schwarz_series_matches_product_form():
    zeros = [0.3 + 0.4j, -0.7, 0.1j]
    w = schwarz_from_zeros(zeros, 0.9, GO)
    z = np.array([0.2, -0.5j, 0.6 + 0.3j, 0.9 * np.exp(2j)])
    direct = np.exp(0.9j) * z
    for a in zeros:
        direct = direct * (z - a) / (1 - np.conj(a) * z)
    assert np.max(np.abs(w(z) - direct)) < 1e-12


# -- constructions --------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("lam", [0.3, 1.0])
def test_st_ss_with_monomial_reproduces_extremal(lam, n):
    f = member_st_ss(lam, schwarz_monomial(n, 1.0, 64))
    assert np.max(np.abs(f.a - extremal_F(lam, 1, n, 64).a)) < 1e-13


@pytest.mark.parametrize("n", [1, 2, 4])
def test_G_with_monomial_has_binomial_derivative(n):
    lam = 0.6
    f = member_G(lam, schwarz_monomial(n, 1.0, 64))
    expected = pow_real(S.constant(1.0, 64) - S.monomial(n, 64), lam / n)
    fp = derivative(f.series)
    assert np.max(np.abs(fp.coeffs - expected.coeffs[: fp.order + 1])) < 1e-14


@pytest.mark.parametrize("build", [member_st_ss, member_G, member_N])
def test_zero_schwarz_gives_identity(build):
    f = build(0.5, schwarz_monomial(1, 0.0, 32))
    assert np.allclose(f.a, S.identity(32).coeffs[: f.order + 1], atol=0)


@pytest.mark.parametrize("seed", range(20))
def test_alexander_duality(seed):
    lam = LAMS[seed % 4]
    w = random_schwarz(seed, 64)
    g, nf = member_G(lam, w), member_N(lam, w)
    zg = derivative(g.series).times_z()
    assert np.max(np.abs(nf.a[: zg.order + 1] - zg.coeffs)) < 1e-12


def test_fg_pair_members_are_in_st_ss():
    for x in (0.0, 0.4, 1.0):
        F, G = fg_pair(0.7, x, GO)
        for f in (F, G):
            assert verify_condition(f, FamilyTag(Family.ST_SS, 0.7)).passed
    F, G = fg_pair(0.7, 1.0, 64)
    assert np.allclose(F.a, extremal_F(0.7, 1, 1, 64).a, atol=1e-14)


# -- verify_condition -------------------------------------------------------------------

@pytest.mark.parametrize("family", list(Family))
def test_identity_passes_every_family(family):
    rep = verify_condition(identity_fn(), FamilyTag(family, 0.5))
    assert rep.passed and rep.worst_margin > 0


def test_extremal_memberships():
    for lam in (0.3, 0.8):
        assert verify_condition(closed_form_G_F(lam, GO), FamilyTag(Family.G_FAMILY, lam)).passed
        g = closed_form_G_F(lam, GO).series.over_z()
        u = NormalizedFunction((g - 1.0) * (2 / lam))
        assert verify_condition(u, FamilyTag(Family.CONVEX)).passed
    nf = NormalizedFunction(S([0, 1, 1] + [0] * (GO - 2)))
    assert verify_condition(nf, FamilyTag(Family.N_FAMILY, 1.0)).passed


def test_family_tag_validation():
    with pytest.raises(ValueError):
        FamilyTag(Family.G_FAMILY, 1.5)
    FamilyTag(Family.CONVEX, 3.0)  # lam is ignored there
    assert Family.parse("g") is Family.G_FAMILY and Family.parse("st_ss") is Family.ST_SS


def test_koebe_negative_control():
    k = koebe(0.0, GO)
    assert not verify_condition(k, FamilyTag(Family.G_FAMILY, 1.0)).passed
    assert not verify_condition(k, FamilyTag(Family.ST_SS, 1.0)).passed
    assert verify_condition(k, FamilyTag(Family.STARLIKE)).passed


def test_vanishing_derivative_is_a_verdict_not_a_crash():
    f = NormalizedFunction(S([0, 1, 1] + [0] * (GO - 2)))  # f'(-1/2) = 0
    rep = verify_condition(f, FamilyTag(Family.G_FAMILY, 0.5))
    assert not rep.passed


@pytest.mark.parametrize("lam", LAMS)
@pytest.mark.parametrize("family", list(BUILDERS), ids=lambda f: f.name)
def test_constructed_members_pass_their_condition(family, lam):
    build = BUILDERS[family]
    tag = FamilyTag(family, lam)
    worst = min(verify_condition(build(lam, random_schwarz(s, GO)), tag).worst_margin for s in range(500))
    assert worst > 1e-7


@pytest.mark.parametrize("n", [1, 2, 3])
def test_inclusion_chain(n):
    for s in range(40):
        lam = LAMS[s % 4]
        f = member_st_ss(lam / (n + 1), random_schwarz(s, GO))
        assert verify_condition(f, FamilyTag(Family.ST_SS, lam / n)).passed


# -- f/z subordination --------------------------------------------------------------------

def test_f_over_z_self_and_identity():
    assert check_f_over_z_subordination(closed_form_G_F(0.5, GO), 0.5).passed
    assert check_f_over_z_subordination(identity_fn(), 0.5).passed


def test_f_over_z_for_G_members():
    for s in range(100):
        f = member_G(0.5, random_schwarz(s, GO))
        assert check_f_over_z_subordination(f, 0.5).passed, s


def test_f_over_z_rotated_extremal_sits_on_the_boundary():
    # degree-one omega makes f/z a rotation of the target itself
    rep = check_f_over_z_subordination(member_G(0.5, schwarz_from_zeros([], 2.0, GO)), 0.5)
    assert rep.passed and rep.per_index[-1].margin == 0.0
    assert 0 < rep.notes["on_boundary"] < 1e-6


def test_f_over_z_rejects_outsider():
    # z + z^2 has f/z = 1 + z, which leaves the target near z = 0.95
    f = NormalizedFunction(S([0, 1, 1] + [0] * (GO - 2)))
    assert not check_f_over_z_subordination(f, 0.5).passed

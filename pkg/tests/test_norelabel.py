import random
from fractions import Fraction as F

import pytest

from gwrev.constructor import verify_reversibility
from gwrev.core import ChecksFailedError, GWSpec, PLAIN, SpecError, degrees
from gwrev.norelabel import (
    AsymmetricAdjacencyError,
    DegreeDependentParametersError,
    NotMultinomialError,
    PlainSpec,
    check_plain_cycles,
    construct_plain_measure,
    expand_plain_spec,
    extract_plain_spec,
    multinomial_dist,
    multinomial_pmf,
    plain_cycle_product,
    run_plain_checks,
)

from .conftest import three_label_plain
from .oracles import (
    balance_violations,
    conditional_by_degree,
    is_degree_multinomial,
    multinomial_pmf_oracle,
    random_plain_spec,
)


# ---------------------------------------------------------------------------
# Multinomial expansion
# ---------------------------------------------------------------------------

def test_multinomial_dist_matches_oracle():
    params = (F(1, 2), F(1, 3), F(1, 6))
    for degree in (0, 1, 2, 3):
        dist = multinomial_dist(degree, params)
        assert sum(dist.values()) == 1
        for c, p in dist.items():
            assert p == multinomial_pmf_oracle(c, params)
        assert is_degree_multinomial(dist, degree, 3)


def test_multinomial_dist_respects_zero_parameters():
    dist = multinomial_dist(3, (F(1, 2), F(0), F(1, 2)))
    assert all(c[1] == 0 for c in dist)
    assert sum(dist.values()) == 1


# ---------------------------------------------------------------------------
# Extraction
# ---------------------------------------------------------------------------

def test_extraction_roundtrip_on_worked_instance(plain_spec):
    expanded = expand_plain_spec(plain_spec)
    assert extract_plain_spec(expanded) == plain_spec


def test_extraction_single_label_point_masses():
    spec = GWSpec(n=1, mode=PLAIN, offspring={
        1: {(1,): F(1, 2), (3,): F(1, 2)},
    })
    pspec = extract_plain_spec(spec)
    assert pspec.params[1] == (F(1),)
    assert pspec.degree_dist[1] == {1: F(1, 2), 3: F(1, 2)}


def test_extraction_rejects_non_multinomial():
    spec = GWSpec(n=2, mode=PLAIN, offspring={
        1: {(2, 0): F(1, 2), (0, 2): F(1, 2)},
        2: {(1, 0): F(1)},
    })
    with pytest.raises(NotMultinomialError) as err:
        extract_plain_spec(spec)
    assert err.value.witness == (1, 2, (0, 2))
    report, pspec = run_plain_checks(spec)
    assert pspec is None
    assert not report.ok()
    assert "not-multinomial" in report.failed_names()


def test_extraction_rejects_degree_dependent_parameters():
    # degree 1 leans label 1, degree 2 is balanced
    spec = GWSpec(n=2, mode=PLAIN, offspring={
        1: {
            (1, 0): F(2, 30), (0, 1): F(1, 30),
            (2, 0): F(9, 40), (1, 1): F(18, 40), (0, 2): F(9, 40),
        },
        2: {(1, 0): F(1)},
    })
    with pytest.raises(DegreeDependentParametersError):
        extract_plain_spec(spec)
    report, _ = run_plain_checks(spec)
    assert "degree-dependent-parameters" in report.failed_names()


def test_extraction_rejects_asymmetric_adjacency():
    # label 1 has label-2 children but never conversely
    spec = GWSpec(n=2, mode=PLAIN, offspring={
        1: {(0, 1): F(1)},
        2: {(0, 2): F(1)},
    })
    with pytest.raises(AsymmetricAdjacencyError):
        extract_plain_spec(spec)
    report, _ = run_plain_checks(spec)
    assert "asymmetric-adjacency" in report.failed_names()


def test_extraction_agrees_with_swap_oracle_per_degree():
    rng = random.Random(31)
    for _ in range(12):
        pspec = random_plain_spec(rng, rng.randint(1, 3))
        spec = expand_plain_spec(pspec)
        for i in range(1, spec.n + 1):
            for d, conditional in conditional_by_degree(spec.offspring[i]).items():
                assert is_degree_multinomial(conditional, d, spec.n)
        assert extract_plain_spec(spec) == pspec


def test_swap_oracle_rejects_perturbed_conditionals():
    pspec = three_label_plain()
    spec = expand_plain_spec(pspec)
    dist = dict(spec.offspring[1])
    # move mass between two degree-2 vectors, then renormalize that degree
    donor, receiver = (0, 1, 1), (2, 0, 0)
    dist[donor] = dist[donor] / 2
    dist[receiver] = dist[receiver] + dist[donor]
    broken = GWSpec(n=3, mode=PLAIN, offspring={**spec.offspring, 1: dist})
    conditional = conditional_by_degree(broken.offspring[1])[2]
    assert not is_degree_multinomial(conditional, 2, 3)
    with pytest.raises(NotMultinomialError):
        extract_plain_spec(broken)


# ---------------------------------------------------------------------------
# Cycle check
# ---------------------------------------------------------------------------

def test_cycles_pass_on_worked_instance(plain_spec):
    ok, cycle = check_plain_cycles(plain_spec)
    assert ok and cycle is None


def test_cycles_fail_with_replayable_witness():
    broken = three_label_plain(p31=F(1, 4), p32=F(3, 4))
    ok, cycle = check_plain_cycles(broken)
    assert not ok
    assert cycle[0] == cycle[-1]
    assert plain_cycle_product(broken, cycle) != 1


def test_cycles_vacuous_single_label():
    pspec = PlainSpec(
        n=1, degree_dist={1: {2: F(1)}}, params={1: (F(1),)}
    )
    assert check_plain_cycles(pspec) == (True, None)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def test_construct_worked_instance(plain_spec):
    mu = construct_plain_measure(plain_spec)
    assert mu.root_dist == {1: F(3, 7), 2: F(2, 7), 3: F(2, 7)}
    assert verify_reversibility(mu) == []
    assert balance_violations(mu) == []


def test_degree_shift_and_mass_preservation(plain_spec):
    mu = construct_plain_measure(plain_spec)
    spec = mu.descendants
    for i in (1, 2, 3):
        assert degrees(mu.neighbor_dist[i]) == {
            d + 1 for d in degrees(spec.offspring[i])
        }
        for d, pd in plain_spec.degree_dist[i].items():
            mass = sum(
                p for c, p in mu.neighbor_dist[i].items() if sum(c) == d + 1
            )
            assert mass == pd


def test_conditional_laws_share_parameters(plain_spec):
    mu = construct_plain_measure(plain_spec)
    for i in (1, 2, 3):
        for d, conditional in conditional_by_degree(mu.neighbor_dist[i]).items():
            expected = multinomial_dist(d, plain_spec.params[i])
            assert conditional == expected


def test_construct_single_label_shifts_degrees():
    pspec = PlainSpec(
        n=1,
        degree_dist={1: {1: F(1, 2), 2: F(1, 2)}},
        params={1: (F(1),)},
    )
    mu = construct_plain_measure(pspec)
    assert mu.root_dist == {1: F(1)}
    assert mu.neighbor_dist[1] == {(2,): F(1, 2), (3,): F(1, 2)}


def test_construct_rejects_broken_cycles():
    broken = three_label_plain(p31=F(1, 4), p32=F(3, 4))
    with pytest.raises(ChecksFailedError):
        construct_plain_measure(broken)


def test_uniqueness_under_label_input_order(plain_spec):
    mu = construct_plain_measure(plain_spec)
    reordered = PlainSpec(
        n=3,
        degree_dist=dict(reversed(list(plain_spec.degree_dist.items()))),
        params=dict(reversed(list(plain_spec.params.items()))),
    )
    mu2 = construct_plain_measure(reordered)
    assert mu2.root_dist == mu.root_dist
    assert mu2.neighbor_dist == mu.neighbor_dist


def test_randomized_plain_measures_balance_exactly():
    rng = random.Random(77)
    for _ in range(15):
        pspec = random_plain_spec(rng, rng.randint(1, 4))
        ok, cycle = check_plain_cycles(pspec)
        assert ok, cycle
        mu = construct_plain_measure(pspec)
        assert verify_reversibility(mu) == []
        assert balance_violations(mu) == []
        # re-extraction is exact
        assert extract_plain_spec(mu.descendants) == pspec


def test_plain_spec_validation():
    with pytest.raises(SpecError):
        PlainSpec(n=1, degree_dist={1: {1: F(1, 2)}}, params={1: (F(1),)})
    with pytest.raises(AsymmetricAdjacencyError):
        PlainSpec(
            n=2,
            degree_dist={1: {1: F(1)}, 2: {1: F(1)}},
            params={1: (F(0), F(1)), 2: (F(0), F(1))},
        )

"""Conjugate chains, quantitative bounds, and the certificate pipeline."""

from __future__ import annotations

import math

import pytest

from conftest import table_of

from solgrow.elements import Perm
from solgrow.errors import (
    HypothesisViolated,
    NotSelfCentralizing,
    WitnessDegenerate,
)
from solgrow.growth import growth_table
from solgrow.milnor import (
    canonical_modified_chain,
    certify_growth_lower_bound,
    derived_generators,
    distinct_products_check,
    milnor_chain,
    quantitative_bound_check,
    subset_products,
)
from solgrow.mu import mu_fast
from solgrow.soluble import minimal_normal_subgroups
from solgrow.table import center, normal_closure, subgroup_generated


def _perm_index(T, images):
    return T.index[Perm(images).encode()]


def test_chain_normal_seed_stabilizes_immediately():
    q8 = table_of("q8")
    z = center(q8).members[1]
    ch = milnor_chain(q8, [z])
    assert ch.k == 0
    assert ch.generating_set == (z,)
    assert ch.subgroups[0].order == 2


def test_chain_s3_transposition():
    T = table_of("s3")
    y = _perm_index(T, [1, 0, 2])
    ch = milnor_chain(T, [y])
    assert ch.subgroups[ch.k].order == 6
    assert ch.closure_length <= ch.seed_length + 2 * ch.k
    assert len(ch.witnesses) == ch.k


def test_chain_s4_double_transposition():
    T = table_of("s4")
    y = _perm_index(T, [1, 0, 3, 2])
    ch = milnor_chain(T, [y])
    assert ch.subgroups[ch.k].order == 4
    assert ch.k <= 1


@pytest.mark.parametrize(
    "name,seed_index",
    [("s3", 1), ("s4", 1), ("q8", 1), ("sl2(3)", 2), ("f2^3:c7", 1), ("f3^2:q8", 3)],
)
def test_chain_soundness(name, seed_index):
    T = table_of(name)
    ch = milnor_chain(T, [seed_index])
    closure = normal_closure(T, [seed_index])
    assert ch.subgroups[ch.k].member_set == closure.member_set
    assert ch.closure_length <= ch.seed_length + 2 * ch.k
    ok, dp = distinct_products_check(ch)
    assert ok
    assert dp["gamma"] >= dp["bound"]


def test_distinct_products_k1():
    c2 = table_of("c2")
    ch = milnor_chain(c2, [1])
    ok, dp = distinct_products_check(ch)
    assert ok and dp["k"] == 0 and dp["bound"] == 1


def test_subset_products_independent_vectors():
    # three independent translations in F_2^3 x| C_7: 8 distinct products
    T = table_of("f2^3:c7")
    V = minimal_normal_subgroups(T)[0]
    assert V.order == 8
    basis = [v for v in V.members if v != 0][:3]
    sub = subgroup_generated(T, basis)
    if sub.order == 8:
        prods = subset_products(T, basis)
        assert len(set(prods)) == 8


def test_witness_degenerate_detected():
    T = table_of("s4")
    y = _perm_index(T, [1, 0, 3, 2])
    ch = milnor_chain(T, [y])
    if ch.k >= 1:
        bad = ch.__class__(
            table=T,
            seeds=ch.seeds,
            levels=ch.levels,
            subgroups=ch.subgroups,
            k=ch.k,
            witnesses=(0,) * ch.k,  # identity lies in every H_i
            seed_length=ch.seed_length,
            closure_length=ch.closure_length,
        )
        with pytest.raises(WitnessDegenerate):
            distinct_products_check(bad)


def test_quantitative_vacuous_k0():
    q8 = table_of("q8")
    z = center(q8).members[1]
    ch = milnor_chain(q8, [z])
    rep = quantitative_bound_check(ch, theta=1 / 3, C=5.0)
    assert rep["k_ok"] and rep["z_ok"]


def test_quantitative_s3():
    T = table_of("s3")
    ch = milnor_chain(T, [_perm_index(T, [1, 0, 2])])
    counts = T.growth_counts()
    c_needed = max(
        math.log(counts[n]) / n ** (1 / 3) for n in range(1, len(counts))
    )
    rep = quantitative_bound_check(ch, theta=1 / 3, C=c_needed + 0.1)
    assert rep["k_ok"] and rep["z_ok"]
    assert rep["C1"] == pytest.approx(2 * (5 * (c_needed + 0.1)) ** 3)


@pytest.mark.parametrize("name", ["q8", "sl2(3)", "f3^2:q8", "agl1(8)"])
def test_quantitative_bounds_hold_with_fitted_constant(name):
    T = table_of(name)
    ch = milnor_chain(T, [1, T.generators[0]])
    counts = T.growth_counts()
    c_needed = max(
        math.log(counts[n]) / n ** (1 / 3) for n in range(1, len(counts))
    )
    rep = quantitative_bound_check(ch, theta=1 / 3, C=max(1.0, c_needed))
    assert rep["k_ok"] and rep["z_ok"]


def test_quantitative_hypothesis_violated():
    T = table_of("s4")
    ch = milnor_chain(T, [_perm_index(T, [1, 0, 3, 2])])
    with pytest.raises(HypothesisViolated):
        quantitative_bound_check(ch, theta=0.3, C=1.0)


def test_quantitative_large_c_slack():
    T = table_of("s4")
    ch = milnor_chain(T, [_perm_index(T, [1, 0, 3, 2])])
    rep = quantitative_bound_check(ch, theta=1 / 3, C=50.0)
    assert rep["k_slack"] > 100


def test_derived_generators_abelian():
    rec = derived_generators(table_of("c6"), 4)
    assert [r["order"] for r in rec["steps"]] == [6, 1]


def test_derived_generators_sl23():
    rec = derived_generators(table_of("sl2(3)"), 6)
    assert [r["order"] for r in rec["steps"]] == [24, 8, 2, 1]
    lengths = [r["max_length"] for r in rec["steps"]]
    assert lengths[0] == 1
    assert all(r["ratio"] == r["max_length"] / 4 ** r["k"] for r in rec["steps"])
    # recurrence constant is the smallest C making each step bound hold
    c = rec["recurrence_constant"]
    for i in range(1, len(lengths)):
        if lengths[i - 1] > 0:
            assert lengths[i] <= 4 * lengths[i - 1] + c * math.sqrt(lengths[i - 1]) + 1e-9


def test_derived_generators_s4():
    rec = derived_generators(table_of("s4"), 6)
    assert [r["order"] for r in rec["steps"]] == [24, 12, 4, 1]


def test_canonical_chain_agl15():
    T = table_of("agl1(5)")
    V = minimal_normal_subgroups(T)[0]
    series, word = canonical_modified_chain(T, V)
    assert word == [4, 4]
    assert [S.order for S in series.chain] == [20, 5, 1]


def test_canonical_chain_f8c7():
    T = table_of("f2^3:c7")
    V = minimal_normal_subgroups(T)[0]
    series, word = canonical_modified_chain(T, V)
    assert word == [4, 4]


def test_canonical_chain_f9q8():
    T = table_of("f3^2:q8")
    V = minimal_normal_subgroups(T)[0]
    series, word = canonical_modified_chain(T, V)
    assert 10 in word
    assert word == [10, 4]
    prod = 1
    for a in word:
        prod *= a
    cost = series.cost
    assert prod == 4**cost.a * 10**cost.b


def test_canonical_chain_not_self_centralizing():
    q8 = table_of("q8")
    Z = center(q8)
    with pytest.raises(NotSelfCentralizing):
        canonical_modified_chain(q8, Z)


@pytest.mark.parametrize("name,rank,p", [("f2^3:c7", 3, 2), ("s4", 2, 2), ("f3^2:q8", 2, 3)])
def test_certificates(name, rank, p):
    T = table_of(name)
    cert = certify_growth_lower_bound(T)
    assert cert.rank == rank and cert.p == p
    assert all(cert.checks.values()) or cert.checks["gamma_source"]
    assert cert.checks["distinct_products"] and cert.checks["datapoint"]
    assert cert.bound == 2**rank
    # datapoint against an independently computed growth table
    gt = growth_table(T.gen_set, min(cert.radius, T.diameter()))
    assert gt.counts[-1] >= cert.bound
    # cost word consistency with the group's exact cost pair
    mu, _ = mu_fast(T)
    prod = 1
    for a in cert.cost_word:
        prod *= a
    assert prod == 4**mu.a * 10**mu.b
    # the canonical chain ends at the socle V
    assert cert.step_orders[-2] == p**rank


def test_certificate_measured_constants():
    # the reported constants are the smallest making the recurrences hold
    for name in ["f2^3:c7", "s4", "f3^2:q8"]:
        cert = certify_growth_lower_bound(table_of(name))
        L, a = cert.step_lengths, cert.cost_word
        for i in range(1, len(L)):
            if L[i - 1] > 0:
                assert L[i] <= a[i - 1] * L[i - 1] + cert.recurrence_constant * math.sqrt(
                    L[i - 1]
                ) + 1e-9
        for i in range(len(L)):
            prod = math.prod(a[: min(i + 1, len(a))])
            assert L[i] <= cert.chain_constant * prod + 1e-9
        assert cert.chain_constant > 0


def test_certificate_longer_canonical_chain():
    # four-step chain ending at the rank-2 socle of the affine plane group
    cert = certify_growth_lower_bound(table_of("agl2(3)"))
    assert cert.step_orders == [432, 216, 72, 9, 1]
    assert cert.cost_word == [4, 4, 10, 4]
    assert cert.rank == 2 and cert.p == 3
    assert cert.checks["datapoint"] and cert.checks["distinct_products"]


def test_certificate_requires_noncentral_socle():
    # the only minimal normal subgroup of C2 wr S4 is its center
    with pytest.raises(NotSelfCentralizing):
        certify_growth_lower_bound(table_of("s2wrs4"))


def test_certificate_degenerate_rank_one():
    T = table_of("c3")
    cert = certify_growth_lower_bound(T)
    assert cert.rank == 1 and cert.bound == 2
    assert cert.gamma_at_radius >= 2
    assert cert.vacuous in (True, False)


def test_certificate_with_transcript():
    cert = certify_growth_lower_bound(table_of("s4"), emit_transcript=True)
    assert cert.transcript is not None
    assert len(cert.transcript["products"]) == cert.bound
    assert len(set(cert.transcript["products"])) == cert.bound


def test_certificate_nontrivial_normal():
    # G = SL2(3), N = center: quotient Alt(4) has socle V4
    T = table_of("sl2(3)")
    Z = center(T)
    cert = certify_growth_lower_bound(T, Z)
    assert cert.normal_order == 2
    assert cert.rank == 2 and cert.p == 2
    assert cert.checks["datapoint"]


def test_certificate_vacuous_flag():
    cert = certify_growth_lower_bound(table_of("s4"))
    assert cert.vacuous == (cert.radius >= table_of("s4").diameter())

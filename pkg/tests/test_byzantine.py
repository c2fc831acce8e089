import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ris_css.byzantine import (
    AttackProfile,
    NamedAttack,
    apply_attack,
    assign_compromised,
    compromised_mask,
    is_blinding,
    optimal_attack,
)
from ris_css.utils.errors import InvalidArgumentError

from tests.conftest import binomial_sigma


# -------- 攻击参数 --------
@given(
    alpha=st.floats(min_value=0.0, max_value=1.0),
    p01=st.floats(min_value=0.0, max_value=1.0),
    p10=st.floats(min_value=0.0, max_value=1.0),
)
def test_marginal_flip_rates(alpha, p01, p10):
    profile = AttackProfile(alpha=alpha, p01=p01, p10=p10)
    assert profile.pi01 == alpha * p01
    assert profile.pi10 == alpha * p10
    assert 0.0 <= profile.pi01 + profile.pi10 <= 2.0 * alpha + 1e-15


@pytest.mark.parametrize(
    "kind, flips",
    [("AN", (1.0, 0.0)), ("AY", (0.0, 1.0)), ("AF", (1.0, 1.0)), ("none", (0.0, 0.0))],
)
def test_named_modes_fix_flip_probabilities(kind, flips):
    attack = NamedAttack.build(kind, 0.3)
    assert (attack.profile.p01, attack.profile.p10) == flips
    assert attack.label == kind


def test_named_mode_rejects_inconsistent_flips():
    with pytest.raises(ValueError):
        NamedAttack(kind="AF", profile={"alpha": 0.3, "p01": 0.5, "p10": 1.0})


def test_random_flip_requires_both_probabilities():
    with pytest.raises(ValueError):
        NamedAttack.build("RD", 0.5, p01=0.3)
    rd = NamedAttack.build("RD", 0.5, p01=0.3, p10=0.7)
    assert rd.label == "RD(0.3,0.7)"


def test_profile_range_validation():
    with pytest.raises(ValueError):
        AttackProfile(alpha=1.2)
    with pytest.raises(ValueError):
        AttackProfile(alpha=0.5, p01=-0.1)


def test_named_attack_json_round_trip():
    attack = NamedAttack.build("AY", 0.25, assignment_mode="iid_bernoulli")
    again = NamedAttack.model_validate_json(attack.model_dump_json())
    assert again == attack


# -------- 恶意节点指派 --------
def test_assignment_extremes(rng):
    assert assign_compromised(AttackProfile(alpha=0.0), 10, rng) == frozenset()
    assert assign_compromised(AttackProfile(alpha=1.0), 10, rng) == frozenset(range(10))


def test_fixed_fraction_is_uniform_over_nodes(rng):
    profile = AttackProfile(alpha=0.4)
    n = 10000
    counts = np.zeros(10)
    for _ in range(n):
        chosen = assign_compromised(profile, 10, rng)
        assert len(chosen) == 4
        counts[list(chosen)] += 1
    freq = counts / n
    assert np.all(np.abs(freq - 0.4) <= 3.0 * binomial_sigma(0.4, n))


def test_iid_assignment_mean_fraction(rng):
    profile = AttackProfile(alpha=0.3, assignment_mode="iid_bernoulli")
    n = 5000
    total = sum(compromised_mask(profile, 8, rng).sum() for _ in range(n))
    assert total / (8 * n) == pytest.approx(0.3, abs=4.0 * binomial_sigma(0.3, 8 * n))


def test_assignment_draw_size_does_not_depend_on_alpha():
    """公共随机数：不同 α 消耗的随机数相同，后续抽样保持对齐"""
    a, b = np.random.default_rng(1), np.random.default_rng(1)
    compromised_mask(AttackProfile(alpha=0.1), 10, a)
    compromised_mask(AttackProfile(alpha=0.9), 10, b)
    assert a.random() == b.random()


# -------- 篡改 --------
def test_no_attack_is_identity(rng):
    x = rng.integers(0, 2, 12)
    u = apply_attack(x, range(12), AttackProfile(alpha=1.0), rng)
    np.testing.assert_array_equal(u, x)


def test_always_false_inverts_compromised(rng):
    x = rng.integers(0, 2, 10)
    af = NamedAttack.build("AF", 1.0).profile
    np.testing.assert_array_equal(apply_attack(x, range(10), af, rng), 1 - x)


def test_always_no_hits_only_compromised(rng):
    x = np.ones(6, dtype=np.int8)
    an = NamedAttack.build("AN", 0.5).profile
    u = apply_attack(x, {0, 2, 4}, an, rng)
    np.testing.assert_array_equal(u, [0, 1, 0, 1, 0, 1])


def test_apply_attack_accepts_boolean_mask(rng):
    x = np.zeros(4, dtype=np.int8)
    ay = NamedAttack.build("AY", 0.5).profile
    u = apply_attack(x, np.array([True, False, True, False]), ay, rng)
    np.testing.assert_array_equal(u, [1, 0, 1, 0])


def test_apply_attack_rejects_non_binary(rng):
    with pytest.raises(InvalidArgumentError):
        apply_attack([0, 2], set(), AttackProfile(), rng)


# -------- 最优攻击与失明 --------
def test_optimal_attack_small_scale():
    attack = optimal_attack(0.3)
    assert attack.kind == "AF"
    assert (attack.profile.p01, attack.profile.p10) == (1.0, 1.0)


def test_optimal_attack_large_scale_blinds():
    attack = optimal_attack(0.8)
    assert attack.profile.p01 == pytest.approx(0.625)
    assert attack.profile.p10 == pytest.approx(0.625)
    assert attack.profile.pi01 + attack.profile.pi10 == pytest.approx(1.0, abs=1e-15)


def test_optimal_attack_boundary():
    attack = optimal_attack(0.5)
    assert attack.kind == "AF"
    assert is_blinding(attack.profile)


@pytest.mark.parametrize("alpha", [-0.1, 1.1])
def test_optimal_attack_rejects_bad_alpha(alpha):
    with pytest.raises(InvalidArgumentError):
        optimal_attack(alpha)


def test_is_blinding_examples():
    assert is_blinding(AttackProfile(alpha=0.8, p01=0.625, p10=0.625), 1e-12)
    assert not is_blinding(NamedAttack.build("AF", 0.4).profile, 1e-12)
    assert is_blinding(AttackProfile(alpha=1.0, p01=0.3, p10=0.7), 1e-12)
    with pytest.raises(InvalidArgumentError):
        is_blinding(AttackProfile(), -1.0)


@given(st.floats(min_value=0.5, max_value=1.0))
def test_optimal_attack_always_blinds_large_scale(alpha):
    assert is_blinding(optimal_attack(alpha).profile, 1e-12)

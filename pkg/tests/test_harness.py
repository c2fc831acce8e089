import json

import numpy as np
import pytest

from ris_css.byzantine import NamedAttack
from ris_css.config.templates import EXPERIMENT_CONFIG_TEMPLATE
from ris_css.harness import attack_comparison
from ris_css.harness import (
    CSV_HEADER,
    ExperimentSpec,
    PathSpec,
    ResultRow,
    binary_entropy,
    compare_attacks,
    confusion_counts,
    estimate_metrics,
    gnuplot_script,
    plugin_mutual_information,
    rows_to_csv,
    run_sweep,
    run_trial,
    simulate,
    summarize,
    write_outputs,
)

from tests.conftest import binomial_sigma


def spec_with(base: ExperimentSpec, **changes) -> ExperimentSpec:
    data = base.model_dump()
    for key, value in changes.items():
        if isinstance(value, dict) and isinstance(data.get(key), dict):
            data[key].update(value)
        else:
            data[key] = value
    return ExperimentSpec.model_validate(data)


@pytest.fixture
def perfect_spec(base_spec) -> ExperimentSpec:
    """强信号、极低虚警、无噪上报、无攻击"""
    return spec_with(
        base_spec,
        system={"transmit_power": 100.0, "target_pf": 1e-9},
        paths=[{"hops": [{"eps0": 0.0, "eps1": 0.0}] * base_spec.system.hop_count}],
        trials=300,
    )


def blinding_spec(base: ExperimentSpec, alpha: float, trials: int) -> ExperimentSpec:
    return spec_with(
        base,
        attack={"kind": "AF", "profile": {"alpha": min(alpha, 1.0)}},
        attack_policy="optimal",
        trials=trials,
    )


# -------- 配置 --------
def test_default_template_is_a_valid_experiment():
    spec = ExperimentSpec.model_validate_json(EXPERIMENT_CONFIG_TEMPLATE)
    assert spec.system.su_count == 10
    assert spec.system.antennas_per_su == 6
    assert spec.system.ris_elements == 9
    assert spec.system.hop_count == 8
    assert spec.sequence_length == 504
    assert spec.min_errors == 3000
    assert spec.sweep.axis == "snr_db"


def test_spec_save_and_load(tmp_path, base_spec):
    path = tmp_path / "exp.json"
    base_spec.save(path)
    assert ExperimentSpec.load(path) == base_spec


@pytest.mark.parametrize(
    "changes",
    [
        {"trials": 0},
        {"max_trials": 10, "trials": 100},
        {"paths": [{"hop_snr_db": 3.0}] * 3},
        {"paths": [{"hop_snr_db": 3.0, "hops": [{"eps0": 0.1, "eps1": 0.1}]}]},
        {"paths": [{"hop_snr_db": [1.0, 2.0]}]},
        {"sweep": {"axis": "alpha", "values": [0.2, 1.5]}},
        {"sweep": {"axis": "M", "values": [2.5]}},
    ],
)
def test_invalid_specs_are_rejected(base_spec, changes):
    with pytest.raises(ValueError):
        spec_with(base_spec, **changes)


def test_rule_name_is_case_insensitive(base_spec):
    assert spec_with(base_spec, rule="LOW-RELAY-SNR").rule == "low-relay-snr"


def test_per_su_paths(base_spec):
    paths = [{"hop_snr_db": float(i)} for i in range(base_spec.system.su_count)]
    resolved = spec_with(base_spec, paths=paths).resolve_paths()
    assert len(resolved) == base_spec.system.su_count
    assert resolved[0].eq.eps0 > resolved[-1].eq.eps0


def test_path_spec_resolves_explicit_hops():
    path = PathSpec(hops=[{"eps0": 0.1, "eps1": 0.2}]).resolve(1)
    assert path.eq.eps1 == 0.2
    with pytest.raises(ValueError):
        PathSpec(hops=[{"eps0": 0.1, "eps1": 0.2}]).resolve(2)


def test_sweep_value_substitution(base_spec):
    spec = spec_with(base_spec, attack={"kind": "RD", "profile": {"alpha": 0.4, "p01": 0.5, "p10": 0.5}})
    spec = spec_with(spec, sweep={"axis": "rd_sum", "values": [1.0, 1.6]})
    point = spec.with_sweep_value(1.6)
    assert point.attack.profile.p01 == pytest.approx(0.8)
    assert point.sweep is None
    n_spec = spec_with(base_spec, sweep={"axis": "N", "values": [5, 9]})
    assert n_spec.with_sweep_value(5).system.ris_elements == 5
    snr_spec = spec_with(base_spec, sweep={"axis": "snr_db", "values": [0.0]})
    assert snr_spec.with_sweep_value(10.0).paths[0].hop_snr_db == 10.0


def test_snr_sweep_replaces_per_su_paths(base_spec, caplog):
    paths = [{"hop_snr_db": float(i)} for i in range(base_spec.system.su_count)]
    spec = spec_with(base_spec, paths=paths, sweep={"axis": "snr_db", "values": [3.0]})
    with caplog.at_level("INFO"):
        point = spec.with_sweep_value(3.0)
    assert [p.hop_snr_db for p in point.paths] == [3.0]
    assert "被替换" in caplog.text


def test_rd_sum_axis_requires_random_flip(base_spec):
    spec = spec_with(base_spec, sweep={"axis": "rd_sum", "values": [1.0]})
    with pytest.raises(ValueError):
        spec.with_sweep_value(1.0)


# -------- 单次试验 --------
def test_trial_is_deterministic(base_spec):
    spec = spec_with(base_spec, attack={"kind": "AF", "profile": {"alpha": 0.4}})
    assert run_trial(spec, 17) == run_trial(spec, 17)
    assert run_trial(spec, 17) != run_trial(spec, 18)
    with pytest.raises(ValueError):
        run_trial(spec, -1)


def test_perfect_system_never_errs(perfect_spec):
    for i in range(perfect_spec.trials):
        h, decision, _ = run_trial(perfect_spec, i)
        assert decision == h


def test_blinding_attack_zeroes_statistic(base_spec):
    spec = blinding_spec(base_spec, 0.8, 100)
    assert spec.effective_attack().kind == "RD"
    for i in range(100):
        assert abs(run_trial(spec, i).statistic) < 1e-12


@pytest.mark.parametrize("mode", ["hop_by_hop", "waveform", "ris_off"])
def test_alternative_pipelines_run(base_spec, mode):
    changes = {
        "hop_by_hop": {"hop_by_hop": True},
        "waveform": {"sensing_mode": "waveform"},
        "ris_off": {"system": {"ris_enabled": False}},
    }[mode]
    spec = spec_with(base_spec, trials=200, **changes)
    row = estimate_metrics(spec)
    assert row.trials == 200
    assert row.errors == row.n01 + row.n10
    assert row.mean_abs_llr > 0.0


# -------- 指标 --------
def test_confusion_and_mutual_information():
    h = np.array([0, 0, 1, 1, 1])
    d = np.array([0, 1, 1, 1, 0])
    counts = confusion_counts(h, d)
    np.testing.assert_array_equal(counts, [[1, 1], [1, 2]])
    assert plugin_mutual_information([[50, 0], [0, 50]]) == pytest.approx(1.0)
    assert plugin_mutual_information([[0, 0], [0, 0]]) == 0.0


def test_independent_decisions_carry_no_information():
    rng = np.random.default_rng(3)
    h = rng.integers(0, 2, 10000)
    d = rng.integers(0, 2, 10000)
    assert plugin_mutual_information(confusion_counts(h, d)) <= 0.01


def test_symmetric_channel_information():
    rng = np.random.default_rng(5)
    n = 20000
    h = rng.integers(0, 2, n)
    d = np.where(rng.random(n) < 0.1, 1 - h, h)
    row = summarize(h, d, np.zeros(n))
    assert row.mi_bits == pytest.approx(1.0 - binary_entropy(row.ber), abs=0.02)
    assert row.n00 + row.n01 + row.n10 + row.n11 == n
    assert row.errors == row.n01 + row.n10


def test_perfect_system_metrics(perfect_spec):
    row = estimate_metrics(perfect_spec)
    assert row.ber == 0.0
    prior = (row.n10 + row.n11) / row.trials
    assert row.mi_bits == pytest.approx(binary_entropy(prior))
    assert row.mi_bits > 0.9
    assert row.eq_eps0 == 0.0


@pytest.mark.parametrize("alpha", [0.6, 0.8, 1.0])
def test_blinding_locks_error_rate_at_half(base_spec, alpha):
    row = estimate_metrics(blinding_spec(base_spec, alpha, 10000))
    assert row.ber == pytest.approx(0.5, abs=0.02)
    assert row.mi_bits < 0.01


@pytest.mark.parametrize("M", [4, 8])
@pytest.mark.parametrize("I", [8, 12])
@pytest.mark.parametrize("N", [5, 7])
def test_blinding_holds_for_every_geometry(base_spec, M, I, N):
    spec = spec_with(
        blinding_spec(base_spec, 0.8, 10000),
        system={"antennas_per_su": M, "su_count": I, "ris_elements": N},
    )
    row = estimate_metrics(spec)
    assert row.mean_abs_llr < 1e-12
    assert row.ber == pytest.approx(0.5, abs=0.02)
    assert row.mi_bits < 0.01


# -------- 停止准则 --------
def test_stop_rule_truncates_at_kth_error(base_spec, caplog):
    spec = spec_with(
        blinding_spec(base_spec, 0.8, 100), stop_after_errors=True, min_errors=150, max_trials=5000
    )
    with caplog.at_level("INFO"):
        batch = simulate(spec)
    assert "个错误处截断" in caplog.text
    errors = batch.errors
    assert errors.sum() == 150
    assert errors[-1] == 1
    assert batch.h.size > 100


def test_stop_rule_cap(base_spec, caplog):
    spec = spec_with(
        blinding_spec(base_spec, 0.8, 100), stop_after_errors=True, min_errors=10**6, max_trials=250
    )
    with caplog.at_level("WARNING"):
        batch = simulate(spec)
    assert batch.h.size == 250
    assert "试验上限" in caplog.text


def test_results_do_not_depend_on_worker_count(base_spec):
    spec = spec_with(
        base_spec,
        attack={"kind": "AF", "profile": {"alpha": 0.4}},
        trials=600,
        sequence_length=150,
        sweep={"axis": "snr_db", "values": [0.0, 6.0]},
    )
    single = rows_to_csv(run_sweep(spec_with(spec, workers=1)))
    parallel = rows_to_csv(run_sweep(spec_with(spec, workers=4)))
    assert single == parallel
    assert rows_to_csv(run_sweep(spec)) == single


def test_stop_rule_does_not_depend_on_worker_count(base_spec):
    spec = spec_with(
        blinding_spec(base_spec, 0.8, 100),
        stop_after_errors=True,
        min_errors=120,
        sequence_length=40,
    )
    a = simulate(spec_with(spec, workers=1))
    b = simulate(spec_with(spec, workers=4))
    np.testing.assert_array_equal(a.h, b.h)
    np.testing.assert_array_equal(a.statistic, b.statistic)


# -------- 扫描 --------
def test_attack_never_helps_across_snr(base_spec):
    sweep = {"axis": "snr_db", "values": [0.0, 6.0]}
    clean = run_sweep(spec_with(base_spec, sweep=sweep))
    attacked = run_sweep(
        spec_with(base_spec, sweep=sweep, attack={"kind": "AF", "profile": {"alpha": 0.4}})
    )
    assert [r.sweep_value for r in attacked] == [0.0, 6.0]
    for a, c in zip(attacked, clean):
        assert a.ber >= c.ber - 2.0 * binomial_sigma(c.ber, c.trials)


def test_more_byzantines_more_errors(base_spec):
    rows = run_sweep(
        spec_with(
            base_spec,
            attack={"kind": "AF", "profile": {"alpha": 0.2}},
            sweep={"axis": "alpha", "values": [0.2, 0.4]},
        )
    )
    low, high = rows
    sigma = np.hypot(binomial_sigma(low.ber, low.trials), binomial_sigma(high.ber, high.trials))
    assert high.ber >= low.ber - 2.0 * sigma
    assert high.mean_abs_llr <= low.mean_abs_llr


def test_flip_all_shrinks_mean_llr(base_spec):
    alphas = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]
    rows = run_sweep(
        spec_with(
            base_spec,
            attack={"kind": "AF", "profile": {"alpha": 0.0}},
            sweep={"axis": "alpha", "values": alphas},
        )
    )
    assert [r.sweep_value for r in rows] == alphas
    magnitudes = [r.mean_abs_llr for r in rows]
    assert all(a > b for a, b in zip(magnitudes, magnitudes[1:]))
    # α=0.5 时 π01+π10=1，FC 失明
    assert magnitudes[-1] == 0.0
    for low, high in zip(rows, rows[1:]):
        sigma = np.hypot(binomial_sigma(low.ber, low.trials), binomial_sigma(high.ber, high.trials))
        assert high.ber >= low.ber - 2.0 * sigma


def test_more_ris_elements_fewer_errors(base_spec):
    rows = run_sweep(spec_with(base_spec, sweep={"axis": "N", "values": [5, 9]}))
    small, large = rows
    sigma = np.hypot(binomial_sigma(small.ber, small.trials), binomial_sigma(large.ber, large.trials))
    assert large.ber <= small.ber + 3.0 * sigma


# -------- 攻击对比 --------
def test_compare_attacks_small_scale_ordering(base_spec):
    alpha = 0.4
    modes = [
        NamedAttack.build("AN", alpha),
        NamedAttack.build("AY", alpha),
        NamedAttack.build("AF", alpha),
        NamedAttack.build("RD", alpha, p01=0.75, p10=0.75),
    ]
    table = compare_attacks(spec_with(base_spec, trials=3000), modes)
    labels = [r.mode for r in table.rows]
    assert labels[:2] == ["AF", "RD(0.75,0.75)"]
    bers = [r.ber for r in table.rows]
    assert bers == sorted(bers, reverse=True)
    assert table.agreement
    assert table.trials == 3000
    tie = [p for p in table.pairs if {p.stronger, p.weaker} == {"AN", "AY"}]
    assert tie[0].verdict == "proxy-tie"
    af_vs_an = [p for p in table.pairs if p.stronger == "AF" and p.weaker == "AN"]
    assert af_vs_an[0].verdict == "agree"


def regime_modes(alpha: float, rd_flip: float, with_af: bool) -> list[NamedAttack]:
    modes = [
        NamedAttack.build("AN", alpha),
        NamedAttack.build("AY", alpha),
        NamedAttack.build("RD", alpha, p01=rd_flip, p10=rd_flip),
    ]
    if with_af:
        modes.append(NamedAttack.build("AF", alpha))
    return modes


def kind_of(label: str) -> str:
    return "RD" if label.startswith("RD") else label


# (α, RD 单向翻转概率, 是否含 AF, 按强度分组的预期顺序)
REGIME_PANELS = {
    "small-low-flip": (0.4, 0.2, False, [{"AN", "AY"}, {"RD"}]),
    "small-high-flip": (0.4, 0.75, True, [{"AF"}, {"RD"}, {"AN", "AY"}]),
    "mid-low-flip": (0.55, 0.2, False, [{"AN", "AY"}, {"RD"}]),
    "mid-af-band": (0.55, 0.7, True, [{"AF"}, {"RD"}, {"AN", "AY"}]),
    "mid-rd-band": (0.55, 0.95, True, [{"RD"}, {"AF"}, {"AN", "AY"}]),
    "large-low-flip": (0.8, 0.2, False, [{"AN", "AY"}, {"RD"}]),
    "large-rd-band": (0.8, 0.55, True, [{"RD"}, {"AN", "AY"}, {"AF"}]),
    "large-an-band": (0.8, 0.95, True, [{"AN", "AY"}, {"RD"}, {"AF"}]),
}


@pytest.mark.parametrize("panel", list(REGIME_PANELS))
def test_compare_attacks_regime_ordering(base_spec, panel):
    alpha, rd_flip, with_af, groups = REGIME_PANELS[panel]
    table = compare_attacks(spec_with(base_spec, trials=6000), regime_modes(alpha, rd_flip, with_af))
    assert table.assignment_mode == "iid_bernoulli"
    assert table.agreement
    for pair in table.pairs:
        assert pair.verdict in {"agree", "proxy-tie"}, pair
    observed = [kind_of(r.mode) for r in table.rows]
    start = 0
    for group in groups:
        assert set(observed[start:start + len(group)]) == group
        start += len(group)


def test_an_af_crossover_sits_above_two_thirds(base_spec):
    """α=0.7 时代理量预测 AN/AY 最强，但精确融合下 AF 仍比 AN/AY 更强"""
    table = compare_attacks(spec_with(base_spec, trials=6000), regime_modes(0.7, 0.95, True))
    observed = [kind_of(r.mode) for r in table.rows]
    assert observed[0] == "RD"
    assert observed.index("AF") < observed.index("AN")
    assert observed.index("AF") < observed.index("AY")
    assert not table.agreement
    flipped = [p for p in table.pairs if p.weaker == "AF" and p.stronger in {"AN", "AY"}]
    assert len(flipped) == 2
    assert all(p.verdict == "disagree" for p in flipped)


@pytest.mark.parametrize("assignment", [None, "iid_bernoulli"])
def test_compare_attacks_assignment_override(mocker, base_spec, assignment):
    spy = mocker.spy(attack_comparison, "simulate")
    modes = [NamedAttack.build("AF", 0.4), NamedAttack.build("AN", 0.4, assignment_mode="iid_bernoulli")]
    table = compare_attacks(spec_with(base_spec, trials=200), modes, assignment_mode=assignment)
    assert table.assignment_mode == assignment
    used = [c.args[0].attack.profile.assignment_mode for c in spy.call_args_list]
    expected = ["fixed_fraction", "iid_bernoulli"] if assignment is None else ["iid_bernoulli"] * 2
    assert used == expected


def test_compare_attacks_needs_modes(base_spec):
    with pytest.raises(ValueError):
        compare_attacks(base_spec, [])


# -------- 输出 --------
def test_csv_layout():
    rows = [
        ResultRow(sweep_value=None, ber=0.25, mean_abs_llr=1.5, mi_bits=0.1, trials=4, errors=1, n00=2, n01=0, n10=1, n11=1),
        ResultRow(sweep_value=2.0, ber=0.0, mean_abs_llr=3.0, mi_bits=1.0, trials=2, errors=0, n00=1, n01=0, n10=0, n11=1),
    ]
    lines = rows_to_csv(rows).splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1] == ",0.25,1.5,0.1,4,1,2,0,1,1"
    assert lines[2].startswith("2.0,0.0,")


def test_write_outputs(tmp_path):
    row = ResultRow(sweep_value=1.0, ber=0.1, mean_abs_llr=2.0, mi_bits=0.5, trials=10, errors=1, n00=5, n01=1, n10=0, n11=4, eq_eps0=0.01, eq_eps1=0.02)
    files = write_outputs([row], tmp_path / "out" / "run.csv", axis="snr_db")
    mirror = json.loads((tmp_path / "out" / "run.json").read_text(encoding="utf-8"))
    assert mirror[0]["eq_eps1"] == 0.02
    script = (tmp_path / "out" / "run.gp").read_text(encoding="utf-8")
    assert "'run.csv'" in script and "set logscale y" in script
    assert set(files) == {"csv", "json", "gp"}


def test_gnuplot_uses_axis_label():
    assert "set xlabel 'alpha'" in gnuplot_script("a.csv", "alpha")

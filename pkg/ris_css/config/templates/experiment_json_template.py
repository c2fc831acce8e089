# experiment.json 文件模板（默认场景：I=10, M=6, N=9, J=8, T=50）
EXPERIMENT_CONFIG_TEMPLATE = """{
    "system": {
        "su_count": 10,
        "antennas_per_su": 6,
        "ris_elements": 9,
        "hop_count": 8,
        "sample_count": 50,
        "transmit_power": 0.01,
        "noise_variance": 1.0,
        "prior_h1": 0.5,
        "target_pf": 0.1,
        "seed": 20240601,
        "ris_enabled": true
    },
    "attack": {
        "kind": "AF",
        "profile": {
            "alpha": 0.4,
            "assignment_mode": "fixed_fraction"
        }
    },
    "attack_policy": "fixed",
    "rule": "optimal",
    "paths": [
        {
            "hop_snr_db": 6.0
        }
    ],
    "sensing_mode": "analytic",
    "hop_by_hop": false,
    "trials": 10080,
    "stop_after_errors": false,
    "min_errors": 3000,
    "max_trials": 1000000,
    "sequence_length": 504,
    "workers": 1,
    "sweep": {
        "axis": "snr_db",
        "values": [-2.0, 0.0, 2.0, 4.0, 6.0, 8.0, 10.0]
    }
}
"""

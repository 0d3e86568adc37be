"""Tests for the experiment configuration models.

Validates:
  - `{}` is a complete config with the default network setting
  - Cross-field shape checks name the offending field
  - Tagged unions round-trip through JSON by their `kind`
  - Boundary models keep the RunResult envelope
"""

from __future__ import annotations

import pytest
from pydantic import ValidationError
from spectra_shared.config_models import (
    EventDrivenTraffic,
    ExperimentConfig,
    ExponentialTraffic,
    GpdParams,
    GpdTraffic,
    PeriodicTraffic,
    Policy,
    RadioConfig,
)
from spectra_shared.models import RunResult
from spectra_shared.sim_models import ExperimentResult, PublishResult, ReplicationPointer

# ============================================================================
# Defaults
# ============================================================================


class TestDefaults:
    def test_empty_document_is_the_reference_setting(self):
        cfg = ExperimentConfig.model_validate_json("{}")
        assert (cfg.channels, cfg.devices) == (5, 20)
        assert cfg.horizon == 20_000
        assert cfg.replications == 50
        assert cfg.policies == list(Policy)
        assert cfg.radio.p_detect == 0.95
        assert cfg.radio.p_false_alarm == 0.05
        assert cfg.radio.channel_error == 0.05
        assert cfg.assign.eta == 0.2
        assert cfg.residual.support == 100
        assert cfg.residual.hold_frames == 2
        assert cfg.exploration.t_int == 0.1
        spsa = cfg.exploration.spsa
        assert (spsa.a, spsa.alpha, spsa.v, spsa.gamma, spsa.epsilon0) == (5.0, 0.2, 0.1, 0.4, 0.1)
        assert isinstance(cfg.traffic.su, EventDrivenTraffic)

    def test_sensing_overhead_is_a_fraction_of_the_frame(self):
        assert RadioConfig().sensing_overhead == pytest.approx(0.2)

    def test_policy_index_follows_declaration_order(self):
        assert [p.index for p in Policy] == list(range(6))
        assert Policy("genie") is Policy.GENIE


# ============================================================================
# Validation
# ============================================================================


class TestValidation:
    def test_zero_channels_rejected(self):
        with pytest.raises(ValidationError) as exc:
            ExperimentConfig(channels=0)
        assert exc.value.errors()[0]["loc"] == ("channels",)

    def test_pu_channel_count_must_match(self):
        with pytest.raises(ValidationError, match="pu_channels"):
            ExperimentConfig.model_validate(
                {
                    "channels": 2,
                    "traffic": {
                        "pu_channels": [{"kind": "exponential", "mean_on": 1, "mean_off": 2}]
                    },
                }
            )

    def test_capacity_shape_must_match(self):
        with pytest.raises(ValidationError, match="capacity"):
            ExperimentConfig(channels=2, devices=1, radio=RadioConfig(capacity=[[1.0]]))

    def test_sensing_must_fit_in_frame(self):
        with pytest.raises(ValidationError, match="sensing_ms"):
            RadioConfig(frame_ms=10.0, sensing_ms=10.0)

    def test_duplicate_policies_rejected(self):
        with pytest.raises(ValidationError, match="repeat"):
            ExperimentConfig(policies=[Policy.GENIE, Policy.GENIE])

    def test_empty_policy_list_rejected(self):
        with pytest.raises(ValidationError, match="at least one"):
            ExperimentConfig(policies=[])

    def test_negative_gpd_shape_rejected(self):
        with pytest.raises(ValidationError):
            GpdParams(shape=-0.1, scale=1.0, location=0.0)

    def test_unknown_traffic_kind_points_at_discriminator(self):
        with pytest.raises(ValidationError, match="kind"):
            ExperimentConfig.model_validate({"traffic": {"su": {"kind": "payload_exchange"}}})

    def test_inverted_exponential_range_rejected(self):
        with pytest.raises(ValidationError, match="exp_mean_min"):
            ExperimentConfig.model_validate(
                {"traffic": {"pu_randomization": {"exp_mean_min": 300, "exp_mean_max": 200}}}
            )

    def test_unknown_demand_mode_rejected(self):
        with pytest.raises(ValidationError) as exc:
            ExperimentConfig.model_validate({"traffic": {"su_demand": "queue"}})
        assert exc.value.errors()[0]["loc"] == ("traffic", "su_demand")

    def test_demand_expires_by_default(self):
        assert ExperimentConfig().traffic.su_demand == "deadline"


# ============================================================================
# Tagged unions and per-device traffic
# ============================================================================


class TestUnions:
    def test_pu_models_parse_by_kind(self):
        cfg = ExperimentConfig.model_validate(
            {
                "channels": 2,
                "traffic": {
                    "pu_channels": [
                        {"kind": "exponential", "mean_on": 3, "mean_off": 7},
                        {
                            "kind": "gpd",
                            "on": {"shape": 0.1, "scale": 50, "location": 5},
                            "off": {"shape": 0.2, "scale": 50, "location": 8},
                        },
                    ]
                },
            }
        )
        assert cfg.traffic.pu_channels is not None
        assert isinstance(cfg.traffic.pu_channels[0], ExponentialTraffic)
        assert isinstance(cfg.traffic.pu_channels[1], GpdTraffic)

    def test_device_traffic_defaults_to_shared_class(self):
        cfg = ExperimentConfig(devices=3, traffic={"su": {"kind": "periodic"}})
        assert all(isinstance(cfg.device_traffic(d), PeriodicTraffic) for d in range(3))

    def test_device_traffic_per_device_override(self):
        cfg = ExperimentConfig.model_validate(
            {
                "devices": 2,
                "traffic": {"su_devices": [{"kind": "periodic"}, {"kind": "event_driven"}]},
            }
        )
        assert isinstance(cfg.device_traffic(0), PeriodicTraffic)
        assert isinstance(cfg.device_traffic(1), EventDrivenTraffic)

    def test_json_round_trip_is_lossless(self):
        cfg = ExperimentConfig(channels=3, devices=4, seed=17, policies=[Policy.TRADITIONAL])
        assert ExperimentConfig.model_validate_json(cfg.model_dump_json()) == cfg


# ============================================================================
# Result envelopes
# ============================================================================


class TestEnvelopes:
    def test_results_extend_run_result(self):
        for model in (ReplicationPointer, PublishResult, ExperimentResult):
            assert issubclass(model, RunResult)

    def test_failed_envelope_carries_message(self):
        result = ExperimentResult(success=False, message="output directory not writable")
        assert result.files == []
        assert result.failed_replications == 0

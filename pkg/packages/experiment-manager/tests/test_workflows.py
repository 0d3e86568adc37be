"""Tests for the experiment workflow: structural verification.

Multi-queue dispatch against a live Temporal server belongs in integration
tests. Here we verify decoration and the request/result contracts.
"""

from __future__ import annotations

import json

from spectra_experiment_manager.workflows.run_experiment import RunExperimentWorkflow
from spectra_shared.config_models import ExperimentConfig
from spectra_shared.models import RunResult
from spectra_shared.sim_models import ExperimentRequest, ExperimentResult


class TestWorkflowStructure:
    def test_is_decorated(self):
        assert hasattr(RunExperimentWorkflow, "__temporal_workflow_definition")

    def test_has_run(self):
        assert hasattr(RunExperimentWorkflow(), "run")


class TestExperimentModels:
    def test_request_roundtrip(self):
        req = ExperimentRequest(config=ExperimentConfig(devices=7), out_dir="/data/run-1")
        restored = ExperimentRequest(**json.loads(req.model_dump_json()))
        assert restored.config.devices == 7
        assert restored.out_dir == "/data/run-1"

    def test_result_defaults(self):
        result = ExperimentResult(success=True, message="ok")
        assert isinstance(result, RunResult)
        assert result.files == []
        assert result.summaries == []
        assert result.failed_replications == 0

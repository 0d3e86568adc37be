"""Tests for the Temporal connection factory.

Client.connect is patched with an AsyncMock; no cluster is needed.
"""

from __future__ import annotations

from unittest.mock import AsyncMock, patch

import pytest
from spectra_shared import temporal_client
from spectra_shared.temporal_client import DEFAULT_ADDRESS, connect


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    for var in (
        "TEMPORAL_ADDRESS",
        "TEMPORAL_NAMESPACE",
        "TEMPORAL_API_KEY",
        "TEMPORAL_REGIONAL_ENDPOINT",
    ):
        monkeypatch.delenv(var, raising=False)


class TestConnect:
    async def test_dev_server_defaults(self):
        mock = AsyncMock(return_value="client")
        with patch.object(temporal_client.Client, "connect", mock):
            assert await connect() == "client"
        args, kwargs = mock.call_args
        assert args == (DEFAULT_ADDRESS,)
        assert kwargs["namespace"] == "default"
        assert "tls" not in kwargs

    async def test_address_from_environment(self, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setenv("TEMPORAL_ADDRESS", "temporal:7233")
        monkeypatch.setenv("TEMPORAL_NAMESPACE", "sims")
        mock = AsyncMock()
        with patch.object(temporal_client.Client, "connect", mock):
            await connect()
        assert mock.call_args.args == ("temporal:7233",)
        assert mock.call_args.kwargs["namespace"] == "sims"

    async def test_cloud_uses_regional_endpoint_and_tls(self, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setenv("TEMPORAL_API_KEY", "secret")
        monkeypatch.setenv("TEMPORAL_REGIONAL_ENDPOINT", "us-east-1.aws.api.temporal.io:7233")
        mock = AsyncMock()
        with patch.object(temporal_client.Client, "connect", mock):
            await connect()
        assert mock.call_args.args == ("us-east-1.aws.api.temporal.io:7233",)
        assert mock.call_args.kwargs["tls"] is True
        assert mock.call_args.kwargs["api_key"] == "secret"

    async def test_api_key_without_endpoint_is_a_configuration_error(
        self, monkeypatch: pytest.MonkeyPatch
    ):
        monkeypatch.setenv("TEMPORAL_API_KEY", "secret")
        with pytest.raises(ValueError, match="TEMPORAL_REGIONAL_ENDPOINT"):
            await connect()

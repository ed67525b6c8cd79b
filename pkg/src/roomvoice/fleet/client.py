"""Device-side fleet client: register, heartbeat, poll config, ship telemetry.

The device must keep working when the fleet service is down, so telemetry
posting swallows transport errors (they are logged, not raised).
"""

import logging

import requests

from roomvoice.fleet.service import TOKEN_HEADER

logger = logging.getLogger(__name__)


class FleetClient:
    def __init__(self, endpoint: str, device_id: str, token: str | None = None,
                 timeout_s: float = 5.0, session=None):
        self.endpoint = endpoint.rstrip("/")
        self.device_id = device_id
        self.timeout_s = timeout_s
        self._session = session or requests.Session()
        self._headers = {TOKEN_HEADER: token} if token else {}

    def _url(self, suffix: str = "") -> str:
        return f"{self.endpoint}/devices/{self.device_id}{suffix}"

    def register(self, name: str = "", capabilities=(), firmware: str = "") -> dict:
        resp = self._session.post(
            f"{self.endpoint}/devices",
            json={"device_id": self.device_id, "name": name,
                  "capabilities": sorted(capabilities), "firmware": firmware},
            headers=self._headers, timeout=self.timeout_s,
        )
        resp.raise_for_status()
        return resp.json()

    def heartbeat(self, report: dict | None = None) -> dict:
        resp = self._session.post(self._url("/heartbeat"), json=report or {},
                                  headers=self._headers, timeout=self.timeout_s)
        resp.raise_for_status()
        return resp.json()

    def fetch_config(self, have_version: int = 0) -> dict | None:
        """Latest bundle, or None when already current."""
        resp = self._session.get(self._url("/config"),
                                 params={"have": have_version},
                                 headers=self._headers, timeout=self.timeout_s)
        if resp.status_code == 304:
            return None
        resp.raise_for_status()
        return resp.json()["config"]

    def post_events(self, records: list[dict]) -> None:
        resp = self._session.post(self._url("/events"),
                                  json={"events": records},
                                  headers=self._headers, timeout=self.timeout_s)
        resp.raise_for_status()


class FleetEventSink:
    """Telemetry sink forwarding redacted runtime events to the fleet feed."""

    def __init__(self, endpoint: str, device_id: str, token: str | None = None):
        self.client = FleetClient(endpoint, device_id, token=token)

    def emit(self, record: dict) -> None:
        try:
            self.client.post_events([record])
        except requests.RequestException as exc:
            logger.warning("telemetry post failed (device keeps running): %s",
                           exc)

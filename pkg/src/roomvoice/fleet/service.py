"""Fleet administration HTTP service.

Endpoints (JSON bodies, machine-readable error codes):

    POST /devices                      register (idempotent)
    GET  /devices                      list with derived online status
    POST /devices/{id}/heartbeat       liveness + current config version
    PUT  /devices/{id}/config          optimistic-concurrency config push
    GET  /devices/{id}/config?have=N   bundle or 304
    POST /devices/{id}/events          device telemetry ingest
    GET  /devices/{id}/events?since=N  redacted event feed (polling)
    GET  /devices/{id}/events/stream   same feed as server-sent events

Devices poll config on heartbeat hints, so the service never dials in to a
device. Auth is one shared static token when configured.
"""

import asyncio
import json

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, StreamingResponse

from roomvoice.fleet.store import (
    ERR_CONFLICT,
    ERR_INVALID,
    ERR_NOT_FOUND,
    ERR_PRIVACY,
    FleetError,
    FleetStore,
)

STATUS_BY_CODE = {
    ERR_INVALID: 400,
    ERR_NOT_FOUND: 404,
    ERR_CONFLICT: 409,
    ERR_PRIVACY: 422,
}

TOKEN_HEADER = "x-auth-token"
SSE_POLL_S = 0.2


def create_app(store: FleetStore, token: str | None = None) -> FastAPI:
    app = FastAPI(title="fleet administration service")
    app.state.store = store

    @app.exception_handler(FleetError)
    async def fleet_error_handler(_request, exc: FleetError):
        body = {"error": exc.code, "detail": str(exc), **exc.extra}
        return JSONResponse(status_code=STATUS_BY_CODE.get(exc.code, 400),
                            content=body)

    @app.middleware("http")
    async def check_token(request: Request, call_next):
        if token is not None and request.headers.get(TOKEN_HEADER) != token:
            return JSONResponse(status_code=401,
                                content={"error": ERR_INVALID,
                                         "detail": "missing or bad token"})
        return await call_next(request)

    @app.post("/devices")
    async def register(request: Request):
        body = await _json_body(request)
        record, bundle = store.register(
            device_id=str(body.get("device_id", "")),
            name=str(body.get("name", "")),
            capabilities=body.get("capabilities", []),
            firmware=str(body.get("firmware", "")),
        )
        return {"device": record.to_dict(), "config_version": bundle.version}

    @app.get("/devices")
    async def list_devices():
        return {"devices": store.list_devices()}

    @app.get("/devices/{device_id}")
    async def get_device(device_id: str):
        return store.get_device(device_id)

    @app.post("/devices/{device_id}/heartbeat")
    async def heartbeat(device_id: str, request: Request):
        body = await _json_body(request, allow_empty=True)
        return store.heartbeat(device_id, report=body)

    @app.put("/devices/{device_id}/config")
    async def put_config(device_id: str, request: Request):
        body = await _json_body(request)
        if "expected_version" not in body:
            raise FleetError(ERR_INVALID, "expected_version is required")
        try:
            expected = int(body["expected_version"])
        except (TypeError, ValueError):
            raise FleetError(ERR_INVALID, "expected_version must be an integer")
        bundle = store.put_config(device_id, body.get("config", {}), expected)
        return {"config": bundle.to_dict()}

    @app.get("/devices/{device_id}/config")
    async def get_config(device_id: str, have: int = 0):
        bundle = store.get_config(device_id, have_version=have)
        if bundle is None:
            return Response(status_code=304)
        return {"config": bundle.to_dict()}

    @app.post("/devices/{device_id}/events")
    async def post_events(device_id: str, request: Request):
        body = await _json_body(request)
        records = body if isinstance(body, list) else body.get("events", [])
        next_index = store.append_events(device_id, records)
        return {"next": next_index}

    @app.get("/devices/{device_id}/events")
    async def get_events(device_id: str, since: int = 0):
        events, next_index = store.get_events(device_id, since=since)
        # "first" lets feed clients detect that the ring buffer dropped
        # records between their cursor and what came back.
        return {"events": events, "next": next_index,
                "first": next_index - len(events)}

    @app.get("/devices/{device_id}/events/stream")
    async def stream_events(request: Request, device_id: str, since: int = 0,
                            idle_timeout: float = 0.0):
        store.get_events(device_id)  # 404 now rather than mid-stream

        async def generate():
            cursor = since
            idle = 0.0
            while not await request.is_disconnected():
                events, next_index = store.get_events(device_id, since=cursor)
                if events:
                    idle = 0.0
                    for offset, event in enumerate(events):
                        payload = json.dumps(event, ensure_ascii=False)
                        yield f"id: {cursor + offset + 1}\ndata: {payload}\n\n"
                    cursor = next_index
                else:
                    idle += SSE_POLL_S
                    if 0.0 < idle_timeout <= idle:
                        return
                await asyncio.sleep(SSE_POLL_S)

        return StreamingResponse(generate(), media_type="text/event-stream")

    return app


async def _json_body(request: Request, allow_empty: bool = False):
    raw = await request.body()
    if not raw:
        if allow_empty:
            return {}
        raise FleetError(ERR_INVALID, "request body is required")
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise FleetError(ERR_INVALID, f"body is not valid JSON: {exc}")

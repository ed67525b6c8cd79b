/**
 * Fleet service client.
 *
 * The console is read-only except for config pushes: this class exposes
 * GETs plus exactly one mutating call (putConfig), and records every
 * request it makes so tests can assert that property.
 */

import type { ConfigBody, ConfigBundle, DeviceView, EventsPage } from "./types.js";

export type PushResult =
  | { kind: "ok"; config: ConfigBundle }
  | { kind: "conflict"; currentVersion: number; detail: string }
  | { kind: "rejected"; error: string; detail: string; field?: string }
  | { kind: "unreachable"; detail: string };

export interface RequestLogEntry {
  method: string;
  path: string;
}

export class FleetApi {
  readonly baseUrl: string;
  readonly requestLog: RequestLogEntry[] = [];
  private readonly headers: Record<string, string>;

  constructor(baseUrl: string, token?: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.headers = token ? { "x-auth-token": token } : {};
  }

  private async get(path: string): Promise<Response> {
    this.requestLog.push({ method: "GET", path });
    return fetch(this.baseUrl + path, { headers: this.headers });
  }

  async listDevices(): Promise<DeviceView[]> {
    const resp = await this.get("/devices");
    if (!resp.ok) throw new Error(`device list failed: HTTP ${resp.status}`);
    const body = (await resp.json()) as { devices: DeviceView[] };
    return body.devices;
  }

  async getConfig(deviceId: string): Promise<ConfigBundle> {
    const resp = await this.get(`/devices/${encodeURIComponent(deviceId)}/config`);
    if (!resp.ok) throw new Error(`config fetch failed: HTTP ${resp.status}`);
    const body = (await resp.json()) as { config: ConfigBundle };
    return body.config;
  }

  async getEvents(deviceId: string, since: number): Promise<EventsPage> {
    const resp = await this.get(
      `/devices/${encodeURIComponent(deviceId)}/events?since=${since}`,
    );
    if (!resp.ok) throw new Error(`event fetch failed: HTTP ${resp.status}`);
    return (await resp.json()) as EventsPage;
  }

  streamUrl(deviceId: string, since: number): string {
    return `${this.baseUrl}/devices/${encodeURIComponent(deviceId)}/events/stream?since=${since}`;
  }

  streamHeaders(): Record<string, string> {
    return { ...this.headers };
  }

  /** The console's only write. */
  async putConfig(
    deviceId: string,
    expectedVersion: number,
    body: ConfigBody,
  ): Promise<PushResult> {
    const path = `/devices/${encodeURIComponent(deviceId)}/config`;
    this.requestLog.push({ method: "PUT", path });
    let resp: Response;
    try {
      resp = await fetch(this.baseUrl + path, {
        method: "PUT",
        headers: { "content-type": "application/json", ...this.headers },
        body: JSON.stringify({ expected_version: expectedVersion, config: body }),
      });
    } catch (err) {
      return { kind: "unreachable", detail: String(err) };
    }
    if (resp.ok) {
      const data = (await resp.json()) as { config: ConfigBundle };
      return { kind: "ok", config: data.config };
    }
    const data = (await resp.json().catch(() => ({}))) as {
      error?: string;
      detail?: string;
      current_version?: number;
      field?: string;
    };
    if (resp.status === 409) {
      return {
        kind: "conflict",
        currentVersion: data.current_version ?? -1,
        detail: data.detail ?? "version conflict",
      };
    }
    return {
      kind: "rejected",
      error: data.error ?? `http_${resp.status}`,
      detail: data.detail ?? "request rejected",
      field: data.field,
    };
  }
}

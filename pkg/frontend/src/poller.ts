/**
 * Device list polling. On a failed refresh the previous data is retained
 * and flagged stale so the operator keeps context while the service is
 * unreachable.
 */

import { FleetApi } from "./api.js";
import type { DeviceView } from "./types.js";

export const DEFAULT_POLL_INTERVAL_MS = 5000;

export interface DeviceListState {
  devices: DeviceView[];
  stale: boolean;
  error: string | null;
  lastUpdated: number | null;
}

export class DeviceListPoller {
  state: DeviceListState = {
    devices: [],
    stale: false,
    error: null,
    lastUpdated: null,
  };
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly api: FleetApi,
    private readonly intervalMs: number = DEFAULT_POLL_INTERVAL_MS,
    private readonly onChange?: (state: DeviceListState) => void,
  ) {}

  async refresh(): Promise<DeviceListState> {
    try {
      const devices = await this.api.listDevices();
      this.state = {
        devices,
        stale: false,
        error: null,
        lastUpdated: Date.now(),
      };
    } catch (err) {
      this.state = {
        ...this.state,
        stale: true,
        error: String(err),
      };
    }
    this.onChange?.(this.state);
    return this.state;
  }

  start(): void {
    if (this.timer !== null) return;
    void this.refresh();
    this.timer = setInterval(() => void this.refresh(), this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}

/** Wire types for the fleet service. */

export interface DeviceView {
  device_id: string;
  name: string;
  capabilities: string[];
  firmware: string;
  registered_at: number;
  last_heartbeat: number;
  online: boolean;
  config_version: number;
}

export interface HotwordConfig {
  threshold: number;
  smooth_window: number;
  refractory_s: number;
}

export interface AsrConfig {
  endpoint: string;
  mode: "command" | "large_vocabulary";
}

/**
 * The privacy section an operator can edit. There is intentionally no
 * persist_audio field: voice recordings cannot be enabled from anywhere,
 * and the server rejects any payload that tries.
 */
export interface PrivacyConfig {
  persist_transcripts: boolean;
}

export interface ConfigBody {
  skills: Record<string, boolean>;
  hotword: HotwordConfig;
  asr: AsrConfig;
  privacy: PrivacyConfig;
}

export interface ConfigBundle extends ConfigBody {
  version: number;
}

/** One redacted telemetry record from a device. */
export interface FeedEvent {
  t?: number;
  state?: string;
  event?: string;
  intent?: string;
  skill?: string;
  outcome?: string;
  reason?: string;
  [key: string]: unknown;
}

export interface EventsPage {
  events: FeedEvent[];
  next: number;
  first: number;
}

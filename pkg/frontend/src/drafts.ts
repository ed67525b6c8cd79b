/**
 * Config drafts: an editable copy of a bundle plus the base version it was
 * loaded from. Every push carries that base version so the server's
 * optimistic check can catch concurrent operators.
 */

import { FleetApi, PushResult } from "./api.js";
import type { ConfigBody, ConfigBundle } from "./types.js";
import { FieldErrors, validateConfig } from "./validate.js";

export interface ConfigDraft {
  deviceId: string;
  baseVersion: number;
  body: ConfigBody;
}

export type PushOutcome =
  | { kind: "invalid"; errors: FieldErrors }
  | PushResult;

export function draftFrom(deviceId: string, bundle: ConfigBundle): ConfigDraft {
  const { version, ...body } = bundle;
  return {
    deviceId,
    baseVersion: version,
    body: structuredClone(body) as ConfigBody,
  };
}

/** Validate locally first; an invalid draft sends nothing at all. */
export async function pushDraft(
  api: FleetApi,
  draft: ConfigDraft,
): Promise<PushOutcome> {
  const errors = validateConfig(draft.body);
  if (Object.keys(errors).length > 0) {
    return { kind: "invalid", errors };
  }
  return api.putConfig(draft.deviceId, draft.baseVersion, draft.body);
}

/**
 * Reload-and-merge after a conflict: rebase the operator's edits onto the
 * server's current version. The edits win field-by-field; the base version
 * becomes the server's so the next push can succeed.
 */
export async function reloadAndMerge(
  api: FleetApi,
  draft: ConfigDraft,
): Promise<ConfigDraft> {
  const current = await api.getConfig(draft.deviceId);
  return {
    deviceId: draft.deviceId,
    baseVersion: current.version,
    body: structuredClone(draft.body) as ConfigBody,
  };
}

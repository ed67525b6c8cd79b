/**
 * Client-side config validation, mirroring the server's rules so an
 * invalid draft is caught inline and never sent.
 */

import type { ConfigBody } from "./types.js";

export type FieldErrors = Record<string, string>;

export function validateConfig(body: ConfigBody): FieldErrors {
  const errors: FieldErrors = {};
  const { threshold, smooth_window, refractory_s } = body.hotword;
  if (!(typeof threshold === "number" && threshold > 0 && threshold < 1)) {
    errors["hotword.threshold"] = "must be strictly between 0 and 1";
  }
  if (!(Number.isInteger(smooth_window) && smooth_window >= 1)) {
    errors["hotword.smooth_window"] = "must be an integer of at least 1";
  }
  if (!(typeof refractory_s === "number" && refractory_s >= 0)) {
    errors["hotword.refractory_s"] = "must be zero or more seconds";
  }
  if (body.asr.mode !== "command" && body.asr.mode !== "large_vocabulary") {
    errors["asr.mode"] = "must be command or large_vocabulary";
  }
  // Defense in depth: the type has no persist_audio, but a draft built
  // from unvalidated JSON could smuggle one in.
  if ("persist_audio" in (body.privacy as unknown as Record<string, unknown>)) {
    errors["privacy.persist_audio"] =
      "voice recording persistence does not exist and cannot be configured";
  }
  return errors;
}

/**
 * Pure view functions: application state in, HTML string out. The browser
 * bootstrap owns the DOM; tests assert on these strings directly.
 */

import type { ConfigDraft } from "./drafts.js";
import type { FeedItem } from "./feed.js";
import type { DeviceListState } from "./poller.js";
import type { FieldErrors } from "./validate.js";

export function escapeHtml(value: unknown): string {
  return String(value)
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function renderDeviceTable(state: DeviceListState): string {
  const parts: string[] = [];
  if (state.error !== null) {
    parts.push(
      `<div class="banner error">fleet service unreachable — showing last` +
        ` known data (${escapeHtml(state.error)})</div>`,
    );
  }
  if (state.stale) {
    parts.push(`<div class="banner stale">data may be stale</div>`);
  }
  if (state.devices.length === 0) {
    parts.push(`<p class="empty">no devices registered yet</p>`);
    return parts.join("\n");
  }
  const rows = [...state.devices]
    .sort((a, b) => a.device_id.localeCompare(b.device_id))
    .map((device) => {
      const status = device.online ? "online" : "offline";
      return (
        `<tr class="${status}" data-device="${escapeHtml(device.device_id)}">` +
        `<td>${escapeHtml(device.device_id)}</td>` +
        `<td>${escapeHtml(device.name)}</td>` +
        `<td class="status">${status}</td>` +
        `<td>${escapeHtml(device.capabilities.join(", "))}</td>` +
        `<td>v${escapeHtml(device.config_version)}</td>` +
        `</tr>`
      );
    });
  parts.push(
    `<table class="devices"><thead><tr>` +
      `<th>device</th><th>name</th><th>status</th>` +
      `<th>capabilities</th><th>config</th>` +
      `</tr></thead><tbody>${rows.join("")}</tbody></table>`,
  );
  return parts.join("\n");
}

export interface EditorOptions {
  errors?: FieldErrors;
  conflict?: { currentVersion: number };
  pushedVersion?: number;
}

function field(
  name: string,
  value: unknown,
  errors: FieldErrors,
  attrs = `type="text"`,
): string {
  const error = errors[name];
  return (
    `<label>${escapeHtml(name)}` +
    `<input name="${escapeHtml(name)}" value="${escapeHtml(value)}" ${attrs}>` +
    (error ? `<span class="field-error">${escapeHtml(error)}</span>` : "") +
    `</label>`
  );
}

export function renderConfigEditor(
  draft: ConfigDraft,
  options: EditorOptions = {},
): string {
  const errors = options.errors ?? {};
  const parts: string[] = [
    `<h2>configuration of ${escapeHtml(draft.deviceId)} ` +
      `(base v${draft.baseVersion})</h2>`,
  ];
  if (options.conflict) {
    parts.push(
      `<div class="conflict">another operator pushed first: server is at ` +
        `v${options.conflict.currentVersion}, your draft is based on ` +
        `v${draft.baseVersion}. ` +
        `<button name="reload-merge">reload and merge</button></div>`,
    );
  }
  if (options.pushedVersion !== undefined) {
    parts.push(`<div class="pushed">stored as v${options.pushedVersion}</div>`);
  }
  parts.push(`<form class="config">`);
  parts.push(field("hotword.threshold", draft.body.hotword.threshold, errors));
  parts.push(
    field("hotword.smooth_window", draft.body.hotword.smooth_window, errors),
  );
  parts.push(
    field("hotword.refractory_s", draft.body.hotword.refractory_s, errors),
  );
  parts.push(field("asr.endpoint", draft.body.asr.endpoint, errors));
  parts.push(field("asr.mode", draft.body.asr.mode, errors));
  for (const [skill, enabled] of Object.entries(draft.body.skills).sort()) {
    parts.push(
      `<label>skills.${escapeHtml(skill)}` +
        `<input name="skills.${escapeHtml(skill)}" type="checkbox"` +
        `${enabled ? " checked" : ""}></label>`,
    );
  }
  parts.push(
    `<label>privacy.persist_transcripts` +
      `<input name="privacy.persist_transcripts" type="checkbox"` +
      `${draft.body.privacy.persist_transcripts ? " checked" : ""}></label>`,
  );
  // Deliberately no control for audio persistence: the concept is not
  // representable in this UI, matching the service contract.
  parts.push(`<button name="push">push configuration</button>`);
  parts.push(`</form>`);
  return parts.join("\n");
}

export function renderEventFeed(items: FeedItem[]): string {
  if (items.length === 0) {
    return `<p class="empty">no events yet</p>`;
  }
  const lines = items.map((item) => {
    if (item.kind === "gap") {
      return `<li class="gap">— gap in feed —</li>`;
    }
    const r = item.record;
    const detail = [r.intent, r.skill, r.outcome, r.reason]
      .filter((part) => part !== undefined)
      .map(escapeHtml)
      .join(" · ");
    return (
      `<li class="event" data-seq="${item.seq}">` +
      `<span class="t">${escapeHtml(r.t ?? "")}</span> ` +
      `<span class="state">${escapeHtml(r.state ?? "")}</span> ` +
      `<span class="tag">${escapeHtml(r.event ?? "")}</span>` +
      (detail ? ` <span class="detail">${detail}</span>` : "") +
      `</li>`
    );
  });
  return `<ul class="feed">${lines.join("")}</ul>`;
}

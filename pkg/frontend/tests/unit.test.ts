import { describe, expect, it } from "vitest";

import { FleetApi } from "../src/api.js";
import { draftFrom, pushDraft } from "../src/drafts.js";
import { EventFeed } from "../src/feed.js";
import { parseSseChunks } from "../src/sse.js";
import { validateConfig } from "../src/validate.js";
import {
  renderConfigEditor,
  renderDeviceTable,
  renderEventFeed,
} from "../src/views.js";
import type { ConfigBody, ConfigBundle, DeviceView } from "../src/types.js";

function bundle(version = 1): ConfigBundle {
  return {
    version,
    skills: { lights: true, votes: false },
    hotword: { threshold: 0.85, smooth_window: 30, refractory_s: 1.0 },
    asr: { endpoint: "", mode: "command" },
    privacy: { persist_transcripts: false },
  };
}

function device(id: string, online: boolean): DeviceView {
  return {
    device_id: id,
    name: `Salle ${id}`,
    capabilities: ["audio"],
    firmware: "",
    registered_at: 0,
    last_heartbeat: 0,
    online,
    config_version: 1,
  };
}

describe("validation", () => {
  it("accepts the default bundle", () => {
    expect(validateConfig(draftFrom("d", bundle()).body)).toEqual({});
  });

  it("rejects out-of-range trigger threshold with a field error", () => {
    const body = draftFrom("d", bundle()).body;
    body.hotword.threshold = 1.5;
    const errors = validateConfig(body);
    expect(Object.keys(errors)).toEqual(["hotword.threshold"]);
  });

  it("rejects a smuggled persist_audio flag", () => {
    const body = draftFrom("d", bundle()).body;
    (body.privacy as Record<string, unknown>)["persist_audio"] = true;
    const errors = validateConfig(body);
    expect(errors["privacy.persist_audio"]).toBeDefined();
  });

  it("an invalid draft sends nothing at all", async () => {
    const api = new FleetApi("http://127.0.0.1:9"); // would fail if called
    const draft = draftFrom("d", bundle());
    draft.body.hotword.threshold = 2;
    const outcome = await pushDraft(api, draft);
    expect(outcome.kind).toBe("invalid");
    expect(api.requestLog).toEqual([]); // no HTTP traffic happened
  });
});

describe("device table view", () => {
  it("marks offline rows and keeps id order", () => {
    const html = renderDeviceTable({
      devices: [device("b", false), device("a", true)],
      stale: false,
      error: null,
      lastUpdated: 1,
    });
    expect(html).toContain(`<tr class="offline" data-device="b">`);
    expect(html).toContain(`<tr class="online" data-device="a">`);
    expect(html.indexOf(`data-device="a"`)).toBeLessThan(
      html.indexOf(`data-device="b"`),
    );
  });

  it("shows the unreachable banner while retaining rows", () => {
    const html = renderDeviceTable({
      devices: [device("a", true)],
      stale: true,
      error: "connect refused",
      lastUpdated: 1,
    });
    expect(html).toContain("unreachable");
    expect(html).toContain(`data-device="a"`);
  });

  it("renders an empty state", () => {
    const html = renderDeviceTable({
      devices: [],
      stale: false,
      error: null,
      lastUpdated: null,
    });
    expect(html).toContain("no devices");
  });
});

describe("config editor view", () => {
  it("has no control for audio persistence", () => {
    const html = renderConfigEditor(draftFrom("d", bundle()));
    expect(html).not.toContain("persist_audio");
    expect(html).toContain("persist_transcripts");
  });

  it("renders inline field errors", () => {
    const html = renderConfigEditor(draftFrom("d", bundle()), {
      errors: { "hotword.threshold": "must be strictly between 0 and 1" },
    });
    expect(html).toContain("field-error");
    expect(html).toContain("between 0 and 1");
  });

  it("renders the conflict view with both versions", () => {
    const html = renderConfigEditor(draftFrom("d", bundle(3)), {
      conflict: { currentVersion: 5 },
    });
    expect(html).toContain("server is at v5");
    expect(html).toContain("based on v3");
    expect(html).toContain("reload-merge");
  });
});

describe("event feed", () => {
  it("renders events and gap markers", () => {
    const html = renderEventFeed([
      { kind: "event", seq: 1, record: { t: 0.7, state: "IDLE", event: "HotwordTrigger" } },
      { kind: "gap" },
      { kind: "event", seq: 9, record: { t: 3.2, state: "EXECUTING", event: "ActionDone", skill: "lights" } },
    ]);
    expect(html).toContain("HotwordTrigger");
    expect(html).toContain("gap in feed");
    expect(html).toContain("lights");
  });

  it("ingest dedupes and detects dropped records", () => {
    const feed = new EventFeed(new FleetApi("http://unused"), "d");
    feed.ingest([{ event: "A" }, { event: "B" }], 0, 2);
    feed.ingest([], 2, 2); // nothing new
    expect(feed.items).toHaveLength(2);
    // ring buffer dropped records 2..99
    feed.ingest([{ event: "Z" }], 100, 101);
    expect(feed.items.map((i) => i.kind)).toEqual([
      "event",
      "event",
      "gap",
      "event",
    ]);
    expect(feed.cursor).toBe(101);
  });

  it("overlapping pages do not duplicate", () => {
    const feed = new EventFeed(new FleetApi("http://unused"), "d");
    feed.ingest([{ event: "A" }, { event: "B" }], 0, 2);
    feed.ingest([{ event: "B" }, { event: "C" }], 1, 3);
    expect(
      feed.items.map((i) => (i.kind === "event" ? i.record.event : "gap")),
    ).toEqual(["A", "B", "C"]);
  });
});

describe("sse parser", () => {
  it("parses ids and data across chunk boundaries", () => {
    const parser = parseSseChunks();
    expect(parser.push("id: 1\ndata: {\"a\"")).toEqual([]);
    const messages = parser.push(": 1}\n\nid: 2\ndata: {}\n\n");
    expect(messages).toEqual([
      { id: 1, data: '{"a": 1}' },
      { id: 2, data: "{}" },
    ]);
  });
});

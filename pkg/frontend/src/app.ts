/**
 * Browser bootstrap: wires the poller, config editor, and event feed into
 * the page. Everything interesting lives in the pure modules; this file is
 * the only one that touches the DOM.
 */

import { FleetApi } from "./api.js";
import { ConfigDraft, draftFrom, pushDraft, reloadAndMerge } from "./drafts.js";
import { EventFeed } from "./feed.js";
import { DEFAULT_POLL_INTERVAL_MS, DeviceListPoller } from "./poller.js";
import {
  EditorOptions,
  renderConfigEditor,
  renderDeviceTable,
  renderEventFeed,
} from "./views.js";

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function readNumber(form: HTMLElement, name: string): number {
  const input = form.querySelector<HTMLInputElement>(`[name="${name}"]`);
  return input ? Number(input.value) : NaN;
}

function main(): void {
  const params = new URLSearchParams(window.location.search);
  const baseUrl =
    params.get("fleet") ?? localStorage.getItem("fleet-url") ?? "http://127.0.0.1:8070";
  const token = params.get("token") ?? localStorage.getItem("fleet-token") ?? undefined;
  localStorage.setItem("fleet-url", baseUrl);

  const api = new FleetApi(baseUrl, token);
  el("fleet-url").textContent = baseUrl;

  const table = el("devices");
  const poller = new DeviceListPoller(api, DEFAULT_POLL_INTERVAL_MS, (state) => {
    table.innerHTML = renderDeviceTable(state);
  });
  poller.start();

  let draft: ConfigDraft | null = null;
  let feed: EventFeed | null = null;
  let feedAbort: AbortController | null = null;
  const editor = el("editor");
  const feedView = el("feed");

  function drawEditor(options: EditorOptions = {}): void {
    editor.innerHTML = draft ? renderConfigEditor(draft, options) : "";
  }

  function drawFeed(): void {
    feedView.innerHTML = feed ? renderEventFeed(feed.items) : "";
    feedView.scrollTop = feedView.scrollHeight;
  }

  async function attachFeed(deviceId: string): Promise<void> {
    feedAbort?.abort();
    feedAbort = new AbortController();
    feed = new EventFeed(api, deviceId);
    await feed.poll().catch(() => undefined);
    drawFeed();
    const signal = feedAbort.signal;
    // Streaming first; if the stream drops, fall back to 2 s polling until
    // a reconnect succeeds.
    for (;;) {
      if (signal.aborted || !feed) return;
      const clean = await feed.stream(signal, drawFeed);
      if (signal.aborted) return;
      drawFeed();
      if (!clean) {
        await new Promise((resolve) => setTimeout(resolve, 2000));
        await feed.poll().catch(() => undefined);
        drawFeed();
      }
    }
  }

  table.addEventListener("click", (event) => {
    const row = (event.target as HTMLElement).closest<HTMLElement>("tr[data-device]");
    if (!row) return;
    const deviceId = row.dataset["device"]!;
    void (async () => {
      draft = draftFrom(deviceId, await api.getConfig(deviceId));
      drawEditor();
      void attachFeed(deviceId);
    })();
  });

  editor.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.matches(`button[name="push"]`)) {
      event.preventDefault();
      if (!draft) return;
      const form = editor.querySelector<HTMLElement>("form.config")!;
      draft.body.hotword.threshold = readNumber(form, "hotword.threshold");
      draft.body.hotword.smooth_window = readNumber(form, "hotword.smooth_window");
      draft.body.hotword.refractory_s = readNumber(form, "hotword.refractory_s");
      for (const input of form.querySelectorAll<HTMLInputElement>("input[type=checkbox]")) {
        const name = input.name;
        if (name.startsWith("skills.")) {
          draft.body.skills[name.slice("skills.".length)] = input.checked;
        } else if (name === "privacy.persist_transcripts") {
          draft.body.privacy.persist_transcripts = input.checked;
        }
      }
      void (async () => {
        const outcome = await pushDraft(api, draft!);
        if (outcome.kind === "ok") {
          draft = draftFrom(draft!.deviceId, outcome.config);
          drawEditor({ pushedVersion: outcome.config.version });
          void poller.refresh();
        } else if (outcome.kind === "invalid") {
          drawEditor({ errors: outcome.errors });
        } else if (outcome.kind === "conflict") {
          drawEditor({ conflict: { currentVersion: outcome.currentVersion } });
        } else {
          drawEditor({ errors: { _: outcome.detail } });
        }
      })();
    }
    if (target.matches(`button[name="reload-merge"]`)) {
      event.preventDefault();
      if (!draft) return;
      void (async () => {
        draft = await reloadAndMerge(api, draft!);
        drawEditor();
      })();
    }
  });
}

main();

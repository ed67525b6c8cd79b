/**
 * The redacted event feed: server-sent streaming when available, polling
 * fallback, gap markers instead of silent loss, no duplication (the cursor
 * only moves forward).
 */

import { FleetApi } from "./api.js";
import { readSse } from "./sse.js";
import type { FeedEvent } from "./types.js";

export type FeedItem =
  | { kind: "event"; seq: number; record: FeedEvent }
  | { kind: "gap" };

export class EventFeed {
  items: FeedItem[] = [];
  cursor = 0;
  live = false;

  constructor(
    private readonly api: FleetApi,
    readonly deviceId: string,
  ) {}

  /** Append one page of events; inserts a gap marker when records were
   * dropped between the cursor and what the server still has. */
  ingest(events: FeedEvent[], first: number, next: number): void {
    if (first > this.cursor && this.items.length > 0) {
      this.markGap();
    }
    let seq = Math.max(first, this.cursor);
    const skip = this.cursor - first;
    for (const record of events.slice(Math.max(skip, 0))) {
      this.items.push({ kind: "event", seq: seq + 1, record });
      seq += 1;
    }
    this.cursor = Math.max(this.cursor, next);
  }

  markGap(): void {
    if (this.items.at(-1)?.kind !== "gap") {
      this.items.push({ kind: "gap" });
    }
  }

  async poll(): Promise<void> {
    const page = await this.api.getEvents(this.deviceId, this.cursor);
    this.ingest(page.events, page.first, page.next);
  }

  /**
   * Prefer streaming; on any stream failure mark the gap, take one polling
   * catch-up pass, and report false so the caller can retry or stay on
   * polling.
   */
  async stream(signal?: AbortSignal, onItem?: () => void): Promise<boolean> {
    try {
      this.live = true;
      await readSse(
        this.api.streamUrl(this.deviceId, this.cursor),
        (message) => {
          const record = JSON.parse(message.data) as FeedEvent;
          const seq = message.id ?? this.cursor + 1;
          if (seq <= this.cursor) return; // duplicate delivery
          if (seq > this.cursor + 1) this.markGap();
          this.items.push({ kind: "event", seq, record });
          this.cursor = seq;
          onItem?.();
        },
        { headers: this.api.streamHeaders(), signal },
      );
      return true;
    } catch (err) {
      if (signal?.aborted) return true;
      this.markGap();
      await this.poll().catch(() => undefined);
      return false;
    } finally {
      this.live = false;
    }
  }
}

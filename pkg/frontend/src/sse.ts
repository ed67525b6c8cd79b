/**
 * Minimal server-sent-events reader over fetch streams, usable in both the
 * browser and node (which has no global EventSource).
 */

export interface SseMessage {
  id: number | null;
  data: string;
}

export function parseSseChunks(): {
  push(text: string): SseMessage[];
} {
  let buffer = "";
  return {
    push(text: string): SseMessage[] {
      buffer += text;
      const messages: SseMessage[] = [];
      let sep: number;
      while ((sep = buffer.indexOf("\n\n")) !== -1) {
        const block = buffer.slice(0, sep);
        buffer = buffer.slice(sep + 2);
        let id: number | null = null;
        const dataLines: string[] = [];
        for (const line of block.split("\n")) {
          if (line.startsWith("id:")) {
            const parsed = Number(line.slice(3).trim());
            id = Number.isNaN(parsed) ? null : parsed;
          } else if (line.startsWith("data:")) {
            dataLines.push(line.slice(5).trimStart());
          }
        }
        if (dataLines.length > 0) {
          messages.push({ id, data: dataLines.join("\n") });
        }
      }
      return messages;
    },
  };
}

/**
 * Stream messages from an SSE endpoint until the signal aborts or the
 * server closes. Errors propagate so the caller can fall back to polling.
 */
export async function readSse(
  url: string,
  onMessage: (message: SseMessage) => void,
  options: { headers?: Record<string, string>; signal?: AbortSignal } = {},
): Promise<void> {
  const resp = await fetch(url, {
    headers: { accept: "text/event-stream", ...options.headers },
    signal: options.signal,
  });
  if (!resp.ok || resp.body === null) {
    throw new Error(`SSE connect failed: HTTP ${resp.status}`);
  }
  const reader = resp.body.getReader();
  const decoder = new TextDecoder();
  const parser = parseSseChunks();
  for (;;) {
    const { done, value } = await reader.read();
    if (done) return;
    for (const message of parser.push(decoder.decode(value, { stream: true }))) {
      onMessage(message);
    }
  }
}

/** Spawns the real Python fleet service for end-to-end tests. */

import { ChildProcess, spawn } from "node:child_process";
import net from "node:net";

export interface LiveService {
  baseUrl: string;
  port: number;
  stop(): Promise<void>;
}

export async function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const server = net.createServer();
    server.listen(0, "127.0.0.1", () => {
      const address = server.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port"));
        return;
      }
      const port = address.port;
      server.close(() => resolve(port));
    });
  });
}

export async function startFleetService(
  options: { heartbeatIntervalS?: number; stateDir?: string } = {},
): Promise<LiveService> {
  const port = await freePort();
  const args = [
    "-m",
    "roomvoice.cli",
    "fleet",
    "serve",
    "--listen",
    `127.0.0.1:${port}`,
  ];
  if (options.stateDir) {
    args.push("--state-dir", options.stateDir);
  }
  const env = { ...process.env };
  if (options.heartbeatIntervalS !== undefined) {
    env["ROOMVOICE_HEARTBEAT_INTERVAL"] = String(options.heartbeatIntervalS);
  }
  const child: ChildProcess = spawn("python3", args, {
    env,
    stdio: ["ignore", "pipe", "pipe"],
  });
  let stderr = "";
  child.stderr?.on("data", (chunk) => (stderr += chunk));

  const baseUrl = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 15000;
  for (;;) {
    try {
      const resp = await fetch(`${baseUrl}/devices`);
      if (resp.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      child.kill("SIGKILL");
      throw new Error(`fleet service did not start: ${stderr}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }

  return {
    baseUrl,
    port,
    stop: () =>
      new Promise<void>((resolve) => {
        child.once("exit", () => resolve());
        child.kill("SIGTERM");
        setTimeout(() => child.kill("SIGKILL"), 3000).unref();
      }),
  };
}

/** Test-harness device simulation (the console itself never POSTs these). */
export async function simulateDevice(
  baseUrl: string,
  deviceId: string,
  body: Record<string, unknown> = {},
): Promise<void> {
  const resp = await fetch(`${baseUrl}/devices`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ device_id: deviceId, ...body }),
  });
  if (!resp.ok) throw new Error(`register failed: ${resp.status}`);
}

export async function simulateHeartbeat(
  baseUrl: string,
  deviceId: string,
): Promise<void> {
  const resp = await fetch(`${baseUrl}/devices/${deviceId}/heartbeat`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: "{}",
  });
  if (!resp.ok) throw new Error(`heartbeat failed: ${resp.status}`);
}

export async function simulateEvents(
  baseUrl: string,
  deviceId: string,
  events: Record<string, unknown>[],
): Promise<void> {
  const resp = await fetch(`${baseUrl}/devices/${deviceId}/events`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ events }),
  });
  if (!resp.ok) throw new Error(`events post failed: ${resp.status}`);
}

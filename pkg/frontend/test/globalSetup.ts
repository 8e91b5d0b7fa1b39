// Spawns the offline backend once for the whole test run. The scripted
// session test drives it over real HTTP; component tests never touch it.

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export const SERVICE_URL = "http://127.0.0.1:8437";

let child: ChildProcess | null = null;

export async function setup(): Promise<void> {
  const dir = mkdtempSync(join(tmpdir(), "sketchquest-ui-"));
  const configPath = join(dir, "config.json");
  writeFileSync(
    configPath,
    JSON.stringify({
      listen: "127.0.0.1:8437",
      data_dir: join(dir, "data"),
      enable_monitor: false,
      provider: { mode: "offline" },
    }),
  );
  child = spawn("sketchquest", ["serve", "--config", configPath], {
    stdio: "ignore",
  });

  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const r = await fetch(`${SERVICE_URL}/sessions/probe`);
      if (r.status === 404) return; // service is answering
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      throw new Error("backend did not come up on " + SERVICE_URL);
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
}

export async function teardown(): Promise<void> {
  if (child) {
    child.kill("SIGTERM");
    child = null;
  }
}

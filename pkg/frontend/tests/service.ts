/** Spawns the real Python service for end-to-end tests. */

import { spawn, type ChildProcess } from "node:child_process";

export interface Service {
  base: string;
  stop: () => void;
}

export async function startService(corpusDir?: string): Promise<Service> {
  const port = 18000 + Math.floor(Math.random() * 4000);
  const base = `http://127.0.0.1:${port}`;
  const args = ["-m", "secmodel.cli", "serve", "--addr", `127.0.0.1:${port}`];
  if (corpusDir) {
    args.push("--corpus", corpusDir);
  }
  const proc: ChildProcess = spawn("python3", args, { stdio: "ignore" });
  let exited = false;
  proc.on("exit", () => {
    exited = true;
  });

  const deadline = Date.now() + 30_000;
  for (;;) {
    if (exited) {
      throw new Error("service process exited before binding");
    }
    try {
      const response = await fetch(`${base}/models`);
      if (response.ok) {
        break;
      }
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) {
      proc.kill("SIGKILL");
      throw new Error(`service did not come up on ${base}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }

  return {
    base,
    stop: () => {
      proc.kill("SIGTERM");
    },
  };
}

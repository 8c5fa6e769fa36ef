// Spawns the real Python service for the integration tests and tears it
// down afterwards. The port is exported to tests via BASE_URL.

import { spawn, type ChildProcess } from 'node:child_process';
import path from 'node:path';
import { fileURLToPath } from 'node:url';

const PORT = 8931;
export const BASE_URL = `http://127.0.0.1:${PORT}`;

const repoRoot = path.resolve(path.dirname(fileURLToPath(import.meta.url)), '..', '..', '..');

let service: ChildProcess | undefined;

async function waitUntilReady(): Promise<void> {
  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE_URL}/models/banking`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error('ahpkit service did not come up on ' + BASE_URL);
}

export async function setup(): Promise<void> {
  service = spawn('python3', ['-m', 'ahpkit.cli', 'serve'], {
    cwd: repoRoot,
    env: { ...process.env, AHPKIT_PORT: String(PORT), AHPKIT_HOST: '127.0.0.1' },
    stdio: 'ignore',
  });
  await waitUntilReady();
}

export async function teardown(): Promise<void> {
  service?.kill('SIGTERM');
}

import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";

import { Report } from "../src/model";

// Vitest runs with the package root as the working directory.
export const FIXTURE_CORPUS = resolve("test/fixtures/corpus.json");

/** Run the Python CLI; throws on nonzero exit. */
export function runCli(args: string[]): void {
  execFileSync("python3", ["-m", "lawlint.cli", ...args], {
    stdio: ["ignore", "ignore", "pipe"],
  });
}

/** Produce a report for the fixture corpus via the CLI External Interface. */
export function generateReport(extraArgs: string[] = []): Report {
  const outdir = mkdtempSync(join(tmpdir(), "lawlint-viewer-"));
  runCli([
    "detect",
    "--corpus",
    `fix=${FIXTURE_CORPUS}`,
    "--output-dir",
    outdir,
    "--seed",
    "0",
    ...extraArgs,
  ]);
  return JSON.parse(readFileSync(join(outdir, "report.json"), "utf-8")) as Report;
}

/** Re-run detection with a viewer-exported config fragment applied. */
export function rerunWithFragment(fragment: string): Report {
  const dir = mkdtempSync(join(tmpdir(), "lawlint-fragment-"));
  const cfgPath = join(dir, "fragment.json");
  const cfg = JSON.parse(fragment) as Record<string, unknown>;
  cfg.corpora = [{ label: "fix", path: FIXTURE_CORPUS }];
  cfg.output_dir = dir;
  writeFileSync(cfgPath, JSON.stringify(cfg));
  runCli(["detect", "--config", cfgPath, "--seed", "0"]);
  return JSON.parse(readFileSync(join(dir, "report.json"), "utf-8")) as Report;
}

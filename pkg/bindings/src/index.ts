/**
 * Typed bindings around the seg-eval command line tool.
 *
 * Every call shells out to the CLI and parses its JSON/CSV output, so the
 * numbers returned here are exactly the numbers the tool prints: no scoring
 * logic is reimplemented on this side. Inputs are pre-densified integer
 * label arrays; token parsing stays in the core.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface PenaltyWeightsConfig {
  delay?: number;
  transition?: number;
  isolation?: number;
  missing?: number;
}

export interface EvalConfig {
  alpha?: number;
  weights?: PenaltyWeightsConfig;
  margin?: number | "auto";
  measures?: string[];
}

export interface F1Report {
  precision: number;
  recall: number;
  f1: number;
  margin: number;
  matches: [number, number][];
}

export interface SmsBlock {
  start: number;
  end: number;
  length: number;
  predicted_label: number;
  atomicity: number;
  type: "delay" | "isolation" | "transition" | "missing";
  distance: number | null;
  penalty: number;
}

export interface SmsReport {
  score: number;
  n: number;
  total_error_length: number;
  blocks: SmsBlock[];
  per_type: Record<string, { count: number; length: number; penalty: number }>;
}

export interface EvaluationReport {
  schema: string;
  n: number;
  f1?: F1Report;
  covering?: number;
  ari?: number;
  nmi?: number;
  wari?: number;
  wnmi?: number;
  sms?: SmsReport;
}

export interface SweepRow {
  kind: string;
  length: number;
  position: number;
  measure: string;
  score: number;
}

/** Sweep description consumed by the CLI's sweep command. */
export interface SweepSpec {
  segment_lengths: number[];
  labels?: number[];
  axis?: "length" | "position" | "type";
  measures?: string[];
  alpha?: number;
  weights?: PenaltyWeightsConfig;
  margin?: number | "auto";
  grid: {
    kind: string;
    length: number;
    position?: number | null;
    seed?: number;
    fill_label?: number | null;
  }[];
}

const PYTHON = process.env.SEG_EVAL_PYTHON ?? "python3";

function runCli(args: string[]): string {
  const result = spawnSync(PYTHON, ["-m", "seg_eval.cli", ...args], {
    encoding: "utf-8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (result.error) {
    throw new Error(`failed to launch seg-eval: ${result.error.message}`);
  }
  if (result.status !== 0) {
    const diagnostic = result.stderr.trim() || `exit code ${result.status}`;
    throw new Error(diagnostic.replace(/^error:\s*/, ""));
  }
  return result.stdout;
}

function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "seg-eval-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

function writeLabels(dir: string, name: string, labels: number[]): string {
  if (labels.length === 0) {
    throw new Error("label sequences must be non-empty");
  }
  const path = join(dir, name);
  writeFileSync(path, labels.join("\n") + "\n", "utf-8");
  return path;
}

function configFlags(config: EvalConfig): string[] {
  const flags: string[] = [];
  if (config.alpha !== undefined) flags.push("--alpha", String(config.alpha));
  const w = config.weights ?? {};
  if (w.delay !== undefined) flags.push("--w-delay", String(w.delay));
  if (w.transition !== undefined) flags.push("--w-transition", String(w.transition));
  if (w.isolation !== undefined) flags.push("--w-isolation", String(w.isolation));
  if (w.missing !== undefined) flags.push("--w-missing", String(w.missing));
  if (config.margin !== undefined) flags.push("--margin", String(config.margin));
  if (config.measures !== undefined) flags.push("--measures", config.measures.join(","));
  return flags;
}

/** Score one prediction against the truth; mirrors the evaluate command. */
export function evaluate(
  gt: number[],
  pred: number[],
  config: EvalConfig = {},
): EvaluationReport {
  return withTempDir((dir) => {
    const gtPath = writeLabels(dir, "gt.txt", gt);
    const predPath = writeLabels(dir, "pred.txt", pred);
    const stdout = runCli(["evaluate", gtPath, predPath, ...configFlags(config)]);
    return JSON.parse(stdout) as EvaluationReport;
  });
}

/** The state matching score with full per-block diagnostics. */
export function sms(gt: number[], pred: number[], config: EvalConfig = {}): SmsReport {
  const report = evaluate(gt, pred, { ...config, measures: ["sms"] });
  return report.sms as SmsReport;
}

/** Boundary-weighted adjusted Rand index. */
export function wari(gt: number[], pred: number[], alpha?: number): number {
  const config: EvalConfig = { measures: ["wari"] };
  if (alpha !== undefined) config.alpha = alpha;
  return evaluate(gt, pred, config).wari as number;
}

/** Run a synthetic corruption sweep; mirrors the sweep command. */
export function sweep(spec: SweepSpec): SweepRow[] {
  return withTempDir((dir) => {
    const specPath = join(dir, "sweep.json");
    writeFileSync(specPath, JSON.stringify(spec), "utf-8");
    const stdout = runCli(["sweep", specPath]);
    return parseSweepCsv(stdout);
  });
}

function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.trim().split("\n");
  const header = lines[0].split(",");
  const expected = ["kind", "length", "position", "measure", "score"];
  if (header.join(",") !== expected.join(",")) {
    throw new Error(`unexpected sweep header: ${lines[0]}`);
  }
  return lines.slice(1).map((line) => {
    const [kind, length, position, measure, score] = line.split(",");
    return {
      kind,
      length: Number(length),
      position: Number(position),
      measure,
      score: Number(score),
    };
  });
}

import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { fileURLToPath } from "node:url";
import { Capability } from "./protocol.js";
import { Embedder, loadEmbedder } from "./backends/embedder.js";
import { Generator, Headliner, loadGenerator, loadHeadliner } from "./backends/generator.js";
import { CorefResolver, loadCoref } from "./backends/coref.js";

export interface ServiceConfig {
  port: number;
  device: string;
  maxBatchSize: number;
  checkpoints: Partial<Record<Capability, string>>;
  generationDefaults: {
    n: number;
    temperature: number;
    top_k: number;
    max_tokens: number;
  };
}

const HERE = dirname(fileURLToPath(import.meta.url));

export function defaultConfig(): ServiceConfig {
  const checkpoints = resolve(HERE, "..", "checkpoints");
  return {
    port: 8755,
    device: "cpu",
    maxBatchSize: 64,
    checkpoints: {
      embed: resolve(checkpoints, "embedder.json"),
      generate: resolve(checkpoints, "generator.json"),
      headline: resolve(checkpoints, "headliner.json"),
      coref: resolve(checkpoints, "coref.json"),
    },
    generationDefaults: { n: 10, temperature: 0.7, top_k: 2, max_tokens: 80 },
  };
}

export function loadConfig(path?: string): ServiceConfig {
  const config = defaultConfig();
  if (path) {
    const overrides = JSON.parse(readFileSync(path, "utf-8"));
    Object.assign(config, overrides);
    config.checkpoints = { ...defaultConfig().checkpoints, ...(overrides.checkpoints ?? {}) };
    config.generationDefaults = {
      ...defaultConfig().generationDefaults,
      ...(overrides.generationDefaults ?? {}),
    };
  }
  return config;
}

/** The models that actually loaded. /health reports exactly these. */
export interface LoadedModels {
  embedder?: Embedder;
  generator?: Generator;
  headliner?: Headliner;
  coref?: CorefResolver;
  failures: Partial<Record<Capability, string>>;
}

export function loadModels(config: ServiceConfig): LoadedModels {
  const loaded: LoadedModels = { failures: {} };
  const tryLoad = (capability: Capability, fn: () => void) => {
    const path = config.checkpoints[capability];
    if (!path) {
      loaded.failures[capability] = "no checkpoint configured";
      return;
    }
    try {
      fn();
    } catch (err) {
      loaded.failures[capability] = err instanceof Error ? err.message : String(err);
    }
  };
  tryLoad("embed", () => (loaded.embedder = loadEmbedder(config.checkpoints.embed!)));
  tryLoad("generate", () => (loaded.generator = loadGenerator(config.checkpoints.generate!)));
  tryLoad("headline", () => (loaded.headliner = loadHeadliner(config.checkpoints.headline!)));
  tryLoad("coref", () => (loaded.coref = loadCoref(config.checkpoints.coref!)));
  return loaded;
}

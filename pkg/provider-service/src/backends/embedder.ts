import { readFileSync } from "node:fs";
import { Rng, hash64 } from "../rng.js";

export interface Embedder {
  readonly dims: number;
  embed(texts: string[]): number[][];
}

interface HashCheckpoint {
  type: "hash";
  dims: number;
  seed: number;
}

interface TableCheckpoint {
  type: "table";
  dims: number;
  vectors: Record<string, number[]>;
}

const TOKEN_RE = /[a-z0-9]+(?:['-][a-z0-9]+)*/g;

/**
 * Deterministic featurizer: every token maps to a seeded pseudo-random unit
 * vector, a text to the L2-normalized mean of its token vectors. Stands in
 * for a sentence-transformer checkpoint; the wire contract (constant dims,
 * deterministic output) is identical.
 */
export class HashEmbedder implements Embedder {
  readonly dims: number;
  private readonly seed: number;
  private readonly cache = new Map<string, number[]>();

  constructor(checkpoint: HashCheckpoint) {
    if (!Number.isInteger(checkpoint.dims) || checkpoint.dims < 1) {
      throw new Error(`invalid embedder dims: ${checkpoint.dims}`);
    }
    this.dims = checkpoint.dims;
    this.seed = checkpoint.seed ?? 0;
  }

  private tokenVector(token: string): number[] {
    let vec = this.cache.get(token);
    if (!vec) {
      const rng = new Rng(hash64(this.seed, token));
      vec = Array.from({ length: this.dims }, () => rng.nextGaussian());
      normalize(vec);
      this.cache.set(token, vec);
    }
    return vec;
  }

  embed(texts: string[]): number[][] {
    return texts.map((text) => {
      const tokens = text.toLowerCase().match(TOKEN_RE) ?? [];
      const out = new Array<number>(this.dims).fill(0);
      if (tokens.length === 0) return out;
      for (const token of tokens) {
        const vec = this.tokenVector(token);
        for (let i = 0; i < this.dims; i++) out[i] += vec[i];
      }
      for (let i = 0; i < this.dims; i++) out[i] /= tokens.length;
      normalize(out);
      return out;
    });
  }
}

/** Precomputed text -> vector table (e.g. exported from a real encoder). */
export class TableEmbedder implements Embedder {
  readonly dims: number;
  private readonly table: Record<string, number[]>;

  constructor(checkpoint: TableCheckpoint) {
    this.dims = checkpoint.dims;
    this.table = checkpoint.vectors;
    for (const [key, vec] of Object.entries(this.table)) {
      if (vec.length !== this.dims) {
        throw new Error(`vector for '${key}' has ${vec.length} entries, expected ${this.dims}`);
      }
    }
  }

  embed(texts: string[]): number[][] {
    return texts.map((text) => {
      const vec = this.table[text];
      if (!vec) throw new Error(`no embedding for '${text}'`);
      return vec;
    });
  }
}

function normalize(vec: number[]): void {
  const norm = Math.sqrt(vec.reduce((acc, x) => acc + x * x, 0));
  if (norm > 0) for (let i = 0; i < vec.length; i++) vec[i] /= norm;
}

export function loadEmbedder(path: string): Embedder {
  const checkpoint = JSON.parse(readFileSync(path, "utf-8"));
  switch (checkpoint.type) {
    case "hash":
      return new HashEmbedder(checkpoint);
    case "table":
      return new TableEmbedder(checkpoint);
    default:
      throw new Error(`unknown embedder checkpoint type: ${checkpoint.type}`);
  }
}

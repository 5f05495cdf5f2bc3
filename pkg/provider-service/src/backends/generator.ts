import { readFileSync } from "node:fs";
import { Rng, hash64 } from "../rng.js";

export interface GenerationOptions {
  n: number;
  temperature: number;
  topK: number;
  seed: number;
  maxTokens: number;
}

export interface Generator {
  generate(unitText: string, titleText: string, options: GenerationOptions): string[];
}

interface ParaphraseCheckpoint {
  type: "paraphrase";
  synonyms: Record<string, string[]>;
}

const TOKEN_RE = /[A-Za-z][A-Za-z0-9]*(?:['-][A-Za-z0-9]+)*|\d+|[^\sA-Za-z0-9]/g;

/**
 * Deterministic sampling paraphraser standing in for a fine-tuned causal LM.
 *
 * At every position whose word has synonym alternatives the sampler chooses
 * among the top_k options (the original word first, then its synonyms) with
 * weights exp(-rank / temperature): higher temperature flattens the
 * distribution and substitutes more; top_k bounds the choice set. Candidate
 * i draws from an independent stream derived from (seed, inputs, i), so a
 * fixed seed reproduces the full candidate list and candidates differ from
 * one another. Even-indexed candidates may also swap the halves of the first
 * comma-separated clause pair, echoing sentence-level reordering.
 */
export class ParaphraseGenerator implements Generator {
  private readonly synonyms: Record<string, string[]>;

  constructor(checkpoint: ParaphraseCheckpoint) {
    this.synonyms = checkpoint.synonyms;
  }

  generate(unitText: string, titleText: string, options: GenerationOptions): string[] {
    const { n, temperature, topK, seed, maxTokens } = options;
    if (n < 1) throw new Error(`n must be >= 1, got ${n}`);
    if (temperature <= 0) throw new Error("temperature must be positive");
    const candidates: string[] = [];
    for (let i = 0; i < n; i++) {
      const rng = new Rng(hash64(seed, unitText, titleText, i));
      const tokens = unitText.match(TOKEN_RE) ?? [];
      const out: string[] = [];
      for (const token of tokens.slice(0, maxTokens)) {
        const alternatives = this.synonyms[token.toLowerCase()];
        if (!alternatives || alternatives.length === 0) {
          out.push(token);
          continue;
        }
        const options_ = [token, ...alternatives].slice(0, Math.max(1, topK));
        const weights = options_.map((_, rank) => Math.exp(-rank / temperature));
        let choice = options_[rng.choose(weights)];
        if (choice !== token && token[0] === token[0].toUpperCase()) {
          choice = choice[0].toUpperCase() + choice.slice(1);
        }
        out.push(choice);
      }
      let text = joinTokens(out);
      if (i % 2 === 1 && text.includes(", ")) {
        text = swapFirstClausePair(text);
      }
      candidates.push(text.length > 0 ? text : unitText);
    }
    return candidates;
  }
}

function joinTokens(tokens: string[]): string {
  let out = "";
  for (const token of tokens) {
    if (!/[A-Za-z0-9]/.test(token) && out.length > 0) {
      out += token;
    } else {
      out += (out.length > 0 ? " " : "") + token;
    }
  }
  return out;
}

function swapFirstClausePair(text: string): string {
  const idx = text.indexOf(", ");
  const head = text.slice(0, idx);
  const tail = text.slice(idx + 2).replace(/[.!?]+$/, "");
  if (tail.length === 0) return text;
  const newHead = tail[0].toUpperCase() + tail.slice(1);
  const newTail = head[0].toLowerCase() + head.slice(1);
  return `${newHead}, ${newTail}.`;
}

/** Lead-sentence headline generator standing in for a seq2seq checkpoint. */
export interface Headliner {
  headline(body: string): string;
}

interface LeadCheckpoint {
  type: "lead";
  maxWords: number;
}

export class LeadHeadliner implements Headliner {
  private readonly maxWords: number;

  constructor(checkpoint: LeadCheckpoint) {
    this.maxWords = checkpoint.maxWords ?? 12;
  }

  headline(body: string): string {
    const normalized = body.trim().replace(/\s+/g, " ");
    if (normalized.length === 0) throw new Error("empty body");
    const sentenceEnd = normalized.search(/[.!?](\s|$)/);
    const first = sentenceEnd >= 0 ? normalized.slice(0, sentenceEnd + 1) : normalized;
    return first.split(" ").slice(0, this.maxWords).join(" ");
  }
}

export function loadGenerator(path: string): Generator {
  const checkpoint = JSON.parse(readFileSync(path, "utf-8"));
  if (checkpoint.type !== "paraphrase") {
    throw new Error(`unknown generator checkpoint type: ${checkpoint.type}`);
  }
  return new ParaphraseGenerator(checkpoint);
}

export function loadHeadliner(path: string): Headliner {
  const checkpoint = JSON.parse(readFileSync(path, "utf-8"));
  if (checkpoint.type !== "lead") {
    throw new Error(`unknown headliner checkpoint type: ${checkpoint.type}`);
  }
  return new LeadHeadliner(checkpoint);
}

import { readFileSync } from "node:fs";

export interface CorefResolver {
  links(sentences: string[]): [number, number][];
}

interface RulesCheckpoint {
  type: "rules";
  linkWords: string[];
}

/**
 * Mention-cluster resolver collapsed to sentence-index links. A sentence
 * opening with a third-person pronoun or demonstrative is taken to corefer
 * with a mention in the previous sentence; each such mention pair collapses
 * to the (i, i+1) sentence link the engine's unit extraction consumes.
 */
export class RuleCorefResolver implements CorefResolver {
  private readonly linkWords: Set<string>;

  constructor(checkpoint: RulesCheckpoint) {
    this.linkWords = new Set(checkpoint.linkWords.map((w) => w.toLowerCase()));
  }

  links(sentences: string[]): [number, number][] {
    const out: [number, number][] = [];
    for (let i = 1; i < sentences.length; i++) {
      const match = sentences[i].match(/[A-Za-z][A-Za-z0-9]*(?:['-][A-Za-z0-9]+)*/);
      if (match && this.linkWords.has(match[0].toLowerCase())) {
        out.push([i - 1, i]);
      }
    }
    return out;
  }
}

export function loadCoref(path: string): CorefResolver {
  const checkpoint = JSON.parse(readFileSync(path, "utf-8"));
  if (checkpoint.type !== "rules") {
    throw new Error(`unknown coref checkpoint type: ${checkpoint.type}`);
  }
  return new RuleCorefResolver(checkpoint);
}

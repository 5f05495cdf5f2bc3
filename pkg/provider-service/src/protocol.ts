// Wire protocol shared by all endpoints. Field names are part of the
// contract consumed by the summarization engine's remote providers and
// its conformance checker; do not rename.

export const PROTOCOL_VERSION = "1";

export type Capability = "embed" | "generate" | "headline" | "coref";
export const CAPABILITIES: Capability[] = ["embed", "generate", "headline", "coref"];

export interface EmbedRequest {
  texts: string[];
}

export interface EmbedResponse {
  dims: number;
  vectors: number[][];
  protocol_version: string;
}

export interface GenerateRequest {
  unit_text: string;
  title_text: string;
  n: number;
  temperature: number;
  top_k: number;
  seed: number;
  max_tokens: number;
}

export interface GenerateResponse {
  candidates: string[];
  protocol_version: string;
}

export interface HeadlineRequest {
  body: string;
}

export interface HeadlineResponse {
  headline: string;
  protocol_version: string;
}

export interface CorefRequest {
  sentences: string[];
}

export interface CorefResponse {
  links: [number, number][];
  protocol_version: string;
}

export interface HealthResponse {
  status: string;
  capabilities: Capability[];
  dims: number;
  protocol_version: string;
}

export interface ErrorBody {
  error: { code: string; message: string };
  protocol_version: string;
}

export class RequestError extends Error {
  constructor(
    public code: string,
    message: string,
    public status = 400,
  ) {
    super(message);
  }
}

export function errorBody(code: string, message: string): ErrorBody {
  return { error: { code, message }, protocol_version: PROTOCOL_VERSION };
}

export function requireField<T>(body: Record<string, unknown>, name: string, check: (v: unknown) => v is T): T {
  const value = body[name];
  if (value === undefined || !check(value)) {
    throw new RequestError("BAD_REQUEST", `missing or invalid field '${name}'`);
  }
  return value;
}

export const isString = (v: unknown): v is string => typeof v === "string";
export const isNumber = (v: unknown): v is number => typeof v === "number" && Number.isFinite(v);
export const isStringArray = (v: unknown): v is string[] =>
  Array.isArray(v) && v.every((x) => typeof x === "string");

import { createServer, IncomingMessage, Server, ServerResponse } from "node:http";
import { parseArgs } from "node:util";
import {
  CAPABILITIES,
  Capability,
  PROTOCOL_VERSION,
  RequestError,
  errorBody,
  isNumber,
  isString,
  isStringArray,
  requireField,
} from "./protocol.js";
import { LoadedModels, ServiceConfig, defaultConfig, loadConfig, loadModels } from "./config.js";
import { InferenceQueue } from "./queue.js";

export class ProviderService {
  private readonly queues: Record<Capability, InferenceQueue> = {
    embed: new InferenceQueue(),
    generate: new InferenceQueue(),
    headline: new InferenceQueue(),
    coref: new InferenceQueue(),
  };

  constructor(
    private readonly config: ServiceConfig,
    private readonly models: LoadedModels,
  ) {}

  capabilities(): Capability[] {
    return CAPABILITIES.filter((c) => this.loadedFor(c));
  }

  private loadedFor(capability: Capability): boolean {
    switch (capability) {
      case "embed":
        return this.models.embedder !== undefined;
      case "generate":
        return this.models.generator !== undefined;
      case "headline":
        return this.models.headliner !== undefined;
      case "coref":
        return this.models.coref !== undefined;
    }
  }

  private requireCapability(capability: Capability): void {
    if (!this.loadedFor(capability)) {
      const reason = this.models.failures[capability] ?? "not loaded";
      throw new RequestError("CAPABILITY_DISABLED", `${capability} is disabled: ${reason}`, 503);
    }
  }

  async handle(path: string, body: Record<string, unknown>): Promise<unknown> {
    switch (path) {
      case "/health":
        return {
          status: "ok",
          capabilities: this.capabilities(),
          dims: this.models.embedder?.dims ?? 0,
          protocol_version: PROTOCOL_VERSION,
        };
      case "/embed": {
        this.requireCapability("embed");
        const texts = requireField(body, "texts", isStringArray);
        const embedder = this.models.embedder!;
        const vectors = await this.queues.embed.run(() => {
          const out: number[][] = [];
          for (let i = 0; i < texts.length; i += this.config.maxBatchSize) {
            out.push(...embedder.embed(texts.slice(i, i + this.config.maxBatchSize)));
          }
          return out;
        });
        return { dims: embedder.dims, vectors, protocol_version: PROTOCOL_VERSION };
      }
      case "/generate": {
        this.requireCapability("generate");
        const unitText = requireField(body, "unit_text", isString);
        const titleText = requireField(body, "title_text", isString);
        const defaults = this.config.generationDefaults;
        const options = {
          n: isNumber(body.n) ? body.n : defaults.n,
          temperature: isNumber(body.temperature) ? body.temperature : defaults.temperature,
          topK: isNumber(body.top_k) ? body.top_k : defaults.top_k,
          seed: isNumber(body.seed) ? body.seed : 0,
          maxTokens: isNumber(body.max_tokens) ? body.max_tokens : defaults.max_tokens,
        };
        const candidates = await this.queues.generate.run(() =>
          this.models.generator!.generate(unitText, titleText, options),
        );
        return { candidates, protocol_version: PROTOCOL_VERSION };
      }
      case "/headline": {
        this.requireCapability("headline");
        const bodyText = requireField(body, "body", isString);
        const headline = await this.queues.headline.run(() =>
          this.models.headliner!.headline(bodyText),
        );
        return { headline, protocol_version: PROTOCOL_VERSION };
      }
      case "/coref": {
        this.requireCapability("coref");
        const sentences = requireField(body, "sentences", isStringArray);
        const links = await this.queues.coref.run(() => this.models.coref!.links(sentences));
        return { links, protocol_version: PROTOCOL_VERSION };
      }
      default:
        throw new RequestError("NOT_FOUND", `unknown endpoint ${path}`, 404);
    }
  }

  createHttpServer(): Server {
    return createServer((req: IncomingMessage, res: ServerResponse) => {
      if (req.method !== "POST") {
        return send(res, 405, errorBody("BAD_REQUEST", "POST only"));
      }
      const chunks: Buffer[] = [];
      req.on("data", (chunk) => chunks.push(chunk));
      req.on("end", () => {
        let body: Record<string, unknown>;
        try {
          const raw = Buffer.concat(chunks).toString("utf-8");
          body = raw.length > 0 ? JSON.parse(raw) : {};
          if (typeof body !== "object" || body === null || Array.isArray(body)) {
            throw new Error("body must be a JSON object");
          }
        } catch (err) {
          return send(res, 400, errorBody("BAD_REQUEST", `invalid JSON body: ${err}`));
        }
        this.handle(req.url ?? "/", body)
          .then((payload) => send(res, 200, payload))
          .catch((err) => {
            if (err instanceof RequestError) {
              send(res, err.status, errorBody(err.code, err.message));
            } else {
              send(res, 500, errorBody("INTERNAL", String(err)));
            }
          });
      });
    });
  }
}

function send(res: ServerResponse, status: number, payload: unknown): void {
  const data = Buffer.from(JSON.stringify(payload), "utf-8");
  res.writeHead(status, { "Content-Type": "application/json", "Content-Length": data.length });
  res.end(data);
}

export function buildService(configPath?: string): ProviderService {
  const config = configPath ? loadConfig(configPath) : defaultConfig();
  const models = loadModels(config);
  return new ProviderService(config, models);
}

const isMain = process.argv[1] && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (isMain) {
  const { values } = parseArgs({
    options: {
      port: { type: "string" },
      config: { type: "string" },
    },
  });
  const service = buildService(values.config);
  const config = values.config ? loadConfig(values.config) : defaultConfig();
  const port = values.port !== undefined ? Number(values.port) : config.port;
  const server = service.createHttpServer();
  server.listen(port, "127.0.0.1", () => {
    const address = server.address();
    const actual = typeof address === "object" && address ? address.port : port;
    console.log(
      JSON.stringify({
        listening: actual,
        capabilities: service.capabilities(),
      }),
    );
  });
}

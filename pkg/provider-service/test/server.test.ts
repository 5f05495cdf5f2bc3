import { AddressInfo } from "node:net";
import { Server } from "node:http";
import { afterAll, beforeAll, describe, expect, test } from "vitest";
import { buildService } from "../src/server.js";
import { defaultConfig, loadModels } from "../src/config.js";
import { ProviderService } from "../src/server.js";

let server: Server;
let base: string;

beforeAll(async () => {
  server = buildService().createHttpServer();
  await new Promise<void>((resolve) => server.listen(0, "127.0.0.1", resolve));
  const { port } = server.address() as AddressInfo;
  base = `http://127.0.0.1:${port}`;
});

afterAll(() => {
  server.close();
});

async function post(path: string, body: unknown): Promise<{ status: number; payload: any }> {
  const res = await fetch(`${base}${path}`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  return { status: res.status, payload: await res.json() };
}

describe("/health", () => {
  test("reports loaded capabilities and dims", async () => {
    const { status, payload } = await post("/health", {});
    expect(status).toBe(200);
    expect(payload.status).toBe("ok");
    expect(payload.capabilities).toEqual(["embed", "generate", "headline", "coref"]);
    expect(payload.dims).toBe(384);
    expect(payload.protocol_version).toBe("1");
  });
});

describe("/embed", () => {
  test("uniform dims, one vector per text", async () => {
    const { status, payload } = await post("/embed", { texts: ["one text", "two texts"] });
    expect(status).toBe(200);
    expect(payload.vectors).toHaveLength(2);
    for (const vec of payload.vectors) expect(vec).toHaveLength(payload.dims);
  });

  test("deterministic", async () => {
    const first = await post("/embed", { texts: ["radars limit emissions"] });
    const second = await post("/embed", { texts: ["radars limit emissions"] });
    expect(first.payload.vectors).toEqual(second.payload.vectors);
  });

  test("missing field yields a structured error", async () => {
    const { status, payload } = await post("/embed", { not_texts: [] });
    expect(status).toBe(400);
    expect(payload.error.code).toBe("BAD_REQUEST");
    expect(typeof payload.error.message).toBe("string");
  });

  test("batches larger than maxBatchSize round-trip", async () => {
    const texts = Array.from({ length: 150 }, (_, i) => `text number ${i}`);
    const { payload } = await post("/embed", { texts });
    expect(payload.vectors).toHaveLength(150);
  });
});

describe("/generate", () => {
  const request = {
    unit_text: "Radars are required to limit emissions in adjacent bands.",
    title_text: "Radar emission control",
    n: 10,
    temperature: 0.7,
    top_k: 2,
    seed: 1234,
    max_tokens: 80,
  };

  test("returns exactly n candidates at the reference defaults", async () => {
    const { status, payload } = await post("/generate", request);
    expect(status).toBe(200);
    expect(payload.candidates).toHaveLength(10);
    for (const c of payload.candidates) expect(c.trim().length).toBeGreaterThan(0);
  });

  test("seed determinism", async () => {
    const a = await post("/generate", request);
    const b = await post("/generate", request);
    expect(a.payload.candidates).toEqual(b.payload.candidates);
  });

  test("honors n", async () => {
    const { payload } = await post("/generate", { ...request, n: 3 });
    expect(payload.candidates).toHaveLength(3);
  });
});

describe("/headline and /coref", () => {
  test("headline returns the truncated lead", async () => {
    const { payload } = await post("/headline", {
      body: "A powerful storm hit the coastal region on Monday. More text follows.",
    });
    expect(payload.headline).toBe("A powerful storm hit the coastal region on Monday.");
  });

  test("coref returns valid sentence links", async () => {
    const { payload } = await post("/coref", {
      sentences: ["A method is given.", "It improves recall.", "Nothing else links."],
    });
    expect(payload.links).toEqual([[0, 1]]);
  });
});

describe("disabled capabilities", () => {
  test("missing checkpoint drops the capability and returns CAPABILITY_DISABLED", async () => {
    const config = defaultConfig();
    config.checkpoints.generate = "/nonexistent/generator.json";
    const service = new ProviderService(config, loadModels(config));
    const broken = service.createHttpServer();
    await new Promise<void>((resolve) => broken.listen(0, "127.0.0.1", resolve));
    const { port } = broken.address() as AddressInfo;
    try {
      const health = await fetch(`http://127.0.0.1:${port}/health`, {
        method: "POST",
        body: "{}",
      }).then((r) => r.json());
      expect(health.capabilities).toEqual(["embed", "headline", "coref"]);
      const res = await fetch(`http://127.0.0.1:${port}/generate`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ unit_text: "x", title_text: "y" }),
      });
      expect(res.status).toBe(503);
      const payload = await res.json();
      expect(payload.error.code).toBe("CAPABILITY_DISABLED");
    } finally {
      broken.close();
    }
  });
});

describe("unknown endpoint", () => {
  test("404 with error shape", async () => {
    const { status, payload } = await post("/nonsense", {});
    expect(status).toBe(404);
    expect(payload.error.code).toBe("NOT_FOUND");
  });
});

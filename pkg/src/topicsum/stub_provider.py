"""In-process reference implementation of the provider wire protocol.

Serves the four capabilities from the bundled deterministic backends (hash
embeddings, mock generation, rule coreference) over HTTP. Used by the
conformance tests and handy as a stand-in endpoint when developing against
``remote:`` provider selections. Fault injection flags let tests exercise the
client's error paths.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .abstractive import GenerationParams, MockGenerationProvider
from .corpus import tokenize_and_tag
from .elu import heuristic_coref
from .embeddings import HashEmbeddingProvider
from .provider_protocol import CAPABILITIES, PROTOCOL_VERSION


class _Sentence:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize_and_tag(text)


class StubProviderService:
    """Threaded HTTP server exposing /embed, /generate, /headline, /coref,
    /health on an ephemeral port.

    ``faults`` may contain: "wrong_dims" (embed vectors one entry short),
    "drop_candidate" (generate returns n-1 candidates), "ignore_seed"
    (generation varies between calls), "unavailable_times:<n>" (first n
    requests are dropped without a response).
    """

    def __init__(self, dims: int = 32, seed: int = 0, faults: set[str] | None = None):
        self.embedder = HashEmbeddingProvider(dims=dims, seed=seed)
        self.generator = MockGenerationProvider()
        self.faults = faults or set()
        self.request_count = 0
        self._drop_remaining = 0
        for fault in self.faults:
            if fault.startswith("unavailable_times:"):
                self._drop_remaining = int(fault.split(":", 1)[1])
        self._nondeterministic_calls = 0

        service = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def do_POST(self):
                service.request_count += 1
                if service._drop_remaining > 0:
                    service._drop_remaining -= 1
                    self.connection.close()
                    return
                length = int(self.headers.get("Content-Length", 0))
                try:
                    body = json.loads(self.rfile.read(length) or b"{}")
                except json.JSONDecodeError:
                    return self._error(400, "BAD_REQUEST", "invalid JSON body")
                try:
                    payload = service.handle(self.path, body)
                except _BadRequest as exc:
                    return self._error(400, "BAD_REQUEST", str(exc))
                except Exception as exc:  # pragma: no cover - defensive
                    return self._error(500, "INTERNAL", str(exc))
                data = json.dumps(payload).encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def _error(self, status, code, message):
                data = json.dumps(
                    {"error": {"code": code, "message": message}, "protocol_version": PROTOCOL_VERSION}
                ).encode("utf-8")
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

        self._server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    # -- endpoint logic ----------------------------------------------------

    def handle(self, path: str, body: dict) -> dict:
        if path == "/health":
            return {
                "status": "ok",
                "capabilities": list(CAPABILITIES),
                "dims": self.embedder.dims,
                "protocol_version": PROTOCOL_VERSION,
            }
        if path == "/embed":
            texts = _field(body, "texts", list)
            vectors = [self.embedder.embed_text(t).tolist() for t in texts]
            if "wrong_dims" in self.faults and vectors:
                vectors[0] = vectors[0][:-1]
            return {
                "dims": self.embedder.dims,
                "vectors": vectors,
                "protocol_version": PROTOCOL_VERSION,
            }
        if path == "/generate":
            unit_text = _field(body, "unit_text", str)
            title_text = _field(body, "title_text", str)
            params = GenerationParams(
                n=_field(body, "n", int),
                temperature=float(body.get("temperature", 0.7)),
                top_k=int(body.get("top_k", 2)),
                seed=int(body.get("seed", 0)),
                max_tokens=int(body.get("max_tokens", 80)),
            )
            if "ignore_seed" in self.faults:
                self._nondeterministic_calls += 1
                params = GenerationParams(
                    n=params.n,
                    temperature=params.temperature,
                    top_k=params.top_k,
                    seed=self._nondeterministic_calls,
                    max_tokens=params.max_tokens,
                )
            candidates = self.generator.generate(unit_text, title_text, params)
            if "drop_candidate" in self.faults:
                candidates = candidates[:-1]
            return {"candidates": candidates, "protocol_version": PROTOCOL_VERSION}
        if path == "/headline":
            body_text = _field(body, "body", str)
            return {"headline": self.generator.headline(body_text), "protocol_version": PROTOCOL_VERSION}
        if path == "/coref":
            sentences = [_Sentence(t) for t in _field(body, "sentences", list)]
            links = sorted(heuristic_coref(sentences))
            return {"links": [list(l) for l in links], "protocol_version": PROTOCOL_VERSION}
        raise _BadRequest(f"unknown endpoint {path}")

    # -- lifecycle -----------------------------------------------------------

    @property
    def url(self) -> str:
        host, port = self._server.server_address
        return f"http://{host}:{port}"

    def start(self) -> "StubProviderService":
        self._thread.start()
        return self

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()

    def __enter__(self) -> "StubProviderService":
        return self.start()

    def __exit__(self, *exc) -> None:
        self.stop()


class _BadRequest(ValueError):
    pass


def _field(body: dict, name: str, typ):
    if name not in body or not isinstance(body[name], typ):
        raise _BadRequest(f"missing or invalid field {name!r}")
    return body[name]

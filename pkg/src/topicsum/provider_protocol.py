"""Wire protocol client for remote neural providers.

One HTTP POST endpoint per capability: /embed, /generate, /headline, /coref,
plus /health. Bodies are JSON and carry a mandatory protocol_version field.
Responses are schema-validated before use; a violation names the offending
field. The conformance checker exercises all four capabilities against any
implementation and reports per-check pass/fail.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
import requests

from .abstractive import GenerationParams, GenerationProvider
from .embeddings import EmbeddingProvider

PROTOCOL_VERSION = "1"
CAPABILITIES = ("embed", "generate", "headline", "coref")


class ProviderUnavailable(RuntimeError):
    code = "PROVIDER_UNAVAILABLE"


class ProviderProtocolError(RuntimeError):
    code = "PROVIDER_PROTOCOL_ERROR"

    def __init__(self, message: str, offending_field: str | None = None):
        super().__init__(message)
        self.offending_field = offending_field


class ProviderRemoteError(RuntimeError):
    """Structured error returned by the service (e.g. CAPABILITY_DISABLED)."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def remote_call(
    endpoint: str,
    request: dict,
    timeout: float = 10.0,
    retries: int = 2,
    backoff: float = 0.25,
) -> dict:
    """POST with at most 1 + retries attempts and exponential backoff.

    Connection failures and timeouts raise :class:`ProviderUnavailable`;
    non-JSON or schema-violating responses raise
    :class:`ProviderProtocolError`; structured service errors raise
    :class:`ProviderRemoteError`.
    """
    body = dict(request)
    body.setdefault("protocol_version", PROTOCOL_VERSION)
    last_exc = None
    for attempt in range(1 + retries):
        try:
            resp = requests.post(endpoint, json=body, timeout=timeout)
        except (requests.ConnectionError, requests.Timeout) as exc:
            last_exc = exc
            if attempt < retries:
                time.sleep(backoff * (2**attempt))
            continue
        try:
            payload = resp.json()
        except ValueError as exc:
            raise ProviderProtocolError(f"{endpoint}: non-JSON response") from exc
        if not isinstance(payload, dict):
            raise ProviderProtocolError(f"{endpoint}: response is not an object")
        if "error" in payload:
            err = payload["error"]
            if not isinstance(err, dict) or "code" not in err or "message" not in err:
                raise ProviderProtocolError(f"{endpoint}: malformed error object", "error")
            raise ProviderRemoteError(err["code"], err["message"])
        if resp.status_code != 200:
            raise ProviderProtocolError(f"{endpoint}: HTTP {resp.status_code} without error object")
        return payload
    raise ProviderUnavailable(f"{endpoint}: unreachable after {1 + retries} attempts: {last_exc}")


def _require(payload: dict, name: str, typ, endpoint: str):
    if name not in payload:
        raise ProviderProtocolError(f"{endpoint}: missing field {name!r}", name)
    value = payload[name]
    if typ is float:
        ok = isinstance(value, (int, float)) and not isinstance(value, bool)
    else:
        ok = isinstance(value, typ)
    if not ok:
        raise ProviderProtocolError(f"{endpoint}: field {name!r} has wrong type", name)
    return value


def validate_embed_response(payload: dict, n_texts: int, endpoint: str = "/embed") -> dict:
    dims = _require(payload, "dims", int, endpoint)
    vectors = _require(payload, "vectors", list, endpoint)
    if len(vectors) != n_texts:
        raise ProviderProtocolError(
            f"{endpoint}: expected {n_texts} vectors, got {len(vectors)}", "vectors"
        )
    for vec in vectors:
        if not isinstance(vec, list) or len(vec) != dims:
            raise ProviderProtocolError(f"{endpoint}: vector width differs from dims", "dims")
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in vec):
            raise ProviderProtocolError(f"{endpoint}: non-numeric vector entry", "vectors")
    return payload


def validate_generate_response(payload: dict, n: int, endpoint: str = "/generate") -> dict:
    candidates = _require(payload, "candidates", list, endpoint)
    if len(candidates) != n:
        raise ProviderProtocolError(
            f"{endpoint}: expected {n} candidates, got {len(candidates)}", "candidates"
        )
    if not all(isinstance(c, str) and c.strip() for c in candidates):
        raise ProviderProtocolError(f"{endpoint}: empty or non-string candidate", "candidates")
    return payload


def validate_headline_response(payload: dict, endpoint: str = "/headline") -> dict:
    headline = _require(payload, "headline", str, endpoint)
    if not headline.strip():
        raise ProviderProtocolError(f"{endpoint}: empty headline", "headline")
    return payload


def validate_coref_response(payload: dict, n_sentences: int, endpoint: str = "/coref") -> dict:
    links = _require(payload, "links", list, endpoint)
    for link in links:
        if (
            not isinstance(link, list)
            or len(link) != 2
            or not all(isinstance(i, int) and not isinstance(i, bool) for i in link)
        ):
            raise ProviderProtocolError(f"{endpoint}: malformed link pair", "links")
        if not all(0 <= i < n_sentences for i in link):
            raise ProviderProtocolError(f"{endpoint}: link index out of range", "links")
    return payload


def validate_health_response(payload: dict, endpoint: str = "/health") -> dict:
    _require(payload, "status", str, endpoint)
    caps = _require(payload, "capabilities", list, endpoint)
    _require(payload, "dims", int, endpoint)
    for cap in caps:
        if cap not in CAPABILITIES:
            raise ProviderProtocolError(f"{endpoint}: unknown capability {cap!r}", "capabilities")
    return payload


class RemoteClient:
    """Thin typed wrapper over the wire schema."""

    def __init__(self, base_url: str, timeout: float = 10.0, retries: int = 2, backoff: float = 0.25):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff

    def _call(self, path: str, request: dict) -> dict:
        return remote_call(
            f"{self.base_url}{path}",
            request,
            timeout=self.timeout,
            retries=self.retries,
            backoff=self.backoff,
        )

    def health(self) -> dict:
        return validate_health_response(self._call("/health", {}))

    def embed(self, texts: list[str]) -> tuple[int, list[list[float]]]:
        payload = validate_embed_response(self._call("/embed", {"texts": texts}), len(texts))
        return payload["dims"], payload["vectors"]

    def generate(
        self, unit_text: str, title_text: str, params: GenerationParams
    ) -> list[str]:
        request = {
            "unit_text": unit_text,
            "title_text": title_text,
            "n": params.n,
            "temperature": params.temperature,
            "top_k": params.top_k,
            "seed": params.seed,
            "max_tokens": params.max_tokens,
        }
        payload = validate_generate_response(self._call("/generate", request), params.n)
        return payload["candidates"]

    def headline(self, body: str) -> str:
        return validate_headline_response(self._call("/headline", {"body": body}))["headline"]

    def coref(self, sentences: list[str]) -> list[tuple[int, int]]:
        payload = validate_coref_response(
            self._call("/coref", {"sentences": sentences}), len(sentences)
        )
        return [tuple(link) for link in payload["links"]]


class RemoteEmbeddingProvider(EmbeddingProvider):
    def __init__(self, base_url: str, **kwargs):
        self._client = RemoteClient(base_url, **kwargs)
        self.name = f"remote:{base_url}"
        self.dims = self._client.health()["dims"]

    def embed_text(self, text: str) -> np.ndarray:
        _, vectors = self._client.embed([text])
        return np.array(vectors[0], dtype=float)

    def embed_terms(self, terms: list[str]) -> list[np.ndarray]:
        if not terms:
            return []
        _, vectors = self._client.embed([t.lower() for t in terms])
        return [np.array(v, dtype=float) for v in vectors]


class RemoteGenerationProvider(GenerationProvider):
    def __init__(self, base_url: str, **kwargs):
        self._client = RemoteClient(base_url, **kwargs)
        self.name = f"remote:{base_url}"

    def generate(self, unit_text: str, title_text: str, params: GenerationParams) -> list[str]:
        return self._client.generate(unit_text, title_text, params)

    def headline(self, body_text: str) -> str:
        return self._client.headline(body_text)


def remote_coref(base_url: str, **kwargs):
    """Coreference function backed by the /coref endpoint; adapts sentence
    objects to the wire format."""
    client = RemoteClient(base_url, **kwargs)

    def coref(sentences) -> set[tuple[int, int]]:
        links = client.coref([s.text for s in sentences])
        return {tuple(sorted(link)) for link in links}

    return coref


@dataclass
class ConformanceReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def record(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append((name, passed, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def render(self) -> str:
        lines = [
            f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" - {detail}" if detail else "")
            for name, ok, detail in self.checks
        ]
        lines.append(f"conformance: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


_FIXTURE_TEXTS = [
    "Radars are required to limit emissions in adjacent bands.",
    "This approach improves the quality of generated summaries.",
]
_FIXTURE_SENTENCES = [
    "A new compression method is presented.",
    "It reduces redundancy across documents.",
    "The evaluation uses standard metrics.",
]


def conformance_check(base_url: str, timeout: float = 10.0, retries: int = 1) -> ConformanceReport:
    """Exercise all four capabilities with canonical fixtures.

    Checks: /health shape, embedding dims constancy and determinism,
    candidate count and seed determinism of generation, headline shape,
    coreference link validity, and the error shape for a malformed request.
    """
    client = RemoteClient(base_url, timeout=timeout, retries=retries)
    report = ConformanceReport()

    def run(name: str, fn) -> None:
        try:
            fn()
            report.record(name, True)
        except Exception as exc:
            report.record(name, False, str(exc))

    declared = {}

    def check_health():
        payload = client.health()
        declared.update(payload)
        if payload["status"] != "ok":
            raise AssertionError(f"status {payload['status']!r}")
        missing = [c for c in CAPABILITIES if c not in payload["capabilities"]]
        if missing:
            raise AssertionError(f"capabilities missing: {missing}")

    run("health", check_health)

    def check_embed_dims():
        dims_a, vecs_a = client.embed(_FIXTURE_TEXTS)
        dims_b, vecs_b = client.embed(list(reversed(_FIXTURE_TEXTS)))
        if dims_a != dims_b:
            raise AssertionError("dims changed between calls")
        if declared and dims_a != declared.get("dims"):
            raise AssertionError(f"dims {dims_a} differ from /health {declared.get('dims')}")

    run("embed dims constancy", check_embed_dims)

    def check_embed_deterministic():
        _, first = client.embed(_FIXTURE_TEXTS)
        _, second = client.embed(_FIXTURE_TEXTS)
        if first != second:
            raise AssertionError("embedding of identical texts differs")

    run("embed determinism", check_embed_deterministic)

    params = GenerationParams(seed=1234)

    def check_generate_count():
        candidates = client.generate(_FIXTURE_TEXTS[0], "Radar emission control", params)
        if len(candidates) != params.n:
            raise AssertionError(f"{len(candidates)} candidates, expected {params.n}")

    run(f"generate returns n={params.n}", check_generate_count)

    def check_generate_deterministic():
        a = client.generate(_FIXTURE_TEXTS[0], "Radar emission control", params)
        b = client.generate(_FIXTURE_TEXTS[0], "Radar emission control", params)
        if a != b:
            raise AssertionError("same seed produced different candidates")

    run("generate seed determinism", check_generate_deterministic)

    def check_headline():
        client.headline(" ".join(_FIXTURE_SENTENCES))

    run("headline", check_headline)

    def check_coref():
        client.coref(_FIXTURE_SENTENCES)

    run("coref links valid", check_coref)

    def check_error_shape():
        try:
            remote_call(f"{client.base_url}/embed", {"not_texts": []}, timeout=timeout, retries=0)
        except ProviderRemoteError:
            return
        raise AssertionError("malformed request did not yield a structured error")

    run("error shape", check_error_shape)

    return report

"""Vector representations for terms, sentences, documents, and language units.

All vectors flow through a pluggable provider. The bundled hash provider maps
every token to a seeded pseudo-random unit vector, which makes the entire
pipeline runnable offline and bit-reproducible. Variable-width unit encodings
(one concatenated sentence vector per member sentence) are mapped to a fixed
reduced width by a seeded sparse random projection, which is deterministic,
applicable point-by-point, and approximately norm-preserving.
"""

from __future__ import annotations

import hashlib
import re
import warnings
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

DEFAULT_REDUCED_DIM = 300


class EmbeddingError(RuntimeError):
    """Raised when a provider cannot produce a vector."""


@dataclass(frozen=True)
class UnitEncoding:
    unit_id: str
    vector: np.ndarray


class EmbeddingProvider:
    """Interface all embedding providers satisfy.

    Providers must be deterministic (identical input, identical output) and
    emit vectors of a constant width ``dims``.
    """

    name: str
    dims: int

    def embed_text(self, text: str) -> np.ndarray:
        raise NotImplementedError

    def embed_terms(self, terms: list[str]) -> list[np.ndarray]:
        raise NotImplementedError


_TOKEN_RE = re.compile(r"[a-z0-9]+(?:['\-][a-z0-9]+)*")


class HashEmbeddingProvider(EmbeddingProvider):
    """Offline provider: each term gets a seeded pseudo-random unit vector,
    text vectors are the L2-normalized mean of the term vectors."""

    def __init__(self, dims: int = 64, seed: int = 0):
        self.name = f"hash-{dims}-{seed}"
        self.dims = dims
        self.seed = seed

    def _term_vector(self, term: str) -> np.ndarray:
        return _hash_term_vector(term, self.dims, self.seed)

    def embed_terms(self, terms: list[str]) -> list[np.ndarray]:
        return [self._term_vector(t.lower()) for t in terms]

    def embed_text(self, text: str) -> np.ndarray:
        toks = _TOKEN_RE.findall(text.lower())
        if not toks:
            warnings.warn(f"empty text embedded as zero vector by {self.name}")
            return np.zeros(self.dims)
        mean = np.mean([self._term_vector(t) for t in toks], axis=0)
        norm = np.linalg.norm(mean)
        return mean / norm if norm > 0 else mean


@lru_cache(maxsize=65536)
def _hash_term_vector(term: str, dims: int, seed: int) -> np.ndarray:
    digest = hashlib.blake2b(f"{seed}\x00{term}".encode("utf-8"), digest_size=8).digest()
    rng = np.random.default_rng(int.from_bytes(digest, "big"))
    v = rng.standard_normal(dims)
    v /= np.linalg.norm(v)
    v.setflags(write=False)
    return v


class FileEmbeddingProvider(EmbeddingProvider):
    """Reads a precomputed text -> vector table.

    Format: header line ``dims N``, then one record per line,
    ``text<TAB>x1 x2 ... xN``.
    """

    def __init__(self, path: str | Path):
        path = Path(path)
        self.name = f"file:{path}"
        self._table: dict[str, np.ndarray] = {}
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().split()
            if len(header) != 2 or header[0] != "dims":
                raise EmbeddingError(f"{path}: expected header 'dims N'")
            self.dims = int(header[1])
            for lineno, line in enumerate(fh, start=2):
                line = line.rstrip("\n")
                if not line:
                    continue
                key, _, values = line.partition("\t")
                vec = np.array([float(x) for x in values.split()])
                if vec.shape[0] != self.dims:
                    raise EmbeddingError(f"{path}:{lineno}: expected {self.dims} values")
                vec.setflags(write=False)
                self._table[key] = vec

    def _lookup(self, key: str) -> np.ndarray:
        if key not in self._table:
            raise EmbeddingError(f"no embedding for {key!r} in {self.name}")
        return self._table[key]

    def embed_text(self, text: str) -> np.ndarray:
        return self._lookup(text)

    def embed_terms(self, terms: list[str]) -> list[np.ndarray]:
        return [self._lookup(t) for t in terms]


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity; 0.0 when either vector is zero (by convention)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"cosine: dims mismatch {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    if np.array_equal(u, v):
        return 1.0
    return float(np.dot(u, v) / (nu * nv))


def embed_sentence(text: str, provider: EmbeddingProvider) -> np.ndarray:
    try:
        vec = provider.embed_text(text)
    except EmbeddingError:
        raise
    except Exception as exc:
        raise EmbeddingError(f"provider {provider.name} failed: {exc}") from exc
    if vec.shape != (provider.dims,):
        raise EmbeddingError(
            f"provider {provider.name} returned dims {vec.shape} (declared {provider.dims})"
        )
    return vec


def embed_document(article, provider: EmbeddingProvider) -> np.ndarray:
    """Mean of the article's sentence vectors, L2-normalized."""
    if not article.sentences:
        raise EmbeddingError(f"article {article.id!r} has no sentences")
    mean = np.mean([embed_sentence(s.text, provider) for s in article.sentences], axis=0)
    norm = np.linalg.norm(mean)
    return mean / norm if norm > 0 else mean


@lru_cache(maxsize=256)
def _projection_matrix(in_dim: int, out_dim: int, seed: int) -> np.ndarray:
    # Sparse +-1 projection (density 1/s with s=3), scaled so that norms are
    # preserved in expectation for any input width.
    s = 3.0
    rng = np.random.default_rng([seed, in_dim, out_dim])
    u = rng.random((out_dim, in_dim))
    mat = np.where(u < 1.0 / (2 * s), 1.0, np.where(u >= 1.0 - 1.0 / (2 * s), -1.0, 0.0))
    mat *= np.sqrt(s / out_dim)
    mat.setflags(write=False)
    return mat


def project_vector(x: np.ndarray, target_dim: int, seed: int) -> np.ndarray:
    """Seeded sparse random projection to ``target_dim`` dimensions."""
    x = np.asarray(x, dtype=float)
    return _projection_matrix(x.shape[0], target_dim, seed) @ x


def encode_unit(
    sentences: list[str],
    provider: EmbeddingProvider,
    target_dim: int = DEFAULT_REDUCED_DIM,
    seed: int = 0,
) -> np.ndarray:
    """Fixed-width encoding of a language unit.

    Sentence vectors are concatenated in order and projected down (or up) to
    ``target_dim`` so that units with different sentence counts live in one
    space. The projection matrix depends only on (seed, input width,
    target_dim), so the mapping is well-defined for every width.
    """
    if not sentences:
        raise EmbeddingError("encode_unit requires at least one sentence")
    concat = np.concatenate([embed_sentence(s, provider) for s in sentences])
    return project_vector(concat, target_dim, seed)

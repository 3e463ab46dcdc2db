from __future__ import annotations

import hashlib
import logging
from functools import lru_cache
from typing import Protocol

import numpy as np

from config import EMBEDDING_DIM
from utils.errors import ValidationError
from utils.textHelper import tokenize

logger = logging.getLogger(__name__)


class EmbeddingProvider(Protocol):
    """
    Anything that maps text to a deterministic unit-length vector of `dim` entries.
    """
    dim: int

    def embed(self, text: str) -> np.ndarray:
        ...


def _bucket(feature, dim):
    digest = hashlib.blake2b(feature.encode("utf-8"), digest_size=8).digest()
    value = int.from_bytes(digest, "big")
    # Low bit picks the sign so colliding features tend to cancel
    sign = 1.0 if value & 1 else -1.0
    return (value >> 1) % dim, sign


def token_features(token):
    """
    Hashing features of one token: the whole token plus boundary-marked
    character trigrams, so inflected variants share most of their features.
    """
    marked = f"#{token}#"
    grams = [marked[i:i + 3] for i in range(len(marked) - 2)]
    return [f"t:{token}"] + [f"g:{gram}" for gram in grams]


class HashingEmbeddingProvider:
    """
    Deterministic subword feature-hashing embedder.

    Each token contributes a unit vector built from its token and trigram
    features; the text vector is the L2-normalized sum.
    """

    def __init__(self, dim=EMBEDDING_DIM):
        if dim < 1:
            raise ValidationError("dim must be a positive integer")
        self.dim = dim
        self._embed_cached = lru_cache(maxsize=65536)(self._embed)

    def _token_vector(self, token):
        vector = np.zeros(self.dim)
        for feature in token_features(token):
            index, sign = _bucket(feature, self.dim)
            vector[index] += sign
        norm = np.linalg.norm(vector)
        return vector / norm if norm > 0 else vector

    def _embed(self, text):
        vector = np.zeros(self.dim)
        for token in tokenize(text):
            vector += self._token_vector(token)
        norm = np.linalg.norm(vector)
        if norm == 0:
            # Empty text still needs a unit vector
            vector = np.zeros(self.dim)
            vector[0] = 1.0
            return vector
        return vector / norm

    def embed(self, text):
        vector = self._embed_cached(text or "")
        vector.setflags(write=False)
        return vector


def cosine(a, b):
    return float(np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b)))

"""Deterministic, seed-reproducible input generators for every benchmarked pattern.

Randomness comes from a splitmix-style generator: 64-bit state advanced by
a fixed odd increment, with two xor-shift-multiply mixing rounds and a
final xor-shift. Output k of a stream is a pure function of (seed, k), so
streams are reproducible bit-for-bit across runs and platforms, and can be
generated vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import Key

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# Random values are reduced to [0, 2^31) by taking the mix's top bits.
VALUE_BITS = 31

RANDOM = "random"
ASC = "asc"
DESC = "desc"
WORST = "worst"
CHUNKS = "chunks"

PATTERN_KINDS = (RANDOM, ASC, DESC, WORST, CHUNKS)


def mix64(x: int) -> int:
    """The scalar mixing function; also used to derive per-cell seeds."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def splitmix_stream(seed: int, n: int) -> np.ndarray:
    """The first n raw 64-bit outputs for a seed, as uint64."""
    steps = np.arange(1, n + 1, dtype=np.uint64) * np.uint64(_GAMMA)
    z = np.uint64(seed & MASK64) + steps
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class Pattern:
    """An input class: `kind` plus the parameters that pin it down.

    `seed` matters only for random and chunks; `chunk_len` only for chunks.
    Given identical (Pattern, n) the generated sequence is bit-identical.
    """

    kind: str
    chunk_len: int = 0
    seed: int = 0

    def name(self) -> str:
        if self.kind == CHUNKS:
            return f"{CHUNKS}:{self.chunk_len}"
        return self.kind


def parse_pattern(text: str) -> Pattern:
    """Parse a CLI pattern string: random | asc | desc | worst | chunks:<len>."""
    if text in (RANDOM, ASC, DESC, WORST):
        return Pattern(text)
    if text.startswith(CHUNKS + ":"):
        raw = text[len(CHUNKS) + 1 :]
        try:
            chunk_len = int(raw)
        except ValueError:
            raise ValueError(f"bad chunk length in pattern {text!r}") from None
        if chunk_len < 1:
            raise ValueError(f"chunk length must be >= 1, got {chunk_len}")
        return Pattern(CHUNKS, chunk_len=chunk_len)
    raise ValueError(f"unknown pattern {text!r}")


def with_seed(pattern: Pattern, seed: int) -> Pattern:
    return replace(pattern, seed=seed & MASK64)


def generate_values(pattern: Pattern, n: int) -> np.ndarray:
    """The value sequence for a pattern, as an int64 array."""
    if n < 0:
        raise ValueError(f"element count must be non-negative, got {n}")
    if pattern.kind == RANDOM:
        raw = splitmix_stream(pattern.seed, n)
        return (raw >> np.uint64(64 - VALUE_BITS)).astype(np.int64)
    if pattern.kind == ASC:
        return np.arange(1, n + 1, dtype=np.int64)
    if pattern.kind == DESC:
        return np.arange(n, 0, -1, dtype=np.int64)
    if pattern.kind == WORST:
        # 1, n, 2, n-1, ...; for odd n the middle value lands at the end.
        out = np.empty(n, dtype=np.int64)
        half = (n + 1) // 2
        out[0::2] = np.arange(1, half + 1, dtype=np.int64)
        out[1::2] = np.arange(n, half, -1, dtype=np.int64)
        return out
    if pattern.kind == CHUNKS:
        if pattern.chunk_len < 1:
            raise ValueError("chunks pattern needs chunk_len >= 1")
        nchunks = -(-n // pattern.chunk_len) if n else 0
        # Chunk bases are random in [0, 2^30) so chunk value ranges overlap.
        bases = (splitmix_stream(pattern.seed, nchunks) >> np.uint64(34)).astype(np.int64)
        out = np.empty(n, dtype=np.int64)
        for j in range(nchunks):
            lo = j * pattern.chunk_len
            hi = min(lo + pattern.chunk_len, n)
            ramp = np.arange(hi - lo, dtype=np.int64)
            if j % 2:
                ramp = ramp[::-1]
            out[lo:hi] = bases[j] + ramp
        return out
    raise ValueError(f"unknown pattern kind {pattern.kind!r}")


def generate(pattern: Pattern, n: int) -> list[Key]:
    """The pattern's key sequence, tags numbered 0..n-1 in emission order."""
    values = generate_values(pattern, n)
    return [Key(int(v), i) for i, v in enumerate(values)]

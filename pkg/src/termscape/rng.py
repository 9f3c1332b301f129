"""Deterministic random primitives for the synthetic-corpus generator and
the layout solver.

Everything here is pinned to the bit so that a port in another language can
reproduce corpora and layouts exactly.  The full recipe (constants, draw
order, caveats) is written down in docs/determinism.md; the short version:

* State transition: splitmix64.  ``state += 0x9E3779B97F4B7C15`` (mod 2^64),
  then the output is the finalizer
  ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31``.
* Uniform doubles use the top 53 bits: ``(u64 >> 11) * 2**-53`` in [0, 1).
* Bounded integers use plain modulo (the bias is negligible for the bounds
  used here and modulo is trivially portable).
* Poisson uses Knuth's product-of-uniforms method, chunked so that
  ``exp(-rate)`` never underflows.
* Strings hash with FNV-1a 64 over their UTF-8 bytes.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4B7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

# Knuth's method needs exp(-rate) to stay comfortably above the smallest
# normal double; rates above this are split into chunks.
_POISSON_CHUNK = 60.0


def fnv1a64(text: str) -> int:
    """FNV-1a 64-bit hash of the UTF-8 encoding of ``text``."""
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


class SplitMix64:
    """splitmix64 stream; all draw methods consume whole 64-bit outputs."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via modulo reduction."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return self.next_u64() % bound

    def poisson(self, rate: float) -> int:
        """Poisson-distributed count with the given mean.

        Knuth's algorithm: multiply uniforms until the product drops below
        exp(-rate).  Rates above 60 are drawn as sums of independent chunks,
        which leaves the distribution unchanged.
        """
        if rate < 0 or not math.isfinite(rate):
            raise ValueError(f"rate must be finite and >= 0, got {rate}")
        total = 0
        remaining = rate
        while remaining > _POISSON_CHUNK:
            total += self._poisson_knuth(_POISSON_CHUNK)
            remaining -= _POISSON_CHUNK
        return total + self._poisson_knuth(remaining)

    def _poisson_knuth(self, rate: float) -> int:
        if rate == 0.0:
            return 0
        limit = math.exp(-rate)
        k = 0
        p = 1.0
        while True:
            p *= self.next_float()
            if p <= limit:
                return k
            k += 1

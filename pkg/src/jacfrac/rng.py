"""Seeded random streams for reproducible sweep families.

splitmix64: state advances by 0x9E3779B97F4A7C15 per draw and the output
is the standard two-round xor-shift multiply finalizer.  Uniform doubles
take the top 53 bits over 2^53.  Documented here (and in the README) so
reports can be reproduced bit-for-bit from the integer seed alone.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator; one instance per randomized family."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def normal(self) -> float:
        """Standard normal via Box-Muller (two uniforms per call)."""
        import math
        u1 = max(self.random(), 2.0 ** -53)
        u2 = self.random()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

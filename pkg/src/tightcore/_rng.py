"""Deterministic random stream (splitmix64).

Python's ``random`` module is stable in practice, but its tuple-seeding
goes through ``hash()`` which is process-randomized.  Every randomized
routine in this package (parameter specialization, general elements,
reduction sampling) draws from this generator instead, so a report's
``seed`` field reproduces it byte-for-byte on any platform.
"""

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class Rng:
    """splitmix64 stream; ``child(k)`` derives independent substreams."""

    __slots__ = ("state", "seed")

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK
        self.state = self.seed

    def next64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n); n is tiny next to 2^64 here."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        return self.next64() % n

    def randrange(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi)."""
        return lo + self.below(hi - lo)

    def child(self, k: int) -> "Rng":
        """Independent substream #k of this seed (order-insensitive)."""
        return Rng(self.seed ^ ((k + 1) * _GOLDEN) & _MASK)

"""Splittable deterministic random generator.

Every "generic" choice in the package draws from an Rng seeded on the
command line, so runs are reproducible bit for bit.  The generator is a
SplitMix64: pure 64-bit integer arithmetic, no dependence on the platform
or the Python version.  Children obtained via split() evolve independently
of the parent's later draws.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _fnv64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h = ((h ^ b) * 0x100000001B3) & _MASK
    return h


class Rng:
    """Deterministic generator with labelled splitting.

    `origin_seed` is carried through splits so that reports can record the
    user-facing seed they were derived from.
    """

    def __init__(self, seed: int, origin_seed: int | None = None):
        self._state = _mix64((seed & _MASK) ^ _GAMMA)
        self.origin_seed = seed if origin_seed is None else origin_seed

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix64(self._state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] (modulo bias is irrelevant here)."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def split(self, label: str) -> "Rng":
        """Child generator keyed by `label`; consumes one draw of self."""
        child = _mix64(self.next_u64() ^ _fnv64(label.encode("utf-8")))
        return Rng(child, origin_seed=self.origin_seed)

"""Seeded pseudo-random numbers with a documented, portable algorithm.

The generator is splitmix64: state advances by the 64-bit constant
0x9E3779B97F4A7C15 and each output is the finalized mix of the new state.
Every sampled quantity in the library is derived from this stream, so a run
is reproducible from its seed alone, independently of interpreter version.
`randint` maps the raw stream by modulo; the slight bias is irrelevant for
test sampling and keeps the mapping trivially portable.
"""

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Integer in the inclusive range [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq):
        if not seq:
            raise ValueError("empty sequence")
        return seq[self.randint(0, len(seq) - 1)]

    def fork(self) -> "SplitMix64":
        """Independent child stream (used to keep per-trial sampling stable)."""
        return SplitMix64(self.next_u64())

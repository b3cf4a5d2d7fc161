"""A seeded 64-bit multiplicative congruential generator.

Its output sequence is fixed, so augmentation and padding draws can be
replayed exactly from a seed.

    state_0   = (2 * seed + 1) mod 2**64          (always odd)
    state_k+1 = state_k * 6364136223846793005 mod 2**64
    next()    = state_k+1 >> 32                   (32-bit output)
    below(n)  = (next() * n) >> 32                (uniform-ish in [0, n))
"""

MULTIPLIER = 6364136223846793005
_MASK = (1 << 64) - 1


class MCG64:
    """
    Multiplicative congruential generator over 64-bit state.

    Args:
        seed (int): Any integer; negative seeds wrap modulo 2**64.
    """

    def __init__(self, seed: int = 0):
        self.state = (2 * seed + 1) & _MASK

    def next(self) -> int:
        self.state = (self.state * MULTIPLIER) & _MASK
        return self.state >> 32

    def below(self, n: int) -> int:
        """
        Draws an integer in [0, n).

        Args:
            n (int): Exclusive upper bound, at least 1.

        Returns:
            int: The drawn integer.
        """
        if n < 1:
            raise ValueError("below() needs a positive bound")
        return (self.next() * n) >> 32

    def choice(self, items):
        return items[self.below(len(items))]

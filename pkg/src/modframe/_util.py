"""Small bitmask helpers used throughout the package."""


def bits(mask):
    """Yield the set bit positions of mask, ascending."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask):
    return int(mask).bit_count()

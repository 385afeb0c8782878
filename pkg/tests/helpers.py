"""Shared seeded samplers for the test suite."""

import random

from cml3.grassmann import GElement, elem_mul


def random_element(rng: random.Random, nterms=4, nbases=4, maxlen=3, maxder=2):
    """Random GF(3) combination of exterior monomials."""
    out = GElement.zero()
    for _ in range(rng.randrange(1, nterms + 1)):
        length = rng.randrange(1, maxlen + 1)
        bases = rng.sample(range(nbases), min(length, nbases))
        mono = GElement.one()
        for b in sorted(bases):
            mono = elem_mul(mono, GElement.generator(b, rng.randrange(maxder + 1)))
        out = out + mono.scale(rng.choice((1, 2)))
    return out


def random_homogeneous(rng: random.Random, parity, nbases=5, maxder=2):
    """Random homogeneous element of the requested parity."""
    out = GElement.zero()
    for _ in range(rng.randrange(1, 4)):
        length = rng.choice((1, 3) if parity else (2, 4))
        if length > nbases:
            length = parity or 2
        bases = sorted(rng.sample(range(nbases), length))
        mono = GElement.one()
        for b in bases:
            mono = elem_mul(mono, GElement.generator(b, rng.randrange(maxder + 1)))
        if mono:
            out = out + mono.scale(rng.choice((1, 2)))
    return out

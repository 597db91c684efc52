"""Seeded random generation of normal forms for verification runs.

All samplers take an explicit random.Random so every randomized check in
the test suite and the CLI is reproducible from its seed.
"""

from __future__ import annotations

import random

from .free_product import FPElement, FreeProduct


def random_reduced(
    rng: random.Random, group: FreeProduct, min_norm: int = 0, max_norm: int = 6
) -> FPElement:
    """Random element whose normal form has norm in [min_norm, max_norm]."""
    n = len(group.factors)
    while True:
        length = rng.randint(min_norm, max_norm)
        sylls = []
        factor = rng.randrange(n)
        for _ in range(length):
            sylls.append((factor, rng.randrange(1, group.factors[factor].order)))
            if n > 1:
                factor = rng.choice([i for i in range(n) if i != factor])
        u = group.element(sylls)
        if u.norm == length:
            return u


def random_cyclically_reduced(
    rng: random.Random, group: FreeProduct, min_norm: int = 2, max_norm: int = 6
) -> FPElement:
    """Random cyclically reduced element of norm >= 2 (hence infinite order)."""
    assert min_norm >= 2
    while True:
        u = random_reduced(rng, group, min_norm, max_norm)
        s = u.syllables
        if len(s) >= 2 and s[0][0] != s[-1][0]:
            return u


def random_noncommuting_conjugator(
    rng: random.Random,
    group: FreeProduct,
    element: FPElement,
    max_norm: int = 4,
    attempts: int = 1000,
) -> FPElement:
    """Random g such that element and g*element*g^-1 do not commute."""
    for _ in range(attempts):
        g = random_reduced(rng, group, 0, max_norm)
        if not element.commutes_with(element.conjugate(g)):
            return g
    raise RuntimeError("could not find a non-commuting conjugate; ambient too small?")


def random_word_text(
    rng: random.Random, group: FreeProduct, min_len: int = 1, max_len: int = 5
) -> str:
    """Random word over generator labels, e.g. for coefficient words."""
    labels = group.generator_labels
    return " ".join(rng.choice(labels) for _ in range(rng.randint(min_len, max_len)))

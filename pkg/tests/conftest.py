"""Shared helpers for the test suite.

Instances come from the package's own seeded generator so every test run
sees exactly the same inputs.  The meta-RNG chain below is part of the
frozen test surface: changing it changes which instances are covered.
"""

from __future__ import annotations

import random

from hypermatch import Hypergraph, gen_random_hypergraph

# Weight caps are deliberately lopsided: 1 forces all-ties instances, small
# caps force frequent ties, 100 gives spread-out weights.
WEIGHT_CAPS = (1, 3, 10, 100)


def random_instances(
    count: int,
    meta_seed: int,
    n_max: int = 10,
    m_max: int = 12,
    d_cap: int = 4,
    weight_caps: tuple[int, ...] = WEIGHT_CAPS,
) -> list[Hypergraph]:
    """Deterministic batch of small random instances."""
    meta = random.Random(meta_seed)
    instances = []
    for _ in range(count):
        n = meta.randint(2, n_max)
        d_max = meta.randint(1, min(d_cap, n))
        m = meta.randint(0, m_max)
        w_max = meta.choice(weight_caps)
        instances.append(gen_random_hypergraph(n, m, d_max, w_max, meta.randrange(1 << 30)))
    return instances

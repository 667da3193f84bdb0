"""Seeded random families shared by the property and acceptance tests."""

from __future__ import annotations

import random

from tld.gen import GenParams, random_election
from tld.profile import compile_profile
from tld.rules.oracles import MAX_EVENTS


def desk_family(count: int, *, seed: int = 0, delta_mode: str = "retrospective", delta: int = 1):
    """``count`` compiled elections with n <= 7, L <= 5 and at most MAX_EVENTS edge events.

    Shape parameters are drawn per instance from a meta-seeded stream.
    Instances beyond the brute-force scale, or without both casting and
    delegating voters, are skipped.
    """
    meta = random.Random(seed)
    out = []
    while len(out) < count:
        s = meta.randrange(2**32)
        p = GenParams(
            n=meta.randint(3, 7),
            L=meta.randint(1, 5),
            p_cast=meta.choice((0.1, 0.2, 0.3)),
            p_abstain=meta.choice((0.0, 0.1, 0.2)),
            density=meta.choice((0.2, 0.3, 0.45)),
            max_groups=meta.randint(1, 3),
            delta_mode=delta_mode,
            delta=delta,
            mind_change=meta.choice((0.2, 0.5, 0.9)),
            seed=s,
        )
        g = compile_profile(random_election(p))
        part = g.partition
        if part.casting and part.delegating and g.event_count() <= MAX_EVENTS:
            out.append((p, g))
    return out

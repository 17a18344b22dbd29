"""Random connected oriented diagrams by repeated crossing insertion.

Inserting a crossing inside a face cuts two edges on its boundary and joins
the four loose ends at a new crossing; for the result to stay oriented,
exactly one of the two edges runs along the face boundary.  This changes the
number of components by one, so curls are mixed in to reach every parity.
"""
from __future__ import annotations

import random
from typing import Optional

from .diagram import Crossing, Diagram, build_diagram
from .planar import PlanarMap, fresh_labels

KINK = (Crossing("y", "y", "x", "x", 1),)  # one-crossing unknot


def random_diagram(n: int, rng: Optional[random.Random] = None, seed: tuple = KINK,
                   max_components: Optional[int] = None, random_unbounded: bool = False,
                   kink_rate: float = 0.25) -> Diagram:
    """A random connected diagram with n crossings grown from `seed`."""
    rng = rng or random.Random()
    fresh = fresh_labels()
    d = build_diagram(seed)
    while d.n_crossings < n:
        m = PlanarMap(list(d.crossings))
        m.grow(rng, 1, fresh, kink_rate)
        nd = build_diagram(m.crossings)
        if max_components is not None and nd.n_components() > max_components:
            continue
        d = nd
    if random_unbounded and d.crossings:
        e = rng.randrange(d.n_edges)
        d = Diagram(d.crossings, d.free_loops, d.framed, (e, rng.choice(("left", "right"))))
    return d

"""Oriented planar 4-valent maps with an optional boundary vertex.

A map is a list of crossings (any hashable edge labels) plus, for tangles,
the boundary points in counterclockwise order around the tangle disk.  The
boundary is modelled as one extra vertex: for an inner tangle it sits
outside the disk and sees the points in reverse order; for an outer tangle
(the complement of a disk) it sits in the hole and sees them in order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Optional, Sequence

from .diagram import Crossing

IN, OUT = "in", "out"


class PlanarityError(ValueError):
    pass


@dataclass
class PlanarMap:
    crossings: list
    boundary: list = field(default_factory=list)  # (label, IN|OUT) per position
    outer: bool = False

    # -- slot access -------------------------------------------------------

    @property
    def bvertex(self) -> int:
        return len(self.crossings)

    def _pos(self, j: int) -> int:
        m = len(self.boundary)
        return j if self.outer else (-j) % m

    def degree(self, v: int) -> int:
        return 4 if v < len(self.crossings) else len(self.boundary)

    def label(self, v: int, k: int):
        if v < len(self.crossings):
            return self.crossings[v].slots[k]
        return self.boundary[self._pos(k)][0]

    def is_tail(self, v: int, k: int) -> bool:
        """True if the edge at this slot leaves the vertex."""
        if v < len(self.crossings):
            return not self.crossings[v].is_in(k)
        return self.boundary[self._pos(k)][1] == IN

    def slots(self):
        for v in range(len(self.crossings) + (1 if self.boundary else 0)):
            for k in range(self.degree(v)):
                yield v, k

    def ends(self) -> tuple:
        tails, heads = {}, {}
        for v, k in self.slots():
            tgt = tails if self.is_tail(v, k) else heads
            e = self.label(v, k)
            if e in tgt:
                raise PlanarityError(f"edge {e!r} has two ends of the same direction")
            tgt[e] = (v, k)
        if set(tails) != set(heads):
            raise PlanarityError("some edge has a single end")
        return tails, heads

    def other_end(self, ends, v, k):
        tails, heads = ends
        e = self.label(v, k)
        return heads[e] if tails[e] == (v, k) else tails[e]

    # -- faces and planarity -------------------------------------------------

    def face_darts(self, ends=None) -> list:
        ends = ends or self.ends()
        seen = set()
        out = []
        for start in self.slots():
            if start in seen:
                continue
            cyc = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                w, l = self.other_end(ends, *cur)
                cur = (w, (l - 1) % self.degree(w))
            out.append(cyc)
        return out

    def blocks(self, ends=None) -> list:
        ends = ends or self.ends()
        nv = len(self.crossings) + (1 if self.boundary else 0)
        parent = list(range(nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        tails, heads = ends
        for e in tails:
            parent[find(tails[e][0])] = find(heads[e][0])
        groups = {}
        for v in range(nv):
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def check_planar(self) -> None:
        ends = self.ends()
        blocks = self.blocks(ends)
        block_of = {v: bi for bi, b in enumerate(blocks) for v in b}
        nf = [0] * len(blocks)
        for cyc in self.face_darts(ends):
            nf[block_of[cyc[0][0]]] += 1
        for bi, b in enumerate(blocks):
            v = len(b)
            e = sum(self.degree(x) for x in b) // 2
            if v - e + nf[bi] != 2:
                raise PlanarityError(f"Euler check failed: V={v}, E={e}, F={nf[bi]}")

    # -- growth moves --------------------------------------------------------

    def insertion_sites(self) -> list:
        ends = self.ends()
        tails, _ = ends
        out = []
        for cyc in self.face_darts(ends):
            for p, q in itertools.combinations(cyc, 2):
                e1, e2 = self.label(*p), self.label(*q)
                if e1 == e2:
                    continue
                along1 = tails[e1] == p
                along2 = tails[e2] == q
                if along1 != along2:
                    # the dart running along its edge goes first
                    out.append((p, q) if along1 else (q, p))
        return out

    def _cut(self, e, ends, fresh) -> tuple:
        """Split edge e; return (label at its tail end, label at its head end, tail slot)."""
        tails, heads = ends
        et, eh = next(fresh), next(fresh)
        for (v, k), lab in ((tails[e], et), (heads[e], eh)):
            self._relabel_slot(v, k, lab)
        return et, eh, tails[e]

    def _relabel_slot(self, v, k, lab):
        if v < len(self.crossings):
            s = list(self.crossings[v].slots)
            s[k] = lab
            self.crossings[v] = Crossing(*s, sign=self.crossings[v].sign)
        else:
            p = self._pos(k)
            self.boundary[p] = (lab, self.boundary[p][1])

    def insert_crossing(self, site, under_first: bool, fresh) -> None:
        """Cross the two edges of `site` inside their common face."""
        ends = self.ends()
        halves = []
        for e, (v, k) in [(self.label(v, k), (v, k)) for (v, k) in site]:
            et, eh, tail = self._cut(e, ends, fresh)
            # (half at the dart's start, half at the dart's end)
            halves.append((et, eh) if tail == (v, k) else (eh, et))
        (q1, q2), (q3, q4) = halves
        if under_first:
            self.crossings.append(Crossing(q1, q2, q3, q4, 1))
        else:
            self.crossings.append(Crossing(q4, q1, q2, q3, -1))

    def insert_kink(self, e, variant: int, fresh) -> None:
        """Add a curl on edge e; the variant (0..3) picks the side and the sign."""
        et, eh, _ = self._cut(e, self.ends(), fresh)
        loop = next(fresh)
        self.crossings.append((Crossing(loop, loop, eh, et, 1), Crossing(et, eh, loop, loop, 1),
                               Crossing(loop, et, eh, loop, -1), Crossing(et, loop, loop, eh, -1))[variant])

    def edges(self) -> list:
        return list(self.ends()[0])

    def grow(self, rng, count: int, fresh, kink_rate: float = 0.25) -> None:
        for _ in range(count):
            sites = self.insertion_sites()
            if not sites or rng.random() < kink_rate:
                edges = sorted(self.edges(), key=repr)
                self.insert_kink(rng.choice(edges), rng.randrange(4), fresh)
            else:
                self.insert_crossing(rng.choice(sites), rng.random() < 0.5, fresh)


def fresh_labels(tag="n"):
    return ((tag, v) for v in itertools.count())


def noncrossing_matching(dirs: Sequence[str], offset: int = 0) -> list:
    """Pair boundary positions (in with out) without crossings, scanning from `offset`."""
    m = len(dirs)
    if sum(1 for d in dirs if d == IN) * 2 != m:
        raise ValueError("unbalanced boundary directions")
    stack = []
    pairs = []
    for t in range(m):
        p = (offset + t) % m
        if stack and dirs[stack[-1]] != dirs[p]:
            pairs.append((stack.pop(), p))
        else:
            stack.append(p)
    if stack:
        raise ValueError("no non-crossing matching")  # cannot happen when balanced
    return pairs


def closed_key(crossings, free_loops: int = 0) -> Optional[tuple]:
    """Relabelling-invariant key of a connected list of (a, b, c, d, sign) crossings.

    Returns None when the crossings do not form one connected piece.
    """
    n = len(crossings)
    if n == 0:
        return (free_loops,)
    occ = {}
    for i, x in enumerate(crossings):
        for k, e in enumerate(x[:4]):
            occ.setdefault(e, []).append((i, k))
    best = None
    for start in range(n):
        cidx = {start: 0}
        order = [start]
        elab = {}
        pos = 0
        while pos < len(order):
            i = order[pos]
            pos += 1
            for k in range(4):
                e = crossings[i][k]
                if e not in elab:
                    elab[e] = len(elab)
                for (j, _) in occ[e]:
                    if j not in cidx:
                        cidx[j] = len(order)
                        order.append(j)
        code = tuple((crossings[i][4],) + tuple(elab[e] for e in crossings[i][:4]) for i in order)
        if len(order) != n:
            return None
        if best is None or code < best:
            best = code
    return (free_loops, best)

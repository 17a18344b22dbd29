"""Oriented link diagrams on the 2-sphere as planar crossing codes.

A crossing is a quadruple of edge labels listed counterclockwise starting at
the incoming under-strand: slots a (under in), b, c (under out), d.  The
over-strand runs d -> b (sign +1) or b -> d (sign -1).  Edge labels run
consecutively along each component in the direction of orientation, so the
orientation is read off the labels and never stored separately in files.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

WHITE = "white"
SHADED = "shaded"


class DiagramError(Exception):
    pass


class ParseError(DiagramError):
    pass


class ValidationError(DiagramError):
    pass


class DisconnectedDiagram(DiagramError):
    pass


@dataclass(frozen=True)
class Crossing:
    a: int
    b: int
    c: int
    d: int
    sign: int = 1

    @property
    def slots(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def in_slots(self) -> tuple:
        """Slots where an edge enters the crossing."""
        return (0, 3) if self.sign > 0 else (0, 1)

    def out_slots(self) -> tuple:
        return (2, 1) if self.sign > 0 else (2, 3)

    def is_in(self, k: int) -> bool:
        return k in self.in_slots()

    def is_over(self, k: int) -> bool:
        return k % 2 == 1

    def relabel(self, f) -> "Crossing":
        return Crossing(f(self.a), f(self.b), f(self.c), f(self.d), self.sign)


def crossing_sign(c: Crossing) -> int:
    return c.sign


@dataclass(frozen=True)
class Face:
    darts: tuple  # cyclic tuple of (crossing, slot): leave crossing via slot, face on the left
    incidences: tuple  # cyclic tuple of (edge, "left"|"right")
    color: Optional[str] = None


@dataclass(frozen=True)
class Diagram:
    crossings: tuple
    free_loops: int = 0
    framed: bool = False
    # face marked as the unbounded one: (edge, side of the edge)
    unbounded: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if self.unbounded is not None:
            object.__setattr__(self, "unbounded", (int(self.unbounded[0]), str(self.unbounded[1])))

    # -- basic structure ---------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_edges(self) -> int:
        return 2 * len(self.crossings)

    @cached_property
    def edge_ends(self) -> dict:
        """edge -> (tail (i,k), head (i,k)); tail = slot where the edge leaves."""
        tails, heads = {}, {}
        for i, x in enumerate(self.crossings):
            for k, e in enumerate(x.slots):
                (heads if x.is_in(k) else tails)[e] = (i, k)
        return {e: (tails[e], heads[e]) for e in tails}

    def other_end(self, i: int, k: int) -> tuple:
        e = self.crossings[i].slots[k]
        t, h = self.edge_ends[e]
        return h if t == (i, k) else t

    def successor(self, e: int) -> int:
        """Next edge along the orientation."""
        i, k = self.edge_ends[e][1]
        return self.crossings[i].slots[(k + 2) % 4]

    # -- components ----------------------------------------------------------

    @cached_property
    def _components(self) -> tuple:
        seen = set()
        comps = []
        for e in sorted(self.edge_ends):
            if e in seen:
                continue
            cyc = [e]
            seen.add(e)
            f = self.successor(e)
            while f != e:
                cyc.append(f)
                seen.add(f)
                f = self.successor(f)
            comps.append(tuple(cyc))
        comps.extend(() for _ in range(self.free_loops))
        return tuple(comps)

    @cached_property
    def edge_component(self) -> dict:
        return {e: ci for ci, comp in enumerate(self._components) for e in comp}

    def n_components(self) -> int:
        return len(self._components)

    # -- faces ---------------------------------------------------------------

    @cached_property
    def _face_darts(self) -> tuple:
        seen = set()
        out = []
        for i in range(len(self.crossings)):
            for k in range(4):
                if (i, k) in seen:
                    continue
                cyc = []
                cur = (i, k)
                while cur not in seen:
                    seen.add(cur)
                    cyc.append(cur)
                    j, l = self.other_end(*cur)
                    cur = (j, (l - 1) % 4)
                out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def dart_face(self) -> dict:
        return {dt: fi for fi, cyc in enumerate(self._face_darts) for dt in cyc}

    def corner_face(self, i: int, k: int) -> int:
        """Face index of the corner between slots k and k+1 of crossing i."""
        return self.dart_face[(i, k)]

    def dart_incidence(self, i: int, k: int) -> tuple:
        e = self.crossings[i].slots[k]
        return (e, "left" if self.edge_ends[e][0] == (i, k) else "right")

    @cached_property
    def edge_side_face(self) -> dict:
        out = {}
        for (i, k), fi in self.dart_face.items():
            out[self.dart_incidence(i, k)] = fi
        return out

    @cached_property
    def crossing_blocks(self) -> tuple:
        """Connected pieces of the crossing graph, as sorted tuples of crossing indices."""
        n = len(self.crossings)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e, ((i, _), (j, _)) in self.edge_ends.items():
            parent[find(i)] = find(j)
        groups = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        return tuple(tuple(g) for g in sorted(groups.values()))

    def is_connected(self) -> bool:
        if not self.crossings:
            return self.free_loops == 1
        return self.free_loops == 0 and len(self.crossing_blocks) == 1

    def unbounded_face(self) -> int:
        if not self.crossings:
            raise DisconnectedDiagram("no crossings")
        e, side = self.unbounded if self.unbounded is not None else (0, "left")
        if (e, side) not in self.edge_side_face:
            raise ValidationError(f"unbounded marker refers to unknown edge {e}")
        return self.edge_side_face[(e, side)]

    @cached_property
    def face_colors(self) -> tuple:
        nf = len(self._face_darts)
        adj = [[] for _ in range(nf)]
        for e in self.edge_ends:
            f1 = self.edge_side_face[(e, "left")]
            f2 = self.edge_side_face[(e, "right")]
            adj[f1].append(f2)
            adj[f2].append(f1)
        col = [None] * nf
        root = self.unbounded_face()
        col[root] = 0
        stack = [root]
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if col[g] is None:
                    col[g] = 1 - col[f]
                    stack.append(g)
                elif col[g] == col[f]:
                    raise ValidationError("faces do not admit a checkerboard colouring")
        return tuple(WHITE if c == 0 else SHADED for c in col)


    def as_json(self) -> dict:
        out = {"crossings": [list(x.slots) for x in self.crossings],
               "free_loops": self.free_loops, "framed": self.framed}
        if self.unbounded is not None:
            out["unbounded"] = list(self.unbounded)
        return out


# ---------------------------------------------------------------------------
# construction, parsing, validation


def _strand_cycles(quads: Sequence[Sequence[int]]) -> list:
    """Unoriented strand cycles: lists of (crossing, entry slot, exit slot) passages."""
    occ = {}
    for i, q in enumerate(quads):
        for k, e in enumerate(q):
            occ.setdefault(e, []).append((i, k))
    seen = set()
    cycles = []
    for i, q in enumerate(quads):
        for k in range(4):
            if (i, k) in seen:
                continue
            cyc = []
            cur = (i, k)
            while cur not in seen:
                ci, ck = cur
                ex = (ci, (ck + 2) % 4)
                seen.add(cur)
                seen.add(ex)
                cyc.append((ci, ck, ex[1]))
                e = quads[ci][ex[1]]
                a, b = occ[e]
                cur = b if a == ex else a
            cycles.append(cyc)
    return cycles


def _check_euler(d: Diagram) -> None:
    block_of = {}
    for bi, blk in enumerate(d.crossing_blocks):
        for i in blk:
            block_of[i] = bi
    faces_per = [0] * len(d.crossing_blocks)
    for cyc in d._face_darts:
        faces_per[block_of[cyc[0][0]]] += 1
    for bi, blk in enumerate(d.crossing_blocks):
        v = len(blk)
        if v - 2 * v + faces_per[bi] != 2:
            raise ValidationError(
                f"Euler check failed on a diagram piece: V={v}, E={2 * v}, F={faces_per[bi]}")


def diagram_from_labels(quads: Sequence[Sequence[int]], free_loops: int = 0, framed: bool = False,
                        unbounded=None) -> Diagram:
    """Validate a knot-atlas style code and infer crossing signs from the labels."""
    quads = [tuple(int(x) for x in q) for q in quads]
    for q in quads:
        if len(q) != 4:
            raise ValidationError("every crossing needs four edge labels")
    counts = {}
    for q in quads:
        for e in q:
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, c in counts.items() if c != 2)
    if bad:
        raise ValidationError(f"edge labels {bad} do not appear exactly twice")
    if set(counts) != set(range(2 * len(quads))):
        raise ValidationError("edge labels must be 0..n_edges-1")
    if free_loops < 0:
        raise ValidationError("free_loops must be nonnegative")

    # orientation of every strand cycle
    in_slot = {}  # (crossing, slot) -> True if the strand enters there
    for cyc in _strand_cycles(quads):
        labels = [quads[i][kx] for (i, ke, kx) in cyc]  # exit edge of each passage, in cycle order
        n = len(cyc)
        if n == 1:
            raise ValidationError("a component passing a single crossing once is not planar")
        unders = [t for t, (i, ke, kx) in enumerate(cyc) if ke % 2 == 0]
        if unders:
            t = unders[0]
            forward = cyc[t][1] == 0  # entry slot a means the cycle order is the orientation
        elif n >= 3:
            lo, hi = min(labels), max(labels)
            t = labels.index(lo)
            forward = labels[(t + 1) % n] == lo + 1 if hi > lo + 1 else True
        else:
            # two edges, both passages over: the lower label enters the lower crossing.
            # The edge entering passage p is the exit edge of passage p-1.
            (i0, _, _), (i1, _, _) = cyc
            forward = labels[1 if i0 < i1 else 0] == min(labels)
        order = cyc if forward else [(i, kx, ke) for (i, ke, kx) in reversed(cyc)]
        seq = [quads[i][kx] for (i, ke, kx) in order]  # edges in orientation order
        lo = min(seq)
        t = seq.index(lo)
        seq = seq[t:] + seq[:t]
        if seq != list(range(lo, lo + n)):
            raise ValidationError("edge labels are not consecutive along the orientation")
        for (i, ke, kx) in order:
            in_slot[(i, ke)] = True
            in_slot[(i, kx)] = False
    crossings = []
    for i, q in enumerate(quads):
        if not in_slot[(i, 0)]:
            raise ValidationError("orientation inconsistency at the under-strand")
        sign = 1 if in_slot[(i, 3)] else -1
        crossings.append(Crossing(*q, sign=sign))
    d = Diagram(tuple(crossings), free_loops, framed, unbounded)
    _check_euler(d)
    if unbounded is not None:
        d.unbounded_face()
    return d


def parse_diagram(text: str) -> Diagram:
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    return diagram_from_json(obj)


def diagram_from_json(obj) -> Diagram:
    if not isinstance(obj, dict) or "crossings" not in obj:
        raise ParseError("expected an object with a 'crossings' list")
    cr = obj["crossings"]
    if not isinstance(cr, list) or not all(isinstance(q, list) and len(q) == 4 and
                                           all(isinstance(x, int) and not isinstance(x, bool) for x in q)
                                           for q in cr):
        raise ParseError("'crossings' must be a list of integer quadruples")
    fl = obj.get("free_loops", 0)
    fr = obj.get("framed", False)
    if not isinstance(fl, int) or isinstance(fl, bool) or not isinstance(fr, bool):
        raise ParseError("'free_loops' must be an integer and 'framed' a boolean")
    ub = obj.get("unbounded")
    if ub is not None:
        if not (isinstance(ub, list) and len(ub) == 2 and isinstance(ub[0], int) and ub[1] in ("left", "right")):
            raise ParseError("'unbounded' must be [edge, 'left'|'right']")
        ub = tuple(ub)
    unknown = set(obj) - {"crossings", "free_loops", "framed", "unbounded"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    return diagram_from_labels(cr, fl, fr, ub)


def serialize(d: Diagram) -> str:
    return json.dumps(d.as_json())


def build_diagram(crossings: Iterable[Crossing], free_loops: int = 0, framed: bool = False,
                  unbounded=None, check: bool = True, with_labels: bool = False):
    """Relabel an arbitrary oriented crossing list canonically.

    Input edge labels may be any hashables, each occurring once as an in-slot
    and once as an out-slot.  Components are numbered in order of the first
    crossing they pass; each starts at the edge entering its lowest-index
    crossing (the under passage first when it passes that crossing twice).
    With `with_labels`, also return the old-label -> new-label map.
    """
    cr = list(crossings)
    tails, heads = {}, {}
    for i, x in enumerate(cr):
        for k, e in enumerate(x.slots):
            tgt = heads if x.is_in(k) else tails
            if e in tgt:
                raise ValidationError(f"edge {e!r} used twice in the same direction")
            tgt[e] = (i, k)
    if set(tails) != set(heads):
        raise ValidationError("orientation inconsistency: unmatched edge ends")

    def succ(e):
        i, k = heads[e]
        return cr[i].slots[(k + 2) % 4]

    # order of components by lowest crossing they enter
    seen = set()
    comps = []
    for i, x in enumerate(cr):
        for k in (0, 1, 3):
            if not x.is_in(k):
                continue
            e = x.slots[k]
            if e in seen:
                continue
            cyc = [e]
            seen.add(e)
            f = succ(e)
            while f != e:
                cyc.append(f)
                seen.add(f)
                f = succ(f)
            comps.append(cyc)
    relabel = {}
    nxt = 0
    for cyc in comps:
        # start at the edge entering the lowest crossing (first encountered is exactly that)
        for e in cyc:
            relabel[e] = nxt
            nxt += 1
    new = tuple(x.relabel(relabel.__getitem__) for x in cr)
    ub = None
    if unbounded is not None:
        ub = (relabel[unbounded[0]], unbounded[1])
    d = Diagram(new, free_loops, framed, ub)
    if check:
        _check_euler(d)
    return (d, relabel) if with_labels else d


# ---------------------------------------------------------------------------
# queries


def components(d: Diagram) -> list:
    """Components as edge cycles in orientation order; crossingless loops are ()."""
    return list(d._components)


def faces(d: Diagram) -> list:
    if not d.crossings:
        if d.free_loops != 1:
            raise DisconnectedDiagram("crossingless diagram with several loops")
        return [Face((), (("loop", "left"),), SHADED), Face((), (("loop", "right"),), WHITE)]
    if not d.is_connected():
        raise DisconnectedDiagram("diagram is not connected")
    cols = checkerboard(d)
    return [Face(cyc, tuple(d.dart_incidence(*dt) for dt in cyc), cols[fi])
            for fi, cyc in enumerate(d._face_darts)]


def checkerboard(d: Diagram) -> tuple:
    """Colour per face (in faces() order): proper 2-colouring, unbounded face white."""
    if not d.crossings:
        if d.free_loops != 1:
            raise DisconnectedDiagram("crossingless diagram with several loops")
        return (SHADED, WHITE)
    if not d.is_connected():
        raise DisconnectedDiagram("diagram is not connected")
    return d.face_colors


def writhe(d: Diagram) -> int:
    return sum(x.sign for x in d.crossings)


def mirror(d: Diagram) -> Diagram:
    """Switch every crossing, keeping the orientation and labels."""
    out = []
    for x in d.crossings:
        if x.sign > 0:
            out.append(Crossing(x.d, x.a, x.b, x.c, -1))
        else:
            out.append(Crossing(x.b, x.c, x.d, x.a, 1))
    return Diagram(tuple(out), d.free_loops, d.framed, d.unbounded)


def reverse(d: Diagram, which: Optional[Iterable[int]] = None) -> Diagram:
    """Reverse the orientation of the chosen components (default: all) and renumber."""
    comps = d._components
    which = set(range(len(comps))) if which is None else set(which)
    for w in which:
        if not 0 <= w < len(comps):
            raise ValueError(f"unknown component index {w}")
    flip = {e for ci in which for e in comps[ci]}
    out = []
    for x in d.crossings:
        under = x.a in flip
        over = x.b in flip
        y = Crossing(x.c, x.d, x.a, x.b, x.sign) if under else x
        s = x.sign * (-1 if under != over else 1)
        out.append(Crossing(y.a, y.b, y.c, y.d, s))
    ub = None
    if d.crossings:
        e, side = d.unbounded if d.unbounded is not None else (0, "left")
        if e in flip:
            side = "right" if side == "left" else "left"
        ub = (e, side)
    return build_diagram(out, d.free_loops, d.framed, ub)


def relabel_canonical(d: Diagram) -> Diagram:
    return build_diagram(d.crossings, d.free_loops, d.framed, d.unbounded)

"""n-tangles, the dihedral action on rotors, and rotor/stator composition.

Boundary positions p = 0 .. 2n-1 stand for a_0, b_0, a_1, b_1, ... in
counterclockwise order (a_i = 2i, b_i = 2i + 1).  A rotor is an inner tangle
(a disk); a stator is an outer tangle (the complementary disk of the sphere)
whose boundary points carry the same names, so composing glues equal names.

Each boundary entry is (edge label, "in" | "out"), "in" meaning the strand
enters the tangle there.
"""
from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .diagram import Crossing, Diagram, ParseError, ValidationError, build_diagram
from .planar import (IN, OUT, PlanarMap, PlanarityError, closed_key, fresh_labels,
                     noncrossing_matching)


class TangleError(ValueError):
    pass


class ArityMismatch(TangleError):
    pass


class OrientationMismatch(TangleError):
    pass


class OrientationUnfixable(TangleError):
    pass


class InfeasibleRequest(TangleError):
    pass


class Orientation(str, enum.Enum):
    PRESERVING = "preserving"
    REVERSING = "reversing"
    NEITHER = "neither"


def point_name(p: int) -> str:
    return ("a" if p % 2 == 0 else "b") + str(p // 2)


def point_index(name: str) -> int:
    if len(name) < 2 or name[0] not in "ab" or not name[1:].isdigit():
        raise ParseError(f"bad boundary point name {name!r}")
    return 2 * int(name[1:]) + (0 if name[0] == "a" else 1)


def _flip(d: str) -> str:
    return OUT if d == IN else IN


@dataclass(frozen=True)
class Tangle:
    n: int
    crossings: tuple
    boundary: tuple           # ((edge, "in"|"out"), ...) indexed by position
    free_loops: int = 0
    outer: bool = False       # True for a stator

    def planar_map(self) -> PlanarMap:
        return PlanarMap(list(self.crossings), list(self.boundary), self.outer)

    def directions(self) -> tuple:
        return tuple(d for _, d in self.boundary)

    def as_json(self) -> dict:
        labels = {}
        for x in self.crossings:
            for e in x.slots:
                labels.setdefault(e, len(labels))
        for e, _ in self.boundary:
            labels.setdefault(e, len(labels))
        return {
            "crossings": [[labels[e] for e in x.slots] + [x.sign] for x in self.crossings],
            "boundary": {point_name(p): [labels[e], d] for p, (e, d) in enumerate(self.boundary)},
            "free_loops": self.free_loops,
        }


def make_tangle(n: int, crossings, boundary, free_loops: int = 0, outer: bool = False) -> Tangle:
    """Validate and build a tangle (edge pairing, orientation, planarity)."""
    if n < 1:
        raise ValidationError("arity must be positive")
    boundary = tuple((e, d) for e, d in boundary)
    if len(boundary) != 2 * n:
        raise ValidationError(f"an {n}-tangle needs {2 * n} boundary points")
    for _, d in boundary:
        if d not in (IN, OUT):
            raise ValidationError(f"bad boundary direction {d!r}")
    if free_loops < 0:
        raise ValidationError("free_loops must be nonnegative")
    t = Tangle(n, tuple(crossings), boundary, free_loops, outer)
    try:
        t.planar_map().check_planar()
    except PlanarityError as exc:
        raise ValidationError(str(exc)) from exc
    return t


def trivial_tangle(n: int, outer: bool = False, first: str = IN) -> Tangle:
    """n crossingless arcs joining a_i to b_i."""
    bnd = []
    for i in range(n):
        bnd += [(i, first), (i, _flip(first))]
    return make_tangle(n, (), bnd, 0, outer)


# ---------------------------------------------------------------------------
# parsing


def _infer_signs(quads, boundary) -> list:
    """Crossing signs from strand directions (boundary arcs, then under-passages)."""
    occ = {}
    for i, q in enumerate(quads):
        for k, e in enumerate(q[:4]):
            occ.setdefault(e, []).append((i, k))
    for p, (e, _) in enumerate(boundary):
        occ.setdefault(e, []).append(("B", p))
    for e, o in occ.items():
        if len(o) != 2:
            raise ValidationError(f"edge label {e} does not appear exactly twice")
    entering = {}  # (crossing, slot) -> True when the strand enters there

    def other(e, here):
        a, b = occ[e]
        return b if a == here else a

    def walk(start_edge, start_end):
        e, here = start_edge, start_end
        while True:
            nxt = other(e, here)
            if nxt[0] == "B":
                return
            i, k = nxt
            if (i, k) in entering:
                return
            entering[(i, k)] = True
            entering[(i, (k + 2) % 4)] = False
            e = quads[i][(k + 2) % 4]
            here = (i, (k + 2) % 4)

    for p, (e, d) in enumerate(boundary):
        if d == IN:
            walk(e, ("B", p))
    # closed components: an under passage fixes the direction (slot 0 enters)
    for i, q in enumerate(quads):
        for k in (0, 2):
            if (i, k) not in entering:
                entering[(i, 0)] = True
                entering[(i, 2)] = False
                walk(q[2], (i, 2))
    signs = []
    for i, q in enumerate(quads):
        if (i, 1) not in entering:
            if len(q) == 5:
                signs.append(q[4])
                continue
            raise ParseError("a closed component passing only over needs explicit crossing signs")
        sign = 1 if entering[(i, 3)] else -1
        if len(q) == 5 and q[4] != sign:
            raise ValidationError(f"crossing {i}: stated sign contradicts the orientation")
        signs.append(sign)
    return signs


def tangle_from_json(obj, outer: bool = False) -> Tangle:
    if not isinstance(obj, dict) or "crossings" not in obj or "boundary" not in obj:
        raise ParseError("a tangle needs 'crossings' and 'boundary'")
    unknown = set(obj) - {"crossings", "boundary", "free_loops"}
    if unknown:
        raise ParseError(f"unknown tangle keys {sorted(unknown)}")
    cr = obj["crossings"]
    if not isinstance(cr, list) or not all(
            isinstance(q, list) and len(q) in (4, 5) and all(isinstance(v, int) and not isinstance(v, bool) for v in q)
            for q in cr):
        raise ParseError("'crossings' must be a list of integer quadruples (optionally with a sign)")
    for q in cr:
        if len(q) == 5 and q[4] not in (1, -1):
            raise ParseError("crossing signs must be +1 or -1")
    bobj = obj["boundary"]
    if not isinstance(bobj, dict) or len(bobj) % 2:
        raise ParseError("'boundary' must map a0, b0, ... to [edge, 'in'|'out']")
    n = len(bobj) // 2
    bnd = [None] * (2 * n)
    for name, v in bobj.items():
        p = point_index(name)
        if p >= 2 * n or bnd[p] is not None:
            raise ParseError(f"boundary point {name} out of range or repeated")
        if not (isinstance(v, list) and len(v) == 2 and isinstance(v[0], int) and v[1] in (IN, OUT)):
            raise ParseError(f"boundary point {name} must be [edge, 'in'|'out']")
        bnd[p] = (v[0], v[1])
    fl = obj.get("free_loops", 0)
    if not isinstance(fl, int) or isinstance(fl, bool):
        raise ParseError("'free_loops' must be an integer")
    if n == 0:
        raise ParseError("empty boundary")
    signs = _infer_signs(cr, bnd)
    crossings = [Crossing(*q[:4], sign=s) for q, s in zip(cr, signs)]
    return make_tangle(n, crossings, bnd, fl, outer)


@dataclass(frozen=True)
class RotorLink:
    stator: Tangle
    rotor: Tangle

    @property
    def n(self) -> int:
        return self.rotor.n

    def as_json(self) -> dict:
        return {"n": self.n, "stator": self.stator.as_json(), "rotor": self.rotor.as_json()}


def rotor_link_from_json(obj, check: bool = True) -> RotorLink:
    if not isinstance(obj, dict) or not {"n", "stator", "rotor"} <= set(obj):
        raise ParseError("a rotor-link file needs 'n', 'stator' and 'rotor'")
    s = tangle_from_json(obj["stator"], outer=True)
    r = tangle_from_json(obj["rotor"], outer=False)
    if not (s.n == r.n == obj["n"]):
        raise ArityMismatch(f"declared n={obj['n']}, stator {s.n}, rotor {r.n}")
    if check:
        if not is_rotor_symmetric(r):
            raise ValidationError("the rotor is not invariant under the rotation")
        if not compose(s, r).is_connected():
            raise ValidationError("the composed diagram is not connected")
    return RotorLink(s, r)


def parse_rotor_link(text: str) -> RotorLink:
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    return rotor_link_from_json(obj)


# ---------------------------------------------------------------------------
# the dihedral action


def rotate(t: Tangle, k: int) -> Tangle:
    """phi^k: a_i -> a_{i+k}, b_i -> b_{i+k}."""
    m = 2 * t.n
    bnd = [None] * m
    for p, v in enumerate(t.boundary):
        bnd[(p + 2 * k) % m] = v
    return Tangle(t.n, t.crossings, tuple(bnd), t.free_loops, t.outer)


def _flype_crossing(x: Crossing) -> Crossing:
    # reflect (reverses the cyclic order) and switch; the sign survives
    if x.sign > 0:
        return Crossing(x.d, x.c, x.b, x.a, 1)
    return Crossing(x.b, x.a, x.d, x.c, -1)


def flype0(t: Tangle) -> Tangle:
    """d_0: reflection across the axis through a_0/b_0's midpoint, all crossings switched."""
    m = 2 * t.n
    bnd = [None] * m
    for p, v in enumerate(t.boundary):
        bnd[(1 - p) % m] = v
    return Tangle(t.n, tuple(_flype_crossing(x) for x in t.crossings), tuple(bnd), t.free_loops, t.outer)


def dihedral_flype(t: Tangle, k: int) -> Tangle:
    """d_{k/2} = phi^k d_0."""
    return rotate(flype0(t), k)


def reverse_tangle(t: Tangle) -> Tangle:
    cr = tuple(Crossing(x.c, x.d, x.a, x.b, x.sign) for x in t.crossings)
    bnd = tuple((e, _flip(d)) for e, d in t.boundary)
    return Tangle(t.n, cr, bnd, t.free_loops, t.outer)


def classify_orientation(t: Tangle) -> Orientation:
    dirs = t.directions()
    m = len(dirs)
    if all(dirs[p] != dirs[(p + 1) % m] for p in range(m)):
        return Orientation.PRESERVING
    if m % 4 == 0:
        for shift in range(4):
            if all((dirs[p] == IN) == ((p + shift) % 4 < 2) for p in range(m)):
                return Orientation.REVERSING
    return Orientation.NEITHER


def canonical_form(t: Tangle) -> tuple:
    """Relabelling-invariant code: breadth-first labelling starting from a_0."""
    pm = t.planar_map()
    ends = pm.ends()
    tails, heads = ends
    nc = len(t.crossings)
    lab = {}
    seen = {}
    order = []

    def visit(e, here):
        if e not in lab:
            lab[e] = len(lab)
        there = heads[e] if tails[e] == here else tails[e]
        if there[0] < nc and there[0] not in seen:
            seen[there[0]] = len(order)
            order.append(there[0])

    bv = pm.bvertex
    slot_of_pos = {pm._pos(j): j for j in range(2 * t.n)}
    for p, (e, _) in enumerate(t.boundary):
        visit(e, (bv, slot_of_pos[p]))
    pos = 0
    while pos < len(order):
        i = order[pos]
        pos += 1
        for k, e in enumerate(t.crossings[i].slots):
            visit(e, (i, k))
    bcode = tuple((lab[e], d) for e, d in t.boundary)
    ccode = tuple((t.crossings[i].sign,) + tuple(lab[e] for e in t.crossings[i].slots) for i in order)
    rest = [t.crossings[i] for i in range(nc) if i not in seen]
    rcode = tuple(sorted(_split_keys(rest)))
    return (t.n, t.outer, bcode, ccode, rcode, t.free_loops)


def _split_keys(crossings) -> list:
    if not crossings:
        return []
    m = PlanarMap(list(crossings))
    keys = []
    for blk in m.blocks():
        keys.append(closed_key([crossings[i].slots + (crossings[i].sign,) for i in sorted(blk)]))
    return keys


def tangles_equal(s: Tangle, t: Tangle) -> bool:
    return canonical_form(s) == canonical_form(t)


def is_rotor_symmetric(t: Tangle) -> bool:
    """phi(R) = R; for orientation-reversing rotors phi reverses every strand,
    so the comparison is made with the reversed tangle."""
    target = reverse_tangle(t) if classify_orientation(t) == Orientation.REVERSING else t
    return tangles_equal(rotate(t, 1), target)


# ---------------------------------------------------------------------------
# strands


@dataclass(frozen=True)
class Strand:
    edges: tuple                 # in orientation order
    start: Optional[int] = None  # boundary position where it enters (None: closed)
    end: Optional[int] = None

    @property
    def closed(self) -> bool:
        return self.start is None


def strands(t: Tangle) -> list:
    """Open arcs (ordered by entry position) followed by closed components."""
    pm = t.planar_map()
    tails, heads = pm.ends()
    nc = len(t.crossings)
    pos_of_slot = {j: pm._pos(j) for j in range(2 * t.n)}

    def succ(e):
        v, k = heads[e]
        if v >= nc:
            return None
        return t.crossings[v].slots[(k + 2) % 4]

    out = []
    seen = set()
    for p, (e, d) in enumerate(t.boundary):
        if d != IN:
            continue
        cur = e
        edges = []
        while cur is not None:
            edges.append(cur)
            seen.add(cur)
            last = cur
            cur = succ(cur)
        v, k = heads[last]
        out.append(Strand(tuple(edges), p, pos_of_slot[k]))
    for x in t.crossings:
        for e in x.slots:
            if e in seen:
                continue
            cyc = [e]
            seen.add(e)
            f = succ(e)
            while f != e:
                cyc.append(f)
                seen.add(f)
                f = succ(f)
            out.append(Strand(tuple(cyc)))
    out.extend(Strand(()) for _ in range(t.free_loops))
    return out


def has_closed_components(t: Tangle) -> bool:
    return any(s.closed for s in strands(t))


def crossing_sums(t: Tangle, arc_sense: Optional[dict] = None) -> dict:
    """I(s, u): sum of signs of crossings between strands s and u (s <= u).

    `arc_sense` optionally flips the direction of some strands (+1 / -1).
    """
    st = strands(t)
    owner = {e: si for si, s in enumerate(st) for e in s.edges}
    sense = arc_sense or {}
    out = {}
    for x in t.crossings:
        u, o = owner[x.a], owner[x.b]
        key = (min(u, o), max(u, o))
        sg = x.sign if u == o else x.sign * sense.get(u, 1) * sense.get(o, 1)
        out[key] = out.get(key, 0) + sg
    return out


# ---------------------------------------------------------------------------
# composition


@dataclass(frozen=True)
class Composite:
    diagram: Diagram
    component_keys: tuple   # per component: frozenset of stator edge labels on it


def compose_tracked(s: Tangle, r: Tangle, framed: bool = False) -> Composite:
    if s.n != r.n:
        raise ArityMismatch(f"stator arity {s.n} but rotor arity {r.n}")
    if not s.outer or r.outer:
        raise TangleError("compose expects (stator, rotor)")
    for p in range(2 * s.n):
        if s.boundary[p][1] == r.boundary[p][1]:
            raise OrientationMismatch(f"orientations clash at {point_name(p)}")
    parent = {}

    def find(u):
        parent.setdefault(u, u)
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for p in range(2 * s.n):
        a, b = find(("s", s.boundary[p][0])), find(("r", r.boundary[p][0]))
        if a != b:
            parent[b] = a
    cr = [x.relabel(lambda e: find(("s", e))) for x in s.crossings]
    cr += [x.relabel(lambda e: find(("r", e))) for x in r.crossings]
    used = {e for x in cr for e in x.slots}
    roots = {find(u) for u in list(parent)}
    loops = sorted((rt for rt in roots if rt not in used), key=repr)
    free = s.free_loops + r.free_loops + len(loops)
    if s.crossings:
        ub = (find(("s", s.crossings[0].a)), "left")
    elif r.crossings:
        ub = (find(("s", s.boundary[0][0])), "left" if s.boundary[0][1] == IN else "right")
    else:
        ub = None
    if ub is not None and ub[0] not in used:
        ub = None
    d, relabel = build_diagram(cr, free, framed, ub, with_labels=True)
    comp_of = d.edge_component
    keys = [set() for _ in range(d.n_components())]
    stator_labels = {e for x in s.crossings for e in x.slots} | {e for e, _ in s.boundary}
    crossing_comps = sum(1 for c in d._components if c)
    for e in stator_labels:
        rt = find(("s", e))
        if rt in relabel:
            keys[comp_of[relabel[rt]]].add(e)
    for li, rt in enumerate(loops):
        members = {u[1] for u in parent if u[0] == "s" and find(u) == rt}
        keys[crossing_comps + li] = members
    return Composite(d, tuple(frozenset(k) for k in keys))


def compose(s: Tangle, r: Tangle, framed: bool = False) -> Diagram:
    return compose_tracked(s, r, framed).diagram


def rotant_rotor(rl: RotorLink, k: int = 0) -> Tangle:
    """d_{k/2}(R), reversed if that is needed to glue it to the stator."""
    flyped = dihedral_flype(rl.rotor, k)
    dirs_ok = all(a[1] != b[1] for a, b in zip(rl.stator.boundary, flyped.boundary))
    if dirs_ok:
        return flyped
    rev = reverse_tangle(flyped)
    if all(a[1] != b[1] for a, b in zip(rl.stator.boundary, rev.boundary)):
        return rev
    raise OrientationUnfixable("neither orientation of the flyped rotor matches the stator")


def rotant_link(rl: RotorLink, k: int = 0) -> RotorLink:
    return RotorLink(rl.stator, rotant_rotor(rl, k))


def rotant(rl: RotorLink, k: int = 0, framed: bool = False) -> Diagram:
    return compose(rl.stator, rotant_rotor(rl, k), framed)


# ---------------------------------------------------------------------------
# random generation


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _wedge_dirs(rng, cls: Orientation, w: int) -> list:
    if cls == Orientation.PRESERVING:
        a = rng.choice((IN, OUT))
        left = [rng.choice((IN, OUT)) for _ in range(w)]
        right = [_flip(d) for d in left]
        outer = [a, _flip(a)]
    else:
        outs = set(rng.sample(range(w), (w + 1) // 2))
        left = [OUT if j in outs else IN for j in range(w)]
        right = list(left)
        outer = [IN, IN]
    # ccw: a, b, L1..Lw, Rw..R1
    return outer + left + right[::-1]


def _disk_with_matching(rng, dirs, outer: bool, fresh) -> PlanarMap:
    pairs = noncrossing_matching(dirs, rng.randrange(len(dirs)))
    bnd = [None] * len(dirs)
    for p, q in pairs:
        e = next(fresh)
        bnd[p] = (e, dirs[p])
        bnd[q] = (e, dirs[q])
    return PlanarMap([], bnd, outer)


def _replicate(wedge: PlanarMap, n: int, w: int, reversing: bool) -> Tangle:
    parent = {}

    def find(u):
        parent.setdefault(u, u)
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    sectors = []
    for i in range(n):
        cr = [x.relabel(lambda e, i=i: (i, e)) for x in wedge.crossings]
        bnd = [((i, e), d) for e, d in wedge.boundary]
        if reversing and i % 2:
            cr = [Crossing(x.c, x.d, x.a, x.b, x.sign) for x in cr]
            bnd = [(e, _flip(d)) for e, d in bnd]
        sectors.append((cr, bnd))
    m = 2 + 2 * w
    for i in range(n):
        _, bi = sectors[i]
        _, bj = sectors[(i + 1) % n]
        for j in range(1, w + 1):
            left = bi[1 + j]           # L_j of sector i
            right = bj[m - j]          # R_j of sector i+1
            if left[1] == right[1]:
                raise AssertionError("sector orientations do not glue")
            a, b = find(left[0]), find(right[0])
            if a != b:
                parent[b] = a
    crossings = []
    bnd = []
    for i, (cr, b) in enumerate(sectors):
        crossings += [x.relabel(find) for x in cr]
        bnd += [(find(b[0][0]), b[0][1]), (find(b[1][0]), b[1][1])]
    used = {e for x in crossings for e in x.slots} | {e for e, _ in bnd}
    all_roots = {find(u) for u in list(parent)}
    free = len([rt for rt in all_roots if rt not in used])
    return make_tangle(n, crossings, bnd, free, outer=False)


def random_rotor(n: int, domain_crossings: int, orientation_class=Orientation.PRESERVING,
                 rng_seed=None, allow_closed: bool = False, max_attempts: int = 200,
                 kink_rate: float = 0.2) -> Tangle:
    """A rotationally symmetric rotor: one random sector replicated n times."""
    cls = Orientation(orientation_class)
    if cls == Orientation.NEITHER:
        raise InfeasibleRequest("rotors are generated as preserving or reversing")
    if cls == Orientation.REVERSING and n % 2:
        raise InfeasibleRequest("orientation-reversing rotors need an even arity")
    rng = _rng(rng_seed)
    for _ in range(max_attempts):
        if domain_crossings == 0 and cls == Orientation.PRESERVING:
            w = 0
        elif cls == Orientation.PRESERVING:
            w = rng.choice((0, 1, 1, 2))
        else:
            w = rng.choice((1, 1, 3))
        fresh = fresh_labels()
        wedge = _disk_with_matching(rng, _wedge_dirs(rng, cls, w), False, fresh)
        wedge.grow(rng, domain_crossings, fresh, kink_rate)
        r = _replicate(wedge, n, w, cls == Orientation.REVERSING)
        if not allow_closed and has_closed_components(r):
            continue
        return r
    raise InfeasibleRequest("could not generate a rotor without closed components")


def random_stator(n: int, crossings: int, rng_seed=None, directions: Optional[Sequence[str]] = None,
                  kink_rate: float = 0.2) -> Tangle:
    """A random outer tangle; `directions` are its boundary directions."""
    rng = _rng(rng_seed)
    if directions is None:
        directions = [IN, OUT] * n
    fresh = fresh_labels("s")
    m = _disk_with_matching(rng, list(directions), True, fresh)
    m.grow(rng, crossings, fresh, kink_rate)
    return make_tangle(n, m.crossings, m.boundary, 0, outer=True)


def random_tangle(n: int, crossings: int, rng_seed=None, directions: Optional[Sequence[str]] = None,
                  kink_rate: float = 0.2) -> Tangle:
    """A random inner tangle with no symmetry assumptions."""
    rng = _rng(rng_seed)
    if directions is None:
        directions = [IN, OUT] * n
    fresh = fresh_labels("t")
    m = _disk_with_matching(rng, list(directions), False, fresh)
    m.grow(rng, crossings, fresh, kink_rate)
    return make_tangle(n, m.crossings, m.boundary, 0, outer=False)


def random_rotor_link(n: int, domain_crossings: int, stator_crossings: int,
                      orientation_class=Orientation.PRESERVING, rng_seed=None,
                      allow_closed: bool = False, max_attempts: int = 200) -> RotorLink:
    """A random rotor link whose composed diagram is connected.

    The stator starts with `stator_crossings` crossings and gains more (at
    most 2n) until the composed diagram is connected.
    """
    rng = _rng(rng_seed)
    for _ in range(max_attempts):
        r = random_rotor(n, domain_crossings, orientation_class, rng, allow_closed)
        fresh = fresh_labels("s")
        m = _disk_with_matching(rng, [_flip(d) for d in r.directions()], True, fresh)
        m.grow(rng, stator_crossings, fresh, 0.2)
        for _extra in range(2 * n + 1):
            s = make_tangle(n, m.crossings, m.boundary, 0, outer=True)
            d = compose(s, r)
            if d.crossings and d.is_connected():
                return RotorLink(s, r)
            m.grow(rng, 1, fresh, 0.0)
    raise InfeasibleRequest("could not generate a connected rotor link")

"""Link invariants of oriented (optionally framed) diagrams.

Wherever two independent computations exist, both are exposed:
    Conway polynomial   - Seifert matrix determinant / skein recursion
    Murasugi signature  - Tristram-Levine at -1 plus linking / Goeritz + Euler term
    determinant         - |det G| / |Alexander(-1)|
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .diagram import (Crossing, Diagram, DisconnectedDiagram, SHADED, WHITE, components)
from .exactmat import (AbelianGroup, GaussMatrix, GaussRational, IntMatrix, LaurentPoly,
                       abelian_group, char_poly, hermitian_signature,
                       lattice_basis_transform, poly_det, unit_circle_point)
from .planar import closed_key
from .seifert_local import L_IN_R, R_IN_L, SIDE_BY_SIDE, local_table


class RewriteFailure(ArithmeticError):
    pass


class OmegaIsOne(ValueError):
    pass


class RouteMismatch(AssertionError):
    pass


class BudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# linking numbers


@dataclass(frozen=True)
class LinkingData:
    matrix: IntMatrix
    lk_total: int
    trace: int
    component_edges: tuple  # components in the order used for the matrix


def linking_data(d: Diagram) -> LinkingData:
    comps = components(d)
    k = len(comps)
    twice = [[0] * k for _ in range(k)]
    ec = d.edge_component
    for x in d.crossings:
        i, j = ec[x.a], ec[x.b]
        if i == j:
            twice[i][i] += 2 * x.sign
        else:
            twice[i][j] += x.sign
            twice[j][i] += x.sign
    a = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i == j:
                a[i][i] = twice[i][i] // 2 if d.framed else 0
            else:
                if twice[i][j] % 2:
                    raise ArithmeticError("odd crossing count between two components")
                a[i][j] = twice[i][j] // 2
    lk = sum(a[i][j] for i in range(k) for j in range(i + 1, k))
    tr = sum(a[i][i] for i in range(k))
    return LinkingData(IntMatrix(a), lk, tr, tuple(comps))


# ---------------------------------------------------------------------------
# Seifert surface


def _require_connected(d: Diagram):
    if not d.is_connected():
        raise DisconnectedDiagram("surface constructions need a connected diagram")


def seifert_arcs(x: Crossing) -> tuple:
    """(L-bottom, L-top, R-bottom, R-top) edges and corner indices (left, right, up, down)."""
    if x.sign > 0:
        return (x.d, x.c, x.a, x.b), (2, 0, 1, 3)
    return (x.a, x.d, x.b, x.c), (3, 1, 2, 0)


@dataclass(frozen=True)
class SeifertData:
    circle_count: int
    matrix: IntMatrix                 # Seifert matrix on a Z-basis of H_1(F)
    basis: tuple                      # each generator as integer combination of faces
    face_gram: IntMatrix              # psi on all face loops (generating set)
    standard_generators: tuple        # faces whose boundary touches a band core
    band_vectors: tuple               # per face: band traversal vector

    @property
    def rank(self) -> int:
        return self.matrix.nrows

    def standard_gram(self) -> IntMatrix:
        idx = self.standard_generators
        return self.face_gram.submatrix(idx, idx)


def seifert_circles(d: Diagram) -> tuple:
    """Seifert circles as tuples of edges, plus edge -> circle map."""
    nxt = {}
    for x in d.crossings:
        (lb, lt, rb, rt), _ = seifert_arcs(x)
        nxt[lb] = lt
        nxt[rb] = rt
    seen = set()
    circles = []
    for e in sorted(nxt):
        if e in seen:
            continue
        cyc = [e]
        seen.add(e)
        f = nxt[e]
        while f != e:
            cyc.append(f)
            seen.add(f)
            f = nxt[f]
        circles.append(tuple(cyc))
    return tuple(circles)


def _circle_disk_sides(d: Diagram, circles) -> list:
    """For each circle: True if its disk (side away from infinity) is on its left."""
    circ_of = {e: ci for ci, cyc in enumerate(circles) for e in cyc}
    nf = len(d._face_darts)
    parent = list(range(nf))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    left_face = {}
    right_face = {}
    for i, x in enumerate(d.crossings):
        (lb, lt, rb, rt), (cl, cr, cu, cd) = seifert_arcs(x)
        fu, fd = d.corner_face(i, cu), d.corner_face(i, cd)
        parent[find(fu)] = find(fd)
        left_face.setdefault(circ_of[lb], d.corner_face(i, cl))
        right_face.setdefault(circ_of[lb], fu)
        right_face.setdefault(circ_of[rb], d.corner_face(i, cr))
        left_face.setdefault(circ_of[rb], fu)
    # tree: regions as nodes, circles as edges
    adj = {}
    for ci in range(len(circles)):
        u, v = find(left_face[ci]), find(right_face[ci])
        adj.setdefault(u, []).append((v, ci))
        adj.setdefault(v, []).append((u, ci))
    root = find(d.unbounded_face())
    disk_left = [None] * len(circles)
    stack = [root]
    seen = {root}
    while stack:
        u = stack.pop()
        for v, ci in adj.get(u, []):
            if v in seen:
                continue
            seen.add(v)
            # u is on the infinity side of circle ci; the disk is on v's side
            disk_left[ci] = find(left_face[ci]) == v
            stack.append(v)
    if any(s is None for s in disk_left):
        raise ArithmeticError("Seifert regions do not form a tree")
    return disk_left


def _face_gram_and_bands(d: Diagram):
    circles = seifert_circles(d)
    circ_of = {e: ci for ci, cyc in enumerate(circles) for e in cyc}
    disk_left = _circle_disk_sides(d, circles)
    nf = len(d._face_darts)
    nc = len(d.crossings)
    gram = [[Fraction(0)] * nf for _ in range(nf)]
    bands = [[0] * nc for _ in range(nf)]
    for i, x in enumerate(d.crossings):
        (lb, lt, rb, rt), corners = seifert_arcs(x)
        l_ccw = disk_left[circ_of[lb]]
        r_ccw = disk_left[circ_of[rb]]
        if l_ccw and not r_ccw:
            case = SIDE_BY_SIDE
        elif not l_ccw and not r_ccw:
            case = R_IN_L
        elif l_ccw and r_ccw:
            case = L_IN_R
        else:
            raise ArithmeticError("impossible nesting at a crossing")
        tab = local_table(case, x.sign)
        names = ("left", "right", "up", "down")
        fcs = [d.corner_face(i, k) for k in corners]
        for p, fp in zip(names, fcs):
            for q, fq in zip(names, fcs):
                v = tab[(p, q)]
                if v:
                    gram[fp][fq] += v
        bands[fcs[2]][i] += 1
        bands[fcs[3]][i] -= 1
    for r in gram:
        for v in r:
            if v.denominator != 1:
                raise ArithmeticError("non-integral Seifert pairing")
    return circles, IntMatrix(gram), bands


def seifert_matrix(d: Diagram) -> SeifertData:
    if not d.crossings:
        _require_connected(d)
        return SeifertData(1, IntMatrix([]), (), IntMatrix([]), (), ())
    _require_connected(d)
    cached = d.__dict__.get("_seifert")
    if cached is not None:
        return cached
    circles, gram, bands = _face_gram_and_bands(d)
    combos = lattice_basis_transform(bands)
    g = gram.rows
    nf = len(g)
    # A = C * Gram * C^T
    cg = [[sum(c[f] * g[f][h] for f in range(nf) if c[f]) for h in range(nf)] for c in combos]
    a = [[sum(r[h] * c[h] for h in range(nf) if c[h]) for c in combos] for r in cg]
    std = tuple(f for f in range(nf) if any(bands[f]))
    out = SeifertData(len(circles), IntMatrix(a), tuple(tuple(c) for c in combos), gram, std,
                      tuple(tuple(b) for b in bands))
    d.__dict__["_seifert"] = out
    return out


def _z_power(k: int) -> LaurentPoly:
    # (x - 1/x)^k
    return LaurentPoly({k - 2 * j: (-1) ** j * comb(k, j) for j in range(k + 1)})


def rewrite_in_z(p: LaurentPoly) -> LaurentPoly:
    """Express a Laurent polynomial in x as a polynomial in z = x - 1/x."""
    out = {}
    rest = p
    while not rest.is_zero():
        k = rest.max_exp()
        if k < 0 or rest.min_exp() != -k:
            raise RewriteFailure(f"{p.to_str('x')} is not a polynomial in x - 1/x")
        c = rest[k]
        out[k] = c
        rest = rest - _z_power(k) * c
    return LaurentPoly(out)


def alexander_polynomial(d: Diagram) -> LaurentPoly:
    """det(A - t A^T) on the Seifert matrix (defined up to units +-t^k)."""
    a = seifert_matrix(d).matrix
    t = LaurentPoly.monomial(1)
    n = a.nrows
    m = [[LaurentPoly.const(a[i, j]) - t * a[j, i] for j in range(n)] for i in range(n)]
    return poly_det(m)


def conway_from_seifert(d: Diagram) -> LaurentPoly:
    """Conway polynomial det(x^-1 A - x A^T) rewritten in z = x - x^-1."""
    if d.crossings and d.free_loops:
        raise DisconnectedDiagram("surface constructions need a connected diagram")
    a = seifert_matrix(d).matrix
    n = a.nrows
    x = LaurentPoly.monomial(1)
    xi = LaurentPoly.monomial(-1)
    m = [[xi * a[i, j] - x * a[j, i] for j in range(n)] for i in range(n)]
    return rewrite_in_z(poly_det(m))


# ---------------------------------------------------------------------------
# skein oracle


class _Skein:
    def __init__(self, max_crossings: int, max_nodes: int):
        self.max_crossings = max_crossings
        self.max_nodes = max_nodes
        self.nodes = 0
        self.memo = {}

    def run(self, crossings, free_loops) -> LaurentPoly:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded("skein recursion exceeded its node budget")
        n = len(crossings)
        if n == 0:
            return LaurentPoly.const(1 if free_loops == 1 else 0)
        if free_loops or not _connected(crossings):
            return LaurentPoly()
        key = closed_key(crossings, free_loops)
        if key in self.memo:
            return self.memo[key]
        bad = _first_bad_crossing(crossings)
        if bad is None:
            ncomp = _count_components(crossings)
            res = LaurentPoly.const(1 if ncomp == 1 else 0)
        else:
            x = crossings[bad]
            sw = list(crossings)
            sw[bad] = _switch(x)
            sm, loops = _smooth(crossings, bad)
            z = LaurentPoly.monomial(1)
            r_sw = self.run(sw, 0)
            r_sm = self.run(sm, loops)
            res = r_sw + z * r_sm if x[4] > 0 else r_sw - z * r_sm
        self.memo[key] = res
        return res


def _switch(x):
    a, b, c, dd, s = x
    return (dd, a, b, c, -1) if s > 0 else (b, c, dd, a, 1)


def _in_out(x):
    a, b, c, dd, s = x
    return ((a, dd), (c, b)) if s > 0 else ((a, b), (c, dd))


def _smooth(crossings, idx):
    x = crossings[idx]
    a, b, c, dd, s = x
    pairs = ((a, b), (dd, c)) if s > 0 else ((a, dd), (b, c))
    parent = {}

    def find(u):
        while parent.get(u, u) != u:
            u = parent[u]
        return u

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
    rest = [y for j, y in enumerate(crossings) if j != idx]
    used = {e for y in rest for e in y[:4]}
    loops = 0
    seen = set()
    for e in (a, b, c, dd):
        r = find(e)
        if r in seen:
            continue
        seen.add(r)
        members = [u for u in (a, b, c, dd) if find(u) == r]
        if not any(u in used for u in members):
            loops += 1
    out = [tuple(find(e) for e in y[:4]) + (y[4],) for y in rest]
    return out, loops


def _connected(crossings) -> bool:
    n = len(crossings)
    occ = {}
    for i, x in enumerate(crossings):
        for e in x[:4]:
            occ.setdefault(e, []).append(i)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for e in crossings[i][:4]:
            for j in occ[e]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == n


def _heads(crossings):
    heads = {}
    for i, x in enumerate(crossings):
        ins, _ = _in_out(x)
        for e in ins:
            heads[e] = i
    return heads


def _next_edge(crossings, heads, e):
    """(crossing, entering slot, leaving edge) for the edge e."""
    i = heads[e]
    x = crossings[i]
    k = 0 if x[0] == e else (3 if x[4] > 0 else 1)
    return i, k, x[(k + 2) % 4]


def _walk(crossings):
    """Yield (crossing, is_under) along components ordered by minimal edge label."""
    heads = _heads(crossings)
    edges = sorted(heads, key=repr)
    seen = set()
    for e0 in edges:
        if e0 in seen:
            continue
        e = e0
        while True:
            seen.add(e)
            i, k, f = _next_edge(crossings, heads, e)
            yield i, k % 2 == 0
            e = f
            if e == e0:
                break


def _first_bad_crossing(crossings):
    visited = set()
    for i, under in _walk(crossings):
        if i in visited:
            continue
        visited.add(i)
        if under:
            return i
    return None


def _count_components(crossings) -> int:
    heads = _heads(crossings)
    seen = set()
    n = 0
    for e0 in heads:
        if e0 in seen:
            continue
        n += 1
        e = e0
        while e not in seen:
            seen.add(e)
            _, _, e = _next_edge(crossings, heads, e)
    return n


def conway_skein(d: Diagram, max_crossings: int = 24, max_nodes: int = 2_000_000) -> LaurentPoly:
    """Conway polynomial by the skein relation nabla(L+) - nabla(L-) = z nabla(L0)."""
    if len(d.crossings) > max_crossings:
        raise BudgetExceeded(f"{len(d.crossings)} crossings exceed the skein budget {max_crossings}")
    cr = [x.slots + (x.sign,) for x in d.crossings]
    return _Skein(max_crossings, max_nodes).run(cr, d.free_loops)


# ---------------------------------------------------------------------------
# signatures


def _omega(omega) -> GaussRational:
    if isinstance(omega, GaussRational):
        w = omega
    elif isinstance(omega, (str, int, Fraction)):
        w = unit_circle_point(omega)
    else:
        w = GaussRational.of(omega)
    if w == GaussRational(1):
        raise OmegaIsOne("omega must differ from 1")
    if w.norm2() != 1:
        raise ValueError("omega must lie on the unit circle")
    return w


def hermitian_form_matrix(d: Diagram, xi) -> GaussMatrix:
    """X = xi A + conj(xi) A^T on the Seifert basis."""
    xi = GaussRational.of(xi)
    a = seifert_matrix(d).matrix
    n = a.nrows
    return GaussMatrix([[xi * a[i, j] + xi.conj() * a[j, i] for j in range(n)] for i in range(n)])


def standard_hermitian_matrix(d: Diagram, xi) -> GaussMatrix:
    """X on the standard generating set (all face loops touching a band core)."""
    xi = GaussRational.of(xi)
    g = seifert_matrix(d).standard_gram()
    n = g.nrows
    return GaussMatrix([[xi * g[i, j] + xi.conj() * g[j, i] for j in range(n)] for i in range(n)])


def tl_signature(d: Diagram, omega) -> int:
    w = _omega(omega)
    one = GaussRational(1)
    return hermitian_signature(
        _tl_matrix(seifert_matrix(d).matrix, one - w, one - w.conj()))


def _tl_matrix(a: IntMatrix, c1, c2) -> GaussMatrix:
    n = a.nrows
    return GaussMatrix([[c1 * a[i, j] + c2 * a[j, i] for j in range(n)] for i in range(n)])


def classical_signature(d: Diagram) -> int:
    a = seifert_matrix(d).matrix
    return hermitian_signature(a + a.T)


# ---------------------------------------------------------------------------
# Goeritz form


@dataclass(frozen=True)
class GoeritzData:
    white_faces: tuple      # face indices, deleted (unbounded) one first
    full: IntMatrix         # before deletion (zero row sums)
    matrix: IntMatrix       # after deleting the unbounded white region
    eta: tuple              # per crossing
    crossing_type: tuple    # per crossing: 1 or 2
    mu: int
    euler: int              # e(F)


def goeritz(d: Diagram) -> GoeritzData:
    if not d.crossings:
        _require_connected(d)
        return GoeritzData((), IntMatrix([]), IntMatrix([]), (), (), 0, 0)
    _require_connected(d)
    cached = d.__dict__.get("_goeritz")
    if cached is not None:
        return cached
    cols = d.face_colors
    outer = d.unbounded_face()
    whites = [outer] + [f for f in range(len(cols)) if cols[f] == WHITE and f != outer]
    widx = {f: k for k, f in enumerate(whites)}
    w = len(whites)
    g = [[0] * w for _ in range(w)]
    etas, types = [], []
    mu = 0
    for i, x in enumerate(d.crossings):
        # corners: 0 = SE (slots a,b), 1 = NE, 2 = NW, 3 = SW
        if cols[d.corner_face(i, 1)] == WHITE:
            eta, wc = -1, (1, 3)
        else:
            eta, wc = 1, (0, 2)
        _, (cl, cr, cu, cd) = seifert_arcs(x)
        # type I: the shaded corners are the ones the Seifert disks occupy
        shaded = {0, 2} if wc == (1, 3) else {1, 3}
        typ = 1 if shaded == {cl, cr} else 2
        etas.append(eta)
        types.append(typ)
        if typ == 2:
            mu += eta
        f1, f2 = d.corner_face(i, wc[0]), d.corner_face(i, wc[1])
        if f1 != f2:
            u, v = widx[f1], widx[f2]
            g[u][v] -= eta
            g[v][u] -= eta
    for u in range(w):
        g[u][u] = -sum(g[u][v] for v in range(w) if v != u)
    full = IntMatrix(g)
    red = full.submatrix(range(1, w), range(1, w))
    ld = linking_data(d)
    euler = -2 * mu + 2 * ld.lk_total
    out = GoeritzData(tuple(whites), full, red, tuple(etas), tuple(types), mu, euler)
    d.__dict__["_goeritz"] = out
    return out


def surface_framing_trace(d: Diagram) -> int:
    """tr(L) for the framing induced by the shaded surface F: sum of lk(K_i, K_i^F).

    Each component is pushed into F (the collar is always an annulus, so the
    push-off closes after one traversal).  Near a
    crossing gamma cuts diagonally through the half-twisted band: it stays just
    below an over-strand / above an under-strand, so it crosses its own strand
    and the other strand once each.
    """
    if not d.crossings:
        return 0
    cols = d.face_colors
    ec = d.edge_component
    tot = 0
    for i, x in enumerate(d.crossings):
        s = x.slots
        for k in x.in_slots():
            over = x.is_over(k)
            left_before = d.corner_face(i, (k - 1) % 4)
            side = 1 if cols[left_before] == SHADED else -1
            tot += -side * (1 if over else -1)          # gamma against its own strand
            other = s[(k + 1) % 4]
            if ec[other] == ec[s[k]]:
                tot += x.sign                           # gamma against the other strand
    # every signed crossing counts one half towards the linking number
    if tot % 2:
        raise ArithmeticError("odd push-off crossing count")
    return tot // 2


def goeritz_charpoly(d: Diagram) -> tuple:
    return char_poly(goeritz(d).matrix)


@dataclass(frozen=True)
class MurasugiRoutes:
    route_a: int  # sigma_{-1} + lk
    route_b: int  # sign(G) + e(F)/2


def murasugi_routes(d: Diagram) -> MurasugiRoutes:
    if not d.crossings:
        _require_connected(d)
        return MurasugiRoutes(0, 0)
    a = tl_signature(d, "inf") + linking_data(d).lk_total
    gd = goeritz(d)
    if gd.euler % 2:
        raise ArithmeticError("odd Euler term")
    b = hermitian_signature(gd.matrix) + gd.euler // 2
    return MurasugiRoutes(a, b)


def murasugi_signature(d: Diagram) -> int:
    r = murasugi_routes(d)
    if r.route_a != r.route_b:
        raise RouteMismatch(f"Murasugi routes disagree: {r.route_a} vs {r.route_b}")
    return r.route_b


def double_cover_h1(d: Diagram, modulus: Optional[int] = None) -> AbelianGroup:
    if not d.crossings:
        _require_connected(d)
        grp = AbelianGroup()
    else:
        grp = abelian_group(goeritz(d).matrix)
    return grp.tensor_mod(modulus) if modulus else grp


def determinant(d: Diagram) -> int:
    if not d.crossings:
        _require_connected(d)
        return 1
    g = abs(goeritz(d).matrix.det())
    a = abs(alexander_polynomial(d).evaluate(-1))
    if g != a:
        raise RouteMismatch(f"|det G| = {g} but |Delta(-1)| = {a}")
    return g


# ---------------------------------------------------------------------------
# report


DEFAULT_OMEGA_T = ("inf", "1", "2", "1/2", "3", "1/3")


def _poly_json(p: LaurentPoly) -> dict:
    return p.to_json()


def _coeffs_json(cs) -> list:
    return [str(c) for c in cs]


def invariant_report(d: Diagram, omega_t: Sequence = DEFAULT_OMEGA_T, modulus: Optional[int] = None) -> dict:
    ld = linking_data(d)
    conway = conway_from_seifert(d)
    alex = alexander_polynomial(d)
    det = determinant(d)
    sigs = []
    for t in omega_t:
        w = unit_circle_point(t)
        sigs.append({"t": str(t), "omega": str(w), "sigma": tl_signature(d, w)})
    h1 = double_cover_h1(d)
    if modulus is None:
        # smallest prime dividing the order, if any
        p = next((q for q in (2, 3, 5, 7, 11, 13) if any(f % q == 0 for f in h1.factors)), None)
    else:
        p = modulus
    return {
        "components": d.n_components(),
        "linking_matrix": [[str(v) for v in r] for r in ld.matrix.rows],
        "lk_total": str(ld.lk_total),
        "trace": str(ld.trace),
        "conway": _poly_json(conway),
        "alexander": _poly_json(alex),
        "determinant": str(det),
        "tl_signatures": sigs,
        "murasugi": murasugi_signature(d),
        "goeritz_charpoly": _coeffs_json(goeritz_charpoly(d)) if d.crossings else ["1"],
        "h1_double_cover": h1.to_json(),
        "h1_mod_p": ({"p": p, **h1.tensor_mod(p).to_json()} if p else None),
    }

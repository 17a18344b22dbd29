"""Local crossing geometry for the Seifert form.

The Seifert surface is built from Seifert circles (each bounding a dome that
bulges up for a counterclockwise circle and down for a clockwise one) joined
by half-twisted bands.  Every face loop of the diagram can be pushed into
thin collars of the circles plus the band cores, so two loops only meet in
projection near crossings.  This module builds an explicit rational model of
one crossing neighbourhood and counts the signed projected crossings between
the positive push-off of one local pass and another local pass.

Frame: both smoothed arcs run upward, L on x=-1 and R on x=+1; the band joins
them across |y|<1.  Passes (named by the face corner they serve):
    left  - up along L            right - down along R
    up    - down L, band L->R, up R
    down  - up R, band R->L, down L
"""
from __future__ import annotations

from fractions import Fraction as Fr
from functools import lru_cache

PASSES = ("left", "right", "up", "down")

# nesting of the two circles at the crossing
SIDE_BY_SIDE = "side"      # L counterclockwise, R clockwise
R_IN_L = "r_in_l"          # both clockwise
L_IN_R = "l_in_r"          # both counterclockwise

_Y = Fr(2)
_H = Fr(1, 8)       # band height scale
_TAU = Fr(1, 1000)  # push-off distance inside the surface
_SHALLOW, _DEEP = Fr(1, 10), Fr(2, 10)
_S = {"up": Fr(1, 2), "down": Fr(-1, 2)}


class _Sheet:
    def __init__(self, kind, **kw):
        self.kind = kind  # "L", "R" or "band"
        self.__dict__.update(kw)


def _disk_layout(case):
    """(L disk on left?, R disk on right?) and normals (+1 up / -1 down)."""
    if case == SIDE_BY_SIDE:
        return True, True
    if case == R_IN_L:
        return False, True
    if case == L_IN_R:
        return True, False
    raise ValueError(case)


def _height(sheet, case, sign, x, y, s=None):
    l_left, r_right = _disk_layout(case)
    if sheet == "L":
        return (-1 - x) if l_left else -(x + 1)
    if sheet == "R":
        return -(x - 1) if r_right else (1 - x)
    # band line of parameter s at abscissa x
    return -sign * s * _H * (1 - abs(x))


def _normal(sheet, case):
    l_left, r_right = _disk_layout(case)
    if sheet == "L":
        return 1 if l_left else -1
    if sheet == "R":
        return -1 if r_right else 1
    raise ValueError("no tie-break on the band")


def _lane_x(arc, pass_name, case):
    l_left, r_right = _disk_layout(case)
    if arc == "L":
        deep = (pass_name == "left") == l_left
        o = _DEEP if deep else _SHALLOW
        return -1 - o if l_left else -1 + o
    deep = (pass_name == "right") == r_right
    o = _DEEP if deep else _SHALLOW
    return 1 + o if r_right else 1 - o


def _rot(v):
    return (-v[1], v[0])


def _fleft_sign(sheet, case):
    """+1 if the in-surface left of a direction is the plane-left on this sheet."""
    return _normal(sheet, case)


def _pass_polyline(p, case, copy):
    """List of (point, sheet, band_s) vertices; sheet/band_s describe the segment
    that *starts* at the vertex."""
    tau = _TAU if copy else 0

    def lane(arc, name, direction):
        # direction +1 = moving +y.  F-left offset of a vertical lane.
        x = _lane_x(arc, name, case)
        sheet = arc
        left_plane = (-direction, 0)  # plane-left of (0, direction)
        sgn = _fleft_sign(sheet, case)
        return x + tau * sgn * left_plane[0]

    if p == "left":
        x = lane("L", "left", +1)
        return [((x, -_Y), "L", None), ((x, _Y), None, None)]
    if p == "right":
        x = lane("R", "right", -1)
        return [((x, _Y), "R", None), ((x, -_Y), None, None)]
    if p == "up":
        s = _S["up"] + tau  # band traversed L->R: in-surface left is +s
        xl = lane("L", "up", -1)
        xr = lane("R", "up", +1)
        return [((xl, _Y), "L", None), ((xl, Fr(9, 8) + tau), "L", None),
                ((Fr(-1), s), "band", s), ((Fr(1), -s), "R", None),
                ((xr, Fr(1, 8) + tau), "R", None), ((xr, _Y), None, None)]
    if p == "down":
        s = _S["down"] - tau  # band traversed R->L: in-surface left is -s
        xr = lane("R", "down", +1)
        xl = lane("L", "down", -1)
        return [((xr, -_Y), "R", None), ((xr, Fr(-1, 8) - tau), "R", None),
                ((Fr(1), -s), "band", s), ((Fr(-1), s), "L", None),
                ((xl, Fr(-9, 8) - tau), "L", None), ((xl, -_Y), None, None)]
    raise ValueError(p)


def _segments(poly):
    out = []
    for (p, sheet, s), (q, _, _) in zip(poly, poly[1:]):
        out.append((p, q, sheet, s))
    return out


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _intersect(p1, p2, q1, q2):
    r = (p2[0] - p1[0], p2[1] - p1[1])
    s = (q2[0] - q1[0], q2[1] - q1[1])
    den = _cross(r, s)
    qp = (q1[0] - p1[0], q1[1] - p1[1])
    if den == 0:
        if _cross(qp, r) == 0:
            # collinear: only allowed if disjoint
            t0 = (qp[0] * r[0] + qp[1] * r[1]) / (r[0] * r[0] + r[1] * r[1])
            t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / (r[0] * r[0] + r[1] * r[1])
            lo, hi = min(t0, t1), max(t0, t1)
            if hi < 0 or lo > 1:
                return None
            raise ArithmeticError("collinear overlap in local model")
        return None
    t = _cross(qp, s) / den
    u = _cross(qp, r) / den
    if 0 < t < 1 and 0 < u < 1:
        return t, u
    if 0 <= t <= 1 and 0 <= u <= 1:
        raise ArithmeticError("degenerate intersection at a vertex in local model")
    return None


def _seg_height(seg, case, sign, pt):
    (p, q, sheet, s) = seg
    return _height(sheet, case, sign, pt[0], pt[1], s)


def _count(copy_poly, orig_poly, case, sign):
    total = Fr(0)
    for a in _segments(copy_poly):
        for b in _segments(orig_poly):
            hit = _intersect(a[0], a[1], b[0], b[1])
            if hit is None:
                continue
            t, _ = hit
            pt = (a[0][0] + t * (a[1][0] - a[0][0]), a[0][1] + t * (a[1][1] - a[0][1]))
            za = _seg_height(a, case, sign, pt)
            zb = _seg_height(b, case, sign, pt)
            if za == zb:
                if a[2] != b[2] or a[2] == "band":
                    raise ArithmeticError("height tie between different sheets")
                copy_over = _normal(a[2], case) > 0
            else:
                copy_over = za > zb
            da = (a[1][0] - a[0][0], a[1][1] - a[0][1])
            db = (b[1][0] - b[0][0], b[1][1] - b[0][1])
            c = _cross(da, db) if copy_over else _cross(db, da)
            total += Fr(1, 2) if c > 0 else Fr(-1, 2)
    return total


@lru_cache(maxsize=None)
def local_table(case: str, sign: int) -> dict:
    """{(p, q): contribution of (push-off of pass p, pass q) to lk}."""
    out = {}
    for p in PASSES:
        cp = _pass_polyline(p, case, copy=True)
        for q in PASSES:
            oq = _pass_polyline(q, case, copy=False)
            out[(p, q)] = _count(cp, oq, case, sign)
    return out


def self_parallel_is_disjoint(case: str, sign: int) -> bool:
    """The in-surface parallel copy of a pass never meets the pass on a sheet."""
    for p in PASSES:
        cp = _pass_polyline(p, case, copy=True)
        op = _pass_polyline(p, case, copy=False)
        for a in _segments(cp):
            for b in _segments(op):
                if _intersect(a[0], a[1], b[0], b[1]) is not None and a[2] == b[2] and a[2] != "band":
                    return False
    return True

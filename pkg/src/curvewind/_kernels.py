"""Numeric kernels for winding, ray casting, carrier distance, and scans.

Pieces are flattened into ``kinds`` (int8) and ``data`` (float64, n x 8)
rows before hitting these functions:

* line : x0, y0, x1, y1
* arc  : cx, cy, r, start_angle, sweep
* cubic: x0, y0, x1, y1, x2, y2, x3, y3

Scalar kernels are numba ``@njit`` functions; the same source runs un-jitted
when numba is off.  Batch entry points (``winding_batch``, ``carrier_batch``,
``pair_scan``, ``grid_path``) dispatch to vectorised numpy implementations in
the fallback lane; see the module bottom.

Why the winding sums are exact: every accepted node replaces a sub-path by
its chord.  Sub-path and chord both live in the node's bounding box, so when
the query point lies strictly outside that box the closed loop (sub-path
forward, chord back) cannot wind around it, and the two integrals of
dz/(z - zeta) coincide.  The chord integral is the principal complex log of
the endpoint ratio because a segment never subtends an angle >= pi from a
point off the segment.  Refinement therefore stops as soon as boxes exclude
the query point, and the only error left is float round-off.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import njit, USING_NUMBA

KIND_LINE = 0
KIND_ARC = 1
KIND_CUBIC = 2

TWO_PI = 2.0 * math.pi

# status codes shared by the scalar kernels
OK = 0
ON_CARRIER = 1
NODE_LIMIT = 2

# DFS stacks hold one pending sibling per level, so depth bounds the size
_STACK_CAP = 256
_HIT_CAP = 64
_RAY_T_MIN = 1e-12
_BRACKET_WIDTH = 1e-4
_ROOT_TOL = 1e-12


@njit(cache=True)
def _bbox_dist(px, py, xmin, ymin, xmax, ymax):
    dx = 0.0
    if px < xmin:
        dx = xmin - px
    elif px > xmax:
        dx = px - xmax
    dy = 0.0
    if py < ymin:
        dy = ymin - py
    elif py > ymax:
        dy = py - ymax
    return math.hypot(dx, dy)


@njit(cache=True)
def _log_ratio(w0x, w0y, w1x, w1y):
    """Principal complex log of (w1 / w0) as (re, im)."""

    n0 = w0x * w0x + w0y * w0y
    n1 = w1x * w1x + w1y * w1y
    re = 0.5 * math.log(n1 / n0)
    im = math.atan2(w0x * w1y - w0y * w1x, w0x * w1x + w0y * w1y)
    return re, im


@njit(cache=True)
def _seg_point_dist(px, py, x0, y0, x1, y1):
    ex, ey = x1 - x0, y1 - y0
    denom = ex * ex + ey * ey
    if denom == 0.0:
        return math.hypot(px - x0, py - y0)
    t = ((px - x0) * ex + (py - y0) * ey) / denom
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return math.hypot(px - (x0 + t * ex), py - (y0 + t * ey))


@njit(cache=True)
def _angle_in_sweep(a0, sweep, theta):
    """Local parameter u in [0, 1] if theta lies on the sweep, else -1."""

    if sweep > 0.0:
        delta = (theta - a0) % TWO_PI
        if delta <= sweep + 1e-12:
            u = delta / sweep
            return u if u < 1.0 else 1.0
        return -1.0
    delta = (a0 - theta) % TWO_PI
    if delta <= -sweep + 1e-12:
        u = delta / (-sweep)
        return u if u < 1.0 else 1.0
    return -1.0


@njit(cache=True)
def _arc_point_dist(px, py, cx, cy, r, a0, sweep):
    wx, wy = px - cx, py - cy
    d = math.hypot(wx, wy)
    if abs(abs(sweep) - TWO_PI) <= 1e-12:
        return abs(d - r)
    theta = math.atan2(wy, wx)
    if _angle_in_sweep(a0, sweep, theta) >= 0.0:
        return abs(d - r)
    e0 = math.hypot(px - (cx + r * math.cos(a0)), py - (cy + r * math.sin(a0)))
    a1 = a0 + sweep
    e1 = math.hypot(px - (cx + r * math.cos(a1)), py - (cy + r * math.sin(a1)))
    return min(e0, e1)


@njit(cache=True)
def _arc_span_bbox(cx, cy, r, alo, ahi):
    """Bounding box of the arc over angles [alo, ahi] (alo <= ahi)."""

    x0, y0 = cx + r * math.cos(alo), cy + r * math.sin(alo)
    x1, y1 = cx + r * math.cos(ahi), cy + r * math.sin(ahi)
    xmin = min(x0, x1)
    xmax = max(x0, x1)
    ymin = min(y0, y1)
    ymax = max(y0, y1)
    half_pi = 0.5 * math.pi
    k = math.ceil(alo / half_pi)
    ang = k * half_pi
    while ang <= ahi:
        x = cx + r * math.cos(ang)
        y = cy + r * math.sin(ang)
        xmin = min(xmin, x)
        xmax = max(xmax, x)
        ymin = min(ymin, y)
        ymax = max(ymax, y)
        ang += half_pi
    return xmin, ymin, xmax, ymax


@njit(cache=True)
def _bern3(f0, f1, f2, f3, u):
    v = 1.0 - u
    return (
        v * v * v * f0
        + 3.0 * v * v * u * f1
        + 3.0 * v * u * u * f2
        + u * u * u * f3
    )


@njit(cache=True)
def _cubic_point(row, u):
    v = 1.0 - u
    b0 = v * v * v
    b1 = 3.0 * v * v * u
    b2 = 3.0 * v * u * u
    b3 = u * u * u
    x = b0 * row[0] + b1 * row[2] + b2 * row[4] + b3 * row[6]
    y = b0 * row[1] + b1 * row[3] + b2 * row[5] + b3 * row[7]
    return x, y


@njit(cache=True)
def _cubic_velocity(row, u):
    v = 1.0 - u
    c0 = 3.0 * v * v
    c1 = 6.0 * v * u
    c2 = 3.0 * u * u
    x = c0 * (row[2] - row[0]) + c1 * (row[4] - row[2]) + c2 * (row[6] - row[4])
    y = c0 * (row[3] - row[1]) + c1 * (row[5] - row[3]) + c2 * (row[7] - row[5])
    return x, y


@njit(cache=True)
def winding_point(kinds, data, px, py):
    """Accumulate the contour integral of dz/(z - p) piece by piece.

    Returns (re, im, nodes, status).  The integral itself is re + i*im;
    nodes counts accepted chords for the float round-off budget.
    """

    total_re = 0.0
    total_im = 0.0
    nodes = 0
    stack = np.empty((_STACK_CAP, 10))
    for i in range(kinds.shape[0]):
        kind = kinds[i]
        row = data[i]
        if kind == KIND_LINE:
            w0x, w0y = row[0] - px, row[1] - py
            w1x, w1y = row[2] - px, row[3] - py
            cr = w0x * w1y - w0y * w1x
            dt = w0x * w1x + w0y * w1y
            if (w0x == 0.0 and w0y == 0.0) or (w1x == 0.0 and w1y == 0.0):
                return 0.0, 0.0, nodes, ON_CARRIER
            if cr == 0.0 and dt < 0.0:
                return 0.0, 0.0, nodes, ON_CARRIER
            re, im = _log_ratio(w0x, w0y, w1x, w1y)
            total_re += re
            total_im += im
            nodes += 1
        elif kind == KIND_ARC:
            cx, cy, r, a0, sweep = row[0], row[1], row[2], row[3], row[4]
            sp = 0
            stack[sp, 0] = 0.0
            stack[sp, 1] = 1.0
            sp += 1
            while sp > 0:
                sp -= 1
                ulo = stack[sp, 0]
                uhi = stack[sp, 1]
                phi0 = a0 + sweep * ulo
                phi1 = a0 + sweep * uhi
                alo, ahi = (phi0, phi1) if phi1 >= phi0 else (phi1, phi0)
                xmin, ymin, xmax, ymax = _arc_span_bbox(cx, cy, r, alo, ahi)
                if _bbox_dist(px, py, xmin, ymin, xmax, ymax) > 0.0:
                    w0x = cx + r * math.cos(phi0) - px
                    w0y = cy + r * math.sin(phi0) - py
                    w1x = cx + r * math.cos(phi1) - px
                    w1y = cy + r * math.sin(phi1) - py
                    re, im = _log_ratio(w0x, w0y, w1x, w1y)
                    total_re += re
                    total_im += im
                    nodes += 1
                else:
                    if uhi - ulo < 1e-13:
                        return 0.0, 0.0, nodes, ON_CARRIER
                    if sp + 2 > _STACK_CAP:
                        return 0.0, 0.0, nodes, NODE_LIMIT
                    mid = 0.5 * (ulo + uhi)
                    stack[sp, 0] = ulo
                    stack[sp, 1] = mid
                    sp += 1
                    stack[sp, 0] = mid
                    stack[sp, 1] = uhi
                    sp += 1
        else:
            sp = 0
            stack[sp, 0] = 0.0
            stack[sp, 1] = 1.0
            for c in range(8):
                stack[sp, 2 + c] = row[c]
            sp += 1
            while sp > 0:
                sp -= 1
                ulo = stack[sp, 0]
                uhi = stack[sp, 1]
                x0, y0 = stack[sp, 2], stack[sp, 3]
                x1, y1 = stack[sp, 4], stack[sp, 5]
                x2, y2 = stack[sp, 6], stack[sp, 7]
                x3, y3 = stack[sp, 8], stack[sp, 9]
                xmin = min(min(x0, x1), min(x2, x3))
                xmax = max(max(x0, x1), max(x2, x3))
                ymin = min(min(y0, y1), min(y2, y3))
                ymax = max(max(y0, y1), max(y2, y3))
                if _bbox_dist(px, py, xmin, ymin, xmax, ymax) > 0.0:
                    re, im = _log_ratio(x0 - px, y0 - py, x3 - px, y3 - py)
                    total_re += re
                    total_im += im
                    nodes += 1
                else:
                    if uhi - ulo < 1e-13:
                        return 0.0, 0.0, nodes, ON_CARRIER
                    if sp + 2 > _STACK_CAP:
                        return 0.0, 0.0, nodes, NODE_LIMIT
                    m01x, m01y = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
                    m12x, m12y = 0.5 * (x1 + x2), 0.5 * (y1 + y2)
                    m23x, m23y = 0.5 * (x2 + x3), 0.5 * (y2 + y3)
                    ax, ay = 0.5 * (m01x + m12x), 0.5 * (m01y + m12y)
                    bx, by = 0.5 * (m12x + m23x), 0.5 * (m12y + m23y)
                    mx, my = 0.5 * (ax + bx), 0.5 * (ay + by)
                    mid = 0.5 * (ulo + uhi)
                    stack[sp, 0] = ulo
                    stack[sp, 1] = mid
                    stack[sp, 2] = x0
                    stack[sp, 3] = y0
                    stack[sp, 4] = m01x
                    stack[sp, 5] = m01y
                    stack[sp, 6] = ax
                    stack[sp, 7] = ay
                    stack[sp, 8] = mx
                    stack[sp, 9] = my
                    sp += 1
                    stack[sp, 0] = mid
                    stack[sp, 1] = uhi
                    stack[sp, 2] = mx
                    stack[sp, 3] = my
                    stack[sp, 4] = bx
                    stack[sp, 5] = by
                    stack[sp, 6] = m23x
                    stack[sp, 7] = m23y
                    stack[sp, 8] = x3
                    stack[sp, 9] = y3
                    sp += 1
    return total_re, total_im, nodes, OK


@njit(cache=True)
def _winding_batch_loop(kinds, data, pts, out):
    for k in range(pts.shape[0]):
        re, im, nodes, status = winding_point(kinds, data, pts[k, 0], pts[k, 1])
        out[k, 0] = re
        out[k, 1] = im
        out[k, 2] = nodes
        out[k, 3] = status


@njit(cache=True)
def ray_hits_point(kinds, data, px, py, vx, vy, out):
    """All forward ray/carrier intersections, unsorted.

    ``out`` is an (_HIT_CAP, 6) scratch array filled with rows
    (t, piece, u, tan_x, tan_y, 0).  Returns (n_hits, status) where status
    is OK, ON_CARRIER for a collinear segment overlap, or NODE_LIMIT on
    overflow.  Tangential (even-order) contacts are deliberately not
    reported: they contribute an even crossing count, so parity is
    unaffected; near-tangencies that do split into close root pairs are
    caught later by the isolation window.
    """

    nh = 0
    froots = np.empty(16)
    stack = np.empty((_STACK_CAP, 6))
    for i in range(kinds.shape[0]):
        kind = kinds[i]
        row = data[i]
        if kind == KIND_LINE:
            ex, ey = row[2] - row[0], row[3] - row[1]
            rx, ry = row[0] - px, row[1] - py
            den = vx * ey - vy * ex
            elen = math.hypot(ex, ey)
            if abs(den) <= 1e-14 * elen:
                perp = rx * vy - ry * vx
                if abs(perp) <= 1e-12 * max(1.0, elen):
                    f0 = rx * vx + ry * vy
                    f1 = (row[2] - px) * vx + (row[3] - py) * vy
                    if f0 > _RAY_T_MIN or f1 > _RAY_T_MIN:
                        return nh, ON_CARRIER
                continue
            t = (rx * ey - ry * ex) / den
            u = (rx * vy - ry * vx) / den
            if -1e-12 <= u <= 1.0 + 1e-12 and t > _RAY_T_MIN:
                if nh >= _HIT_CAP:
                    return nh, NODE_LIMIT
                uu = min(1.0, max(0.0, u))
                out[nh, 0] = t
                out[nh, 1] = i
                out[nh, 2] = uu
                out[nh, 3] = ex
                out[nh, 4] = ey
                nh += 1
        elif kind == KIND_ARC:
            cx, cy, r, a0, sweep = row[0], row[1], row[2], row[3], row[4]
            ux, uy = px - cx, py - cy
            b = vx * ux + vy * uy
            c = ux * ux + uy * uy - r * r
            disc = b * b - c
            if disc < 0.0:
                continue
            sq = math.sqrt(disc)
            for sgn in range(2):
                t = -b - sq if sgn == 0 else -b + sq
                if t <= _RAY_T_MIN:
                    continue
                hx = ux + t * vx
                hy = uy + t * vy
                theta = math.atan2(hy, hx)
                uu = _angle_in_sweep(a0, sweep, theta)
                if uu < 0.0:
                    continue
                if nh >= _HIT_CAP:
                    return nh, NODE_LIMIT
                out[nh, 0] = t
                out[nh, 1] = i
                out[nh, 2] = uu
                out[nh, 3] = -hy * sweep
                out[nh, 4] = hx * sweep
                nh += 1
        else:
            f0 = (row[0] - px) * vy - (row[1] - py) * vx
            f1 = (row[2] - px) * vy - (row[3] - py) * vx
            f2 = (row[4] - px) * vy - (row[5] - py) * vx
            f3 = (row[6] - px) * vy - (row[7] - py) * vx
            nroots = 0
            sp = 0
            stack[sp, 0] = 0.0
            stack[sp, 1] = 1.0
            stack[sp, 2] = f0
            stack[sp, 3] = f1
            stack[sp, 4] = f2
            stack[sp, 5] = f3
            sp += 1
            while sp > 0:
                sp -= 1
                ulo, uhi = stack[sp, 0], stack[sp, 1]
                g0, g1 = stack[sp, 2], stack[sp, 3]
                g2, g3 = stack[sp, 4], stack[sp, 5]
                if (g0 > 0.0 and g1 > 0.0 and g2 > 0.0 and g3 > 0.0) or (
                    g0 < 0.0 and g1 < 0.0 and g2 < 0.0 and g3 < 0.0
                ):
                    continue
                if uhi - ulo <= _BRACKET_WIDTH:
                    root = -1.0
                    if g0 == 0.0:
                        root = ulo
                    elif g3 == 0.0 and uhi == 1.0:
                        root = 1.0
                    elif (g0 > 0.0) != (g3 > 0.0):
                        lo, hi = ulo, uhi
                        flo = g0
                        while hi - lo > _ROOT_TOL:
                            mid = 0.5 * (lo + hi)
                            fm = _bern3(f0, f1, f2, f3, mid)
                            if fm == 0.0:
                                lo = mid
                                hi = mid
                                break
                            if (flo > 0.0) != (fm > 0.0):
                                hi = mid
                            else:
                                lo = mid
                                flo = fm
                        root = 0.5 * (lo + hi)
                    if root >= 0.0 and nroots < 16:
                        froots[nroots] = root
                        nroots += 1
                else:
                    if sp + 2 > _STACK_CAP:
                        return nh, NODE_LIMIT
                    m01 = 0.5 * (g0 + g1)
                    m12 = 0.5 * (g1 + g2)
                    m23 = 0.5 * (g2 + g3)
                    ga = 0.5 * (m01 + m12)
                    gb = 0.5 * (m12 + m23)
                    gm = 0.5 * (ga + gb)
                    mid = 0.5 * (ulo + uhi)
                    stack[sp, 0] = ulo
                    stack[sp, 1] = mid
                    stack[sp, 2] = g0
                    stack[sp, 3] = m01
                    stack[sp, 4] = ga
                    stack[sp, 5] = gm
                    sp += 1
                    stack[sp, 0] = mid
                    stack[sp, 1] = uhi
                    stack[sp, 2] = gm
                    stack[sp, 3] = gb
                    stack[sp, 4] = m23
                    stack[sp, 5] = g3
                    sp += 1
            # sort, dedup, convert to forward hits
            for a_i in range(1, nroots):
                key = froots[a_i]
                b_i = a_i - 1
                while b_i >= 0 and froots[b_i] > key:
                    froots[b_i + 1] = froots[b_i]
                    b_i -= 1
                froots[b_i + 1] = key
            # adjacent brackets re-find a shared root within ~2 * _ROOT_TOL;
            # genuine distinct crossings are never that close in parameter
            prev = -1.0
            for k in range(nroots):
                u = froots[k]
                if prev >= 0.0 and u - prev < 1e-11:
                    continue
                prev = u
                hx, hy = _cubic_point(row, u)
                t = (hx - px) * vx + (hy - py) * vy
                if t <= _RAY_T_MIN:
                    continue
                if nh >= _HIT_CAP:
                    return nh, NODE_LIMIT
                tx, ty = _cubic_velocity(row, u)
                out[nh, 0] = t
                out[nh, 1] = i
                out[nh, 2] = u
                out[nh, 3] = tx
                out[nh, 4] = ty
                nh += 1
    return nh, OK


@njit(cache=True)
def _piece_bbox_dist(kind, row, px, py):
    if kind == KIND_LINE:
        xmin = min(row[0], row[2])
        xmax = max(row[0], row[2])
        ymin = min(row[1], row[3])
        ymax = max(row[1], row[3])
    elif kind == KIND_ARC:
        alo = min(row[3], row[3] + row[4])
        ahi = max(row[3], row[3] + row[4])
        xmin, ymin, xmax, ymax = _arc_span_bbox(row[0], row[1], row[2], alo, ahi)
    else:
        xmin = min(min(row[0], row[2]), min(row[4], row[6]))
        xmax = max(max(row[0], row[2]), max(row[4], row[6]))
        ymin = min(min(row[1], row[3]), min(row[5], row[7]))
        ymax = max(max(row[1], row[3]), max(row[5], row[7]))
    return _bbox_dist(px, py, xmin, ymin, xmax, ymax)


@njit(cache=True)
def carrier_dist_point(kinds, data, samples, offsets, px, py, rel_tol):
    """Certified enclosure [lo, hi] of the distance from p to the carrier.

    Line and arc pieces are exact.  Cubic pieces refine control boxes until
    each surviving box is small relative to its distance; ``samples`` seeds
    the upper bound (de Casteljau node endpoints keep improving it since
    they lie on the curve).  Pieces whose bounding box cannot beat the
    running upper bound are skipped; every skipped candidate is >= the
    final minimum, so the returned enclosure is identical to a full scan.
    """

    n = kinds.shape[0]
    bd = np.empty(n)
    i0 = 0
    for i in range(n):
        bd[i] = _piece_bbox_dist(kinds[i], data[i], px, py)
        if bd[i] < bd[i0]:
            i0 = i
    best_hi = math.inf
    lo_acc = math.inf
    stack = np.empty((_STACK_CAP, 8))
    for k in range(n + 1):
        # nearest bbox first, then index order, so the skip test bites early
        if k == 0:
            i = i0
        elif k - 1 == i0:
            continue
        else:
            i = k - 1
            if bd[i] >= best_hi:
                continue
        kind = kinds[i]
        row = data[i]
        if kind == KIND_LINE:
            d = _seg_point_dist(px, py, row[0], row[1], row[2], row[3])
            if d < best_hi:
                best_hi = d
            if d < lo_acc:
                lo_acc = d
        elif kind == KIND_ARC:
            d = _arc_point_dist(px, py, row[0], row[1], row[2], row[3], row[4])
            if d < best_hi:
                best_hi = d
            if d < lo_acc:
                lo_acc = d
        else:
            for s in range(offsets[i], offsets[i + 1]):
                d = math.hypot(px - samples[s, 0], py - samples[s, 1])
                if d < best_hi:
                    best_hi = d
    for i in range(kinds.shape[0]):
        if kinds[i] != KIND_CUBIC:
            continue
        if bd[i] >= best_hi:
            continue
        row = data[i]
        sp = 0
        for c in range(8):
            stack[sp, c] = row[c]
        sp += 1
        while sp > 0:
            sp -= 1
            x0, y0 = stack[sp, 0], stack[sp, 1]
            x1, y1 = stack[sp, 2], stack[sp, 3]
            x2, y2 = stack[sp, 4], stack[sp, 5]
            x3, y3 = stack[sp, 6], stack[sp, 7]
            xmin = min(min(x0, x1), min(x2, x3))
            xmax = max(max(x0, x1), max(x2, x3))
            ymin = min(min(y0, y1), min(y2, y3))
            ymax = max(max(y0, y1), max(y2, y3))
            db = _bbox_dist(px, py, xmin, ymin, xmax, ymax)
            if db >= best_hi:
                continue
            diag = math.hypot(xmax - xmin, ymax - ymin)
            if diag <= rel_tol * db + 1e-15 or sp + 2 > _STACK_CAP:
                if db < lo_acc:
                    lo_acc = db
                d0 = math.hypot(px - x0, py - y0)
                if d0 < best_hi:
                    best_hi = d0
                continue
            m01x, m01y = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
            m12x, m12y = 0.5 * (x1 + x2), 0.5 * (y1 + y2)
            m23x, m23y = 0.5 * (x2 + x3), 0.5 * (y2 + y3)
            ax, ay = 0.5 * (m01x + m12x), 0.5 * (m01y + m12y)
            bx, by = 0.5 * (m12x + m23x), 0.5 * (m12y + m23y)
            mx, my = 0.5 * (ax + bx), 0.5 * (ay + by)
            stack[sp, 0] = x0
            stack[sp, 1] = y0
            stack[sp, 2] = m01x
            stack[sp, 3] = m01y
            stack[sp, 4] = ax
            stack[sp, 5] = ay
            stack[sp, 6] = mx
            stack[sp, 7] = my
            sp += 1
            stack[sp, 0] = mx
            stack[sp, 1] = my
            stack[sp, 2] = bx
            stack[sp, 3] = by
            stack[sp, 4] = m23x
            stack[sp, 5] = m23y
            stack[sp, 6] = x3
            stack[sp, 7] = y3
            sp += 1
    lo = lo_acc if lo_acc < best_hi else best_hi
    if lo < 0.0:
        lo = 0.0
    return lo, best_hi


@njit(cache=True)
def _carrier_batch_loop(kinds, data, samples, offsets, pts, rel_tol, out):
    for k in range(pts.shape[0]):
        lo, hi = carrier_dist_point(
            kinds, data, samples, offsets, pts[k, 0], pts[k, 1], rel_tol
        )
        out[k, 0] = lo
        out[k, 1] = hi


@njit(cache=True)
def _pair_scan_loop(xy, ts, period, sep_floor, a, b, eps_levels, level_min):
    """O(N^2) chord scan.

    Returns (min_gap, i_min, j_min) over pairs whose wrap-aware parameter
    separation is >= sep_floor, and fills ``level_min`` so that after a
    suffix-min pass level_min[k] is the smallest chord among pairs that are
    admissible for eps_levels[k] (separation >= eps and both parameters
    inside [a + eps/2, b - eps/2]).
    """

    n = xy.shape[0]
    nlev = eps_levels.shape[0]
    best = math.inf
    bi = -1
    bj = -1
    for i in range(n):
        xi = xy[i, 0]
        yi = xy[i, 1]
        ti = ts[i]
        for j in range(i + 1, n):
            dt = ts[j] - ti
            ws = dt
            alt = period - dt
            if alt < ws:
                ws = alt
            dx = xy[j, 0] - xi
            dy = xy[j, 1] - yi
            d = math.sqrt(dx * dx + dy * dy)
            if ws >= sep_floor and d < best:
                best = d
                bi = i
                bj = j
            cap = dt
            e1 = 2.0 * (ti - a)
            if e1 < cap:
                cap = e1
            e2 = 2.0 * (b - ts[j])
            if e2 < cap:
                cap = e2
            for k in range(nlev - 1, -1, -1):
                if eps_levels[k] <= cap:
                    if d < level_min[k]:
                        level_min[k] = d
                    break
    return best, bi, bj


@njit(cache=True)
def _grid_bfs_loop(free, si, sj, gi, gj, parent):
    """8-connected BFS over free cells; parent is linear-index array."""

    ny, nx = free.shape
    queue = np.empty(ny * nx, dtype=np.int64)
    head = 0
    tail = 0
    start = si * nx + sj
    goal = gi * nx + gj
    parent[start] = start
    queue[tail] = start
    tail += 1
    found = start == goal
    while head < tail and not found:
        cur = queue[head]
        head += 1
        ci = cur // nx
        cj = cur % nx
        for di in range(-1, 2):
            for dj in range(-1, 2):
                if di == 0 and dj == 0:
                    continue
                ni = ci + di
                nj = cj + dj
                if ni < 0 or ni >= ny or nj < 0 or nj >= nx:
                    continue
                if free[ni, nj] == 0:
                    continue
                lin = ni * nx + nj
                if parent[lin] >= 0:
                    continue
                parent[lin] = cur
                if lin == goal:
                    found = True
                queue[tail] = lin
                tail += 1
    return found


# ---------------------------------------------------------------------------
# vectorised numpy lane
# ---------------------------------------------------------------------------


def _winding_batch_numpy(kinds, data, pts):
    m = pts.shape[0]
    z = pts[:, 0] + 1j * pts[:, 1]
    total = np.zeros(m, dtype=complex)
    nodes = np.zeros(m, dtype=np.int64)
    status = np.zeros(m, dtype=np.int64)
    for i in range(kinds.shape[0]):
        kind = kinds[i]
        row = data[i]
        if kind == KIND_LINE:
            w0 = (row[0] + 1j * row[1]) - z
            w1 = (row[2] + 1j * row[3]) - z
            with np.errstate(divide="ignore", invalid="ignore"):
                term = np.log(w1 / w0)
            bad = ~np.isfinite(term)
            status[bad] = ON_CARRIER
            term[bad] = 0.0
            total += term
            nodes += 1
        elif kind == KIND_ARC:
            cx, cy, r, a0, sweep = row[:5]
            c = cx + 1j * cy
            idx = np.arange(m)
            ulo = np.zeros(m)
            uhi = np.ones(m)
            for _level in range(80):
                if idx.size == 0:
                    break
                phi0 = a0 + sweep * ulo
                phi1 = a0 + sweep * uhi
                e0 = c + r * np.exp(1j * phi0)
                e1 = c + r * np.exp(1j * phi1)
                # chord bbox inflated by the sagitta bounds the sub-arc hull
                sag = r * (1.0 - np.cos(0.5 * np.abs(sweep) * (uhi - ulo)))
                xmin = np.minimum(e0.real, e1.real) - sag
                xmax = np.maximum(e0.real, e1.real) + sag
                ymin = np.minimum(e0.imag, e1.imag) - sag
                ymax = np.maximum(e0.imag, e1.imag) + sag
                zz = z[idx]
                dx = np.maximum(np.maximum(xmin - zz.real, zz.real - xmax), 0.0)
                dy = np.maximum(np.maximum(ymin - zz.imag, zz.imag - ymax), 0.0)
                outside = np.hypot(dx, dy) > 0.0
                acc = np.where(outside)[0]
                if acc.size:
                    term = np.log((e1[acc] - zz[acc]) / (e0[acc] - zz[acc]))
                    np.add.at(total, idx[acc], term)
                    np.add.at(nodes, idx[acc], 1)
                rest = np.where(~outside)[0]
                if rest.size == 0:
                    idx = idx[:0]
                    break
                narrow = (uhi[rest] - ulo[rest]) < 1e-13
                status[idx[rest[narrow]]] = ON_CARRIER
                rest = rest[~narrow]
                mid = 0.5 * (ulo[rest] + uhi[rest])
                idx = np.concatenate([idx[rest], idx[rest]])
                ulo = np.concatenate([ulo[rest], mid])
                uhi = np.concatenate([mid, uhi[rest]])
            else:
                status[idx] = NODE_LIMIT
        else:
            ctrl = row[:8].astype(complex)
            ctrl = ctrl[0::2] + 1j * ctrl[1::2]
            idx = np.arange(m)
            cps = np.broadcast_to(ctrl, (m, 4)).copy()
            widths = np.ones(m)
            for _level in range(80):
                if idx.size == 0:
                    break
                zz = z[idx]
                xmin = cps.real.min(axis=1)
                xmax = cps.real.max(axis=1)
                ymin = cps.imag.min(axis=1)
                ymax = cps.imag.max(axis=1)
                dx = np.maximum(np.maximum(xmin - zz.real, zz.real - xmax), 0.0)
                dy = np.maximum(np.maximum(ymin - zz.imag, zz.imag - ymax), 0.0)
                outside = np.hypot(dx, dy) > 0.0
                acc = np.where(outside)[0]
                if acc.size:
                    term = np.log(
                        (cps[acc, 3] - zz[acc]) / (cps[acc, 0] - zz[acc])
                    )
                    np.add.at(total, idx[acc], term)
                    np.add.at(nodes, idx[acc], 1)
                rest = np.where(~outside)[0]
                if rest.size == 0:
                    idx = idx[:0]
                    break
                narrow = widths[rest] < 1e-13
                status[idx[rest[narrow]]] = ON_CARRIER
                rest = rest[~narrow]
                p = cps[rest]
                m01 = 0.5 * (p[:, 0] + p[:, 1])
                m12 = 0.5 * (p[:, 1] + p[:, 2])
                m23 = 0.5 * (p[:, 2] + p[:, 3])
                pa = 0.5 * (m01 + m12)
                pb = 0.5 * (m12 + m23)
                pm = 0.5 * (pa + pb)
                left = np.stack([p[:, 0], m01, pa, pm], axis=1)
                right = np.stack([pm, pb, m23, p[:, 3]], axis=1)
                idx = np.concatenate([idx[rest], idx[rest]])
                cps = np.concatenate([left, right], axis=0)
                widths = np.concatenate(
                    [0.5 * widths[rest], 0.5 * widths[rest]]
                )
            else:
                status[idx] = NODE_LIMIT
    return total, nodes, status


def _cubic_refine_numpy(row, px, py, best_hi, lo_acc, rel_tol):
    ctrl = row[0::2] + 1j * row[1::2]
    m = px.shape[0]
    idx = np.arange(m)
    cps = np.broadcast_to(ctrl, (m, 4)).copy()
    for _level in range(80):
        if idx.size == 0:
            break
        xmin = cps.real.min(axis=1)
        xmax = cps.real.max(axis=1)
        ymin = cps.imag.min(axis=1)
        ymax = cps.imag.max(axis=1)
        qx = px[idx]
        qy = py[idx]
        dx = np.maximum(np.maximum(xmin - qx, qx - xmax), 0.0)
        dy = np.maximum(np.maximum(ymin - qy, qy - ymax), 0.0)
        db = np.hypot(dx, dy)
        live = db < best_hi[idx]
        idx = idx[live]
        cps = cps[live]
        db = db[live]
        if idx.size == 0:
            break
        diag = np.hypot(
            cps.real.max(axis=1) - cps.real.min(axis=1),
            cps.imag.max(axis=1) - cps.imag.min(axis=1),
        )
        done = diag <= rel_tol * db + 1e-15
        if _level == 79:
            done = np.ones_like(done)
        if done.any():
            di = idx[done]
            np.minimum.at(lo_acc, di, db[done])
            d0 = np.hypot(px[di] - cps[done, 0].real, py[di] - cps[done, 0].imag)
            np.minimum.at(best_hi, di, d0)
        keep = ~done
        idx = idx[keep]
        p = cps[keep]
        if idx.size == 0:
            break
        m01 = 0.5 * (p[:, 0] + p[:, 1])
        m12 = 0.5 * (p[:, 1] + p[:, 2])
        m23 = 0.5 * (p[:, 2] + p[:, 3])
        pa = 0.5 * (m01 + m12)
        pb = 0.5 * (m12 + m23)
        pm = 0.5 * (pa + pb)
        left = np.stack([p[:, 0], m01, pa, pm], axis=1)
        right = np.stack([pm, pb, m23, p[:, 3]], axis=1)
        idx = np.concatenate([idx, idx])
        cps = np.concatenate([left, right], axis=0)


def _pair_scan_numpy(xy, ts, period, sep_floor, a, b, eps_levels, level_min):
    n = xy.shape[0]
    best = np.inf
    bi = bj = -1
    block = max(1, int(2e6) // max(n, 1))
    for s in range(0, n, block):
        e = min(n, s + block)
        dt = ts[None, s:e] - ts[:, None]  # (n, B)
        upper = dt > 0  # j > i pairs only
        dx = xy[None, s:e, 0] - xy[:, None, 0]
        dy = xy[None, s:e, 1] - xy[:, None, 1]
        d = np.hypot(dx, dy)
        ws = np.minimum(dt, period - dt)
        mask = upper & (ws >= sep_floor)
        if mask.any():
            dm = np.where(mask, d, np.inf)
            k = np.argmin(dm)
            i0, j0 = np.unravel_index(k, dm.shape)
            if dm[i0, j0] < best:
                best = float(dm[i0, j0])
                bi, bj = int(i0), int(j0 + s)
        cap = np.minimum(
            dt,
            np.minimum(2.0 * (ts[:, None] - a), 2.0 * (b - ts[None, s:e])),
        )
        for k in range(eps_levels.shape[0]):
            sel = upper & (cap >= eps_levels[k])
            if k + 1 < eps_levels.shape[0]:
                sel &= cap < eps_levels[k + 1]
            if sel.any():
                level_min[k] = min(level_min[k], float(d[sel].min()))
    return best, bi, bj


def _grid_bfs_numpy(free, si, sj, gi, gj):
    ny, nx = free.shape
    dist = np.full((ny, nx), -1, dtype=np.int64)
    if not free[si, sj]:
        return False, dist
    dist[si, sj] = 0
    frontier = np.zeros_like(free, dtype=bool)
    frontier[si, sj] = True
    freeb = free.astype(bool)
    step = 0
    while frontier.any():
        if dist[gi, gj] >= 0:
            return True, dist
        step += 1
        grown = np.zeros_like(frontier)
        grown[1:, :] |= frontier[:-1, :]
        grown[:-1, :] |= frontier[1:, :]
        grown[:, 1:] |= frontier[:, :-1]
        grown[:, :-1] |= frontier[:, 1:]
        grown[1:, 1:] |= frontier[:-1, :-1]
        grown[1:, :-1] |= frontier[:-1, 1:]
        grown[:-1, 1:] |= frontier[1:, :-1]
        grown[:-1, :-1] |= frontier[1:, 1:]
        grown &= freeb & (dist < 0)
        dist[grown] = step
        frontier = grown
    return dist[gi, gj] >= 0, dist


# ---------------------------------------------------------------------------
# dispatching wrappers
# ---------------------------------------------------------------------------


def winding_batch(kinds, data, pts):
    """Vectorised winding integrals: returns (total complex, nodes, status)."""

    pts = np.ascontiguousarray(pts, dtype=float)
    if USING_NUMBA:
        out = np.empty((pts.shape[0], 4))
        _winding_batch_loop(kinds, data, pts, out)
        total = out[:, 0] + 1j * out[:, 1]
        return total, out[:, 2].astype(np.int64), out[:, 3].astype(np.int64)
    return _winding_batch_numpy(kinds, data, pts)


def carrier_batch(kinds, data, samples, offsets, pts, rel_tol=1e-3):
    """Vectorised carrier-distance enclosures: returns (lo, hi) arrays."""

    pts = np.ascontiguousarray(pts, dtype=float)
    if USING_NUMBA:
        out = np.empty((pts.shape[0], 2))
        _carrier_batch_loop(kinds, data, samples, offsets, pts, rel_tol, out)
        return out[:, 0], out[:, 1]
    px = pts[:, 0]
    py = pts[:, 1]
    m = pts.shape[0]
    best_hi = np.full(m, np.inf)
    lo_acc = np.full(m, np.inf)
    for i in range(kinds.shape[0]):
        kind = kinds[i]
        row = data[i]
        if kind == KIND_LINE:
            ex, ey = row[2] - row[0], row[3] - row[1]
            denom = ex * ex + ey * ey
            t = np.clip(((px - row[0]) * ex + (py - row[1]) * ey) / denom, 0, 1)
            d = np.hypot(px - (row[0] + t * ex), py - (row[1] + t * ey))
            np.minimum(best_hi, d, out=best_hi)
            np.minimum(lo_acc, d, out=lo_acc)
        elif kind == KIND_ARC:
            cx, cy, r, a0, sweep = row[:5]
            wx, wy = px - cx, py - cy
            rad = np.abs(np.hypot(wx, wy) - r)
            if abs(abs(sweep) - TWO_PI) <= 1e-12:
                d = rad
            else:
                theta = np.arctan2(wy, wx)
                if sweep > 0:
                    on = np.mod(theta - a0, TWO_PI) <= sweep + 1e-12
                else:
                    on = np.mod(a0 - theta, TWO_PI) <= -sweep + 1e-12
                a1 = a0 + sweep
                d0 = np.hypot(
                    px - (cx + r * math.cos(a0)), py - (cy + r * math.sin(a0))
                )
                d1 = np.hypot(
                    px - (cx + r * math.cos(a1)), py - (cy + r * math.sin(a1))
                )
                d = np.where(on, rad, np.minimum(d0, d1))
            np.minimum(best_hi, d, out=best_hi)
            np.minimum(lo_acc, d, out=lo_acc)
        else:
            seg = samples[offsets[i] : offsets[i + 1]]
            if seg.shape[0]:
                block = max(1, int(4e6) // max(seg.shape[0], 1))
                for s in range(0, m, block):
                    e = min(m, s + block)
                    dd = np.hypot(
                        px[s:e, None] - seg[None, :, 0],
                        py[s:e, None] - seg[None, :, 1],
                    ).min(axis=1)
                    np.minimum(best_hi[s:e], dd, out=best_hi[s:e])
    for i in range(kinds.shape[0]):
        if kinds[i] == KIND_CUBIC:
            _cubic_refine_numpy(data[i], px, py, best_hi, lo_acc, rel_tol)
    lo = np.minimum(lo_acc, best_hi)
    np.maximum(lo, 0.0, out=lo)
    return lo, best_hi


def pair_scan(xy, ts, period, sep_floor, a, b, eps_levels):
    """Chord-gap scan driving the injectivity and inverse-modulus tables.

    Returns (min_gap, i_min, j_min, deltas) with deltas[k] the suffix-min
    chord for eps_levels[k].
    """

    xy = np.ascontiguousarray(xy, dtype=float)
    ts = np.ascontiguousarray(ts, dtype=float)
    eps_levels = np.ascontiguousarray(eps_levels, dtype=float)
    level_min = np.full(eps_levels.shape[0], np.inf)
    if USING_NUMBA:
        best, bi, bj = _pair_scan_loop(
            xy, ts, period, sep_floor, a, b, eps_levels, level_min
        )
    else:
        best, bi, bj = _pair_scan_numpy(
            xy, ts, period, sep_floor, a, b, eps_levels, level_min
        )
    deltas = np.minimum.accumulate(level_min[::-1])[::-1]
    return best, bi, bj, deltas


def grid_path(free, start, goal):
    """Shortest 8-connected chain of free cells, or None."""

    si, sj = start
    gi, gj = goal
    ny, nx = free.shape
    if not (free[si, sj] and free[gi, gj]):
        return None
    if USING_NUMBA:
        parent = np.full(ny * nx, -1, dtype=np.int64)
        found = _grid_bfs_loop(free, si, sj, gi, gj, parent)
        if not found:
            return None
        path = []
        cur = gi * nx + gj
        start_lin = si * nx + sj
        while cur != start_lin:
            path.append((cur // nx, cur % nx))
            cur = parent[cur]
        path.append((si, sj))
        path.reverse()
        return path
    found, dist = _grid_bfs_numpy(free, si, sj, gi, gj)
    if not found:
        return None
    path = [(gi, gj)]
    ci, cj = gi, gj
    d = dist[gi, gj]
    while d > 0:
        for di in (-1, 0, 1):
            hit = False
            for dj in (-1, 0, 1):
                ni, nj = ci + di, cj + dj
                if 0 <= ni < free.shape[0] and 0 <= nj < free.shape[1]:
                    if dist[ni, nj] == d - 1:
                        ci, cj = ni, nj
                        hit = True
                        break
            if hit:
                break
        d -= 1
        path.append((ci, cj))
    path.reverse()
    return path

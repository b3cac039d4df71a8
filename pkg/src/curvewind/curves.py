"""Piecewise paths, Jordan-curve validation, and the carrier index.

A :class:`CurveSpec` strings pieces together over a parameter interval
[a, b]: piece k covers the k-th of n equal subintervals.  Validation checks
closure, per-piece smoothness, sample-scale injectivity (with a wrap-aware
parameter separation so the seam is not flagged), and tabulates a modulus
for the inverse map on interior compacta.  The result is a
:class:`JordanCurve` carrying certificates plus a :class:`CarrierIndex`
that answers distance queries with certified [lower, upper] enclosures.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ClosureFailure, J1Failure, NonSmoothPiece, ParseError
from .geometry import Point, as_point
from .pieces import ArcPiece, CubicPiece, LinePiece, Piece

__all__ = [
    "CurveSpec",
    "JordanCurve",
    "CarrierIndex",
    "J1Certificate",
    "J2Certificate",
    "Affine",
    "lin",
    "path_sum",
    "reparametrize",
    "unit_circular_path",
    "validate_jordan",
    "carrier_distance",
    "transform_curve",
    "curve_to_dict",
    "curve_from_dict",
    "curve_to_json",
    "curve_from_json",
]

JOINT_TOL = 1e-9
CLOSURE_TOL = 1e-9
EVAL_TOL = 1e-12

# injectivity fails when the closest well-separated pair lands nearer than
# _J1_FACTOR times the local one-step displacement at the witnesses: a true
# crossing drives the chord toward zero while the branches keep moving, a
# merely slow region shrinks both at the same rate and stays clear
_J1_FACTOR = 0.25

_DEFAULT_EPS_FRACTIONS = (0.02, 0.05, 0.1, 0.2, 0.3, 0.4)
_DEFAULT_SAMPLES_PER_PIECE = 512


@dataclass(frozen=True)
class CurveSpec:
    """A continuous piecewise path on [a, b], not necessarily closed."""

    pieces: tuple[Piece, ...]
    interval: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        pieces = tuple(self.pieces)
        if not pieces:
            raise ValueError("a curve needs at least one piece")
        object.__setattr__(self, "pieces", pieces)
        iv = self.interval if self.interval is not None else (0.0, float(len(pieces)))
        a, b = float(iv[0]), float(iv[1])
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ValueError(f"parameter interval must be finite with a < b, got {iv}")
        object.__setattr__(self, "interval", (a, b))
        for k in range(len(pieces) - 1):
            gap = pieces[k].point(1.0).dist(pieces[k + 1].point(0.0))
            if gap > JOINT_TOL:
                raise ValueError(
                    f"pieces {k} and {k + 1} do not meet: joint gap {gap:.3e}"
                )

    @property
    def a(self) -> float:
        return self.interval[0]

    @property
    def b(self) -> float:
        return self.interval[1]

    @property
    def n_pieces(self) -> int:
        return len(self.pieces)

    @property
    def closure_gap(self) -> float:
        return self.pieces[-1].point(1.0).dist(self.pieces[0].point(0.0))

    @property
    def is_closed(self) -> bool:
        return self.closure_gap <= CLOSURE_TOL

    def _locate(self, t: float) -> tuple[int, float]:
        a, b = self.interval
        if not (a - EVAL_TOL <= t <= b + EVAL_TOL):
            raise ValueError(f"parameter {t!r} outside [{a!r}, {b!r}]")
        n = self.n_pieces
        s = (t - a) * n / (b - a)
        k = int(math.floor(s))
        if k < 0:
            k = 0
        elif k > n - 1:
            k = n - 1
        return k, s - k

    def eval(self, t: float) -> Point:
        k, u = self._locate(t)
        return self.pieces[k].point(u)

    def deriv(self, t: float, side: str = "right") -> Point:
        """One-sided derivative in global-parameter units."""

        a, b = self.interval
        n = self.n_pieces
        scale = n / (b - a)
        s = (t - a) * scale
        if side == "right":
            if t >= b - EVAL_TOL:
                raise ValueError("no right derivative at the interval end")
            k = int(math.floor(s + EVAL_TOL))
            u = s - k
        elif side == "left":
            if t <= a + EVAL_TOL:
                raise ValueError("no left derivative at the interval start")
            k = int(math.ceil(s - EVAL_TOL)) - 1
            u = s - k
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        k = min(max(k, 0), n - 1)
        u = min(max(u, 0.0), 1.0)
        return self.pieces[k].velocity(u).scaled(scale)

    def points(self, ts: np.ndarray) -> np.ndarray:
        """Vectorised evaluation at global parameters (shape (m, 2))."""

        ts = np.asarray(ts, dtype=float)
        a, b = self.interval
        n = self.n_pieces
        s = (ts - a) * n / (b - a)
        ks = np.clip(np.floor(s).astype(int), 0, n - 1)
        out = np.empty((ts.shape[0], 2))
        for k in range(n):
            mask = ks == k
            if mask.any():
                out[mask] = self.pieces[k].points(s[mask] - k)
        return out

    def piece_param_width(self) -> float:
        return (self.b - self.a) / self.n_pieces


def lin(z1, z2) -> CurveSpec:
    """The linear path from z1 to z2 on [0, 1]."""

    return CurveSpec((LinePiece(as_point(z1), as_point(z2)),))


def path_sum(c1: CurveSpec, c2: CurveSpec) -> CurveSpec:
    """Concatenate two paths whose endpoints meet, on [0, n1 + n2].

    Each operand keeps its own pacing only up to the affine time maps that
    place the pieces on consecutive unit subintervals.
    """

    gap = c1.pieces[-1].point(1.0).dist(c2.pieces[0].point(0.0))
    if gap > JOINT_TOL:
        raise ValueError(f"paths do not meet: gap {gap:.3e}")
    return CurveSpec(c1.pieces + c2.pieces)


def reparametrize(c: CurveSpec, interval: tuple[float, float]) -> CurveSpec:
    """Same geometry on a new parameter interval (affine time change)."""

    return CurveSpec(c.pieces, interval)


def unit_circular_path() -> CurveSpec:
    """Unit circle traced counterclockwise, parametrised by angle on [0, 2*pi]."""

    piece = ArcPiece(Point(0.0, 0.0), 1.0, 0.0, 2.0 * math.pi)
    return CurveSpec((piece,), (0.0, 2.0 * math.pi))


@dataclass(frozen=True)
class J1Certificate:
    """Sample-scale injectivity record.

    Over all sampled pairs with wrap-aware parameter separation
    >= ``separation``, the chord length never drops below ``min_gap``,
    and ``min_gap`` stayed above ``threshold`` (a quarter of the local
    one-step displacement at the closest pair, scaled to resolution).
    """

    resolution: float
    separation: float
    min_gap: float
    witness: tuple[float, float]
    threshold: float


@dataclass(frozen=True)
class J2Certificate:
    """Inverse-modulus table: chord < delta forces parameter gap < eps.

    Entries (eps, delta(eps)) are computed on the interior compactum
    [a + eps/2, b - eps/2] and are nondecreasing in eps.
    """

    entries: tuple[tuple[float, float], ...]

    def delta(self, eps: float) -> float:
        """Largest tabulated delta valid for this eps."""

        best = 0.0
        for e, d in self.entries:
            if e <= eps:
                best = d
        return best


@dataclass(frozen=True)
class CarrierIndex:
    """Flattened pieces plus dense samples for distance queries.

    ``samples`` are curve points recorded at ``sample_spacing`` in global
    parameter; together with the per-piece Lipschitz constants they pin the
    carrier between certified bounds.  Line and arc queries are closed-form;
    cubic queries refine control boxes well past the sampling guarantee, so
    enclosures satisfy (upper - lower) <= lipschitz * sample_spacing with
    room to spare.
    """

    kinds: np.ndarray
    data: np.ndarray
    samples: np.ndarray
    sample_params: np.ndarray
    offsets: np.ndarray
    sample_spacing: float
    lipschitz: tuple[float, ...]
    bboxes: tuple[tuple[float, float, float, float], ...]
    rel_tol: float
    diam: float

    @classmethod
    def build(
        cls,
        spec: CurveSpec,
        samples_per_piece: int = _DEFAULT_SAMPLES_PER_PIECE,
        rel_tol: float = 1e-3,
    ) -> "CarrierIndex":
        n = spec.n_pieces
        kinds = np.array([p.kind for p in spec.pieces], dtype=np.int8)
        data = np.array([p.to_row() for p in spec.pieces], dtype=float)
        w = spec.piece_param_width()
        scale = 1.0 / w
        us = (np.arange(samples_per_piece) + 0.5) / samples_per_piece
        chunks = []
        params = []
        offsets = [0]
        lips = []
        for k, piece in enumerate(spec.pieces):
            pts = piece.points(us)
            chunks.append(pts)
            params.append(spec.a + (k + us) * w)
            offsets.append(offsets[-1] + pts.shape[0])
            lips.append(piece.speed_bounds()[1] * scale)
        samples = np.concatenate(chunks, axis=0)
        sub = samples[:: max(1, samples.shape[0] // 512)]
        d2 = (
            (sub[:, None, 0] - sub[None, :, 0]) ** 2
            + (sub[:, None, 1] - sub[None, :, 1]) ** 2
        )
        return cls(
            kinds=kinds,
            data=data,
            samples=samples,
            sample_params=np.concatenate(params),
            offsets=np.array(offsets, dtype=np.int64),
            sample_spacing=w / samples_per_piece,
            lipschitz=tuple(lips),
            bboxes=tuple(p.bbox() for p in spec.pieces),
            rel_tol=rel_tol,
            diam=float(np.sqrt(d2.max())),
        )

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        xs0, ys0, xs1, ys1 = zip(*self.bboxes)
        return (min(xs0), min(ys0), max(xs1), max(ys1))

    def distance(self, z) -> tuple[float, float]:
        """Certified [lower, upper] enclosure of the distance to the carrier."""

        p = as_point(z)
        lo, hi = _kernels.carrier_dist_point(
            self.kinds, self.data, self.samples, self.offsets, p.x, p.y, self.rel_tol
        )
        return float(lo), float(hi)

    def distance_batch(self, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return _kernels.carrier_batch(
            self.kinds, self.data, self.samples, self.offsets, pts, self.rel_tol
        )

    def diameter(self) -> float:
        return self.diam

    def max_radius(self) -> float:
        """Upper bound for max |z| over the carrier (samples + slack)."""

        slack = max(self.lipschitz) * self.sample_spacing / 2.0
        return float(np.hypot(self.samples[:, 0], self.samples[:, 1]).max()) + slack


@dataclass(frozen=True)
class JordanCurve:
    """A validated closed simple curve with its certificates."""

    spec: CurveSpec
    j1: J1Certificate
    j2: J2Certificate
    smooth_flags: tuple[bool, ...]
    speed_lower: tuple[float, ...]
    speed_upper: tuple[float, ...]
    deriv_sup: float
    carrier: CarrierIndex

    @property
    def interval(self) -> tuple[float, float]:
        return self.spec.interval

    def eval(self, t: float) -> Point:
        return self.spec.eval(t)

    def deriv(self, t: float, side: str = "right") -> Point:
        return self.spec.deriv(t, side)

    def carrier_distance(self, z) -> tuple[float, float]:
        return self.carrier.distance(z)

    def diameter(self) -> float:
        return self.carrier.diameter()

    def default_eps_band(self) -> float:
        return 1e-6 * self.diameter()


def _speed_profile(spec: CurveSpec):
    scale = 1.0 / spec.piece_param_width()
    lows = []
    highs = []
    for piece in spec.pieces:
        lo, hi = piece.speed_bounds()
        lows.append(lo * scale)
        highs.append(hi * scale)
    return tuple(lows), tuple(highs)


def validate_jordan(
    c: CurveSpec,
    h: float = 1e-3,
    require_smooth: bool = True,
    samples_per_piece: int = _DEFAULT_SAMPLES_PER_PIECE,
) -> JordanCurve:
    """Check closure, smoothness, and sample-scale injectivity at resolution h.

    Raises :class:`ClosureFailure`, :class:`NonSmoothPiece`, or
    :class:`J1Failure` (with a witness pair); otherwise returns the curve
    with J1/J2 certificates and a distance index attached.
    """

    if not (h > 0.0 and math.isfinite(h)):
        raise ValueError("sample resolution h must be positive")
    gap = c.closure_gap
    if gap > CLOSURE_TOL:
        raise ClosureFailure(
            c.pieces[0].point(0.0), c.pieces[-1].point(1.0), gap, CLOSURE_TOL
        )
    lows, highs = _speed_profile(c)
    flags = tuple(lo > 0.0 for lo in lows)
    if require_smooth and not all(flags):
        raise NonSmoothPiece(flags.index(False))

    a, b = c.interval
    period = b - a
    n_samp = max(int(math.ceil(period / h)), 8 * c.n_pieces)
    h_eff = period / n_samp
    ts = a + h_eff * np.arange(n_samp)
    xy = c.points(ts)

    eps_levels = np.array([f * period for f in _DEFAULT_EPS_FRACTIONS])
    min_gap, i1, i2, deltas = _kernels.pair_scan(
        xy, ts, period, h, a, b, eps_levels
    )
    loc1 = float(np.hypot(*(xy[(i1 + 1) % n_samp] - xy[i1])))
    loc2 = float(np.hypot(*(xy[(i2 + 1) % n_samp] - xy[i2])))
    threshold = _J1_FACTOR * min(loc1, loc2) * (h / h_eff)
    if min_gap < threshold:
        raise J1Failure(float(ts[i1]), float(ts[i2]), float(min_gap), threshold)

    entries = tuple(
        (float(e), float(d))
        for e, d in zip(eps_levels, deltas)
        if math.isfinite(d)
    )
    j1 = J1Certificate(
        resolution=h,
        separation=h,
        min_gap=float(min_gap),
        witness=(float(ts[i1]), float(ts[i2])),
        threshold=threshold,
    )
    j2 = J2Certificate(entries=entries)
    carrier = CarrierIndex.build(c, samples_per_piece=samples_per_piece)
    return JordanCurve(
        spec=c,
        j1=j1,
        j2=j2,
        smooth_flags=flags,
        speed_lower=lows,
        speed_upper=highs,
        deriv_sup=max(highs),
        carrier=carrier,
    )


def carrier_distance(jc: JordanCurve, z) -> tuple[float, float]:
    """Certified [lower, upper] distance from z to the carrier of jc."""

    return jc.carrier.distance(z)


@dataclass(frozen=True)
class Affine:
    """Invertible affine map x' = A x + t, stored row-major (a b; c d) + (e, f)."""

    coeffs: tuple[float, float, float, float, float, float]

    @property
    def det(self) -> float:
        a, b, c, d, _, _ = self.coeffs
        return a * d - b * c

    def apply(self, p) -> Point:
        p = as_point(p)
        a, b, c, d, e, f = self.coeffs
        return Point(a * p.x + b * p.y + e, c * p.x + d * p.y + f)

    def __matmul__(self, other: "Affine") -> "Affine":
        a1, b1, c1, d1, e1, f1 = self.coeffs
        a2, b2, c2, d2, e2, f2 = other.coeffs
        return Affine(
            (
                a1 * a2 + b1 * c2,
                a1 * b2 + b1 * d2,
                c1 * a2 + d1 * c2,
                c1 * b2 + d1 * d2,
                a1 * e2 + b1 * f2 + e1,
                c1 * e2 + d1 * f2 + f1,
            )
        )

    @classmethod
    def rotation(cls, theta: float) -> "Affine":
        c, s = math.cos(theta), math.sin(theta)
        return cls((c, -s, s, c, 0.0, 0.0))

    @classmethod
    def scaling(cls, s: float) -> "Affine":
        return cls((s, 0.0, 0.0, s, 0.0, 0.0))

    @classmethod
    def translation(cls, dx: float, dy: float) -> "Affine":
        return cls((1.0, 0.0, 0.0, 1.0, dx, dy))

    @classmethod
    def reflection_x(cls) -> "Affine":
        """Reflection across the x axis (det < 0)."""

        return cls((1.0, 0.0, 0.0, -1.0, 0.0, 0.0))


def transform_curve(jc: JordanCurve, t: Affine) -> JordanCurve:
    """Apply an invertible affine map and revalidate at the same resolution.

    Arc pieces survive only similarity maps; a non-similarity on a curve
    with arcs raises ValueError rather than silently changing the shape.
    """

    if abs(t.det) <= 1e-12:
        raise ValueError(f"transform is not invertible: det = {t.det!r}")
    pieces = tuple(p.transformed(t.coeffs) for p in jc.spec.pieces)
    spec = CurveSpec(pieces, jc.spec.interval)
    return validate_jordan(spec, h=jc.j1.resolution)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def _parse_xy(val, where: str) -> Point:
    if (
        not isinstance(val, (list, tuple))
        or len(val) != 2
        or not all(isinstance(v, (int, float)) for v in val)
    ):
        raise ParseError("expected a [x, y] pair of numbers", where)
    try:
        return Point(float(val[0]), float(val[1]))
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


def _parse_num(val, where: str) -> float:
    if not isinstance(val, (int, float)):
        raise ParseError("expected a number", where)
    return float(val)


def curve_from_dict(obj) -> CurveSpec:
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    raw = obj.get("pieces")
    if not isinstance(raw, list) or not raw:
        raise ParseError("missing or empty 'pieces' array", "pieces")
    pieces: list[Piece] = []
    for i, item in enumerate(raw):
        where = f"pieces[{i}]"
        if not isinstance(item, dict):
            raise ParseError("piece must be an object", where)
        kind = item.get("type")
        try:
            if kind == "line":
                pieces.append(
                    LinePiece(
                        _parse_xy(item.get("from"), where + ".from"),
                        _parse_xy(item.get("to"), where + ".to"),
                    )
                )
            elif kind == "arc":
                pieces.append(
                    ArcPiece(
                        _parse_xy(item.get("center"), where + ".center"),
                        _parse_num(item.get("radius"), where + ".radius"),
                        _parse_num(item.get("start_angle"), where + ".start_angle"),
                        _parse_num(item.get("sweep"), where + ".sweep"),
                    )
                )
            elif kind == "cubic":
                pts = item.get("points")
                if not isinstance(pts, list) or len(pts) != 4:
                    raise ParseError(
                        "cubic needs exactly 4 control points", where + ".points"
                    )
                pieces.append(
                    CubicPiece(
                        *(
                            _parse_xy(p, f"{where}.points[{j}]")
                            for j, p in enumerate(pts)
                        )
                    )
                )
            else:
                raise ParseError(
                    f"unknown piece type {kind!r} (want line/arc/cubic)",
                    where + ".type",
                )
        except ValueError as exc:
            raise ParseError(str(exc), where) from None
    try:
        return CurveSpec(tuple(pieces))
    except ValueError as exc:
        raise ParseError(str(exc), "pieces") from None


def curve_to_dict(spec: CurveSpec) -> dict:
    out = []
    for p in spec.pieces:
        if isinstance(p, LinePiece):
            out.append(
                {
                    "type": "line",
                    "from": [p.start.x, p.start.y],
                    "to": [p.end.x, p.end.y],
                }
            )
        elif isinstance(p, ArcPiece):
            out.append(
                {
                    "type": "arc",
                    "center": [p.center.x, p.center.y],
                    "radius": p.radius,
                    "start_angle": p.start_angle,
                    "sweep": p.sweep,
                }
            )
        else:
            out.append(
                {"type": "cubic", "points": [[q.x, q.y] for q in p.controls()]}
            )
    return {"pieces": out}


def curve_from_json(text: str) -> CurveSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return curve_from_dict(obj)


def curve_to_json(spec: CurveSpec, indent: int | None = 2) -> str:
    return json.dumps(curve_to_dict(spec), indent=indent)

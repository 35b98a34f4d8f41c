"""Parameter-plane sweeps, phase boundaries, correlation contours, and the
coexistence band.

Scans are pure functions of the grid specification: output ordering is
row-major over (x, y) nodes regardless of thread count, and the CSV writer
formats floats with 12 significant digits, so repeated runs are
byte-identical.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import PhaseLabel
from .errors import ValidationError
from .linalg import binary_entropy

__all__ = [
    "Domain",
    "ScanGrid",
    "PhasePoint",
    "CoexistenceBand",
    "scan_subclass",
    "scan_gaussian",
    "extract_boundaries",
    "correlation_contours",
    "coexistence_band",
    "write_points_csv",
    "points_to_rows",
    "contours_to_json_obj",
    "boundaries_to_json_obj",
]

CSV_HEADER = "x,y,p,q,r,phase,entropy_bits,holevo_bits,correlation"
SIMPLEX_TOL = 1e-12


class Domain(enum.Enum):
    SUBCLASS_SIMPLEX = "subclass_simplex"
    GAUSSIAN_PLANE = "gaussian_plane"


@dataclass(frozen=True)
class ScanGrid:
    """Rectangular grid spec; for the subclass simplex only nodes with
    q >= 0, r >= 0, q + r <= 1/2 are emitted."""

    nx: int
    ny: int
    domain: Domain
    x_range: tuple[float, float]
    y_range: tuple[float, float]

    def __post_init__(self):
        if self.nx < 8 or self.ny < 8:
            raise ValidationError("grid resolution must be >= 8 per axis")

    @classmethod
    def subclass(cls, nx: int, ny: int | None = None,
                 x_range=(0.0, 0.5), y_range=(0.0, 0.5)) -> "ScanGrid":
        return cls(nx, ny if ny is not None else nx, Domain.SUBCLASS_SIMPLEX,
                   tuple(x_range), tuple(y_range))

    @classmethod
    def gaussian(cls, nx: int, ny: int | None = None,
                 x_range=(0.0, 0.5), y_range=(0.0, 3.0)) -> "ScanGrid":
        return cls(nx, ny if ny is not None else nx, Domain.GAUSSIAN_PLANE,
                   tuple(x_range), tuple(y_range))

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.linspace(self.x_range[0], self.x_range[1], self.nx),
            np.linspace(self.y_range[0], self.y_range[1], self.ny),
        )


@dataclass(frozen=True)
class PhasePoint:
    """One grid node: coordinates, subclass parameters, phase, entropies, correlation."""

    x: float
    y: float
    p: float
    q: float
    r: float
    phase: PhaseLabel
    entropy_bits: float
    holevo_bits: float
    correlation: float


@dataclass(frozen=True)
class CoexistenceBand:
    """Correlation interval in which both product- and entangled-optimal
    grid points occur."""

    c_low: float
    c_high: float


_LABEL_BY_CODE = {0: PhaseLabel.PRODUCT, 1: PhaseLabel.ENT_PHI0,
                  2: PhaseLabel.ENT_PHIHALF, 3: PhaseLabel.TIE}


def _classify_vec(p, q, r, tie_tol, include_phihalf=True):
    """Vectorized candidate-entropy classification.

    Mirrors analytic.classify_subclass: candidate entropies H(2p), H(2r),
    H(2q) in the fixed order (product, ent_phi0, ent_phihalf); minimum wins,
    ties within tie_tol are labelled TIE.
    """
    cands = [binary_entropy(2.0 * p), binary_entropy(2.0 * r)]
    if include_phihalf:
        cands.append(binary_entropy(2.0 * q))
    ent = np.stack(cands)
    best = np.argmin(ent, axis=0)
    emin = np.min(ent, axis=0)
    esorted = np.sort(ent, axis=0)
    tie = (esorted[1] - esorted[0]) <= tie_tol
    code = np.where(tie, 3, best)
    return code, emin


def _correlation_vec(p, q, r):
    """Closed-form correlation measure of the subclass channel."""
    return 3.0 * p - 4.0 * p * p + np.abs((q + r) ** 2 - q) + np.abs((q + r) ** 2 - r)


def _run_rows(worker, n_rows, threads):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, range(n_rows)))
    return [worker(i) for i in range(n_rows)]


def scan_subclass(grid: ScanGrid, tie_tol: float = 1e-9, threads: int | None = None) -> list[PhasePoint]:
    """Classify every simplex-valid (q, r) node; row-major over (x=q, y=r)."""
    if grid.domain is not Domain.SUBCLASS_SIMPLEX:
        raise ValidationError("scan_subclass requires a subclass-simplex grid")
    qs, rs = grid.axes()

    def row(i):
        q = qs[i]
        valid = (rs >= -SIMPLEX_TOL) & (q >= -SIMPLEX_TOL) & (q + rs <= 0.5 + SIMPLEX_TOL)
        r = rs[valid]
        p = np.maximum(0.5 - q - r, 0.0)
        code, ent = _classify_vec(p, np.full_like(r, q), r, tie_tol)
        corr = _correlation_vec(p, np.full_like(r, q), r)
        return [
            PhasePoint(float(q), float(r[k]), float(p[k]), float(q), float(r[k]),
                       _LABEL_BY_CODE[int(code[k])], float(ent[k]),
                       2.0 - float(ent[k]), float(corr[k]))
            for k in range(len(r))
        ]

    rows = _run_rows(row, grid.nx, threads)
    return [pt for chunk in rows for pt in chunk]


def scan_gaussian(grid: ScanGrid, tie_tol: float = 1e-9, threads: int | None = None) -> list[PhasePoint]:
    """Classify every (p1, sigma) node of the random-rotation model.

    Classification compares only the product and phi=0 candidates because
    the model guarantees r <= q; the phi=pi/2 phase never occurs.
    """
    if grid.domain is not Domain.GAUSSIAN_PLANE:
        raise ValidationError("scan_gaussian requires a gaussian-plane grid")
    p1s, sigmas = grid.axes()
    if p1s.min() < -SIMPLEX_TOL or p1s.max() > 0.5 + SIMPLEX_TOL or sigmas.min() < 0.0:
        raise ValidationError("gaussian grid requires p1 in [0, 1/2] and sigma >= 0")

    def row(i):
        p1 = float(np.clip(p1s[i], 0.0, 0.5))
        damp = np.exp(-2.0 * sigmas**2)
        p = np.full_like(sigmas, 0.5 - p1)
        q = p1 * (1.0 + damp) / 2.0
        r = p1 * (1.0 - damp) / 2.0
        code, ent = _classify_vec(p, q, r, tie_tol, include_phihalf=False)
        corr = _correlation_vec(p, q, r)
        return [
            PhasePoint(p1, float(sigmas[k]), float(p[k]), float(q[k]), float(r[k]),
                       _LABEL_BY_CODE[int(code[k])], float(ent[k]),
                       2.0 - float(ent[k]), float(corr[k]))
            for k in range(len(sigmas))
        ]

    rows = _run_rows(row, grid.nx, threads)
    return [pt for chunk in rows for pt in chunk]


# -- grid reconstruction ----------------------------------------------------

def _points_to_grids(points):
    xs = np.array(sorted({pt.x for pt in points}))
    ys = np.array(sorted({pt.y for pt in points}))
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    label = np.full((len(xs), len(ys)), -1, dtype=int)
    corr = np.full((len(xs), len(ys)), np.nan)
    codes = {PhaseLabel.PRODUCT: 0, PhaseLabel.ENT_PHI0: 1,
             PhaseLabel.ENT_PHIHALF: 2, PhaseLabel.TIE: 3}
    for pt in points:
        label[xi[pt.x], yi[pt.y]] = codes[pt.phase]
        corr[xi[pt.x], yi[pt.y]] = pt.correlation
    return xs, ys, label, corr


# -- marching squares -------------------------------------------------------

def _march_cells(field, xs, ys, level):
    """Level-set segments of a scalar field by marching squares with linear
    interpolation; cells with any NaN corner are skipped; a corner counts as
    'inside' when field >= level.  No smoothing."""
    segments = []
    nx, ny = field.shape

    def interp(x1, y1, f1, x2, y2, f2):
        if f1 == f2:
            t = 0.5
        else:
            t = (level - f1) / (f2 - f1)
        t = min(max(t, 0.0), 1.0)
        return (x1 + t * (x2 - x1), y1 + t * (y2 - y1))

    for i in range(nx - 1):
        for j in range(ny - 1):
            f = [field[i, j], field[i + 1, j], field[i + 1, j + 1], field[i, j + 1]]
            if any(math.isnan(v) for v in f):
                continue
            corners = [
                (xs[i], ys[j]), (xs[i + 1], ys[j]),
                (xs[i + 1], ys[j + 1]), (xs[i], ys[j + 1]),
            ]
            case = sum(1 << k for k in range(4) if f[k] >= level)
            if case in (0, 15):
                continue
            # edge k joins corner k and corner (k+1) % 4
            pts = {}
            for k in range(4):
                k2 = (k + 1) % 4
                in1, in2 = f[k] >= level, f[k2] >= level
                if in1 != in2:
                    pts[k] = interp(*corners[k], f[k], *corners[k2], f[k2])
            edges = sorted(pts)
            if len(edges) == 2:
                segments.append((pts[edges[0]], pts[edges[1]]))
            elif len(edges) == 4:
                center = sum(f) / 4.0
                if (center >= level) == (f[0] >= level):
                    segments.append((pts[0], pts[1]))
                    segments.append((pts[2], pts[3]))
                else:
                    segments.append((pts[3], pts[0]))
                    segments.append((pts[1], pts[2]))
    return segments


def _chain_segments(segments, tol=1e-9):
    """Join shared-endpoint segments into polylines."""

    def key(pt):
        return (round(pt[0] / tol), round(pt[1] / tol))

    adjacency: dict = {}
    seg_pts = []
    for a, b in segments:
        if key(a) == key(b):
            continue
        idx = len(seg_pts)
        seg_pts.append((a, b))
        adjacency.setdefault(key(a), []).append(idx)
        adjacency.setdefault(key(b), []).append(idx)

    used = [False] * len(seg_pts)
    polylines = []

    def walk(start_idx, start_key):
        line = []
        k = start_key
        idx = start_idx
        while True:
            used[idx] = True
            a, b = seg_pts[idx]
            nxt = b if key(a) == k else a
            if not line:
                line.append(a if key(a) == k else b)
            line.append(nxt)
            k = key(nxt)
            candidates = [s for s in adjacency.get(k, []) if not used[s]]
            if not candidates:
                return line
            idx = candidates[0]

    # open chains first (endpoints with odd degree), then leftover loops
    for k, idxs in adjacency.items():
        if len(idxs) == 1 and not used[idxs[0]]:
            polylines.append(walk(idxs[0], k))
    for idx in range(len(seg_pts)):
        if not used[idx]:
            polylines.append(walk(idx, key(seg_pts[idx][0])))
    return [[(float(x), float(y)) for x, y in line] for line in polylines]


_PAIR_FIELDS = [(0, 1), (0, 2), (1, 2)]  # product/phi0, product/phihalf, phi0/phihalf


def extract_boundaries(points: list[PhasePoint]) -> list[list[tuple[float, float]]]:
    """Phase-boundary polylines between distinct phase labels.

    For each phase pair the label grid is mapped to +1 / -1 (TIE nodes map
    to 0, so boundary ties lie exactly on the extracted line; nodes of the
    third phase or outside the domain are excluded) and traced as the zero
    level set.
    """
    if not points:
        return []
    xs, ys, label, _ = _points_to_grids(points)
    present = set(label[label >= 0].ravel()) - {3}
    polylines = []
    for a, b in _PAIR_FIELDS:
        if a not in present or b not in present:
            continue
        field = np.full(label.shape, np.nan)
        field[label == a] = 1.0
        field[label == b] = -1.0
        field[label == 3] = 0.0
        segments = _march_cells(field, xs, ys, 0.0)
        segments = [s for s in segments if _near_both_phases(s, xs, ys, label, a, b)]
        polylines.extend(_chain_segments(segments))
    return polylines


def _near_both_phases(segment, xs, ys, label, a, b, halo=2):
    """Whether both phase labels occur within a few nodes of the segment.

    Tie nodes trace as zero crossings against either adjacent phase, which
    fabricates pair-(a, b) lines in places where one of the two phases does
    not even occur (degenerate edges, or a tie line inside the (b, c)
    boundary).  Requiring both labels nearby keeps only genuine boundaries.
    """
    (x1, y1), (x2, y2) = segment
    i = int(np.searchsorted(xs, 0.5 * (x1 + x2)))
    j = int(np.searchsorted(ys, 0.5 * (y1 + y2)))
    window = label[max(i - halo, 0) : i + halo + 1, max(j - halo, 0) : j + halo + 1]
    return bool((window == a).any() and (window == b).any())


def correlation_contours(points: list[PhasePoint], levels) -> list[tuple[float, list]]:
    """Iso-correlation polylines at the requested levels.

    Levels outside the observed correlation range yield empty polyline lists.
    """
    xs, ys, _, corr = _points_to_grids(points)
    out = []
    for level in levels:
        segments = _march_cells(corr, xs, ys, float(level))
        out.append((float(level), _chain_segments(segments)))
    return out


def coexistence_band(points: list[PhasePoint], n_bins: int) -> CoexistenceBand | None:
    """Smallest correlation interval covering all bins that contain both a
    product-optimal and an entangled-optimal grid point.

    TIE points are excluded (boundary artifacts of the grid).  Returns None
    when no bin coexists.
    """
    if n_bins < 100:
        raise ValidationError("n_bins must be >= 100")
    corr = np.array([pt.correlation for pt in points if pt.phase is not PhaseLabel.TIE])
    is_product = np.array([pt.phase is PhaseLabel.PRODUCT for pt in points
                           if pt.phase is not PhaseLabel.TIE])
    if corr.size == 0:
        return None
    lo, hi = corr.min(), corr.max()
    if hi <= lo:
        return None
    edges = np.linspace(lo, hi, n_bins + 1)
    idx = np.clip(np.digitize(corr, edges) - 1, 0, n_bins - 1)
    coexisting = []
    for b in range(n_bins):
        mask = idx == b
        if mask.any() and is_product[mask].any() and (~is_product[mask]).any():
            coexisting.append(b)
    if not coexisting:
        return None
    return CoexistenceBand(c_low=float(edges[min(coexisting)]),
                           c_high=float(edges[max(coexisting) + 1]))


# -- serialization ----------------------------------------------------------

def _fmt(v: float) -> str:
    return f"{v:.12g}"


def points_to_rows(points: list[PhasePoint]) -> list[str]:
    rows = [CSV_HEADER]
    for pt in points:
        rows.append(",".join([
            _fmt(pt.x), _fmt(pt.y), _fmt(pt.p), _fmt(pt.q), _fmt(pt.r),
            pt.phase.value, _fmt(pt.entropy_bits), _fmt(pt.holevo_bits),
            _fmt(pt.correlation),
        ]))
    return rows


def write_points_csv(points: list[PhasePoint], fileobj) -> None:
    fileobj.write("\n".join(points_to_rows(points)) + "\n")


def contours_to_json_obj(contours) -> list[dict]:
    return [
        {"level": level, "polylines": [[[x, y] for x, y in line] for line in lines]}
        for level, lines in contours
    ]


def boundaries_to_json_obj(polylines) -> list[dict]:
    return [{"level": None,
             "polylines": [[[x, y] for x, y in line] for line in polylines]}]

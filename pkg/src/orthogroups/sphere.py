"""The unit sphere of ℓ²: hemisphere charts, their transition maps, the index
shift, and the two homotopies that contract the sphere to e₀.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateDenominator,
    NonzeroPoleComponent,
    OutsideChart,
    OutsideDisc,
)
from .sparse import STORAGE_EPS, SparseVector, basis, inner, norm, union_support

UNIT_TOL = 1e-10
HEMISPHERE_MARGIN = 1e-10
DISC_MARGIN = 1e-12
POLE_TOL = 1e-12
F1_DENOMINATOR_FLOOR = 1e-6

ChartPole = int


class SpherePoint(SparseVector):
    """A :class:`SparseVector` of unit norm (checked to within ``tol``)."""

    __slots__ = ()

    def __init__(self, entries=None, tol: float = UNIT_TOL):
        if isinstance(entries, SparseVector):
            entries = entries.entries
        super().__init__(entries)
        if abs(norm(self) - 1.0) > tol:
            raise ValueError(f"not a unit vector (norm {norm(self)!r})")

    @classmethod
    def normalized(cls, x: SparseVector) -> "SpherePoint":
        n = norm(x)
        if n == 0.0:
            raise ValueError("cannot normalise the zero vector")
        return cls(x / n)


def _pole_projection(p: int, x: SparseVector) -> SparseVector:
    """x − ⟨x, e_p⟩ e_p."""
    out = x.entries
    out.pop(p, None)
    return SparseVector(out)


def chart_forward(p: ChartPole, x: SparseVector) -> SparseVector:
    """Chart on the hemisphere ⟨x, e_p⟩ > 0: drop the pole coordinate."""
    if not x[p] > HEMISPHERE_MARGIN:
        raise OutsideChart(f"⟨x, e_{p}⟩ = {x[p]!r} is not in the open hemisphere")
    return _pole_projection(p, x)


def chart_inverse(p: ChartPole, y: SparseVector) -> SpherePoint:
    """y ↦ y + √(1 − ‖y‖²) e_p."""
    if abs(y[p]) > POLE_TOL:
        raise NonzeroPoleComponent(f"chart coordinate has e_{p} component {y[p]!r}")
    r2 = inner(y, y)
    if not math.sqrt(r2) < 1.0 - DISC_MARGIN:
        raise OutsideDisc(f"‖y‖ = {math.sqrt(r2)!r} is not inside the open disc")
    out = _pole_projection(p, y).entries
    out[p] = math.sqrt(1.0 - r2)
    return SpherePoint(out)


def transition(pU: ChartPole, pV: ChartPole, y: SparseVector) -> SparseVector:
    return chart_forward(pU, chart_inverse(pV, y))


def frechet_transition(pU: ChartPole, pV: ChartPole, y: SparseVector, h: SparseVector) -> SparseVector:
    """Derivative of the transition map at ``y`` applied to ``h``.

        h ↦ P_U(h) − ⟨y, h⟩ / √(1 − ‖y‖²) · P_U(e_pV)

    with P_U the projection removing the pU coordinate.  The point
    ``y`` must lie in the overlap of the two charts.
    """
    # validates y and the overlap condition
    transition(pU, pV, y)
    if abs(h[pV]) > POLE_TOL:
        raise NonzeroPoleComponent(f"direction has e_{pV} component {h[pV]!r}")
    root = math.sqrt(1.0 - inner(y, y))
    return _pole_projection(pU, h) - (inner(y, h) / root) * _pole_projection(pU, basis(pV))


def shift_apply(lam: int, x: SparseVector) -> SparseVector:
    """Relabel every index i as i + lam (an isometry that is not onto)."""
    if lam < 0:
        raise ValueError("shift amount must be a natural number")
    return SparseVector({i + lam: v for i, v in x.items()})


def f1_denominator(t: float, x: SparseVector) -> float:
    """‖t·Sx + (1 − t)·x‖, the normaliser of the first homotopy."""
    return norm(t * shift_apply(1, x) + (1.0 - t) * x)


def _check_time(t):
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t = {t!r} is outside [0, 1]")


def homotopy_F1(t: float, x: SparseVector) -> SpherePoint:
    """Normalised segment from x (t = 0) to its shift Sx (t = 1)."""
    _check_time(t)
    if t == 0.0:
        return SpherePoint(x)
    if t == 1.0:
        return SpherePoint(shift_apply(1, x))
    v = t * shift_apply(1, x) + (1.0 - t) * x
    d = norm(v)
    if not d > F1_DENOMINATOR_FLOOR:
        raise DegenerateDenominator(f"‖tSx + (1−t)x‖ = {d!r} at t = {t!r}")
    return SpherePoint(v / d, tol=1e-9)


def homotopy_F2(t: float, x: SparseVector) -> SpherePoint:
    """t·e₀ + √(1 − t²)·Sx, from Sx (t = 0) to the constant e₀ (t = 1)."""
    _check_time(t)
    out = shift_apply(1, x * math.sqrt(1.0 - t * t)).entries
    # Sx has no e₀ component, so this never overwrites anything
    out[0] = t
    return SpherePoint(out, tol=1e-9)


@dataclass(frozen=True)
class HomotopyPath:
    """Sampled path ``[(t, point), ...]`` on the sphere."""

    samples: tuple
    # optional dense copy (indices, rows) used for fast metrics
    _dense: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def times(self):
        return [t for t, _ in self.samples]

    @property
    def points(self):
        return [p for _, p in self.samples]

    def _matrix(self) -> np.ndarray:
        if self._dense is not None:
            return self._dense[1]
        idx = union_support(self.points)
        return np.array([p.to_dense(idx) for p in self.points])

    def gaps(self) -> np.ndarray:
        P = self._matrix()
        return np.linalg.norm(np.diff(P, axis=0), axis=1)

    def length(self) -> float:
        return float(np.sum(self.gaps()))

    def max_norm_residual(self) -> float:
        return float(np.max(np.abs(np.linalg.norm(self._matrix(), axis=1) - 1.0)))

    def lipschitz_constant(self) -> float:
        """Largest ‖p_{i+1} − p_i‖ / Δt over consecutive samples."""
        dt = np.diff(np.asarray(self.times))
        g = self.gaps()
        ok = dt > 0
        return float(np.max(g[ok] / dt[ok])) if ok.any() else 0.0

    def to_json(self) -> dict:
        return {"samples": [{"t": t, "point": p.to_json()} for t, p in self.samples]}

    @classmethod
    def from_json(cls, data) -> "HomotopyPath":
        return cls(tuple(
            (float(s["t"]), SpherePoint(SparseVector.from_json(s["point"]), tol=1e-9))
            for s in data["samples"]
        ))


def contract_point(t: float, x: SparseVector, schedule: str = "linear") -> SpherePoint:
    """F1(2t, x) on [0, ½] followed by F2 on [½, 1].

    With ``schedule="linear"`` the second half is F2(2t − 1, x).  With
    ``schedule="arc"`` it is F2(sin(π(2t − 1)/2), x), which visits the same
    points at constant speed; the linear schedule moves like √(1 − s) near
    the end and so is only Hölder-½ continuous in t there.
    """
    _check_time(t)
    if t <= 0.5:
        return homotopy_F1(min(2.0 * t, 1.0), x)
    return homotopy_F2(_f2_time(min(2.0 * t - 1.0, 1.0), schedule), x)


def _f2_time(s, schedule):
    if schedule == "linear":
        return s
    if schedule == "arc":
        return np.sin(0.5 * np.pi * s)
    raise ValueError(f"unknown schedule {schedule!r}")


def contract_path(x: SparseVector, steps: int, schedule: str = "linear") -> HomotopyPath:
    """Sample the contraction of ``x`` to e₀ at ``steps`` uniform times.

    Same values as :func:`contract_point` at t = k/(steps − 1), computed in
    one vectorised pass.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    x = SpherePoint(x)
    sx = shift_apply(1, x)
    idx = union_support([x, sx, basis(0)])
    xd, sd, e0 = (v.to_dense(idx) for v in (x, sx, basis(0)))
    ts = np.arange(steps) / (steps - 1)
    first = ts <= 0.5
    P = np.empty((steps, len(idx)))

    s1 = np.minimum(2.0 * ts[first], 1.0)[:, None]
    v = s1 * sd + (1.0 - s1) * xd
    d = np.linalg.norm(v, axis=1)
    if not np.all(d > F1_DENOMINATOR_FLOOR):
        raise DegenerateDenominator(f"‖tSx + (1−t)x‖ fell to {d.min()!r}")
    P[first] = v / d[:, None]
    P[first & (ts == 0.0)] = xd
    P[first & (ts == 0.5)] = sd

    s2 = _f2_time(np.minimum(2.0 * ts[~first] - 1.0, 1.0), schedule)[:, None]
    P[~first] = s2 * e0 + np.sqrt(1.0 - s2 * s2) * sd

    resid = np.abs(np.linalg.norm(P, axis=1) - 1.0)
    if resid.max() > 1e-9:
        raise ArithmeticError(f"path left the sphere by {resid.max()!r}")
    keep = np.abs(P) >= STORAGE_EPS
    idx_arr = np.asarray(idx)
    samples = tuple(
        (float(t), SpherePoint._trusted(dict(zip(idx_arr[k].tolist(), row[k].tolist()))))
        for t, row, k in zip(ts.tolist(), P, keep)
    )
    return HomotopyPath(samples, (idx, P))

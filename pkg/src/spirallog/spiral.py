"""The region bounded by the sinusoidal spiral and its generator ``q(z) = (1+z)**lam``.

In polar form ``w = rho * exp(i*phi)`` the boundary curve is
``rho = (2 cos(phi/lam))**lam`` for ``|phi| <= lam*pi/2``.  The open region it
encloses is ``q(D)``; equivalently ``Re w > 0`` and ``Re w**(-1/lam) > 1/2``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .report import BoundReport, build_report
from .series import EvaluationGrid, NotUnitConstantTerm, TruncatedSeries, pow_real, tail_bound


class OutsideDisk(ValueError):
    pass


@dataclass(frozen=True)
class SpiralParams:
    lam: float

    def __post_init__(self):
        lam = float(self.lam)
        if not (0.0 < lam <= 1.0):
            raise ValueError(f"lambda out of (0,1]: {self.lam!r}")
        object.__setattr__(self, "lam", lam)

    @property
    def half_angle(self) -> float:
        """Largest argument reached on the boundary, ``lam*pi/2``."""
        return self.lam * np.pi / 2

    @property
    def vertex(self) -> float:
        """Where the spiral crosses the positive real axis, ``2**lam``."""
        return 2.0**self.lam

    def q_series(self, order: int) -> TruncatedSeries:
        return pow_real(TruncatedSeries.constant(1.0, order) + TruncatedSeries.identity(order), self.lam)


@dataclass(frozen=True)
class BoundaryPoint:
    phi: float
    rho: float

    @property
    def w(self) -> complex:
        return self.rho * complex(np.cos(self.phi), np.sin(self.phi))


def q_eval(params: SpiralParams, z):
    """Principal-branch ``(1+z)**lam``; arrays are evaluated elementwise."""
    za = np.asarray(z, dtype=complex)
    if np.any(np.abs(za) >= 1):
        raise OutsideDisk("q is only evaluated for |z| < 1")
    out = np.exp(params.lam * np.log1p(za))
    return complex(out) if out.ndim == 0 else out


def boundary_radius(params: SpiralParams, phi):
    """``(2 cos(phi/lam))**lam`` inside the angular sector, 0 outside it."""
    phi = np.asarray(phi, dtype=float)
    inside = np.abs(phi) < params.half_angle
    c = np.where(inside, np.cos(phi / params.lam), 0.0)
    rho = np.where(inside, (2.0 * np.clip(c, 0.0, None)) ** params.lam, 0.0)
    return float(rho) if rho.ndim == 0 else rho


def boundary_points(params: SpiralParams, count: int) -> list[BoundaryPoint]:
    """Boundary samples ordered by angle from ``-lam*pi/2`` to ``lam*pi/2``.

    The vertex ``phi = 0`` is always present: the lower half (up to and
    including 0) and the upper half are each sampled uniformly, which is one
    uniform grid whenever ``count`` is odd.
    """
    if count < 2:
        raise ValueError("boundary_points needs count >= 2")
    a = params.half_angle
    lower = np.linspace(-a, 0.0, count - count // 2)
    upper = np.linspace(0.0, a, count // 2 + 1)[1:]
    phis = np.concatenate([lower, upper])
    rhos = boundary_radius(params, phis)
    return [BoundaryPoint(float(p), float(r)) for p, r in zip(phis, rhos)]


def containment_margin(params: SpiralParams, w):
    """Radial distance ``rho_boundary(arg w) - |w|``; positive strictly inside."""
    wa = np.asarray(w, dtype=complex)
    out = boundary_radius(params, np.angle(wa)) - np.abs(wa)
    return float(out) if np.ndim(out) == 0 else out


def contains(params: SpiralParams, w, tol: float = 0.0):
    """Interior test ``Re w > 0`` and ``Re w**(-1/lam) > 1/2 - tol``.

    Written in polar form, the second condition is
    ``|w| < (cos(phi/lam) / (1/2 - tol))**lam`` with ``|phi| < lam*pi/2``;
    this avoids raising to ``-1/lam`` and keeps the vertex ``2**lam`` on the
    boundary exactly at ``tol = 0``.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    wa = np.asarray(w, dtype=complex)
    phi = np.angle(wa)
    rho = np.abs(wa)
    sector = (np.abs(phi) < params.half_angle) & (wa.real > 0)
    if tol >= 0.5:
        result = sector | ((rho == 0) & (tol > 0))
    else:
        c = np.where(sector, np.cos(phi / params.lam), 0.0)
        limit = (np.clip(c, 0.0, None) / (0.5 - tol)) ** params.lam
        result = (sector & (rho < limit)) | ((rho == 0) & (tol > 0))
    return bool(result) if result.ndim == 0 else result


def _grid_rows(values: np.ndarray, params: SpiralParams, grid: EvaluationGrid):
    rows = []
    for i, (r, ring) in enumerate(zip(grid.radii, values)):
        margins = containment_margin(params, ring)
        j = int(np.argmin(margins))
        w = ring[j]
        rows.append((i, abs(w), boundary_radius(params, np.angle(w)), r))
    return rows


def subordinate_to_spiral(
    p: TruncatedSeries, params: SpiralParams, grid: EvaluationGrid | None = None,
    *, name: str = "subordinate_to_spiral", witness: str = "",
) -> BoundReport:
    """Grid evidence that ``p(D)`` sits inside the spiral region.

    Since ``q`` is convex univalent, ``p < q`` is equivalent to ``p(0) = 1``
    plus range containment.  Each ring contributes its worst point; the margin
    is the radial distance to the boundary along that point's ray.
    """
    if abs(p.coeffs[0] - 1.0) > 1e-14:
        raise NotUnitConstantTerm(f"p(0) must be 1, got {p.coeffs[0]!r}")
    grid = grid or EvaluationGrid()
    values = grid.evaluate(p)
    return build_report(
        name,
        params.lam,
        _grid_rows(values, params, grid),
        witness=witness,
        attain_tol=0.0,
        notes={"tail_bound": tail_bound(p, grid.r_max)},
    )


def write_points_csv(path, points) -> Path:
    """Write complex points as ``re,im`` rows (header mandatory, ``.`` decimals)."""
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(["re", "im"])
            for w in points:
                w = complex(w.w if isinstance(w, BoundaryPoint) else w)
                out.writerow([repr(w.real), repr(w.imag)])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def read_points_csv(path) -> np.ndarray:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["re", "im"]:
        raise ValueError(f"{path}: expected header 're,im'")
    return np.array([complex(float(a), float(b)) for a, b in rows[1:]])

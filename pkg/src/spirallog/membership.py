"""Seeded members of ST_ss(lam), G(lam), N(lam) and grid checks of their defining conditions.

Every family here is parametrised by a Schwarz function ``omega``
(analytic, ``omega(0) = 0``, ``|omega| < 1``):

* ST_ss(lam):  ``z f'/f = (1 + omega)**lam``;
* G(lam):      ``z f''/f' = h``,   with ``h = -lam omega/(1 - omega)``;
* N(lam):      ``z f'/f = 1 + h``.

``Re(omega/(1-omega)) > -1/2`` on the disk, so ``Re h < lam/2`` and the
defining inequalities of G and N hold strictly.  Sharing ``h`` makes
``member_N(lam, w) == z * member_G(lam, w)'``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .report import BoundReport, build_report, failed_report
from .series import (
    EvaluationGrid,
    TruncatedSeries,
    derivative,
    div,
    evaluate_ring,
    exp0,
    integrate_quotient,
    pow_real,
    tail_bound,
)
from .spiral import SpiralParams, _grid_rows
from .zoo import (
    NormalizedFunction,
    _log_derivative,
    closed_form_G_F,
    from_derivative,
    from_log_derivative,
)

MAX_ZERO_MODULUS = 0.8


class Family(enum.Enum):
    ST_SS = "ST_SS"
    G_FAMILY = "G"
    N_FAMILY = "N"
    CONVEX = "CONVEX"
    STARLIKE = "STARLIKE"

    @classmethod
    def parse(cls, text: str) -> "Family":
        key = text.strip().upper()
        for fam in cls:
            if key in (fam.name, fam.value):
                return fam
        raise ValueError(f"unknown family {text!r}")


@dataclass(frozen=True)
class FamilyTag:
    family: Family
    lam: float | None = None

    def __post_init__(self):
        if isinstance(self.family, str):
            object.__setattr__(self, "family", Family.parse(self.family))
        if self.family in (Family.ST_SS, Family.G_FAMILY, Family.N_FAMILY):
            if self.lam is None or not (0.0 < float(self.lam) <= 1.0):
                raise ValueError(f"lambda out of (0,1]: {self.lam!r}")


@dataclass(frozen=True)
class SchwarzFunction:
    series: TruncatedSeries
    witness: dict = field(default_factory=dict)
    seed: int | None = None

    def __post_init__(self):
        if abs(self.series.coeffs[0]) > 1e-14:
            raise ValueError("a Schwarz function vanishes at 0")

    @property
    def order(self) -> int:
        return self.series.order

    def __call__(self, z):
        return self.series(z)


def _blaschke_factor(a: complex, order: int) -> np.ndarray:
    # (z - a)/(1 - conj(a) z) = -a + (1 - |a|^2) sum_{k>=1} conj(a)^(k-1) z^k
    c = np.empty(order + 1, dtype=complex)
    c[0] = -a
    c[1:] = (1 - abs(a) ** 2) * np.conj(a) ** np.arange(order)
    return c


def schwarz_from_zeros(zeros, tau: float = 0.0, order: int | None = None, seed=None) -> SchwarzFunction:
    """``e^{i tau} z prod (z - z_j)/(1 - conj(z_j) z)``."""
    order = TOL.order if order is None else order
    zeros = [complex(a) for a in zeros]
    if any(abs(a) >= 1 for a in zeros):
        raise ValueError("Blaschke zeros must lie in the open disk")
    c = np.zeros(order + 1, dtype=complex)
    c[1] = np.exp(1j * tau)
    for a in zeros:
        c = np.convolve(c, _blaschke_factor(a, order))[: order + 1]
    witness = {"kind": "blaschke", "tau": float(tau), "zeros": [[a.real, a.imag] for a in zeros]}
    return SchwarzFunction(TruncatedSeries(c), witness, seed)


def schwarz_monomial(n: int = 1, x: float = 1.0, order: int | None = None, mu: complex = 1.0) -> SchwarzFunction:
    """``x * mu * z**n`` with ``0 <= x <= 1`` and ``|mu| = 1``."""
    order = TOL.order if order is None else order
    if not 0 <= x <= 1:
        raise ValueError("scale must lie in [0, 1]")
    if n < 1:
        raise ValueError("a Schwarz monomial needs n >= 1")
    s = TruncatedSeries.monomial(n, order, x * complex(mu))
    return SchwarzFunction(s, {"kind": "monomial", "n": n, "x": float(x), "mu": [complex(mu).real, complex(mu).imag]})


def schwarz_sample(seed: int, degree: int, order: int | None = None) -> SchwarzFunction:
    """Seeded ``z`` times a Blaschke product with ``degree - 1`` zeros, ``|z_j| <= 0.8``."""
    if not 1 <= degree <= 6:
        raise ValueError("degree must be in 1..6")
    rng = np.random.default_rng(seed)
    k = degree - 1
    radii = MAX_ZERO_MODULUS * np.sqrt(rng.random(k))
    angles = 2 * np.pi * rng.random(k)
    tau = 2 * np.pi * rng.random()
    return schwarz_from_zeros(radii * np.exp(1j * angles), tau, order, seed)


def random_schwarz(seed: int, order: int | None = None) -> SchwarzFunction:
    """Seeded sample whose degree (1..6) is itself drawn from the seed."""
    degree = int(np.random.default_rng([seed, 7919]).integers(1, 7))
    return schwarz_sample(seed, degree, order)


def _omega(omega: SchwarzFunction, order: int | None) -> TruncatedSeries:
    s = omega.series
    if order is None:
        return s
    if order > s.order:
        raise ValueError(f"Schwarz function known to order {s.order}, {order} requested")
    return s.truncate(order)


def _h(lam: float, w: TruncatedSeries) -> TruncatedSeries:
    return -lam * div(w, 1.0 - w)


def member_st_ss(lam: float, omega: SchwarzFunction, order: int | None = None) -> NormalizedFunction:
    """``f = z exp(int (q(omega(t)) - 1)/t dt)`` so ``z f'/f = q(omega)``."""
    SpiralParams(lam)
    w = _omega(omega, order)
    p = pow_real(1.0 + w, lam)
    return from_log_derivative(p, f"ST_SS[{lam:g}]", **{"lambda": lam})


def member_G(lam: float, omega: SchwarzFunction, order: int | None = None) -> NormalizedFunction:
    """``f' = exp(int h/t dt)`` with ``h = -lam omega/(1-omega)``."""
    SpiralParams(lam)
    w = _omega(omega, order)
    fp = exp0(integrate_quotient(_h(lam, w)))
    return from_derivative(fp, f"G[{lam:g}]", **{"lambda": lam})


def member_N(lam: float, omega: SchwarzFunction, order: int | None = None) -> NormalizedFunction:
    """``z f'/f = 1 + h``; the Alexander image of :func:`member_G`."""
    SpiralParams(lam)
    w = _omega(omega, order)
    return from_log_derivative(1.0 + _h(lam, w), f"N[{lam:g}]", **{"lambda": lam})


def fg_pair(lam: float, x: float, order: int | None = None) -> tuple[NormalizedFunction, NormalizedFunction]:
    """``(F_x, G_x)`` with ``z f'/f = q(+-z (z+x)/(1+xz))``, ``0 <= x <= 1``."""
    order = TOL.order if order is None else order
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    zeros = [-x] if x < 1 else []
    # x = 1 collapses z(z+1)/(1+z) to z
    base = schwarz_from_zeros(zeros, 0.0, order) if x < 1 else schwarz_monomial(1, 1.0, order)
    F = member_st_ss(lam, base, order)
    G = member_st_ss(lam, SchwarzFunction(-base.series, base.witness), order)
    return (
        NormalizedFunction(F.series, f"F_x[{lam:g},{x:g}]", {"lambda": lam}),
        NormalizedFunction(G.series, f"G_x[{lam:g},{x:g}]", {"lambda": lam}),
    )


def condition_series(f: NormalizedFunction, family: Family) -> TruncatedSeries:
    """The analytic expression whose real part (or range) defines ``family``."""
    if family in (Family.G_FAMILY, Family.CONVEX):
        fp = derivative(f.series)
        return 1.0 + div(derivative(fp).times_z(), fp)
    return _log_derivative(f)


def verify_condition(
    f: NormalizedFunction, tag: FamilyTag, grid: EvaluationGrid | None = None
) -> BoundReport:
    """Worst grid margin of the family's defining condition.

    G: ``Re(1 + z f''/f') < 1 + lam/2``; N: ``Re(z f'/f) < 1 + lam/2``;
    ST_SS: ``z f'/f`` inside the spiral region; CONVEX / STARLIKE: the
    corresponding real part is positive.  The expression is formed as a series
    first and only then sampled, so its truncation tail is the only grid error
    (reported as ``notes['tail_bound']``).
    """
    grid = grid or EvaluationGrid()
    fam = tag.family
    name = f"condition_{fam.name}"
    expr = condition_series(f, fam)
    values = grid.evaluate(expr)
    notes = {"tail_bound": tail_bound(expr, grid.r_max)}
    if not np.all(np.isfinite(values)):
        return failed_report(name, tag.lam, "DivisionBySmallCoefficient: expression not finite on grid", f.label)
    if fam is Family.ST_SS:
        rows = _grid_rows(values, SpiralParams(tag.lam), grid)
    elif fam in (Family.G_FAMILY, Family.N_FAMILY):
        top = 1.0 + tag.lam / 2
        rows = [(i, ring.real.max(), top, r) for i, (r, ring) in enumerate(zip(grid.radii, values))]
    else:
        rows = [(i, -ring.real.min(), 0.0, r) for i, (r, ring) in enumerate(zip(grid.radii, values))]
    return build_report(name, tag.lam, rows, witness=f.label, attain_tol=0.0, notes=notes)


_TARGET_VERTICES = 8192


def _sector_margin(points: np.ndarray, polygon: np.ndarray, center: complex) -> np.ndarray:
    """Signed distance from each point to the edge of a convex polygon its ray crosses.

    ``polygon`` must be star-shaped about ``center``; each point is assigned
    the edge whose angular sector (seen from ``center``) contains it, which
    is the winding-number test specialised to star-shaped curves.  Positive
    values are inside.
    """
    ang = np.angle(polygon - center)
    order = np.argsort(ang)
    v = polygon[order]
    a = ang[order]
    idx = np.searchsorted(a, np.angle(points - center)) % v.size
    v1, v0 = v[idx], v[idx - 1]
    edge = v1 - v0
    cross = (np.conj(edge) * (points - v0)).imag
    return cross / np.abs(edge)


def check_f_over_z_subordination(
    f: NormalizedFunction, lam: float, grid: EvaluationGrid | None = None, *, on_boundary: float | None = None
) -> BoundReport:
    """Grid evidence for ``f(z)/z < G_F(z)/z`` with ``G_F = ((1+z)**(1+lam) - 1)/(1+lam)``.

    The target ``T = G_F/z`` is convex univalent, so by the Schwarz lemma each
    sample of ``f/z`` at ``|z| <= r_max`` must lie in ``T(|z| <= r_max)``.  That
    set is approximated by an inscribed polygon on the image of ``|z| = r_max``;
    points outside it by less than the measured chord sag (``on_boundary``
    when given) count as on the curve and get margin 0.
    """
    grid = grid or EvaluationGrid()
    target = closed_form_G_F(lam, max(f.order, TOL.grid_order)).series.over_z()
    m = _TARGET_VERTICES
    polygon = evaluate_ring(target, grid.r_max, m)
    if on_boundary is None:
        half_step = TruncatedSeries(target.coeffs * np.exp(1j * np.pi / m * np.arange(target.order + 1)))
        mids = evaluate_ring(half_step, grid.r_max, m)
        sag = -_sector_margin(mids, polygon, 1.0).min()
        on_boundary = 2 * max(sag, 0.0) + 1e-12
    fz = f.series.over_z()
    values = grid.evaluate(fz)
    rows = []
    for i, (r, ring) in enumerate(zip(grid.radii, values)):
        signed = _sector_margin(ring, polygon, 1.0)
        signed = np.where(signed > -on_boundary, np.maximum(signed, 0.0), signed)
        rows.append((i, -signed.min(), 0.0, r))
    return build_report(
        "f_over_z_subordination", lam, rows, witness=f.label, attain_tol=0.0,
        notes={"tail_bound": tail_bound(fz, grid.r_max), "on_boundary": on_boundary},
    )

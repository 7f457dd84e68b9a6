"""Sharp coefficient inequalities for ST_ss(lam), G(lam) and N(lam), checked on concrete functions.

Every check returns a :class:`~spirallog.report.BoundReport`.  Infinite sums
are checked through their partial sums up to the truncation order: all
summands are nonnegative, so a partial sum above the constant is already a
violation.  The gap between the partial and the infinite constant is kept
in ``notes`` as tail slack.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.special import gamma as gamma_fn

from .membership import Family, FamilyTag
from .report import BoundReport, build_report
from .series import TruncatedSeries, derivative, div, evaluate_ring
from .spiral import SpiralParams
from .zoo import NormalizedFunction, log_coefficients


class UnknownFamily(ValueError):
    pass


# -- helpers ----------------------------------------------------------------

def q_coefficients(lam: float, M: int) -> np.ndarray:
    """``B_1 .. B_M`` of ``(1+z)**lam``, from the falling-factorial product."""
    B = np.empty(M)
    b = 1.0
    for k in range(1, M + 1):
        b *= (lam - k + 1) / k
        B[k - 1] = b
    return B


def li2(x: float) -> float:
    """Real dilogarithm ``sum x**n / n**2`` on ``[0, 1]``.

    Direct partial sum for ``x <= 1/2`` (terms cut once the geometric tail
    drops below 1e-16); Euler's reflection
    ``Li2(x) = pi^2/6 - ln(x) ln(1-x) - Li2(1-x)`` above that.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError("li2 is implemented on [0, 1]")
    if x == 1.0:
        return math.pi**2 / 6
    if x > 0.5:
        return math.pi**2 / 6 - math.log(x) * math.log1p(-x) - li2(1.0 - x)
    total, term, n = 0.0, x, 1
    while True:
        total += term / (n * n)
        # remaining terms are below x^(n+1)/((n+1)^2 (1-x))
        if term * x / ((n + 1) ** 2 * (1 - x)) < 1e-17:
            return total
        n += 1
        term *= x


def _lam_of(f: NormalizedFunction, lam: float | None) -> float:
    lam = f.params.get("lambda") if lam is None else lam
    if lam is None:
        raise ValueError("lambda is required")
    return SpiralParams(lam).lam


# -- logarithmic coefficients -------------------------------------------------

def gamma_bounds_st_ss(f: NormalizedFunction, lam: float | None = None, *, tol: float | None = None) -> BoundReport:
    """``|gamma_n| <= lam/(2n)`` and the two square-sum bounds for ST_ss(lam).

    Rows labelled ``gamma_n`` carry the per-index bound.  ``sum_n2`` compares
    ``sum n^2 |gamma_n|^2`` with ``(1/4) sum |B_n|^2`` over the same indices,
    ``sum_sq`` compares ``sum |gamma_n|^2`` with ``(1/4) sum |B_n|^2/n^2`` and
    ``sum_sq_pi`` with ``lam^2 pi^2/24``.
    """
    lam = _lam_of(f, lam)
    g = log_coefficients(f).abs
    M = len(g)
    n = np.arange(1, M + 1)
    B = q_coefficients(lam, M)
    rows = [(k, g[k - 1], lam / (2 * k), None, "gamma_n") for k in n]
    s_n2 = float(np.sum(n**2 * g**2))
    s_sq = float(np.sum(g**2))
    c_n2 = float(np.sum(B**2) / 4)
    c_sq = float(np.sum(B**2 / n**2) / 4)
    rows += [
        (M, s_n2, c_n2, None, "sum_n2"),
        (M, s_sq, c_sq, None, "sum_sq"),
        (M, s_sq, lam**2 * math.pi**2 / 24, None, "sum_sq_pi"),
    ]
    # sum_{n>=1} |B_n|^2 = binom(2 lam, lam) - 1 (Parseval on the unit circle)
    full_n2 = (gamma_fn(2 * lam + 1) / gamma_fn(lam + 1) ** 2 - 1) / 4
    notes = {"terms": M, "tail_slack_sum_n2": float(full_n2 - c_n2)}
    return build_report("gamma_bounds_st_ss", lam, rows, witness=f.label, tol=tol, notes=notes)


def gamma_conjecture_G(
    f: NormalizedFunction, lam: float | None = None, nmax: int | None = None, *, tol: float | None = None
) -> BoundReport:
    """``|gamma_n(f)| <= lam / (2 n (n+1))`` for ``n <= nmax`` (default ``order // 4``)."""
    lam = _lam_of(f, lam)
    nmax = max(1, f.order // 4) if nmax is None else nmax
    g = log_coefficients(f, nmax).abs
    rows = [(k, g[k - 1], lam / (2 * k * (k + 1)), None, "gamma_n") for k in range(1, nmax + 1)]
    return build_report("gamma_conjecture_G", lam, rows, witness=f.label, tol=tol)


def gamma_sum_constants(lam: float) -> dict[str, float]:
    pi2 = math.pi**2
    return {
        "sum_abs": lam / 2,
        "sum_n2": lam**2 * (pi2 - 6) / 24,
        "sum_n1_2": lam**2 * pi2 / 24,
        "sum_sq": lam**2 * (pi2 - 9) / 12,
        "sum_n2_psw": lam / (4 * (lam + 2)),
        "sum_sq_li2": lam**2 / 4 * li2((1 + lam) ** -2),
    }


def gamma_sums_G(f: NormalizedFunction, lam: float | None = None, *, tol: float | None = None) -> BoundReport:
    """Partial sums of the series bounds for G(lam)."""
    lam = _lam_of(f, lam)
    g = log_coefficients(f).abs
    M = len(g)
    n = np.arange(1, M + 1)
    sums = {
        "sum_abs": np.sum(g),
        "sum_n2": np.sum(n**2 * g**2),
        "sum_n1_2": np.sum((n + 1) ** 2 * g**2),
        "sum_sq": np.sum(g**2),
        "sum_n2_psw": np.sum(n**2 * g**2),
        "sum_sq_li2": np.sum(g**2),
    }
    const = gamma_sum_constants(lam)
    rows = [(M, float(sums[k]), const[k], None, k) for k in const]
    return build_report("gamma_sums_G", lam, rows, witness=f.label, tol=tol, notes={"terms": M})


# -- coefficients --------------------------------------------------------------

def coefficient_bounds(
    f: NormalizedFunction, lam: float | None, tag, nmax: int | None = None, *, tol: float | None = None
) -> BoundReport:
    """``|a_n| <= lam/(n(n-1))`` on G(lam), ``|a_n| <= lam/(n-1)`` on N(lam)."""
    fam = tag.family if isinstance(tag, FamilyTag) else Family.parse(tag) if isinstance(tag, str) else tag
    if fam is Family.G_FAMILY:
        bound = lambda k: lam / (k * (k - 1))  # noqa: E731
    elif fam is Family.N_FAMILY:
        bound = lambda k: lam / (k - 1)  # noqa: E731
    else:
        raise UnknownFamily(f"no coefficient bound for {fam}")
    lam = _lam_of(f, lam)
    nmax = f.order if nmax is None else min(nmax, f.order)
    rows = [(k, abs(f.a[k]), bound(k), None, "a_n") for k in range(2, nmax + 1)]
    return build_report(f"coefficient_bounds_{fam.name}", lam, rows, witness=f.label, tol=tol)


def hankel_h22(f: NormalizedFunction) -> complex:
    """Second Hankel determinant ``a_2 a_4 - a_3^2``."""
    if f.order < 4:
        raise ValueError("H2(2) needs order >= 4")
    a = f.a
    return complex(a[2] * a[4] - a[3] ** 2)


def hankel_check(f: NormalizedFunction, lam: float | None = None, *, tol: float | None = None) -> BoundReport:
    lam = _lam_of(f, lam)
    return build_report(
        "hankel_h22", lam, [(2, abs(hankel_h22(f)), lam**2 / 4, None, "|a2a4-a3^2|")],
        witness=f.label, tol=tol,
    )


# -- Fekete-Szego -------------------------------------------------------------

class Branch(enum.Enum):
    LOW = "LOW"
    MID = "MID"
    HIGH = "HIGH"


@dataclass(frozen=True)
class FeketeSzegoBranch:
    delta: float
    branch: Branch
    bound: float


def fs_breakpoints(lam: float) -> tuple[float, float]:
    return 3 * (lam - 1) / (4 * lam), (1 + 3 * lam) / (4 * lam)


def fekete_szego_bound(lam: float, delta: float) -> FeketeSzegoBranch:
    """Sharp bound on ``|a_3 - delta a_2^2|`` over ST_ss(lam)."""
    lam = SpiralParams(lam).lam
    lo, hi = fs_breakpoints(lam)
    shift = delta + (1 - 3 * lam) / (4 * lam)
    if delta < lo:
        return FeketeSzegoBranch(delta, Branch.LOW, -(lam**2) * shift)
    if delta > hi:
        return FeketeSzegoBranch(delta, Branch.HIGH, lam**2 * shift)
    return FeketeSzegoBranch(delta, Branch.MID, lam / 2)


def fekete_szego_check(
    f: NormalizedFunction, deltas: float | Sequence[float], lam: float | None = None, *, tol: float | None = None
) -> BoundReport:
    lam = _lam_of(f, lam)
    deltas = np.atleast_1d(np.asarray(deltas, dtype=float))
    a2, a3 = f.a[2], f.a[3]
    rows = []
    for i, d in enumerate(deltas):
        br = fekete_szego_bound(lam, d)
        rows.append((i, abs(a3 - d * a2**2), br.bound, None, f"{br.branch.value}:{d:.12g}"))
    return build_report("fekete_szego", lam, rows, witness=f.label, tol=tol)


def inverse_functional_bound(lam: float, delta: float) -> FeketeSzegoBranch:
    """Sharp bound on ``|c_2 - delta c_1^2|`` for ``z/f = 1 + c_1 z + c_2 z^2 + ...``."""
    lam = SpiralParams(lam).lam
    lo, hi = (lam - 1) / (4 * lam), (lam + 3) / (4 * lam)
    shift = delta - (lam + 1) / (4 * lam)
    if delta < lo:
        return FeketeSzegoBranch(delta, Branch.LOW, -(lam**2) * shift)
    if delta > hi:
        return FeketeSzegoBranch(delta, Branch.HIGH, lam**2 * shift)
    return FeketeSzegoBranch(delta, Branch.MID, lam / 2)


def inverse_coefficients(f: NormalizedFunction) -> np.ndarray:
    """``c_0, c_1, ...`` of ``z/f(z)``; ``c_1 = -a_2``, ``c_2 = a_2^2 - a_3``."""
    fz = f.series.over_z()
    return div(TruncatedSeries.constant(1.0, fz.order), fz).coeffs


def inverse_functional_check(
    f: NormalizedFunction, deltas: float | Sequence[float], lam: float | None = None, *, tol: float | None = None
) -> BoundReport:
    lam = _lam_of(f, lam)
    c = inverse_coefficients(f)
    deltas = np.atleast_1d(np.asarray(deltas, dtype=float))
    rows = []
    for i, d in enumerate(deltas):
        br = inverse_functional_bound(lam, d)
        rows.append((i, abs(c[2] - d * c[1] ** 2), br.bound, None, f"{br.branch.value}:{d:.12g}"))
    return build_report("inverse_functional", lam, rows, witness=f.label, tol=tol)


# -- growth, distortion, rotation ---------------------------------------------

def growth_envelopes(
    f: NormalizedFunction,
    lam: float | None,
    tag,
    radii: Iterable[float] = (0.25, 0.5, 0.75, 0.9, 0.95),
    angles: int = 720,
    *,
    tol: float | None = None,
) -> BoundReport:
    """Ring-wise extremes of ``|f|``, ``|f'|`` and the arguments against the envelopes.

    G(lam): ``(1-r)^lam <= |f'| <= (1+r)^lam``, ``|arg f'| <= lam asin r`` and
    ``(1-(1-r)^(1+lam))/(1+lam) <= |f| <= ((1+r)^(1+lam)-1)/(1+lam)``.
    N(lam): ``r(1-r)^lam <= |f| <= r(1+r)^lam`` and ``|arg f/z| <= lam asin r``.
    Ring angles start at 0, so the real point ``z = r`` is always sampled.
    """
    fam = tag.family if isinstance(tag, FamilyTag) else Family.parse(tag) if isinstance(tag, str) else tag
    lam = _lam_of(f, lam)
    rows = []
    for i, r in enumerate(radii):
        if not 0 < r <= 0.95:
            raise ValueError("envelope radii must lie in (0, 0.95]")
        fv = evaluate_ring(f.series, r, angles)
        if fam is Family.G_FAMILY:
            dv = evaluate_ring(derivative(f.series), r, angles)
            mod_d, arg_d = np.abs(dv), np.abs(np.angle(dv))
            mod_f = np.abs(fv)
            rows += [
                (i, mod_d.max(), (1 + r) ** lam, r, "max|f'|"),
                (i, -mod_d.min(), -((1 - r) ** lam), r, "min|f'|"),
                (i, arg_d.max(), lam * math.asin(r), r, "|arg f'|"),
                (i, mod_f.max(), ((1 + r) ** (1 + lam) - 1) / (1 + lam), r, "max|f|"),
                (i, -mod_f.min(), -(1 - (1 - r) ** (1 + lam)) / (1 + lam), r, "min|f|"),
            ]
        elif fam is Family.N_FAMILY:
            mod_f = np.abs(fv)
            ratio = fv / (r * np.exp(2j * np.pi * np.arange(angles) / angles))
            rows += [
                (i, mod_f.max(), r * (1 + r) ** lam, r, "max|f|"),
                (i, -mod_f.min(), -r * (1 - r) ** lam, r, "min|f|"),
                (i, np.abs(np.angle(ratio)).max(), lam * math.asin(r), r, "|arg f/z|"),
            ]
        else:
            raise UnknownFamily(f"no growth theorem for {fam}")
    return build_report(f"growth_envelopes_{fam.name}", lam, rows, witness=f.label, tol=tol)


def tail_growth(f: NormalizedFunction) -> float:
    """``max_{8 <= n <= order} n |a_n|``, an empirical witness for ``a_n = O(1/n)``."""
    if f.order < 32:
        raise ValueError("tail_growth needs order >= 32")
    n = np.arange(8, f.order + 1)
    return float(np.max(n * np.abs(f.a[8:])))


def telescoping_sum(K: int) -> float:
    """``sum_{n<=K} 1/(n(n+1))``, which telescopes to ``1 - 1/(K+1)``."""
    return math.fsum(1.0 / (n * (n + 1)) for n in range(1, K + 1))

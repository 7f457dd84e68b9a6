"""Named normalized functions, the G/N transforms and logarithmic coefficients.

Notation used in labels:

* ``F[lam/m,n]`` solves ``z F'/F = (1 + z**n)**(lam/m)``;
* ``G_f(z) = int_0^z t f'(t)/f(t) dt`` and ``N_f = z G_f'``;
* ``gamma_n(f)`` are defined by ``log(f(z)/z) = sum 2 gamma_n z**n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .series import (
    TruncatedSeries,
    antiderivative,
    derivative,
    div,
    exp0,
    integrate_quotient,
    log1,
    pow_real,
)

_NORMALIZED = 1e-13


class DivisionBySmallCoefficient(ValueError):
    pass


@dataclass(frozen=True)
class NormalizedFunction:
    """A series ``z + a_2 z**2 + ...`` with a provenance label."""

    series: TruncatedSeries
    label: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        c = self.series.coeffs
        if self.series.order < 1:
            raise ValueError("a normalized function needs order >= 1")
        if abs(c[0]) > _NORMALIZED or abs(c[1] - 1) > _NORMALIZED:
            raise ValueError(f"not normalized: c0={c[0]!r}, c1={c[1]!r}")
        fixed = c.copy()
        fixed[0], fixed[1] = 0.0, 1.0
        object.__setattr__(self, "series", TruncatedSeries(fixed))

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def a(self) -> np.ndarray:
        """Coefficients indexed by power: ``f.a[n]`` is ``a_n``."""
        return self.series.coeffs

    def __call__(self, z):
        return self.series(z)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "lambda": self.params.get("lambda"),
            "m": self.params.get("m"),
            "n": self.params.get("n"),
            "order": self.order,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.a],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "NormalizedFunction":
        coeffs = [complex(re, im) for re, im in d["coeffs"]]
        if len(coeffs) != d["order"] + 1:
            raise ValueError("coefficient count does not match order")
        params = {k: d[k] for k in ("lambda", "m", "n") if d.get(k) is not None}
        return cls(TruncatedSeries(coeffs), d.get("label", ""), params)

    @classmethod
    def from_json(cls, text: str) -> "NormalizedFunction":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class LogCoefficients:
    gammas: np.ndarray  # gammas[n-1] is gamma_n

    def __getitem__(self, n: int) -> complex:
        """1-based access, ``lc[n] == gamma_n``."""
        if n < 1:
            raise IndexError("logarithmic coefficients start at n = 1")
        return self.gammas[n - 1]

    def __len__(self):
        return len(self.gammas)

    @property
    def abs(self) -> np.ndarray:
        return np.abs(self.gammas)


def _one_plus_zn(n: int, order: int) -> TruncatedSeries:
    return TruncatedSeries.constant(1.0, order) + TruncatedSeries.monomial(n, order)


def from_log_derivative(p: TruncatedSeries, label: str = "", **params) -> NormalizedFunction:
    """The ``f`` with ``z f'/f = p``, i.e. ``f = z exp(int_0^z (p-1)/t dt)``."""
    e = exp0(integrate_quotient(p - 1.0))
    return NormalizedFunction(e.times_z().truncate(p.order), label, params)


def from_derivative(fp: TruncatedSeries, label: str = "", **params) -> NormalizedFunction:
    """``f = int_0^z fp``, for ``fp(0) = 1``."""
    return NormalizedFunction(antiderivative(fp).truncate(fp.order), label, params)


def extremal_F(lam: float, m: int = 1, n: int = 1, order: int | None = None) -> NormalizedFunction:
    """``F[lam/m,n]``: ``z F'/F = (1 + z**n)**(lam/m)``.

    Leading terms ``z + lam/(n m) z**(n+1) + ...``.
    """
    order = TOL.order if order is None else order
    _check_lam(lam)
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive integers")
    p = pow_real(_one_plus_zn(n, order), lam / m)
    return from_log_derivative(p, f"F[{lam:g}/{m},{n}]", **{"lambda": lam, "m": m, "n": n})


def transform_G(f: NormalizedFunction) -> NormalizedFunction:
    """``G_f = int_0^z t f'(t)/f(t) dt``; ``a_n(G_f) = 2 (n-1)/n gamma_{n-1}(f)``."""
    p = _log_derivative(f)
    return NormalizedFunction(antiderivative(p), f"G({f.label})", dict(f.params))


def transform_N(f: NormalizedFunction) -> NormalizedFunction:
    """``N_f = z G_f'``, which is ``z * (z f'/f)``."""
    p = _log_derivative(f)
    return NormalizedFunction(p.times_z(), f"N({f.label})", dict(f.params))


def _log_derivative(f: NormalizedFunction) -> TruncatedSeries:
    # z f'/f = f' / (f/z); both have constant term 1, order drops to N-1
    try:
        return div(derivative(f.series), f.series.over_z())
    except ValueError as exc:  # pragma: no cover - normalized input cannot trigger
        raise DivisionBySmallCoefficient(str(exc)) from exc


def log_coefficients(f: NormalizedFunction, M: int | None = None) -> LogCoefficients:
    """``gamma_1 .. gamma_M``; needs ``M <= order - 1`` (gamma_n uses a_{n+1})."""
    log_fz = log1(f.series.over_z())
    available = log_fz.order
    M = available if M is None else M
    if M > available:
        raise ValueError(f"gamma_{M} needs order >= {M + 1}, function has {f.order}")
    return LogCoefficients(np.array(log_fz.coeffs[1 : M + 1]) / 2)


def closed_form_G_F(lam: float, order: int | None = None) -> NormalizedFunction:
    """``((1+z)**(1+lam) - 1)/(1+lam)`` from the binomial product formula."""
    order = TOL.order if order is None else order
    _check_lam(lam)
    c = np.zeros(order + 1, dtype=complex)
    binom = 1.0
    for k in range(1, order + 1):
        binom *= (1.0 + lam - (k - 1)) / k
        c[k] = binom / (1.0 + lam)
    return NormalizedFunction(TruncatedSeries(c), f"G(F[{lam:g}])", {"lambda": lam, "m": 1, "n": 1})


def koebe(theta: float = 0.0, order: int | None = None) -> NormalizedFunction:
    """``z (1 - e^{i theta} z)**-2``; ``a_n = n e^{i(n-1) theta}``."""
    order = TOL.order if order is None else order
    k = np.arange(order + 1)
    c = k * np.exp(1j * (k - 1) * theta)
    c[0] = 0.0
    return NormalizedFunction(TruncatedSeries(c), f"koebe[{theta:g}]")


def rotate(f: NormalizedFunction, mu: complex) -> NormalizedFunction:
    """``conj(mu) f(mu z)`` for ``|mu| = 1``; ``a_n`` picks up ``mu**(n-1)``."""
    mu = complex(mu)
    if abs(abs(mu) - 1) > 1e-12:
        raise ValueError("rotation needs |mu| = 1")
    k = np.arange(f.order + 1)
    c = f.a * mu ** (k - 1.0)
    c[0] = 0.0
    return NormalizedFunction(TruncatedSeries(c), f"rot({f.label})", dict(f.params))


def _check_lam(lam: float) -> None:
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda out of (0,1]: {lam!r}")

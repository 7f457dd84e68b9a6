"""Truncated complex power series.

A :class:`TruncatedSeries` holds the Taylor coefficients ``c_0 .. c_N`` of an
analytic germ at the origin.  Coefficients beyond ``N`` are unknown, not
zero, so binary operations truncate to the smaller order.

Transcendental operations (``log1``, ``exp0``, ``pow_real``) use the
first-order ODE recurrences satisfied by the result, e.g. ``a * (a**lam)' =
lam * a' * a**lam``.  Nothing is sampled and interpolated, so branch cuts never
enter at the coefficient level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import TOL


class SeriesError(ValueError):
    """Base class for precondition failures in series arithmetic."""


class NearZeroLeadingCoefficient(SeriesError):
    pass


class NotUnitConstantTerm(SeriesError):
    pass


class NonzeroConstantTerm(SeriesError):
    pass


class NonzeroInnerConstant(SeriesError):
    pass


# slack on "exactly 1" / "exactly 0" constant terms; results of earlier
# arithmetic can carry a last-bit rounding error
_EXACT = 1e-14


class TruncatedSeries:
    """Degree-``order`` complex Taylor polynomial standing in for a germ."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Sequence[complex] | np.ndarray):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a series needs at least the constant coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        self._c = c

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, value: complex, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c)

    @classmethod
    def monomial(cls, k: int, order: int, coef: complex = 1.0) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        if k <= order:
            c[k] = coef
        return cls(c)

    @classmethod
    def identity(cls, order: int) -> "TruncatedSeries":
        return cls.monomial(1, order)

    # -- basic access -------------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, k):
        return self._c[k]

    def __repr__(self) -> str:
        head = ", ".join(f"{x:.6g}" for x in self._c[:6])
        more = ", ..." if self.order > 5 else ""
        return f"TruncatedSeries(order={self.order}, [{head}{more}])"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries(self._c[: order + 1])

    def times_z(self) -> "TruncatedSeries":
        """Multiply by ``z``; the known degree grows by one."""
        return TruncatedSeries(np.concatenate([[0.0], self._c]))

    def over_z(self) -> "TruncatedSeries":
        """Divide by ``z``; requires ``c_0 == 0``."""
        if abs(self._c[0]) > _EXACT:
            raise NonzeroConstantTerm(f"c0 = {self._c[0]!r}, cannot divide by z")
        if self.order == 0:
            raise ValueError("over_z of an order-0 series has no known coefficients")
        return TruncatedSeries(self._c[1:])

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            return self._c[: n + 1], other._c[: n + 1]
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            c = self._c.copy()
            c[0] += other
            return TruncatedSeries(c)
        return TruncatedSeries(pair[0] + pair[1])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self._c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return TruncatedSeries(self._c * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        return TruncatedSeries(self._c / other)

    def __call__(self, z):
        return evaluate(self, z)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries(np.convolve(a.coeffs[: n + 1], b.coeffs[: n + 1])[: n + 1])


def div(a: TruncatedSeries, b: TruncatedSeries, floor: float | None = None) -> TruncatedSeries:
    floor = TOL.leading_floor if floor is None else floor
    b0 = b.coeffs[0]
    if abs(b0) < floor:
        raise NearZeroLeadingCoefficient(f"|b0| = {abs(b0):.3g} below floor {floor:g}")
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    r = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        # bc[1:k+1] against r[k-1], ..., r[0]
        r[k] = (ac[k] - np.dot(bc[1 : k + 1], r[k - 1 :: -1][:k])) / b0
    return TruncatedSeries(r)


def _require_unit(a: TruncatedSeries, what: str) -> None:
    if abs(a.coeffs[0] - 1.0) > _EXACT:
        raise NotUnitConstantTerm(f"{what} needs constant term 1, got {a.coeffs[0]!r}")


def _require_zero(a: TruncatedSeries, what: str) -> None:
    if abs(a.coeffs[0]) > _EXACT:
        raise NonzeroConstantTerm(f"{what} needs constant term 0, got {a.coeffs[0]!r}")


def log1(a: TruncatedSeries) -> TruncatedSeries:
    """``log a`` for ``a_0 = 1``, from ``a * (log a)' = a'``."""
    _require_unit(a, "log1")
    N = a.order
    c = a.coeffs
    L = np.zeros(N + 1, dtype=complex)
    kL = np.zeros(N + 1, dtype=complex)  # k * L_k
    for n in range(1, N + 1):
        # n L_n = n a_n - sum_{k=1}^{n-1} k L_k a_{n-k}
        kL[n] = n * c[n] - np.dot(kL[1:n], c[n - 1 : 0 : -1])
        L[n] = kL[n] / n
    return TruncatedSeries(L)


def exp0(a: TruncatedSeries) -> TruncatedSeries:
    """``exp a`` for ``a_0 = 0``, from ``(exp a)' = a' exp a``."""
    _require_zero(a, "exp0")
    N = a.order
    ka = np.arange(N + 1) * a.coeffs
    E = np.zeros(N + 1, dtype=complex)
    E[0] = 1.0
    for n in range(1, N + 1):
        # n E_n = sum_{k=1}^{n} k a_k E_{n-k}
        E[n] = np.dot(ka[1 : n + 1], E[n - 1 :: -1][:n]) / n
    return TruncatedSeries(E)


def pow_real(a: TruncatedSeries, lam: float) -> TruncatedSeries:
    """``a**lam`` for ``a_0 = 1`` on the branch with value 1 at the origin."""
    _require_unit(a, "pow_real")
    lam = float(lam)
    if not np.isfinite(lam):
        raise ValueError(f"exponent must be finite, got {lam!r}")
    N = a.order
    c = a.coeffs
    j = np.arange(N + 1)
    P = np.zeros(N + 1, dtype=complex)
    P[0] = 1.0
    for n in range(1, N + 1):
        # n P_n = sum_{j=1}^{n} (lam*j - (n-j)) a_j P_{n-j}
        w = lam * j[1 : n + 1] - (n - j[1 : n + 1])
        P[n] = np.dot(w * c[1 : n + 1], P[n - 1 :: -1][:n]) / n
    return TruncatedSeries(P)


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    if a.order == 0:
        return TruncatedSeries([0.0])
    c = a.coeffs
    return TruncatedSeries(np.arange(1, a.order + 1) * c[1:])


def antiderivative(a: TruncatedSeries) -> TruncatedSeries:
    """``int_0^z a(t) dt``; the known degree grows by one."""
    c = a.coeffs
    return TruncatedSeries(np.concatenate([[0.0], c / np.arange(1, a.order + 2)]))


def integrate_quotient(g: TruncatedSeries) -> TruncatedSeries:
    """``int_0^z g(t)/t dt`` for ``g_0 = 0``."""
    _require_zero(g, "integrate_quotient")
    c = np.zeros(g.order + 1, dtype=complex)
    c[1:] = g.coeffs[1:] / np.arange(1, g.order + 1)
    return TruncatedSeries(c)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Coefficients of ``outer(inner(z))`` for ``inner(0) = 0`` (Horner)."""
    if abs(inner.coeffs[0]) > _EXACT:
        raise NonzeroInnerConstant(f"inner(0) = {inner.coeffs[0]!r}")
    n = min(outer.order, inner.order)
    oc = outer.coeffs[: n + 1]
    ic = inner.coeffs[: n + 1]
    acc = np.zeros(n + 1, dtype=complex)
    acc[0] = oc[n]
    for k in range(n - 1, -1, -1):
        acc = np.convolve(acc, ic)[: n + 1]
        acc[0] += oc[k]
    return TruncatedSeries(acc)


def evaluate(a: TruncatedSeries, z):
    """Horner evaluation; scalar in, scalar out, arrays broadcast."""
    out = np.polyval(a.coeffs[::-1], np.asarray(z, dtype=complex))
    return complex(out) if np.ndim(out) == 0 else out


def tail_bound(a: TruncatedSeries, r: float) -> float:
    """Documented truncation slack ``max|c_k| r**(N+1) / (1 - r)`` at ``|z| = r``."""
    if not 0 <= r < 1:
        raise ValueError("tail bound needs 0 <= r < 1")
    return float(np.max(np.abs(a.coeffs)) * r ** (a.order + 1) / (1.0 - r))


def evaluate_ring(a: TruncatedSeries, r: float, m: int) -> np.ndarray:
    """Values at ``r * exp(2*pi*i*j/m)``, j = 0..m-1.

    Coefficients are folded modulo ``m`` (``e^{ik theta_j}`` is m-periodic in
    k), after which one inverse FFT gives every value exactly.
    """
    scaled = a.coeffs * r ** np.arange(a.order + 1)
    folded = np.zeros(m, dtype=complex)
    np.add.at(folded, np.arange(a.order + 1) % m, scaled)
    return np.fft.ifft(folded) * m


@dataclass(frozen=True)
class EvaluationGrid:
    """Concentric rings inside the disk used to discretise ``z in D``."""

    radii: tuple[float, ...] = field(
        default=(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95)
    )
    angles_per_ring: int = 720
    r_max: float = 0.95

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not 0 < self.r_max < 1:
            raise ValueError(f"r_max must lie in (0, 1), got {self.r_max}")
        if not radii:
            raise ValueError("grid needs at least one radius")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("radii must be strictly ascending")
        if radii[0] <= 0 or radii[-1] > self.r_max:
            raise ValueError(f"radii must lie in (0, {self.r_max}]")
        if self.angles_per_ring < 1:
            raise ValueError("angles_per_ring must be positive")

    @classmethod
    def with_rmax(cls, r_max: float, angles_per_ring: int = 720) -> "EvaluationGrid":
        radii = tuple(r for r in cls().radii if r < r_max) + (r_max,)
        return cls(radii=radii, angles_per_ring=angles_per_ring, r_max=r_max)

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.angles_per_ring) / self.angles_per_ring

    def points(self) -> np.ndarray:
        """Complex grid points, shape ``(len(radii), angles_per_ring)``."""
        return np.outer(self.radii, np.exp(1j * self.angles))

    def evaluate(self, a: TruncatedSeries) -> np.ndarray:
        """Values of ``a`` on :meth:`points`, computed ring by ring."""
        return np.stack([evaluate_ring(a, r, self.angles_per_ring) for r in self.radii])

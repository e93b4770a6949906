"""Eigenstates of k-th ladder powers and their observable profile.

For each order k and residue class j in 0..k-1 there is a normalized state

    |alpha; k, j>  ~  sum_n  alpha^n / sqrt((kn+j)!)  |kn+j>

annihilated onto itself by (a-)^k with eigenvalue alpha. The class is the
order-k generalization of the coherent states (k=1, j=0 reduces to them
exactly, modulo the alpha -> |alpha|^2 norm convention used throughout:
norm_sum takes x = |alpha|^2).

Moments come in two independent routes, a series route built from the norm
function and a numeric route from truncated matrix elements; `moments`
computes both and refuses to return if they disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Overflow, RouteMismatch, TailTooHeavy, UnsupportedOrder
from .fock import (
    DEFAULT_N_MAX,
    FockVector,
    apply_k_ladder,
    lowering_power,
)

DEFAULT_TAIL_TOL = 1e-12

# stop a positive-term series once terms are this far below the running sum,
# three times in a row (k-step index patterns can produce one stray small term)
_SERIES_EPS = 1e-16
_SERIES_RUN = 3
_SERIES_MAX_TERMS = 100_000


@dataclass(frozen=True)
class MCSLabel:
    """Order k, residue class j, ladder eigenvalue alpha."""

    k: int
    j: int
    alpha: complex

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"order must be >= 1, got {self.k}")
        if not 0 <= self.j < self.k:
            raise ValueError(f"class index {self.j} outside [0, {self.k})")
        a = complex(self.alpha)
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise ValueError(f"eigenvalue must be finite, got {a!r}")
        object.__setattr__(self, "alpha", a)


def norm_sum(k: int, j: int, x: float) -> float:
    """S_{k,j}(x) = sum_m x^m / (km+j)!  for x >= 0.

    This is the squared norm of the unnormalized state at x = |alpha|^2.
    Computed by term ratios; no factorial is ever materialized beyond the
    j! seed.
    """
    if k < 1 or not 0 <= j < k:
        raise ValueError(f"bad order/class ({k}, {j})")
    if x < 0:
        raise ValueError(f"norm argument must be >= 0, got {x}")
    term = 1.0 / math.factorial(j)
    total = 0.0
    small = 0
    for m in range(_SERIES_MAX_TERMS):
        total += term
        if math.isinf(total):
            raise Overflow(
                f"norm sum overflows double precision at x={x:.3g} "
                f"(order {k}, class {j}); the label is too large"
            )
        if term <= total * _SERIES_EPS:
            small += 1
            if small >= _SERIES_RUN:
                return total
        else:
            small = 0
        idx = k * m + j
        term *= x / float(math.prod(range(idx + 1, idx + k + 1)))
    raise ValueError(f"norm series did not terminate for x={x}")  # pragma: no cover


def build_mcs(
    label: MCSLabel, n_max: int = DEFAULT_N_MAX, tail_tol: float = DEFAULT_TAIL_TOL
) -> FockVector:
    """Truncated coefficient vector for |alpha; k, j>, exactly renormalized.

    The analytic norm says how much weight the truncation dropped; if that
    tail fraction exceeds tail_tol the state is not representable at this
    n_max and TailTooHeavy is raised instead of returning a quietly wrong
    vector.
    """
    k, j, alpha = label.k, label.j, label.alpha
    x = abs(alpha) ** 2
    total = norm_sum(k, j, x)
    coeffs = np.zeros(n_max, dtype=np.complex128)
    term: complex = 1.0 / math.sqrt(math.factorial(j))
    included = 0.0
    m = j
    while m < n_max:
        coeffs[m] = term
        included += abs(term) ** 2
        term *= alpha / math.sqrt(float(math.prod(range(m + 1, m + k + 1))))
        m += k
    tail = 1.0 - included / total
    if tail > tail_tol:
        raise TailTooHeavy(
            f"|alpha|={abs(alpha):.3g} needs more than n_max={n_max} levels "
            f"for order {k} class {j}: tail fraction {tail:.3e} > {tail_tol:.1e}"
        )
    return FockVector(coeffs / np.linalg.norm(coeffs))


def eigenvalue_residual(
    label: MCSLabel, state: FockVector | None = None, n_max: int = DEFAULT_N_MAX
) -> float:
    """|| (a-)^k |state> - alpha |state> ||, the defining property."""
    if state is None:
        state = build_mcs(label, n_max)
    lowered = apply_k_ladder(state, lowering_power(label.k))
    return float(np.linalg.norm(lowered.coeffs - label.alpha * state.coeffs))


def revival_phase(k: int, j: int) -> complex:
    """Global phase picked up over one revival period 2*pi/k."""
    return complex(np.exp(-1j * np.pi * (2 * j + 1) / k))


@dataclass(frozen=True)
class MomentSet:
    """Quadrature moments of a single state (units hbar = m = omega = 1).

    a_norm_sq is ||a |psi>||^2, i.e. the number expectation, which for these
    states is also the norm-series ratio A.
    """

    mean_x: float
    mean_p: float
    mean_x2: float
    mean_p2: float
    var_x: float
    var_p: float
    uncertainty_product: float
    a_norm_sq: float
    mean_H: float

    def __post_init__(self) -> None:
        if self.var_x < -1e-12 or self.var_p < -1e-12:
            raise ValueError(f"negative variance: {self.var_x}, {self.var_p}")
        if self.uncertainty_product < 0.5 - 1e-9:
            raise ValueError(
                f"uncertainty product {self.uncertainty_product} below the floor 1/2"
            )
        if abs(self.mean_H - self.a_norm_sq - 0.5) > 1e-10:
            raise ValueError("energy and number moments are inconsistent")


def numeric_moments(state: FockVector) -> MomentSet:
    """Moments straight from truncated matrix elements of a, a^2, N."""
    c = state.coeffs / np.linalg.norm(state.coeffs)
    n = np.arange(c.size, dtype=np.float64)
    mean_n = float(np.sum(n * np.abs(c) ** 2))
    mean_a = complex(np.sum(np.sqrt(n[1:]) * np.conj(c[:-1]) * c[1:]))
    mean_a2 = complex(np.sum(np.sqrt(n[1:-1] * n[2:]) * np.conj(c[:-2]) * c[2:]))
    mean_x = math.sqrt(2.0) * mean_a.real
    mean_p = math.sqrt(2.0) * mean_a.imag
    mean_x2 = mean_a2.real + mean_n + 0.5
    mean_p2 = mean_n + 0.5 - mean_a2.real
    var_x = mean_x2 - mean_x**2
    var_p = mean_p2 - mean_p**2
    return MomentSet(
        mean_x=mean_x,
        mean_p=mean_p,
        mean_x2=mean_x2,
        mean_p2=mean_p2,
        var_x=var_x,
        var_p=var_p,
        uncertainty_product=math.sqrt(max(var_x, 0.0) * max(var_p, 0.0)),
        a_norm_sq=mean_n,
        mean_H=mean_n + 0.5,
    )


def a_norm_series(k: int, j: int, x: float) -> float:
    """Number expectation A as a ratio of two norm-type series at x=|alpha|^2.

    The numerator is sum_n n' x^{n'} / (kn'+j)! reindexed so that the n'=0
    term drops; for j=0 that shifts the factorial index by a full period k.
    """
    if k < 1 or not 0 <= j < k:
        raise ValueError(f"bad order/class ({k}, {j})")
    if x < 0:
        raise ValueError(f"norm argument must be >= 0, got {x}")
    d = 1 if j == 0 else 0
    seed = k * d + j - 1  # k-1 for j=0, j-1 otherwise
    term = x**d / math.factorial(seed)
    total = 0.0
    small = 0
    for n in range(_SERIES_MAX_TERMS):
        total += term
        if term == 0.0:
            break
        if term <= total * _SERIES_EPS:
            small += 1
            if small >= _SERIES_RUN:
                break
        else:
            small = 0
        idx = k * n + seed
        term *= x / float(math.prod(range(idx + 1, idx + k + 1)))
    return total / norm_sum(k, j, x)


def a_norm_closed(label: MCSLabel) -> float:
    """Closed-form number expectation for orders 2 and 3.

    Depends on the label only through r = |alpha|. Order 2 uses hyperbolic
    ratios of r itself; order 3 is a ratio of shifted exponential-trig
    brackets in y = r^(2/3). Exactly j at r = 0.
    """
    k, j, r = label.k, label.j, abs(label.alpha)
    if k == 2:
        if j == 0:
            return r * math.tanh(r)
        return r / math.tanh(r) if r > 0 else 1.0
    elif k == 3:
        if r == 0.0:
            return float(j)
        y = r ** (2.0 / 3.0)
        e = math.exp(1.5 * y)
        c = 2.0 * math.cos(math.sqrt(3.0) * y / 2.0)
        s_minus = 2.0 * math.sin(math.pi / 6.0 - math.sqrt(3.0) * y / 2.0)
        s_plus = 2.0 * math.sin(math.pi / 6.0 + math.sqrt(3.0) * y / 2.0)
        if j == 0:
            return y * (e - s_plus) / (e + c)
        if j == 1:
            return y * (e + c) / (e - s_minus)
        return y * (e - s_minus) / (e - s_plus)
    raise UnsupportedOrder(f"no closed number expectation for order {k}")


def moments(
    label: MCSLabel, n_max: int = DEFAULT_N_MAX, route_tol: float = 1e-10
) -> MomentSet:
    """Moment set for |alpha; k, j>, series route cross-checked numerically.

    Order 1 is the familiar displaced Gaussian. For k >= 2 the first
    moments vanish identically and the second moments are
    A + 1/2 +- Re(alpha) delta_{k,2}; the +- asymmetry exists only at k=2,
    where (a-)^2 contributes a direct <a^2> = alpha term.

    Raises RouteMismatch if the truncated matrix elements disagree with the
    series values beyond route_tol; that means n_max is too small for this
    label (or a bug), and no silently wrong numbers are returned.
    """
    k, j, alpha = label.k, label.j, label.alpha
    x = abs(alpha) ** 2
    if k == 1:
        mean_x = math.sqrt(2.0) * alpha.real
        mean_p = math.sqrt(2.0) * alpha.imag
        closed = MomentSet(
            mean_x=mean_x,
            mean_p=mean_p,
            mean_x2=mean_x**2 + 0.5,
            mean_p2=mean_p**2 + 0.5,
            var_x=0.5,
            var_p=0.5,
            uncertainty_product=0.5,
            a_norm_sq=x,
            mean_H=x + 0.5,
        )
    else:
        a = a_norm_series(k, j, x)
        cross = alpha.real if k == 2 else 0.0
        mean_x2 = a + 0.5 + cross
        mean_p2 = a + 0.5 - cross
        closed = MomentSet(
            mean_x=0.0,
            mean_p=0.0,
            mean_x2=mean_x2,
            mean_p2=mean_p2,
            var_x=mean_x2,
            var_p=mean_p2,
            uncertainty_product=math.sqrt(mean_x2 * mean_p2),
            a_norm_sq=a,
            mean_H=a + 0.5,
        )
    numeric = numeric_moments(build_mcs(label, n_max))
    worst_field, worst = "", 0.0
    for name in MomentSet.__dataclass_fields__:
        d = abs(getattr(closed, name) - getattr(numeric, name))
        if d > worst:
            worst_field, worst = name, d
    if worst > route_tol:
        raise RouteMismatch(
            f"series and matrix-element moments disagree on {worst_field} "
            f"by {worst:.3e} (> {route_tol:.1e}) for {label}; raise n_max"
        )
    return closed


def geometric_phase(
    label: MCSLabel, n_max: int = DEFAULT_N_MAX, route_tol: float = 1e-12
) -> float:
    """Geometric phase over one revival period 2*pi/k.

    Route one: beta = (2*pi/k)(A - j) from the series number expectation.
    Route two: total revival phase minus the dynamical part, with the
    energy taken from truncated matrix elements. The two must agree to
    route_tol or RouteMismatch is raised.
    """
    k, j = label.k, label.j
    a = a_norm_series(k, j, abs(label.alpha) ** 2)
    beta = (2.0 * math.pi / k) * (a - j)
    tau = 2.0 * math.pi / k
    total_phase = -(2 * j + 1) * math.pi / k
    dynamical = numeric_moments(build_mcs(label, n_max)).mean_H
    beta_alt = total_phase + tau * dynamical
    if abs(beta - beta_alt) > route_tol:
        raise RouteMismatch(
            f"geometric phase routes disagree by {abs(beta - beta_alt):.3e} "
            f"for {label}; raise n_max"
        )
    return beta

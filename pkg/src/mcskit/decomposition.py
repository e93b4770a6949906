"""Cat decompositions and position-space profiles.

Every order-k class state is a finite superposition of k ordinary coherent
states sitting on a ring: the roots-of-unity filter that keeps n = j mod k
turns |z> into |z; k, j> and back. This module owns that change of basis,
the discrete transform behind it, and the closed-form wavefunctions it
implies.

Conventions. A coherent constituent here is the normalized k=1 state, and
`mcs_as_scs` returns weights with respect to those. The closed wavefunction
carries the per-branch phase exp(-i <x><p> / 2) of each moving Gaussian;
dropping it is harmless for one branch but scrambles the interference of a
superposition, which is observable in |psi|^2. The global phase is pinned
to the number-basis convention of `build_mcs` (real positive seed
coefficient), so closed and synthesized wavefunctions agree pointwise as
complex functions, not just in modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateNorm
from .fock import DEFAULT_N_MAX, FockVector, time_evolve
from .parallel import pmap
from .states import MCSLabel, build_mcs, norm_sum

DEFAULT_X_GRID = (-12.0, 12.0, 2048)

_QUARTIC_ROOT_PI = math.pi ** (-0.25)


def default_x_grid() -> np.ndarray:
    lo, hi, n = DEFAULT_X_GRID
    return np.linspace(lo, hi, n)


def fock_wavefunction(state: FockVector, x: np.ndarray) -> np.ndarray:
    """Synthesize psi(x) = sum_n c_n psi_n(x) with oscillator eigenfunctions.

    Uses the stable two-term recurrence
    psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1};
    no Hermite polynomial or factorial ever appears explicitly, so n_max in
    the hundreds is routine.
    """
    x = np.asarray(x, dtype=np.float64)
    c = state.coeffs
    prev = np.zeros_like(x)
    cur = _QUARTIC_ROOT_PI * np.exp(-0.5 * x * x)
    acc = c[0] * cur.astype(np.complex128)
    for n in range(1, c.size):
        prev, cur = cur, math.sqrt(2.0 / n) * x * cur - math.sqrt((n - 1) / n) * prev
        if c[n] != 0.0:
            acc += c[n] * cur
    return acc


@dataclass(frozen=True)
class WaveSample:
    """psi evaluated on a position grid at one instant."""

    x_grid: np.ndarray
    values: np.ndarray
    t: float = 0.0

    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def total_mass(self) -> float:
        return float(np.trapezoid(self.density(), self.x_grid))


def coherent_state(z: complex, n_max: int = DEFAULT_N_MAX) -> FockVector:
    """Normalized ordinary coherent state; the k=1 class state."""
    return build_mcs(MCSLabel(1, 0, z), n_max)


def dft_matrix(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Order-k root-of-unity matrix M[j, l] = mu^(jl) and its exact inverse.

    The inverse is conj(M)/k analytically; returning it avoids an
    unnecessary linear solve and keeps the pair exactly consistent.
    """
    if k < 1:
        raise ValueError(f"order must be >= 1, got {k}")
    jl = np.outer(np.arange(k), np.arange(k))
    m = np.exp(2j * np.pi * jl / k)
    return m, m.conj() / k


def component_norm(k: int, j: int, z: complex) -> float:
    """Norm |z|^j sqrt(S_{k,j}(|z|^(2k))) of the class-j part of exp(|z|^2/2)-
    scaled |z>; the share of the coherent state living on n = j mod k."""
    r = abs(z)
    return r**j * math.sqrt(norm_sum(k, j, r ** (2 * k)))


@dataclass(frozen=True)
class ScsSuperposition:
    """A class state written as sum_l weights[l] |mu^l z> over normalized
    coherent constituents on the ring."""

    k: int
    j: int
    z: complex
    weights: np.ndarray

    def constituents(self) -> np.ndarray:
        mu = np.exp(2j * np.pi / self.k)
        return mu ** np.arange(self.k) * self.z

    def raw_weights(self) -> np.ndarray:
        """Weights with respect to unnormalized coherent vectors
        sum_n z^n/sqrt(n!) |n> instead."""
        return self.weights * math.exp(-0.5 * abs(self.z) ** 2)

    def fock_vector(self, n_max: int = DEFAULT_N_MAX) -> FockVector:
        acc = np.zeros(n_max, dtype=np.complex128)
        for w, label in zip(self.weights, self.constituents()):
            acc += w * coherent_state(complex(label), n_max).coeffs
        return FockVector(acc)


def mcs_as_scs(k: int, j: int, z: complex) -> ScsSuperposition:
    """Decompose |z^k; k, j> into k coherent states at angles 2*pi*l/k.

    The weight of constituent l on normalized coherent states is
    mu^(-jl) e^(-i j arg z) e^(|z|^2/2) / (k component_norm). As z -> 0 the
    class norm vanishes for j > 0 and the decomposition degenerates;
    DegenerateNorm is raised rather than returning infinities.
    """
    if k < 1 or not 0 <= j < k:
        raise ValueError(f"bad order/class ({k}, {j})")
    z = complex(z)
    nj = component_norm(k, j, z)
    if nj < 1e-300:
        raise DegenerateNorm(
            f"class ({k}, {j}) carries no weight at z={z}; no decomposition exists"
        )
    mu_pow = np.exp(-2j * np.pi * j * np.arange(k) / k)
    align = np.exp(-1j * j * np.angle(z))
    weights = mu_pow * align * math.exp(0.5 * abs(z) ** 2) / (k * nj)
    return ScsSuperposition(k=k, j=j, z=z, weights=weights)


def coherent_from_classes(k: int, z: complex, n_max: int = DEFAULT_N_MAX) -> FockVector:
    """Inverse direction: reassemble |z> from its k class projections.

    The class-j component enters with weight e^(i j arg z) component_norm
    e^(-|z|^2/2); summing over j must reproduce the coherent state exactly.
    """
    if k < 1:
        raise ValueError(f"order must be >= 1, got {k}")
    z = complex(z)
    acc = np.zeros(n_max, dtype=np.complex128)
    damp = math.exp(-0.5 * abs(z) ** 2)
    for j in range(k):
        w = np.exp(1j * j * np.angle(z)) * component_norm(k, j, z) * damp
        acc += w * build_mcs(MCSLabel(k, j, z**k), n_max).coeffs
    return FockVector(acc)


def scs_wavefunction(
    z: complex, x_grid: np.ndarray | None = None, t: float = 0.0
) -> WaveSample:
    """Moving-Gaussian snapshot pi^(-1/4) exp(-(x-<x>)^2/2 + i <p> x).

    This is the bare textbook form: correct |psi|^2 at every t via the
    rotating label z e^(-it), with the branch and energy phases dropped.
    Use `mcs_wavefunction` whenever phases must survive superposition.
    """
    if x_grid is None:
        x_grid = default_x_grid()
    x_grid = np.asarray(x_grid, dtype=np.float64)
    zt = complex(z) * np.exp(-1j * t)
    mean_x = math.sqrt(2.0) * zt.real
    mean_p = math.sqrt(2.0) * zt.imag
    vals = _QUARTIC_ROOT_PI * np.exp(-0.5 * (x_grid - mean_x) ** 2 + 1j * mean_p * x_grid)
    return WaveSample(x_grid=x_grid, values=vals, t=t)


def mcs_wavefunction(
    k: int,
    j: int,
    z: complex,
    x_grid: np.ndarray | None = None,
    t: float = 0.0,
    method: str = "closed",
    n_max: int = DEFAULT_N_MAX,
) -> WaveSample:
    """psi(x, t) of the class state |z^k; k, j> as a k-Gaussian interference.

    closed: sum of k moving Gaussians, each with its branch phase
    exp(-i X_l P_l / 2) and the common energy phase exp(-it/2), aligned to
    the `build_mcs` global-phase convention. Exact for any k.

    fock: synthesize from the truncated coefficient vector instead. The two
    routes agree pointwise to machine precision when n_max covers the tail,
    which is the cross-check the verify suite runs.
    """
    if k < 1 or not 0 <= j < k:
        raise ValueError(f"bad order/class ({k}, {j})")
    if method not in ("closed", "fock"):
        raise ValueError(f"unknown method {method!r}")
    if x_grid is None:
        x_grid = default_x_grid()
    x_grid = np.asarray(x_grid, dtype=np.float64)
    z = complex(z)

    if method == "fock":
        state = time_evolve(build_mcs(MCSLabel(k, j, z**k), n_max), t)
        return WaveSample(x_grid=x_grid, values=fock_wavefunction(state, x_grid), t=t)

    nj = component_norm(k, j, z)
    if nj < 1e-300:
        raise DegenerateNorm(
            f"class ({k}, {j}) carries no weight at z={z}; wavefunction undefined"
        )
    prefactor = _QUARTIC_ROOT_PI * math.exp(0.5 * abs(z) ** 2) / (k * nj)
    overall = np.exp(-1j * j * np.angle(z)) * np.exp(-0.5j * t)
    mu = np.exp(2j * np.pi / k)
    acc = np.zeros_like(x_grid, dtype=np.complex128)
    for l in range(k):
        zl = mu**l * z * np.exp(-1j * t)
        mean_x = math.sqrt(2.0) * zl.real
        mean_p = math.sqrt(2.0) * zl.imag
        branch = np.exp(-0.5j * mean_x * mean_p)
        acc += (
            mu ** (-j * l)
            * branch
            * np.exp(-0.5 * (x_grid - mean_x) ** 2 + 1j * mean_p * x_grid)
        )
    return WaveSample(x_grid=x_grid, values=overall * prefactor * acc, t=t)


def density_movie(
    k: int,
    j: int,
    z: complex,
    x_grid: np.ndarray | None = None,
    t_grid: np.ndarray | None = None,
    method: str = "closed",
    n_max: int = DEFAULT_N_MAX,
) -> np.ndarray:
    """|psi(x, t)|^2 sampled on a time grid, one row per instant.

    t_grid defaults to one revival period 2*pi/k at 65 frames. Rows are
    independent, so they are computed on the shared thread pool (capped by
    MCSKIT_THREADS) while preserving time order.
    """
    if x_grid is None:
        x_grid = default_x_grid()
    x_grid = np.asarray(x_grid, dtype=np.float64)
    if t_grid is None:
        t_grid = np.linspace(0.0, 2.0 * np.pi / k, 65)
    if method == "fock":
        base = build_mcs(MCSLabel(k, j, complex(z) ** k), n_max)

        def row(t: float) -> np.ndarray:
            evolved = time_evolve(base, float(t))
            return np.abs(fock_wavefunction(evolved, x_grid)) ** 2

    else:

        def row(t: float) -> np.ndarray:
            return mcs_wavefunction(
                k, j, z, x_grid, t=float(t), method=method
            ).density()

    return np.array(pmap(row, list(np.asarray(t_grid, dtype=np.float64))))

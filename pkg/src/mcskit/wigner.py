"""Wigner quasiprobability fields on a rectangular phase-space grid.

Kernel convention:

    W(q, p) = (1/pi) integral psi*(q+y) psi(q-y) e^{2ipy} dy

so that integral(W dq dp) = 1, marginals are |psi(q)|^2 and |phi(p)|^2, and
2*pi*integral(W^2) = 1 for a pure state.

The numeric transform gets its speed from one trick: with a uniform q grid,
choosing the y step as an integer fraction of the q step puts every q +- y
on a single shared fine lattice. psi is synthesized once on that lattice,
the correlator becomes pure indexing, and the p integral is one complex
matmul. This is exactly the trapezoid-rule transform, only without
re-evaluating psi per column; agreement with the naive route is at machine
precision and the cost per 257x257 field is ~0.1 s at n_max = 256.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decomposition import component_norm, fock_wavefunction
from .errors import BoundaryMass, DegenerateNorm, WindowTooNarrow
from .fock import FockVector

DEFAULT_WINDOW_HALF = 10.0
DEFAULT_WINDOW_POINTS = 4096


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform rectangular grid; values are indexed [i_q, i_p]."""

    q_min: float = -8.0
    q_max: float = 8.0
    p_min: float = -8.0
    p_max: float = 8.0
    n_q: int = 257
    n_p: int = 257

    def __post_init__(self) -> None:
        if not (self.q_min < self.q_max and self.p_min < self.p_max):
            raise ValueError("grid bounds must be increasing")
        if self.n_q < 2 or self.n_p < 2:
            raise ValueError("grid needs at least 2 points per axis")

    @property
    def q_axis(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_q)

    @property
    def p_axis(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)


def default_phase_grid() -> PhaseGrid:
    return PhaseGrid()


@dataclass(frozen=True)
class WignerField:
    """Real field W on a PhaseGrid plus the discarded imaginary residue.

    imag_residue is the largest |Im| the transform produced before taking
    the real part; for a correct pure-state transform it is rounding noise,
    and it is kept visible instead of silently dropped.
    """

    grid: PhaseGrid
    values: np.ndarray
    imag_residue: float = 0.0

    def total(self) -> float:
        return _trapz2d(self.values, self.grid)

    def purity(self) -> float:
        """2*pi*integral(W^2); equals Tr(rho^2), so 1 for pure states."""
        return 2.0 * math.pi * _trapz2d(self.values**2, self.grid)


def _trapz2d(v: np.ndarray, grid: PhaseGrid) -> float:
    return float(np.trapezoid(np.trapezoid(v, grid.p_axis, axis=1), grid.q_axis))


def wigner_numeric(
    state: FockVector,
    grid: PhaseGrid | None = None,
    window_half: float = DEFAULT_WINDOW_HALF,
    window_points: int = DEFAULT_WINDOW_POINTS,
    window_tol: float = 1e-16,
) -> WignerField:
    """Transform a truncated state by direct quadrature on a shared lattice.

    window_half is the half-width of the y integration window and
    window_points the minimum sample count across it. The correlator
    envelope at the window edge is checked against window_tol;
    WindowTooNarrow means psi still has weight at q +- window_half and the
    field would be visibly truncated.
    """
    if grid is None:
        grid = default_phase_grid()
    q = grid.q_axis
    p = grid.p_axis
    h_q = (grid.q_max - grid.q_min) / (grid.n_q - 1)

    # y step = q step / m, so q_i +- y_l all live on one fine lattice
    m = max(1, math.ceil(h_q * window_points / (2.0 * window_half)))
    h = h_q / m
    n_half = math.ceil(window_half / h)
    n_fine = (grid.n_q - 1) * m + 2 * n_half + 1
    lattice = grid.q_min - n_half * h + np.arange(n_fine) * h
    psi = fock_wavefunction(state, lattice)

    idx = np.arange(grid.n_q)[:, None] * m + np.arange(2 * n_half + 1)[None, :]
    plus = psi[idx]            # psi(q_i + y_l), y ascending
    minus = psi[idx[:, ::-1]]  # psi(q_i - y_l)
    edge = max(
        float(np.max(np.abs(plus[:, -1] * minus[:, -1]))),
        float(np.max(np.abs(plus[:, 0] * minus[:, 0]))),
    )
    if edge > window_tol:
        raise WindowTooNarrow(
            f"integrand envelope {edge:.3e} at y=+-{window_half} exceeds "
            f"{window_tol:.1e}; widen window_half"
        )

    corr = np.conj(plus) * minus
    weights = np.full(2 * n_half + 1, h)
    weights[0] = weights[-1] = 0.5 * h
    y = (np.arange(2 * n_half + 1) - n_half) * h
    kernel = np.exp(2j * np.outer(y, p))
    field = (corr * weights) @ kernel / math.pi
    return WignerField(
        grid=grid,
        values=np.ascontiguousarray(field.real),
        imag_residue=float(np.max(np.abs(field.imag))),
    )


def wigner_closed(
    k: int, j: int, z: complex, grid: PhaseGrid | None = None
) -> WignerField:
    """Exact field of the class state |z^k; k, j> for any order.

    Writing the state over its ring of coherent constituents z_a = mu^a z,
    each (a, b) pair contributes a complex-center Gaussian

        mu^{j(a-b)} exp(-(q-Q_ab)^2 - (p-P_ab)^2 + D_ab),
        Q_ab = (conj(z_a)+z_b)/sqrt2,  P_ab = i(conj(z_a)-z_b)/sqrt2,
        D_ab = conj(z_a) z_b - |z|^2,

    scaled by e^{|z|^2} / (k^2 component_norm^2) / pi. Diagonal pairs are
    the branch Gaussians, off-diagonal pairs the interference fringes with
    their exact damping. k=1 collapses to the single displaced Gaussian.
    """
    if k < 1 or not 0 <= j < k:
        raise ValueError(f"bad order/class ({k}, {j})")
    if grid is None:
        grid = default_phase_grid()
    z = complex(z)
    nj = component_norm(k, j, z)
    if nj < 1e-300:
        raise DegenerateNorm(
            f"class ({k}, {j}) carries no weight at z={z}; field undefined"
        )
    qq = grid.q_axis[:, None]
    pp = grid.p_axis[None, :]
    mu = np.exp(2j * np.pi / k)
    ring = mu ** np.arange(k) * z
    acc = np.zeros((grid.n_q, grid.n_p), dtype=np.complex128)
    for a in range(k):
        za = np.conj(ring[a])
        for b in range(k):
            zb = ring[b]
            center_q = (za + zb) / math.sqrt(2.0)
            center_p = 1j * (za - zb) / math.sqrt(2.0)
            damp = za * zb - abs(z) ** 2
            acc += mu ** (j * (a - b)) * np.exp(
                -((qq - center_q) ** 2) - (pp - center_p) ** 2 + damp
            )
    scale = math.exp(abs(z) ** 2) / (k * nj) ** 2 / math.pi
    acc *= scale
    return WignerField(
        grid=grid,
        values=np.ascontiguousarray(acc.real),
        imag_residue=float(np.max(np.abs(acc.imag))),
    )


def wigner_scs(z: complex, grid: PhaseGrid | None = None) -> WignerField:
    """Displaced ground-state Gaussian (1/pi) e^{-(q-<q>)^2-(p-<p>)^2}."""
    return wigner_closed(1, 0, z, grid)


def wigner_cat2(j: int, z: complex, grid: PhaseGrid | None = None) -> WignerField:
    """Even (j=0) / odd (j=1) two-component cat on the ring {z, -z}."""
    return wigner_closed(2, j, z, grid)


def wigner_cat3(j: int, z: complex, grid: PhaseGrid | None = None) -> WignerField:
    """Three-component cat on the ring {z, mu z, mu^2 z}, mu = e^{2pi i/3}."""
    return wigner_closed(3, j, z, grid)


@dataclass(frozen=True)
class Marginals:
    """Wigner marginals next to independently synthesized densities."""

    q: np.ndarray
    p: np.ndarray
    q_marginal: np.ndarray
    p_marginal: np.ndarray
    q_density: np.ndarray | None = None
    p_density: np.ndarray | None = None


def marginals(
    field: WignerField,
    state: FockVector | None = None,
    boundary_tol: float = 1e-10,
) -> Marginals:
    """Integrate out each axis; optionally synthesize reference densities.

    The position reference is |psi(q)|^2 from the coefficients; the
    momentum reference applies the basis twist c_n -> (-i)^n c_n, under
    which the same synthesis yields |phi(p)|^2. Both are independent of the
    transform route.

    A field whose edges still carry more than boundary_tol cannot produce
    trustworthy marginals on this grid, hence BoundaryMass.
    """
    w = field.values
    edge = max(
        float(np.max(np.abs(w[0, :]))),
        float(np.max(np.abs(w[-1, :]))),
        float(np.max(np.abs(w[:, 0]))),
        float(np.max(np.abs(w[:, -1]))),
    )
    if edge > boundary_tol:
        raise BoundaryMass(
            f"field magnitude {edge:.3e} on the grid edge exceeds "
            f"{boundary_tol:.1e}; enlarge the grid"
        )
    q = field.grid.q_axis
    p = field.grid.p_axis
    q_marg = np.trapezoid(w, p, axis=1)
    p_marg = np.trapezoid(w, q, axis=0)
    q_dens = p_dens = None
    if state is not None:
        q_dens = np.abs(fock_wavefunction(state, q)) ** 2
        twist = FockVector(state.coeffs * (-1j) ** np.arange(state.n_max))
        p_dens = np.abs(fock_wavefunction(twist, p)) ** 2
    return Marginals(
        q=q, p=p, q_marginal=q_marg, p_marginal=p_marg,
        q_density=q_dens, p_density=p_dens,
    )


def negativity_volume(field: WignerField) -> float:
    """Integrated magnitude of the negative part; 0 for any Gaussian state."""
    return _trapz2d(np.clip(-field.values, 0.0, None), field.grid)


def purity(field: WignerField) -> float:
    return field.purity()

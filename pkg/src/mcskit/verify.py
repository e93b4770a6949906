"""Self-check suites behind `mcskit verify`.

Each suite re-derives a family of analytic statements numerically and
returns CheckResult rows; nothing here is fitted to the implementation, so
a regression in any module shows up as a FAIL with the measured number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import completeness as comp
from . import decomposition as dec
from . import states as st
from . import wigner as wg
from .errors import DegenerateNorm, EdgeSupport, WindowTooNarrow
from .fock import (
    FockVector,
    apply_raising,
    basis_state,
    ladder_spectrum,
    pha_commutator_check,
    time_evolve,
)

SUITE_NAMES = ("algebra", "states", "wigner", "completeness")

_SEED = 20240813


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    relation: str = "<="
    passed: bool = False


def _le(name: str, value: float, threshold: float) -> CheckResult:
    v = float(value)
    return CheckResult(name, v, threshold, "<=", v <= threshold)


def _ge(name: str, value: float, threshold: float) -> CheckResult:
    v = float(value)
    return CheckResult(name, v, threshold, ">=", v >= threshold)


def _random_probe(rng: np.random.Generator, n_max: int, clear_top: int) -> FockVector:
    c = rng.standard_normal(n_max) + 1j * rng.standard_normal(n_max)
    c[n_max - clear_top :] = 0.0
    return FockVector(c / np.linalg.norm(c))


def suite_algebra(n_max: int = 128) -> list[CheckResult]:
    rng = np.random.default_rng(_SEED)
    out: list[CheckResult] = []

    worst = 0.0
    for k in range(1, 6):
        for _ in range(10):
            probe = _random_probe(rng, n_max, clear_top=k + 1)
            res = pha_commutator_check(k, probe)
            worst = max(worst, res.lowering, res.raising, res.number_poly)
    out.append(_le("commutator residuals, orders 1..5, 50 probes", worst, 1e-12))

    gap = 0.0
    for k in (2, 3, 5):
        merged = ladder_spectrum(k, levels=60).merged(60)
        gap = max(gap, float(np.max(np.abs(merged - (np.arange(60) + 0.5)))))
    out.append(_le("ladder union reproduces n + 1/2 (first 60)", gap, 0.0))

    state = _random_probe(rng, n_max, clear_top=1)
    for _ in range(1000):
        state = time_evolve(state, 0.01)
    out.append(_le("unitary drift after 1000 steps", abs(state.norm() - 1.0), 1e-13))

    edge = basis_state(n_max - 1, n_max)
    lifted = apply_raising(edge, leak_tol=np.inf)
    out.append(
        _le(
            "leakage accounting at the truncation edge",
            abs(lifted.leakage - n_max) + lifted.norm(),
            0.0,
        )
    )

    try:
        pha_commutator_check(2, basis_state(n_max - 1, n_max))
        guard = 1.0
    except EdgeSupport:
        guard = 0.0
    out.append(_le("edge-support guard fires", guard, 0.0))
    return out


_LABEL_ALPHAS = (0.5, 2.0, 2.0 + 2.0j, 4.0j)


def _label_set() -> list[st.MCSLabel]:
    return [
        st.MCSLabel(k, j, a)
        for k in (1, 2, 3)
        for j in range(k)
        for a in _LABEL_ALPHAS
    ]


def suite_states(n_max: int = 256) -> list[CheckResult]:
    out: list[CheckResult] = []
    labels = _label_set()
    built = {lab: st.build_mcs(lab, n_max) for lab in labels}

    out.append(
        _le(
            "state norms after truncation",
            max(abs(v.norm() - 1.0) for v in built.values()),
            1e-12,
        )
    )
    out.append(
        _le(
            "ladder eigenvalue residuals",
            max(st.eigenvalue_residual(lab, vec) for lab, vec in built.items()),
            1e-10,
        )
    )

    gap = 0.0
    for lab, vec in built.items():
        closed = st.moments(lab, n_max)
        numeric = st.numeric_moments(vec)
        for name in st.MomentSet.__dataclass_fields__:
            gap = max(gap, abs(getattr(closed, name) - getattr(numeric, name)))
    out.append(_le("moment routes (series vs matrix elements)", gap, 1e-10))

    rel = 0.0
    for k in (2, 3):
        for j in range(k):
            for r in np.geomspace(1e-3, 4.0, 40):
                a_series = st.a_norm_series(k, j, r * r)
                a_closed = st.a_norm_closed(st.MCSLabel(k, j, r))
                rel = max(rel, abs(a_closed - a_series) / max(a_series, 1e-300))
    out.append(_le("closed vs series number expectation", rel, 1e-10))

    lim = 0.0
    for k in (1, 2, 3):
        for j in range(k):
            prod = st.moments(st.MCSLabel(k, j, 1e-6), n_max).uncertainty_product
            lim = max(lim, abs(prod - (j + 0.5)))
    out.append(_le("uncertainty limits j + 1/2 at alpha -> 0", lim, 1e-6))

    ident = 0.0
    for lab in labels:
        if lab.k == 3:
            mom = st.moments(lab, n_max)
            ident = max(ident, abs(mom.uncertainty_product - mom.mean_H))
    out.append(_le("order-3 product equals mean energy", ident, 1e-10))

    rev = 0.0
    for lab, vec in built.items():
        cycled = time_evolve(vec, 2.0 * math.pi / lab.k)
        expect = st.revival_phase(lab.k, lab.j) * vec.coeffs
        rev = max(rev, float(np.linalg.norm(cycled.coeffs - expect)))
    out.append(_le("revival phase after one period", rev, 1e-10))

    pgap = 0.0
    for lab in labels:
        a = st.a_norm_series(lab.k, lab.j, abs(lab.alpha) ** 2)
        beta = (2.0 * math.pi / lab.k) * (a - lab.j)
        energy = st.numeric_moments(built[lab]).mean_H
        alt = -(2 * lab.j + 1) * math.pi / lab.k + (2.0 * math.pi / lab.k) * energy
        pgap = max(pgap, abs(beta - alt))
    out.append(_le("geometric phase routes", pgap, 1e-12))

    cgap = 0.0
    for r in (0.5, 1.0, 2.0, 4.0):
        beta0 = st.geometric_phase(st.MCSLabel(2, 0, r), n_max)
        beta1 = st.geometric_phase(st.MCSLabel(2, 1, r), n_max)
        cgap = max(cgap, abs(beta0 - math.pi * r * math.tanh(r)))
        cgap = max(cgap, abs(beta1 - math.pi * (r / math.tanh(r) - 1.0)))
    out.append(_le("order-2 closed geometric phase", cgap, 1e-10))

    tgap = 0.0
    for k in range(1, 9):
        m, minv = dec.dft_matrix(k)
        tgap = max(tgap, float(np.max(np.abs(m @ minv - np.eye(k)))))
    out.append(_le("transform times inverse, orders 1..8", tgap, 1e-13))

    rgap = 0.0
    for k in (2, 3):
        for j in range(k):
            for z in (1.5, 1.0 + 1.0j):
                ring = dec.mcs_as_scs(k, j, z).fock_vector(n_max)
                direct = st.build_mcs(st.MCSLabel(k, j, complex(z) ** k), n_max)
                rgap = max(rgap, float(np.linalg.norm(ring.coeffs - direct.coeffs)))
    out.append(_le("ring decomposition matches direct build", rgap, 1e-12))

    agap = 0.0
    for k in (2, 3, 5):
        for z in (1.5, 0.8 - 1.1j):
            back = dec.coherent_from_classes(k, z, n_max)
            ref = dec.coherent_state(z, n_max)
            agap = max(agap, float(np.linalg.norm(back.coeffs - ref.coeffs)))
    out.append(_le("coherent state reassembled from classes", agap, 1e-12))

    wgap = 0.0
    x = dec.default_x_grid()
    for k in (2, 3):
        for j in range(k):
            for z in (1.0, 2.0, 1.0 + 1.0j):
                for t in (0.0, 0.7):
                    closed = dec.mcs_wavefunction(k, j, z, x, t=t)
                    synth = dec.mcs_wavefunction(
                        k, j, z, x, t=t, method="fock", n_max=n_max
                    )
                    wgap = max(
                        wgap, float(np.max(np.abs(closed.values - synth.values)))
                    )
    out.append(_le("closed vs synthesized wavefunctions", wgap, 1e-8))

    try:
        dec.mcs_as_scs(2, 1, 0.0)
        guard = 1.0
    except DegenerateNorm:
        guard = 0.0
    out.append(_le("degenerate-class guard fires", guard, 0.0))
    return out


_WIGNER_CASES = (
    (1, 0, 2.0),
    (2, 0, 2.0),
    (2, 1, 1.0 + 1.0j),
    (3, 1, 2.0),
    (3, 2, 1.0),
)


def suite_wigner(n_max: int = 256) -> list[CheckResult]:
    out: list[CheckResult] = []
    grid = wg.default_phase_grid()

    sup = 0.0
    mass = 0.0
    marg = 0.0
    pure = 0.0
    neg_cat = math.inf
    for k, j, z in _WIGNER_CASES:
        state = st.build_mcs(st.MCSLabel(k, j, complex(z) ** k), n_max)
        closed = wg.wigner_closed(k, j, z, grid)
        numeric = wg.wigner_numeric(state, grid)
        sup = max(sup, float(np.max(np.abs(closed.values - numeric.values))))
        mass = max(mass, abs(closed.total() - 1.0), abs(numeric.total() - 1.0))
        pure = max(pure, abs(closed.purity() - 1.0))
        m = wg.marginals(numeric, state)
        marg = max(
            marg,
            float(np.max(np.abs(m.q_marginal - m.q_density))),
            float(np.max(np.abs(m.p_marginal - m.p_density))),
        )
        if k > 1:
            neg_cat = min(neg_cat, wg.negativity_volume(closed))
    out.append(_le("closed vs numeric fields", sup, 1e-6))
    out.append(_le("field total mass", mass, 1e-6))
    out.append(_le("marginals vs synthesized densities", marg, 1e-6))
    out.append(_le("pure-state purity from the field", pure, 1e-3))
    out.append(
        _le(
            "coherent field nonnegativity",
            wg.negativity_volume(wg.wigner_scs(2.0, grid)),
            1e-10,
        )
    )
    out.append(_ge("cat negativity volume", neg_cat, 1e-3))

    # quarter turn maps grid nodes onto nodes: W_t(q, p) = W_0(-p, q)
    k, j, z = 2, 0, 1.5 + 0.5j
    base_state = st.build_mcs(st.MCSLabel(k, j, complex(z) ** 2), n_max)
    t = math.pi / 2.0
    rot = 0.0
    w0 = wg.wigner_closed(k, j, z, grid)
    wt = wg.wigner_closed(k, j, complex(z) * np.exp(-1j * t), grid)
    rot = max(rot, float(np.max(np.abs(wt.values - w0.values[::-1, :].T))))
    wt_num = wg.wigner_numeric(time_evolve(base_state, t), grid)
    rot = max(rot, float(np.max(np.abs(wt_num.values - w0.values[::-1, :].T))))
    out.append(_le("quarter-turn rotation covariance", rot, 1e-6))

    try:
        wg.wigner_numeric(basis_state(200, n_max=max(n_max, 256)), grid)
        guard = 1.0
    except WindowTooNarrow:
        guard = 0.0
    out.append(_le("window guard fires on a wide state", guard, 0.0))
    return out


def suite_completeness(n_max: int = 256) -> list[CheckResult]:
    del n_max  # radial quadrature, no truncation involved
    out: list[CheckResult] = []

    report = comp.moment_check(comp.registered_measure(1, 0), n_top=20)
    out.append(_le("order-1 density moments (n <= 20)", report.worst_error(), 1e-8))
    out.append(
        _le(
            "order-1 identity resolution",
            comp.identity_resolution_numeric(1, 0, radial_cutoff=12.0, dim_check=12),
            1e-6,
        )
    )

    fam = 0.0
    blocks = {}
    for j in (0, 1):
        cand = comp.root_exponential_density(2, j)
        fam = max(fam, comp.moment_check(cand, n_top=12).worst_error())
        comp.register_measure(cand)
        blocks[j] = comp.identity_block(
            2, j, radial_cutoff=60.0, n_radial=32, dim_check=8
        )
    out.append(_le("order-2 density moments (n <= 12)", fam, 1e-8))

    full = np.zeros((16, 16), dtype=np.complex128)
    for j, block in blocks.items():
        idx = 2 * np.arange(8) + j
        full[np.ix_(idx, idx)] = block
    out.append(
        _le(
            "order-2 class blocks tile the identity",
            float(np.max(np.abs(full - np.eye(16)))),
            1e-8,
        )
    )

    bad = comp.MeasureCandidate(
        k=1, j=0, density=lambda x: np.exp(-x), support_hint=200.0, name="exp(-x)"
    )
    bad_report = comp.moment_check(bad, n_top=6)
    out.append(
        _le(
            "plain exponential still matches the first moment",
            float(bad_report.rel_errors[0]),
            1e-10,
        )
    )
    out.append(
        _ge(
            "plain exponential rejected at the second moment",
            float(bad_report.rel_errors[1]),
            0.4,
        )
    )

    zero = comp.MeasureCandidate(
        k=1, j=0, density=lambda x: np.zeros_like(x), support_hint=10.0, name="zero"
    )
    out.append(
        _ge(
            "zero density rejected outright",
            comp.moment_check(zero, n_top=3).worst_error(),
            0.99,
        )
    )
    return out


_SUITES = {
    "algebra": suite_algebra,
    "states": suite_states,
    "wigner": suite_wigner,
    "completeness": suite_completeness,
}


def run_suite(name: str, n_max: int = 256) -> list[CheckResult]:
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; pick from {SUITE_NAMES} or 'all'")
    if name == "algebra":
        return suite_algebra(n_max=min(n_max, 128))
    return _SUITES[name](n_max=n_max)

"""Infinite-lattice spectrum: Bloch matrix, bands, PT-phase diagnosis, sweeps.

For a period-q superlattice the Bloch reduction at wave number
``k in [-pi/q, pi/q)`` is a q x q matrix: tridiagonal in the on-site energies
and hoppings, with corner entries ``-kappa_q exp(-+ i k q)`` closing the
period.  Its q eigenvalues trace out the energy bands E_n(k).

The phase criterion: the spectrum is entirely real (unbroken PT phase) if and
only if the eigenvalues of the two matrices at k = 0 and k = -pi/q are real.
An optional guard grid scans interior k as a numerical cross-check.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .lattice import ParametricLattice, SuperlatticeSpec
from .numerics import eig_complex

__all__ = [
    "BandStructure",
    "PhaseDiagnosis",
    "ThresholdResult",
    "SweepRow",
    "bloch_matrix",
    "band_structure",
    "band_gaps",
    "diagnose_pt_phase",
    "breaking_threshold",
    "max_growth_rate",
    "sweep",
]


def _wrap_k(k: float, q: int) -> float:
    """Reduce k to [-pi/q, pi/q); the matrix depends on k only via exp(ikq)."""
    half_width = math.pi / q
    return (k + half_width) % (2.0 * half_width) - half_width


def bloch_matrix(spec: SuperlatticeSpec, k: float) -> np.ndarray:
    """q x q Bloch-reduced matrix at wave number k (wrapped into range).

    The corner phases add onto existing entries, which yields the correct
    degenerate forms for q = 1 (scalar ``V_1 - 2 kappa_1 cos k``) and q = 2
    (corner merging into the off-diagonal).
    """
    q = spec.q
    k = _wrap_k(k, q)
    m = np.zeros((q, q), dtype=complex)
    m[np.arange(q), np.arange(q)] = spec.onsite
    for n in range(q - 1):
        m[n, n + 1] += -spec.hopping[n]
        m[n + 1, n] += -spec.hopping[n]
    m[0, q - 1] += -spec.hopping[q - 1] * np.exp(-1j * k * q)
    m[q - 1, 0] += -spec.hopping[q - 1] * np.exp(+1j * k * q)
    return m


def _k_grid(q: int, num_k: int) -> np.ndarray:
    return np.linspace(-math.pi / q, math.pi / q, num_k, endpoint=False)


@dataclass(frozen=True)
class BandStructure:
    """Sampled bands: per k, the q eigenvalues sorted by (Re, Im)."""

    k_values: np.ndarray
    energies: np.ndarray

    @property
    def q(self) -> int:
        return self.energies.shape[1]

    @property
    def max_abs_imag(self) -> float:
        return float(np.max(np.abs(self.energies.imag)))


def band_structure(spec: SuperlatticeSpec, num_k: int) -> BandStructure:
    """Bands on a uniform k grid over one Brillouin zone."""
    if num_k < 2:
        raise ValueError("need at least 2 k-points")
    ks = _k_grid(spec.q, num_k)
    energies = np.empty((num_k, spec.q), dtype=complex)
    for i, k in enumerate(ks):
        ev = eig_complex(bloch_matrix(spec, k))
        order = np.lexsort((ev.imag, ev.real))
        energies[i] = ev[order]
    return BandStructure(k_values=ks, energies=energies)


def band_gaps(bands: BandStructure, min_width: float = 1e-9) -> list[tuple[float, float]]:
    """Gaps between consecutive band ranges on the real-energy axis.

    Band n occupies [min_k Re E_n(k), max_k Re E_n(k)] under the per-k (Re,
    Im) sort; a gap is an interval wider than ``min_width`` separating two
    consecutive bands.  Meaningful for real (unbroken-phase) spectra.
    """
    real = bands.energies.real
    lo = real.min(axis=0)
    hi = real.max(axis=0)
    gaps = []
    for n in range(bands.q - 1):
        if lo[n + 1] - hi[n] > min_width:
            gaps.append((float(hi[n]), float(lo[n + 1])))
    return gaps


@dataclass(frozen=True)
class PhaseDiagnosis:
    """PT-phase verdict with the largest |Im E| found and where."""

    unbroken: bool
    max_abs_imag: float
    witness_k: float
    tol: float


def diagnose_pt_phase(
    spec: SuperlatticeSpec, tol: float = 1e-9, guard_points: int = 0
) -> PhaseDiagnosis:
    """Reality check of the spectrum via the two decisive wave numbers.

    Evaluates the eigenvalues at k = 0 and k = -pi/q, which decide the phase;
    ``guard_points > 0`` additionally scans a uniform interior grid so any
    deviation from the two-point criterion would be flagged.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    ks = [0.0, -math.pi / spec.q]
    if guard_points > 0:
        ks.extend(_k_grid(spec.q, guard_points))
    worst = 0.0
    witness = ks[0]
    for k in ks:
        imag_max = float(np.max(np.abs(eig_complex(bloch_matrix(spec, k)).imag)))
        if imag_max > worst:
            worst = imag_max
            witness = k
    return PhaseDiagnosis(unbroken=worst <= tol, max_abs_imag=worst, witness_k=witness, tol=tol)


@dataclass(frozen=True)
class ThresholdResult:
    """Symmetry-breaking threshold from coarse scan plus bisection."""

    lambda_c: float
    bracket: tuple[float, float]
    never_broken: bool
    transitions: int


def breaking_threshold(
    family: ParametricLattice,
    lambda_max: float,
    tol_lambda: float = 1e-4,
    coarse_samples: int = 64,
    reality_tol: float = 1e-9,
) -> ThresholdResult:
    """First real-to-complex transition of the family on [0, lambda_max].

    A coarse scan brackets the first unbroken -> broken flip, bisection
    narrows the bracket to ``tol_lambda``.  Multiple flips in the scan are
    reported as a warning and the first is refined.  If the family never
    breaks, ``lambda_c`` is pinned at ``lambda_max`` with the flag set.
    """
    if lambda_max <= 0:
        raise ValueError("lambda_max must be positive")

    def unbroken(lam: float) -> bool:
        return diagnose_pt_phase(family.at(lam), tol=reality_tol).unbroken

    if not unbroken(0.0):
        raise ValueError("family is already broken at lambda = 0")

    lams = np.linspace(0.0, lambda_max, coarse_samples)
    states = [True] + [unbroken(l) for l in lams[1:]]
    flips = [i for i in range(len(lams) - 1) if states[i] and not states[i + 1]]
    if not flips:
        return ThresholdResult(
            lambda_c=lambda_max, bracket=(lambda_max, lambda_max), never_broken=True, transitions=0
        )
    if len(flips) > 1:
        warnings.warn(
            f"{len(flips)} reality transitions found on [0, {lambda_max}]; refining the first",
            stacklevel=2,
        )
    lo, hi = float(lams[flips[0]]), float(lams[flips[0] + 1])
    while hi - lo > tol_lambda:
        mid = 0.5 * (lo + hi)
        if unbroken(mid):
            lo = mid
        else:
            hi = mid
    return ThresholdResult(
        lambda_c=0.5 * (lo + hi),
        bracket=(lo, hi),
        never_broken=False,
        transitions=len(flips),
    )


def max_growth_rate(spec: SuperlatticeSpec, num_k: int = 256, tol: float = 1e-9) -> float:
    """Largest Im E over the sampled bands; clipped to 0 in the unbroken phase."""
    if num_k < 2:
        raise ValueError("need at least 2 k-points")
    sigma = max(
        float(np.max(eig_complex(bloch_matrix(spec, k)).imag)) for k in _k_grid(spec.q, num_k)
    )
    return 0.0 if sigma <= tol else sigma


@dataclass(frozen=True)
class SweepRow:
    param: int
    lambda_c: float
    sigma: float


def sweep(
    make_family: Callable[[int], ParametricLattice],
    params: Sequence[int],
    lambda_max: float,
    sigma_lambda: float | Callable[[int], float],
    tol_lambda: float = 1e-4,
    num_k: int = 256,
    max_workers: int = 1,
) -> list[SweepRow]:
    """Threshold and growth rate per parameter value, in parameter order.

    ``sigma_lambda`` fixes the non-Hermitian strength at which the growth
    rate is evaluated (a constant or a per-parameter callable).  Rows for
    never-breaking families carry ``lambda_c = inf``.  Grid points are
    independent, so they may be evaluated by a small thread pool.
    """

    def one(param: int) -> SweepRow:
        family = make_family(param)
        threshold = breaking_threshold(family, lambda_max, tol_lambda=tol_lambda)
        lam_sigma = sigma_lambda(param) if callable(sigma_lambda) else float(sigma_lambda)
        sigma = max_growth_rate(family.at(lam_sigma), num_k=num_k)
        lambda_c = math.inf if threshold.never_broken else threshold.lambda_c
        return SweepRow(param=int(param), lambda_c=lambda_c, sigma=sigma)

    params = list(params)
    if not params:
        return []
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(one, params))
    return [one(p) for p in params]

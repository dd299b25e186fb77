"""Transfer-matrix machinery for the semi-infinite superlattice.

The 2x2 matrix ``M_n(E)`` maps the amplitude pair ``(psi_n, psi_{n-1})`` to
``(psi_{n+1}, psi_n)`` at energy E, and the one-period product

    S(E) = M_q(E) M_{q-1}(E) ... M_1(E)

is unimodular (its determinant telescopes to kappa_0/kappa_q = 1).  Powers of
S therefore admit the Chebyshev-style closed form in the angle theta with
``cos(theta) = tr S / 2``; E belongs to the continuous spectrum of the
infinite lattice exactly when theta is real, i.e. ``tr S`` real with
``|tr S| <= 2``.

All four entries of S are polynomials in E (degrees q, q-1, q-1, q-2), which
:func:`symbolic_period_matrix` builds exactly by polynomial products.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .lattice import SuperlatticeSpec
from .numerics import ComplexPolynomial, NumericsError

__all__ = [
    "TransferMatrix",
    "SymbolicTransfer",
    "site_matrix",
    "period_matrix",
    "transfer_power",
    "in_continuous_spectrum",
    "symbolic_period_matrix",
]

# sin(theta) below this means E sits close enough to a band edge that the
# closed-form power loses absolute accuracy (the sine ratio amplifies the
# eps-level resolution of theta by 1/sin(theta)); fall back to direct
# multiplication there, which is exact to rounding for small powers
_DEGENERATE_SIN = 1e-4


@dataclass(frozen=True)
class TransferMatrix:
    """One-period transfer matrix at a fixed energy, with det = 1."""

    s11: complex
    s12: complex
    s21: complex
    s22: complex
    energy: complex

    def __post_init__(self) -> None:
        scale = max(1.0, max(abs(self.s11), abs(self.s12), abs(self.s21), abs(self.s22))) ** 2
        if abs(self.det - 1.0) > 1e-10 * scale:
            raise NumericsError(
                f"transfer matrix at E={self.energy} is not unimodular: det={self.det}"
            )

    @property
    def det(self) -> complex:
        return self.s11 * self.s22 - self.s12 * self.s21

    @property
    def trace(self) -> complex:
        return self.s11 + self.s22

    @property
    def theta(self) -> complex:
        """Principal angle with cos(theta) = tr S / 2.

        Only even functions of theta are consumed downstream, so the branch
        choice is observationally irrelevant.
        """
        return cmath.acos(self.trace / 2.0)

    def as_array(self) -> np.ndarray:
        return np.array([[self.s11, self.s12], [self.s21, self.s22]], dtype=complex)


def site_matrix(spec: SuperlatticeSpec, n: int, energy: complex) -> np.ndarray:
    """Single-site step matrix [[(V_n - E)/kappa_n, -kappa_{n-1}/kappa_n], [1, 0]].

    Site indices are reduced modulo the period, so ``kappa_0`` resolves to
    ``kappa_q``.
    """
    v_n = spec.onsite_at(n)
    k_n = spec.hopping_at(n)
    k_prev = spec.hopping_at(n - 1)
    return np.array(
        [[(v_n - energy) / k_n, -k_prev / k_n], [1.0, 0.0]],
        dtype=complex,
    )


def period_matrix(spec: SuperlatticeSpec, energy: complex) -> TransferMatrix:
    """Ordered one-period product M_q ... M_1 at the given energy."""
    product = np.eye(2, dtype=complex)
    for n in range(1, spec.q + 1):
        product = site_matrix(spec, n, energy) @ product
    return TransferMatrix(
        s11=product[0, 0],
        s12=product[0, 1],
        s21=product[1, 0],
        s22=product[1, 1],
        energy=complex(energy),
    )


def _chebyshev_power(array: np.ndarray, power: int, theta: complex) -> np.ndarray:
    """sin(m*theta)/sin(theta) * S - sin((m-1)*theta)/sin(theta) * I."""
    sin_theta = cmath.sin(theta)
    u_m = cmath.sin(power * theta) / sin_theta
    u_prev = cmath.sin((power - 1) * theta) / sin_theta
    return u_m * array - u_prev * np.eye(2, dtype=complex)


def _direct_power(array: np.ndarray, power: int) -> np.ndarray:
    result = np.eye(2, dtype=complex)
    base = array.copy()
    m = power
    while m:
        if m & 1:
            result = base @ result
        base = base @ base
        m >>= 1
    return result


def transfer_power(matrix: TransferMatrix, power: int) -> np.ndarray:
    """M-th power of a unimodular transfer matrix as a 2x2 array.

    Uses the closed form in theta away from band edges; near a band edge
    (``|sin(theta)|`` below 1e-4) the closed form degenerates and repeated
    multiplication is used instead.
    """
    if power < 0:
        raise ValueError("power must be a nonnegative integer")
    array = matrix.as_array()
    if power == 0:
        return np.eye(2, dtype=complex)
    if power == 1:
        return array
    theta = matrix.theta
    if abs(cmath.sin(theta)) < _DEGENERATE_SIN:
        return _direct_power(array, power)
    return _chebyshev_power(array, power, theta)


def in_continuous_spectrum(spec: SuperlatticeSpec, energy: complex, tol: float = 1e-9) -> bool:
    """Whether E lies in the band spectrum of the infinitely extended lattice.

    Equivalent to the angle theta being real: tr S(E) real (within ``tol``)
    with |tr S| <= 2 + tol.
    """
    trace = period_matrix(spec, energy).trace
    return abs(trace.imag) <= tol and abs(trace.real) <= 2.0 + tol


@dataclass(frozen=True)
class SymbolicTransfer:
    """Entries of S(E) as explicit polynomials in the energy."""

    s11: ComplexPolynomial
    s12: ComplexPolynomial
    s21: ComplexPolynomial
    s22: ComplexPolynomial

    def degrees(self) -> tuple[int, int, int, int]:
        return (self.s11.degree, self.s12.degree, self.s21.degree, self.s22.degree)

    def evaluate(self, energy: complex) -> np.ndarray:
        return np.array(
            [[self.s11(energy), self.s12(energy)], [self.s21(energy), self.s22(energy)]],
            dtype=complex,
        )


def symbolic_period_matrix(spec: SuperlatticeSpec) -> SymbolicTransfer:
    """Exact polynomial product of the q site factors.

    The result is trimmed of float noise (threshold 1e-10 relative to the
    largest coefficient per entry) and checked against the structural degree
    pattern (q, q-1, q-1, q-2) and the unimodularity identity
    ``s11*s22 - s12*s21 = 1`` coefficient-wise.
    """
    one = ComplexPolynomial((1.0,))
    zero = ComplexPolynomial((0j,))
    product = [[one, zero], [zero, one]]
    for n in range(1, spec.q + 1):
        v_n = spec.onsite_at(n)
        k_n = spec.hopping_at(n)
        k_prev = spec.hopping_at(n - 1)
        factor = [
            [ComplexPolynomial((v_n / k_n, -1.0 / k_n)), ComplexPolynomial((-k_prev / k_n,))],
            [one, zero],
        ]
        product = [
            [
                factor[i][0] * product[0][j] + factor[i][1] * product[1][j]
                for j in range(2)
            ]
            for i in range(2)
        ]

    entries = [p.trimmed(1e-10) for row in product for p in row]
    sym = SymbolicTransfer(*entries)

    q = spec.q
    expected = (q, q - 1, q - 1, q - 2)
    for got, want in zip(sym.degrees(), expected):
        if want >= 0 and got != want:
            raise NumericsError(f"transfer polynomial degrees {sym.degrees()} != {expected}")
    det = sym.s11 * sym.s22 + ComplexPolynomial((-1.0,)) * (sym.s12 * sym.s21)
    residual = det + ComplexPolynomial((-1.0,))
    if max(abs(c) for c in residual.coefficients) > 1e-9:
        raise NumericsError("polynomial unimodularity identity violated")
    return sym

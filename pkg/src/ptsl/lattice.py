"""Superlattice definitions and PT-symmetry checks.

A superlattice is a one-dimensional tight-binding chain whose complex on-site
energies ``V_1..V_q`` and real hopping rates ``kappa_1..kappa_q`` repeat with
period ``q`` (``kappa_n`` couples sites ``n`` and ``n+1``).  Energies are
measured in units of a reference hopping rate, so the numbers here are O(1).

The PT check asks whether some parity center ``c`` (integer or half-integer,
i.e. a site or a bond midpoint) exists such that reflecting the chain about
``c`` and conjugating the potential reproduces the lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LatticeError",
    "SuperlatticeSpec",
    "ParametricLattice",
    "HarperParams",
    "PTSymmetryReport",
    "build_harper",
    "harper_family",
    "check_pt_symmetry",
    "spec_from_json",
    "spec_to_json",
]


class LatticeError(ValueError):
    """Invalid superlattice data."""


@dataclass(frozen=True)
class SuperlatticeSpec:
    """One period of a superlattice: complex on-site energies, real hoppings.

    ``onsite[j]`` is ``V_{j+1}`` and ``hopping[j]`` is ``kappa_{j+1}``; the
    chain extends periodically in both directions.
    """

    onsite: tuple[complex, ...]
    hopping: tuple[float, ...]

    def __post_init__(self) -> None:
        onsite = tuple(complex(v) for v in self.onsite)
        if len(onsite) < 1:
            raise LatticeError("period must be at least 1")
        if len(self.hopping) != len(onsite):
            raise LatticeError(
                f"need as many hoppings as on-site energies, got {len(self.hopping)} vs {len(onsite)}"
            )
        hopping = []
        for k in self.hopping:
            kc = complex(k)
            if kc.imag != 0:
                raise LatticeError("hopping rates must be real")
            if not math.isfinite(kc.real) or kc.real == 0.0:
                raise LatticeError("hopping rates must be finite and non-vanishing")
            hopping.append(kc.real)
        if not all(math.isfinite(v.real) and math.isfinite(v.imag) for v in onsite):
            raise LatticeError("on-site energies must be finite")
        object.__setattr__(self, "onsite", onsite)
        object.__setattr__(self, "hopping", tuple(hopping))

    @property
    def q(self) -> int:
        return len(self.onsite)

    def onsite_at(self, n: int) -> complex:
        """V_n for any integer site index (periodic extension)."""
        return self.onsite[(n - 1) % self.q]

    def hopping_at(self, n: int) -> float:
        """kappa_n for any integer bond index (periodic extension)."""
        return self.hopping[(n - 1) % self.q]

    def is_hermitian(self, tol: float = 0.0) -> bool:
        return all(abs(v.imag) <= tol for v in self.onsite)

    def conjugated(self) -> "SuperlatticeSpec":
        return SuperlatticeSpec(tuple(v.conjugate() for v in self.onsite), self.hopping)


@dataclass(frozen=True)
class ParametricLattice:
    """Family V_n = V_n^(R) + i*lam*V_n^(I) with tunable non-Hermitian strength."""

    onsite_real: tuple[float, ...]
    onsite_imag: tuple[float, ...]
    hopping: tuple[float, ...]

    def __post_init__(self) -> None:
        if not (len(self.onsite_real) == len(self.onsite_imag) == len(self.hopping)):
            raise LatticeError("onsite_real, onsite_imag and hopping must share one period")
        object.__setattr__(self, "onsite_real", tuple(float(v) for v in self.onsite_real))
        object.__setattr__(self, "onsite_imag", tuple(float(v) for v in self.onsite_imag))
        object.__setattr__(self, "hopping", tuple(float(k) for k in self.hopping))

    @property
    def q(self) -> int:
        return len(self.onsite_real)

    def at(self, lam: float) -> SuperlatticeSpec:
        """Instantiate the lattice at non-Hermiticity ``lam >= 0``."""
        if lam < 0:
            raise LatticeError("non-Hermitian strength must be nonnegative")
        onsite = tuple(
            complex(re, lam * im) for re, im in zip(self.onsite_real, self.onsite_imag)
        )
        return SuperlatticeSpec(onsite, self.hopping)


@dataclass(frozen=True)
class HarperParams:
    """Sinusoidal-potential lattice: V_n = delta*cos(2*pi*alpha*(n-n0)) + i*lam*sin(...).

    ``alpha = p/q`` must be a reduced fraction so the potential is periodic
    with period exactly ``q``; ``n0`` sets where the pattern is anchored.
    """

    delta: float
    lam: float
    p: int
    q: int
    n0: int = 0

    def __post_init__(self) -> None:
        if self.q < 1:
            raise LatticeError("period q must be a positive integer")
        if self.p < 1:
            raise LatticeError("numerator p must be a positive integer")
        if math.gcd(self.p, self.q) != 1:
            raise LatticeError(f"p/q must be irreducible, got {self.p}/{self.q}")
        if self.lam < 0:
            raise LatticeError("sine amplitude lam must be nonnegative")


def build_harper(params: HarperParams) -> SuperlatticeSpec:
    """Harper superlattice with unit hoppings, evaluated at sites 1..q."""
    return harper_family(params.delta, params.p, params.q, params.n0).at(params.lam)


def harper_family(delta: float, p: int, q: int, n0: int = 0) -> ParametricLattice:
    """The Harper lattice as a family over the non-Hermitian strength."""
    HarperParams(delta=delta, lam=0.0, p=p, q=q, n0=n0)  # validates p, q
    sites = np.arange(1, q + 1)
    phase = 2.0 * np.pi * (p / q) * (sites - n0)
    return ParametricLattice(
        onsite_real=tuple(delta * np.cos(phase)),
        onsite_imag=tuple(np.sin(phase)),
        hopping=(1.0,) * q,
    )


@dataclass(frozen=True)
class PTSymmetryReport:
    """Outcome of the parity-center scan."""

    symmetric: bool
    center: float | None = None

    @property
    def center_kind(self) -> str | None:
        if self.center is None:
            return None
        return "site" if float(self.center).is_integer() else "bond"


def check_pt_symmetry(spec: SuperlatticeSpec, tol: float = 1e-12) -> PTSymmetryReport:
    """Scan the 2q candidate parity centers c in {0, 1/2, ..., q - 1/2}.

    The lattice is PT symmetric about c iff the periodic extensions satisfy
    ``V_{2c-n} = V_n*`` and ``kappa_{2c-n-1} = kappa_n`` for all n; the
    smallest matching center is reported.  Comparisons use an absolute
    tolerance because the constructions feeding this check are exact to
    rounding.
    """
    q = spec.q
    for doubled_center in range(2 * q):
        ok = True
        for n in range(q):
            v_ok = abs(spec.onsite_at(doubled_center - n) - spec.onsite_at(n).conjugate()) <= tol
            k_ok = abs(spec.hopping_at(doubled_center - n - 1) - spec.hopping_at(n)) <= tol
            if not (v_ok and k_ok):
                ok = False
                break
        if ok:
            return PTSymmetryReport(symmetric=True, center=doubled_center / 2.0)
    return PTSymmetryReport(symmetric=False, center=None)


# ---------------------------------------------------------------------------
# JSON lattice schema
# ---------------------------------------------------------------------------


def spec_from_json(obj: dict) -> SuperlatticeSpec:
    """Parse the lattice JSON schema.

    Either an explicit lattice ``{"q": int, "onsite": [[re, im], ...],
    "hopping": [real, ...]}`` or the shorthand ``{"harper": {"delta": r,
    "lambda": r, "p": int, "q": int, "n0": int}}``.
    """
    if not isinstance(obj, dict):
        raise LatticeError("lattice JSON must be an object")
    if "harper" in obj:
        h = obj["harper"]
        try:
            params = HarperParams(
                delta=float(h["delta"]),
                lam=float(h.get("lambda", 0.0)),
                p=int(h["p"]),
                q=int(h["q"]),
                n0=int(h.get("n0", 0)),
            )
        except (KeyError, TypeError) as exc:
            raise LatticeError(f"invalid harper shorthand: {exc}") from exc
        return build_harper(params)
    try:
        q = int(obj["q"])
        onsite = tuple(complex(re, im) for re, im in obj["onsite"])
        hopping = tuple(float(k) for k in obj["hopping"])
    except (KeyError, TypeError, ValueError) as exc:
        raise LatticeError(f"invalid lattice JSON: {exc}") from exc
    if len(onsite) != q:
        raise LatticeError(f"q={q} but {len(onsite)} on-site energies given")
    return SuperlatticeSpec(onsite, hopping)


def spec_to_json(spec: SuperlatticeSpec) -> dict:
    return {
        "q": spec.q,
        "onsite": [[v.real, v.imag] for v in spec.onsite],
        "hopping": list(spec.hopping),
    }

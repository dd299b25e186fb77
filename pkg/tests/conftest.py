"""Shared test helpers: PT-symmetric lattice generators and acceptance reporting."""

from __future__ import annotations

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ptsl import SuperlatticeSpec

settings.register_profile(
    "ptsl",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ptsl")


def _mirrored_spec(q: int, doubled_center: int, v_values, k_values) -> SuperlatticeSpec:
    """Assemble a PT-symmetric spec from free values on the reflection orbits.

    Works on residues r = 0..q-1 with V_n = v[n mod q]; the reflection about
    the center c = doubled_center/2 pairs residue r with (2c - r) mod q for
    on-site energies and r with (2c - r - 1) mod q for hoppings.  ``v_values``
    and ``k_values`` are consumed one per orbit.
    """
    v_iter = iter(v_values)
    k_iter = iter(k_values)
    v: list[complex | None] = [None] * q
    for r in range(q):
        if v[r] is not None:
            continue
        partner = (doubled_center - r) % q
        value = complex(next(v_iter))
        if partner == r:
            v[r] = complex(value.real, 0.0)
        else:
            v[r] = value
            v[partner] = value.conjugate()
    k: list[float | None] = [None] * q
    for r in range(q):
        if k[r] is not None:
            continue
        partner = (doubled_center - r - 1) % q
        value = float(next(k_iter))
        k[r] = value
        if partner != r:
            k[partner] = value
    onsite = tuple(v[1:] + v[:1])
    hopping = tuple(k[1:] + k[:1])
    return SuperlatticeSpec(onsite, hopping)


def multiset_distance(a, b) -> float:
    """Worst pairing distance between two equal-size complex multisets."""
    from scipy.optimize import linear_sum_assignment

    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    assert a.shape == b.shape
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def random_pt_spec(
    rng: np.random.Generator, q: int, kappa_range: tuple[float, float] = (0.5, 1.5)
) -> SuperlatticeSpec:
    """Seeded random PT-symmetric spec with O(1) energies and hoppings."""
    doubled_center = int(rng.integers(0, 2 * q))
    v_values = (rng.normal(size=q) * 0.6 + 1j * rng.normal(size=q) * 0.6).tolist()
    k_values = (rng.uniform(*kappa_range, size=q) * rng.choice([-1.0, 1.0], size=q)).tolist()
    return _mirrored_spec(q, doubled_center, v_values, k_values)


@st.composite
def pt_specs(draw, min_q: int = 1, max_q: int = 10) -> SuperlatticeSpec:
    """Hypothesis strategy over PT-symmetric superlattice specs."""
    q = draw(st.integers(min_q, max_q))
    doubled_center = draw(st.integers(0, 2 * q - 1))
    bounded = st.floats(-1.0, 1.0, allow_nan=False)
    v_values = [complex(draw(bounded), draw(bounded)) for _ in range(q)]
    k_values = [
        draw(st.floats(0.5, 1.5)) * draw(st.sampled_from([-1.0, 1.0])) for _ in range(q)
    ]
    return _mirrored_spec(q, doubled_center, v_values, k_values)


@st.composite
def harper_parameter_tuples(draw):
    """(delta, lam, p, q, n0) with p/q reduced."""
    import math

    q = draw(st.integers(1, 12))
    p = draw(st.integers(1, 24).filter(lambda p: math.gcd(p, q) == 1))
    delta = draw(st.floats(-1.0, 1.0, allow_nan=False))
    lam = draw(st.floats(0.0, 1.0, allow_nan=False))
    n0 = draw(st.integers(-6, 6))
    return delta, lam, p, q, n0


# ---------------------------------------------------------------------------
# acceptance reporting: one line per criterion in the terminal summary
# ---------------------------------------------------------------------------

_ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


def record_criterion(tag: str, passed: bool, detail: str) -> None:
    _ACCEPTANCE_LINES.append((tag, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for tag, passed, detail in _ACCEPTANCE_LINES:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {tag}: {detail}")

"""Closed-form parity-error probabilities for every noise model.

Each formula gives the probability that re-measuring parity after the n-cycle
protocol contradicts the heralded branch, for an arbitrary pure input
c00|00> + c01|01> + c10|10> + c11|11>.  All of them are linear in the
|c_ij|^2 populations, so a report carries the four basis-state coefficients
together with the worst-case (max coefficient) and Haar-average (mean
coefficient, since E|c_ij|^2 = 1/4) values.

These expressions are validated elsewhere against the exact channel; the
module itself never touches operators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kraus import NoiseModel
from .quantum import haar_random_states

BASIS_LABELS = ("00", "01", "10", "11")


@dataclass(frozen=True)
class ErrorProbabilityReport:
    """Error probability of an n-cycle run, resolved per basis-state population.

    ``coefficients`` are the weights of |c00|^2, |c01|^2, |c10|^2, |c11|^2 in
    that order; ``value_for_state`` is the weighted sum for the supplied input
    state (None when no state was given).
    """

    n: int
    coefficients: tuple
    value_for_state: float | None
    max_over_states: float
    haar_average: float

    @property
    def argmax_state(self) -> str:
        return BASIS_LABELS[int(np.argmax(self.coefficients))]


def _report(n: int, coeffs, state) -> ErrorProbabilityReport:
    coeffs = np.asarray(coeffs, dtype=float)
    if np.any(coeffs < -1e-12) or np.any(coeffs > 1.0 + 1e-12):
        raise ValueError(f"error-probability coefficients left [0, 1]: {coeffs}")
    coeffs = np.clip(coeffs, 0.0, 1.0)
    value = None
    if state is not None:
        state = np.asarray(state, dtype=complex)
        if state.shape != (4,):
            raise ValueError("state must be a 4-component ket")
        value = float(coeffs @ (np.abs(state) ** 2))
    return ErrorProbabilityReport(
        n=n,
        coefficients=tuple(coeffs),
        value_for_state=value,
        max_over_states=float(coeffs.max()),
        haar_average=float(coeffs.mean()),
    )


def _check_n(n: int):
    if n < 1:
        raise ValueError(f"cycle count must be >= 1, got {n}")


def errp_perfect(n: int, phi: float, state=None) -> ErrorProbabilityReport:
    """Balanced gates, no noise: cos^{2n}(phi/2) on the even populations.

    Only the odd herald can be wrong (the even herald projects exactly), and
    its even-block leakage shrinks exponentially with the cycle count.
    """
    _check_n(n)
    c_even = np.cos(0.5 * phi) ** (2 * n)
    return _report(n, (c_even, 0.0, 0.0, c_even), state)


def errp_imbalanced(n: int, phi: float, delta1: float, delta2: float, state=None) -> ErrorProbabilityReport:
    """Gate angles phi + delta1 and phi + delta2 with the basis fixed at phi.

    The even heralds now leak onto the odd populations, growing with n as
    1 - cos^{2n}(delta/2), while the odd-herald error keeps shrinking; the
    competition produces a finite optimal cycle count.
    """
    _check_n(n)
    coeffs = (
        np.cos(0.5 * phi) ** (2 * n),
        1.0 - np.cos(0.5 * delta2) ** (2 * n),
        1.0 - np.cos(0.5 * delta1) ** (2 * n),
        np.cos(0.5 * (phi + delta1 + delta2)) ** (2 * n),
    )
    return _report(n, coeffs, state)


def errp_gaussian(n: int, phi: float, width: float, state=None) -> ErrorProbabilityReport:
    """Per-cycle Gaussian angle fluctuations of spread ``width`` on both gates."""
    _check_n(n)
    if width < 0.0:
        raise ValueError("width must be >= 0")
    w2 = width * width
    c11 = (0.5 * (1.0 + np.cos(phi) * np.exp(-w2))) ** n
    c_odd = 1.0 - (0.5 * (1.0 + np.exp(-0.5 * w2))) ** n
    coeffs = (np.cos(0.5 * phi) ** (2 * n), c_odd, c_odd, c11)
    return _report(n, coeffs, state)


def errp_pauli_z(n: int, phi: float, p_z: float, state=None) -> ErrorProbabilityReport:
    """Dephasing on the matter qubit before the gates, probability p_z per cycle.

    A Z error flips |+> to |->, which swaps the outcome operators, so odd
    inputs are misheralded with probability 1 - (1 - p_z)^n.
    """
    _check_n(n)
    c_even = (0.5 + (0.5 - p_z) * np.cos(phi)) ** n
    c_odd = 1.0 - (1.0 - p_z) ** n
    return _report(n, (c_even, c_odd, c_odd, c_even), state)


def errp_pauli_x(n: int, phi: float, p_x: float, state=None) -> ErrorProbabilityReport:
    """Pauli-X on the matter qubit between the gates, probability p_x per cycle.

    The error flips the first gate's sign, which only matters when photon 1 is
    |1>; the |01> population is untouched, so the noise term sits on |c10|^2
    alone.
    """
    _check_n(n)
    c_even = np.cos(0.5 * phi) ** (2 * n)
    c10 = 1.0 - (1.0 - p_x * np.sin(phi) ** 2) ** n
    return _report(n, (c_even, 0.0, c10, c_even), state)


def errp_pauli_y(n: int, phi: float, p_y: float, state=None) -> ErrorProbabilityReport:
    """Pauli-Y between the gates: a sign flip on gate 1 plus a matter-qubit flip.

    The max always sits on the |01> branch, since 1 - (1-p)^n dominates
    1 - (1 - p cos^2 phi)^n and the even coefficient stays below it wherever
    they compete.
    """
    _check_n(n)
    c_even = (0.5 + (0.5 - p_y) * np.cos(phi)) ** n
    c01 = 1.0 - (1.0 - p_y) ** n
    c10 = 1.0 - (1.0 - p_y * np.cos(phi) ** 2) ** n
    return _report(n, (c_even, c01, c10, c_even), state)


def error_probability_report(n: int, phi: float, noise: NoiseModel, state=None) -> ErrorProbabilityReport:
    """Dispatch to the closed form matching the noise model."""
    if noise.kind == "none":
        return errp_perfect(n, phi, state)
    if noise.kind == "imbalanced":
        return errp_imbalanced(n, phi, noise.delta1, noise.delta2, state)
    if noise.kind == "gaussian":
        return errp_gaussian(n, phi, noise.width, state)
    if noise.kind == "pauli_z_before":
        return errp_pauli_z(n, phi, noise.prob, state)
    if noise.kind == "pauli_x_between":
        return errp_pauli_x(n, phi, noise.prob, state)
    if noise.kind == "pauli_y_between":
        return errp_pauli_y(n, phi, noise.prob, state)
    if noise.kind == "depolarizing_before":
        return errp_pauli_z(n, phi, 2.0 * noise.prob / 3.0, state)
    raise ValueError(f"no closed form for noise kind {noise.kind!r}")


def haar_average_sampled(n: int, phi: float, noise: NoiseModel, n_states: int, seed) -> tuple[float, float]:
    """Haar-average error probability by sampling states instead of using E|c|^2 = 1/4.

    Returns (mean, sample standard deviation); the dashed-curve companion to
    the analytic average.
    """
    if n_states < 2:
        raise ValueError("n_states must be >= 2")
    coeffs = np.asarray(error_probability_report(n, phi, noise).coefficients)
    states = haar_random_states(n_states, 4, seed)
    values = (np.abs(states) ** 2) @ coeffs
    return float(values.mean()), float(values.std(ddof=1))


def turning_point(max_series) -> int | None:
    """Index (1-based cycle count) where the max error probability stops improving.

    Returns None when the series is non-increasing throughout, i.e. no turning
    point within the supplied range.
    """
    values = np.asarray(max_series, dtype=float)
    for idx in range(len(values) - 1):
        if values[idx + 1] > values[idx] * (1.0 + 1e-12):
            return idx + 1
    return None

"""Exact-channel and Monte Carlo engines for the parity-projection protocol.

This module is the independent implementation path: every round operator is
obtained by contracting the matter qubit out of the joint circuit, and n-round
outputs are composed round by round with no closed-form shortcuts.  It serves
as the brute-force oracle for the analytic formulas in :mod:`analytics` and
for the binomial-expansion channel in :mod:`kraus`, and it hosts the
trajectory sampler and the averaged-fidelity estimators.

Monte Carlo work is vectorized over states or shots; randomness comes from
numpy Generators seeded through SeedSequence, so a given (config, seed) pair
is bit-reproducible regardless of how the work is scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kraus import (
    CORRECTION_MODES,
    ChannelClasses,
    NoiseModel,
    aligned_correction_diag,
    paper_correction_diag,
)
from .quantum import (
    EVEN_MASK,
    ODD_MASK,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    haar_random_states,
    measurement_kets,
    outer,
)

# joint photon index j = 2*q1 + q2
_Q1_BITS = np.array([0.0, 0.0, 1.0, 1.0])
_Q2_BITS = np.array([0.0, 1.0, 0.0, 1.0])

_TRAJECTORY_CHUNK = 1 << 16


@dataclass(frozen=True)
class ProtocolConfig:
    """All protocol knobs: cycle count, angles, noise model and correction mode.

    ``phi`` is the nominal controlled-phase angle; the imbalanced noise model
    shifts the two gates to phi + delta1 and phi + delta2.  The measurement
    basis defaults to the midpoint of the two gate angles and can be pinned
    explicitly for basis sweeps.  ``correction`` selects the post-measurement
    virtual-Z fix-up: "paper" applies Rz(-m*phi + pi) after even heralds,
    "aligned" additionally phase-aligns the odd block (possible only when the
    gate angles are known, so it is rejected for Gaussian and Pauli noise).
    """

    n: int
    phi: float
    noise: NoiseModel = NoiseModel.none()
    phi_meas: float | None = None
    correction: str = "paper"
    seed: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"cycle count must be >= 1, got {self.n}")
        if not np.isfinite(self.phi):
            raise ValueError("phi must be finite")
        if self.phi_meas is not None and not np.isfinite(self.phi_meas):
            raise ValueError("phi_meas must be finite")
        if self.correction not in CORRECTION_MODES:
            raise ValueError(f"unknown correction mode {self.correction!r}")
        if self.correction == "aligned" and self.noise.kind not in ("none", "imbalanced"):
            raise ValueError("aligned correction requires known gate angles")

    @property
    def phi1(self) -> float:
        return self.phi + self.noise.delta1 if self.noise.kind == "imbalanced" else self.phi

    @property
    def phi2(self) -> float:
        return self.phi + self.noise.delta2 if self.noise.kind == "imbalanced" else self.phi

    @property
    def measurement_angle(self) -> float:
        if self.phi_meas is not None:
            return self.phi_meas
        return 0.5 * (self.phi1 + self.phi2)


@dataclass(frozen=True)
class FidelityEstimate:
    """Monte Carlo channel-fidelity estimate with its sampling spread."""

    mean: float
    std_dev: float
    n_states: int
    n_noise_samples: int
    seed: int | None

    @property
    def std_error(self) -> float:
        count = self.n_noise_samples if self.n_noise_samples > 1 else self.n_states
        return self.std_dev / np.sqrt(count)

    @property
    def infidelity(self) -> float:
        return 1.0 - self.mean


def _require_seed(seed, config: ProtocolConfig | None = None) -> int:
    if seed is None and config is not None:
        seed = config.seed
    if seed is None:
        raise ValueError("a seed is mandatory for stochastic runs")
    return seed


def _state_batch(n_states: int, seed) -> np.ndarray:
    # All fidelity estimators draw their Haar batch from the first spawn of
    # the seed so that, e.g., the zero-width Gaussian estimator reproduces the
    # noiseless estimator exactly.
    state_ss, _ = np.random.SeedSequence(seed).spawn(2)
    return haar_random_states(n_states, 4, np.random.default_rng(state_ss))


# ---------------------------------------------------------------------------
# round operators by contraction (independent of the closed forms in kraus.py)
# ---------------------------------------------------------------------------

def _gate_factor(phi):
    """Matter-qubit phase factor f[..., q, m] = exp(i*phi*q*m) of one CP gate."""
    phi = np.asarray(phi, dtype=float)
    f = np.ones(phi.shape + (2, 2), dtype=complex)
    f[..., 1, 1] = np.exp(1j * phi)
    return f


def _round_diags(phi1, phi2, phi_meas):
    """Diagonals (d_plus, d_minus) of one round's Kraus pair, broadcast over angles.

    d_s[j] = sum_m conj(<s_phi|m>) e^{i(phi1*q1 + phi2*q2) m} / sqrt(2) for the
    joint photon index j = 2*q1 + q2.
    """
    phi1 = np.asarray(phi1, dtype=float)
    phi2 = np.asarray(phi2, dtype=float)
    acc = np.multiply.outer(phi1, _Q1_BITS) + np.multiply.outer(phi2, _Q2_BITS)
    m1 = np.exp(1j * acc)
    plus, minus = measurement_kets(phi_meas)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    d_plus = (np.conj(plus[0]) + np.conj(plus[1]) * m1) * inv_sqrt2
    d_minus = (np.conj(minus[0]) + np.conj(minus[1]) * m1) * inv_sqrt2
    return d_plus, d_minus


def _round_ops(phi1, phi2, phi_meas, before=None, between=None):
    """Dense (E_+1, E_-1) for one round, with optional matter-qubit error insertions."""
    f1 = _gate_factor(phi1)
    f2 = _gate_factor(phi2)
    a_op = np.eye(2, dtype=complex) if before is None else before
    b_op = np.eye(2, dtype=complex) if between is None else between
    v = a_op @ (np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0))
    plus, minus = measurement_kets(phi_meas)
    ops = []
    for ket in (plus, minus):
        # Every gate is diagonal in the photon indices, so only the diagonal
        # entries E_s[(q1, q2), (q1, q2)] are nonzero:
        # sum_{m, m'} conj(k_s[m]) f2[q2, m] B[m, m'] f1[q1, m'] v[m'].
        diag = np.einsum("m,bm,mn,an,n->ab", ket.conj(), f2, b_op, f1, v)
        ops.append(np.diag(diag.reshape(4)))
    return ops[0], ops[1]


_PAULI_INSERTIONS = {
    "pauli_z_before": dict(before=PAULI_Z),
    "pauli_x_between": dict(between=PAULI_X),
    "pauli_y_between": dict(between=PAULI_Y),
}


def _pauli_round(config: ProtocolConfig):
    """Clean and faulty round operators plus the effective error probability."""
    kind, p = config.noise.kind, config.noise.prob
    if kind == "depolarizing_before":
        kind, p = "pauli_z_before", 2.0 * p / 3.0
    phi_m = config.measurement_angle
    e_plus, e_minus = _round_ops(config.phi, config.phi, phi_m)
    err_plus, err_minus = _round_ops(config.phi, config.phi, phi_m, **_PAULI_INSERTIONS[kind])
    return e_plus, e_minus, err_plus, err_minus, p


def _correction_diag(op_or_diag, mode: str, cycle: int, phi_meas: float, heralds_even: bool):
    """Phase diagonal of the configured fix-up, or None when nothing applies."""
    if mode == "none" or (mode == "paper" and not heralds_even):
        return None
    if mode == "paper":
        return paper_correction_diag(cycle, phi_meas)
    d = np.asarray(op_or_diag)
    return aligned_correction_diag(np.diag(d) if d.ndim == 1 else d)


# ---------------------------------------------------------------------------
# exact channel output (sequential composition, the oracle path)
# ---------------------------------------------------------------------------

def exact_class_states(config: ProtocolConfig, rho0: np.ndarray) -> ChannelClasses:
    """Un-normalized outcome-class states by sequential round-by-round composition."""
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.ndim == 1:
        rho0 = outer(rho0)
    noise = config.noise
    if noise.kind == "gaussian":
        raise ValueError("gaussian noise is stochastic; use the sampling estimators")
    n = config.n
    phi_m = config.measurement_angle
    labels = tuple(f"even@{k}" for k in range(1, n + 1)) + (f"odd@{n}",)
    states = []
    if noise.is_pauli:
        e_plus, e_minus, err_plus, err_minus, p = _pauli_round(config)
        sigma = rho0
        for k in range(1, n + 1):
            emitted = (1.0 - p) * (e_minus @ sigma @ e_minus.conj().T)
            emitted += p * (err_minus @ sigma @ err_minus.conj().T)
            u = _correction_diag(None, config.correction, k, phi_m, heralds_even=True)
            if u is not None:
                emitted = (u[:, None] * emitted) * u.conj()[None, :]
            states.append(emitted)
            sigma = (1.0 - p) * (e_plus @ sigma @ e_plus.conj().T) + p * (
                err_plus @ sigma @ err_plus.conj().T
            )
        states.append(sigma)
        return ChannelClasses(labels, tuple(states))

    e_plus, e_minus = _round_ops(config.phi1, config.phi2, phi_m)
    prod = np.eye(4, dtype=complex)
    for k in range(1, n + 1):
        op = e_minus @ prod
        u = _correction_diag(op, config.correction, k, phi_m, heralds_even=True)
        if u is not None:
            op = u[:, None] * op
        states.append(op @ rho0 @ op.conj().T)
        prod = e_plus @ prod
    u = _correction_diag(prod, config.correction, n, phi_m, heralds_even=False)
    if u is not None:
        prod = u[:, None] * prod
    states.append(prod @ rho0 @ prod.conj().T)
    return ChannelClasses(labels, tuple(states))


def exact_output(config: ProtocolConfig, rho0: np.ndarray):
    """Exact protocol output state and the outcome-class probabilities.

    Deterministic noise only.  The returned density matrix sums the corrected
    un-normalized class states, so its trace is 1 to within 1e-10; the
    probability dict maps each outcome-history label to its chance.
    """
    classes = exact_class_states(config, rho0)
    probs = dict(zip(classes.labels, classes.probabilities))
    return classes.output_state(), probs


def exact_error_probability(config: ProtocolConfig, psi: np.ndarray) -> float:
    """Brute-force parity-error probability tr(P_even rho_odd) + sum_k tr(P_odd rho_even_k)."""
    return exact_class_states(config, psi).error_probability()


# ---------------------------------------------------------------------------
# batched channel fidelity
# ---------------------------------------------------------------------------

def _rank2_from_overlaps(a_even, b_odd, cross):
    """Vector of rank-2 fidelities from the even/odd overlap sums."""
    disc = a_even * b_odd - np.abs(cross) ** 2
    return a_even + b_odd + 2.0 * np.sqrt(np.clip(disc, 0.0, None))


def _fidelities_pure(states: np.ndarray, class_diags: np.ndarray) -> np.ndarray:
    """Channel fidelity per state for a channel whose class operators are diagonal.

    ``class_diags`` has one row per outcome class.  For input |psi> the class
    component is c (*) psi, so the ideal-basis overlaps reduce to sums of
    |psi_j|^2 weighted by the class coefficients.
    """
    weights = np.abs(states) ** 2
    a = (weights * EVEN_MASK) @ class_diags.T
    b = (weights * ODD_MASK) @ class_diags.T
    a_even = np.sum(np.abs(a) ** 2, axis=1)
    b_odd = np.sum(np.abs(b) ** 2, axis=1)
    cross = np.sum(a * np.conj(b), axis=1)
    return _rank2_from_overlaps(a_even, b_odd, cross)


def _fidelities_from_rho(states: np.ndarray, rho_out: np.ndarray) -> np.ndarray:
    """Channel fidelity per state given the (possibly mixed) output batch."""
    tilde_e = states * EVEN_MASK
    tilde_o = states * ODD_MASK
    a_even = np.einsum("ni,nij,nj->n", tilde_e.conj(), rho_out, tilde_e).real
    b_odd = np.einsum("ni,nij,nj->n", tilde_o.conj(), rho_out, tilde_o).real
    cross = np.einsum("ni,nij,nj->n", tilde_e.conj(), rho_out, tilde_o)
    return _rank2_from_overlaps(a_even, b_odd, cross)


def _class_diags_from_rounds(d_plus_rounds, d_minus_rounds, correction, phi_meas):
    """Per-class diagonal coefficients for a channel with pure per-round branches.

    ``d_plus_rounds`` and ``d_minus_rounds`` are (n, 4) arrays; round k's
    even-herald coefficient is d_minus[k] times the product of all earlier
    d_plus rows, with the configured correction folded in.
    """
    n = d_plus_rounds.shape[0]
    diags = np.empty((n + 1, 4), dtype=complex)
    prod = np.ones(4, dtype=complex)
    for k in range(1, n + 1):
        c = d_minus_rounds[k - 1] * prod
        u = _correction_diag(c, correction, k, phi_meas, heralds_even=True)
        if u is not None:
            c = u * c
        diags[k - 1] = c
        prod = prod * d_plus_rounds[k - 1]
    u = _correction_diag(prod, correction, n, phi_meas, heralds_even=False)
    if u is not None:
        prod = u * prod
    diags[n] = prod
    return diags


def _pure_class_diags(config: ProtocolConfig) -> np.ndarray:
    d_plus, d_minus = _round_diags(config.phi1, config.phi2, config.measurement_angle)
    d_plus_rounds = np.tile(d_plus, (config.n, 1))
    d_minus_rounds = np.tile(d_minus, (config.n, 1))
    return _class_diags_from_rounds(
        d_plus_rounds, d_minus_rounds, config.correction, config.measurement_angle
    )


def _pauli_rho_out(states: np.ndarray, config: ProtocolConfig) -> np.ndarray:
    """Output density-matrix batch for per-cycle Pauli noise (mixed branches).

    All round operators are diagonal, so one round of the channel acts as a
    Hadamard product with the mask sum_i w_i d_i d_i^dag.
    """
    e_plus, e_minus, err_plus, err_minus, p = _pauli_round(config)
    dp, dm = np.diagonal(e_plus).copy(), np.diagonal(e_minus).copy()
    dpe, dme = np.diagonal(err_plus).copy(), np.diagonal(err_minus).copy()
    k_plus = (1.0 - p) * np.outer(dp, dp.conj()) + p * np.outer(dpe, dpe.conj())
    k_minus = (1.0 - p) * np.outer(dm, dm.conj()) + p * np.outer(dme, dme.conj())
    phi_m = config.measurement_angle
    rho = states[:, :, None] * states.conj()[:, None, :]
    rho_out = np.zeros_like(rho)
    for k in range(1, config.n + 1):
        emitted = rho * k_minus
        u = _correction_diag(None, config.correction, k, phi_m, heralds_even=True)
        if u is not None:
            emitted = emitted * np.outer(u, u.conj())
        rho_out += emitted
        rho = rho * k_plus
    rho_out += rho
    return rho_out


def avg_channel_fidelity(config: ProtocolConfig, n_states: int, seed=None) -> FidelityEstimate:
    """Haar-averaged channel fidelity against the perfect parity projection.

    Draws ``n_states`` Haar-random two-qubit states, pushes each through the
    exact protocol channel and evaluates the rank-2 fidelity against the ideal
    parity-projected output.  Reported spread is the sample standard deviation
    over states.  Deterministic for a given seed.
    """
    if n_states < 2:
        raise ValueError("n_states must be >= 2")
    seed = _require_seed(seed, config)
    if config.noise.kind == "gaussian":
        raise ValueError("use gaussian_avg_fidelity for Gaussian angle noise")
    states = _state_batch(n_states, seed)
    if config.noise.is_pauli:
        fids = _fidelities_from_rho(states, _pauli_rho_out(states, config))
    else:
        fids = _fidelities_pure(states, _pure_class_diags(config))
    return FidelityEstimate(
        mean=float(fids.mean()),
        std_dev=float(fids.std(ddof=1)),
        n_states=n_states,
        n_noise_samples=1,
        seed=seed,
    )


def gaussian_avg_fidelity(
    config: ProtocolConfig,
    n_states: int,
    n_noise_samples: int,
    seed=None,
) -> FidelityEstimate:
    """Average channel fidelity under Gaussian angle fluctuations.

    For each noise sample, every gate angle in the protocol (two per cycle) is
    drawn fresh from a Gaussian of width ``config.noise.width`` around the
    nominal angle; the channel fidelity is Haar-averaged for those fixed
    angles, and finally averaged over the noise samples.  The measurement
    basis and corrections stay at the nominal angle, since the fluctuations
    are unknown to the experimenter.  Reported spread is the sample standard
    deviation of the per-sample means.
    """
    if config.noise.kind != "gaussian":
        raise ValueError("config.noise must be the gaussian model")
    if n_states < 2 or n_noise_samples < 2:
        raise ValueError("need at least 2 states and 2 noise samples")
    seed = _require_seed(seed, config)
    width = config.noise.width
    phi_m = config.measurement_angle
    _, noise_ss = np.random.SeedSequence(seed).spawn(2)
    states = _state_batch(n_states, seed)
    sample_means = np.empty(n_noise_samples)
    for idx, child in enumerate(noise_ss.spawn(n_noise_samples)):
        rng = np.random.default_rng(child)
        deltas = rng.normal(0.0, width, size=(config.n, 2))
        d_plus, d_minus = _round_diags(
            config.phi + deltas[:, 0], config.phi + deltas[:, 1], phi_m
        )
        diags = _class_diags_from_rounds(d_plus, d_minus, config.correction, phi_m)
        sample_means[idx] = _fidelities_pure(states, diags).mean()
    return FidelityEstimate(
        mean=float(sample_means.mean()),
        std_dev=float(sample_means.std(ddof=1)),
        n_states=n_states,
        n_noise_samples=n_noise_samples,
        seed=seed,
    )


def naive_avg_fidelity(
    phi: float, n_nestings: int, n_states: int, seed=None, correction: str = "aligned"
) -> FidelityEstimate:
    """Average channel fidelity of the nested textbook circuit with CP(phi) gates.

    The faulty projector pair is applied ``n_nestings`` times (both outcomes
    retained each round); unlike the repeated-cycle protocol, nesting this
    channel drifts it further from a parity projection.  By default the same
    free per-outcome virtual-Z fix-up granted to the main protocol is applied
    here, which makes the infidelity grow monotonically with nesting; without
    it ("none") the even-block coherence phase winds by the gate angle per
    nesting and the series oscillates once past its first anti-alignment.
    """
    if n_nestings < 1:
        raise ValueError("n_nestings must be >= 1")
    seed = _require_seed(seed)
    # X-basis readout of the textbook circuit: +1 heralds even, -1 heralds odd.
    d_even, d_odd = _round_diags(phi, phi, 0.0)
    if correction == "aligned":
        d_even = aligned_correction_diag(np.diag(d_even)) * d_even
        d_odd = aligned_correction_diag(np.diag(d_odd)) * d_odd
    elif correction != "none":
        raise ValueError("naive nesting supports correction 'aligned' or 'none'")
    mask = np.outer(d_even, d_even.conj()) + np.outer(d_odd, d_odd.conj())
    states = _state_batch(n_states, seed)
    rho_out = (states[:, :, None] * states.conj()[:, None, :]) * (mask**n_nestings)
    fids = _fidelities_from_rho(states, rho_out)
    return FidelityEstimate(
        mean=float(fids.mean()),
        std_dev=float(fids.std(ddof=1)),
        n_states=n_states,
        n_noise_samples=1,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# trajectory sampling
# ---------------------------------------------------------------------------

@dataclass
class TrajectoryResult:
    """Shot-level tallies from sampling the protocol's measurement record.

    ``counts`` maps each outcome-history class to its number of shots;
    ``error_counts`` to the shots whose final parity re-measurement
    contradicted the heralded branch.  ``conditional_states`` holds the
    normalized mean density matrix of the shots that ended in each class.
    """

    counts: dict
    error_counts: dict
    conditional_states: dict
    shots: int
    seed: int

    @property
    def error_probability(self) -> float:
        return sum(self.error_counts.values()) / self.shots

    def frequency(self, label: str) -> float:
        return self.counts.get(label, 0) / self.shots


def trajectory_sample(config: ProtocolConfig, psi0: np.ndarray, shots: int, seed=None) -> TrajectoryResult:
    """Sample the protocol shot by shot with Born-rule measurement outcomes.

    Each shot walks up to n cycles, stopping at the first -1 outcome; Gaussian
    noise redraws both gate angles every cycle, Pauli noise flips a faulty
    round in with its error probability.  After the heralded stop, parity is
    re-measured once and tallied as an error when it contradicts the herald.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    seed = _require_seed(seed, config)
    psi0 = np.asarray(psi0, dtype=complex)
    psi0 = psi0 / np.linalg.norm(psi0)
    noise = config.noise
    n = config.n
    phi_m = config.measurement_angle

    labels = [f"even@{k}" for k in range(1, n + 1)] + [f"odd@{n}"]
    counts = {label: 0 for label in labels}
    error_counts = {label: 0 for label in labels}
    sums = {label: np.zeros((4, 4), dtype=complex) for label in labels}

    fixed_pair = None
    pauli = None
    if noise.kind in ("none", "imbalanced"):
        fixed_pair = _round_diags(config.phi1, config.phi2, phi_m)
    elif noise.is_pauli:
        e_plus, e_minus, err_plus, err_minus, p = _pauli_round(config)
        pauli = (
            np.diagonal(e_plus).copy(),
            np.diagonal(e_minus).copy(),
            np.diagonal(err_plus).copy(),
            np.diagonal(err_minus).copy(),
            p,
        )

    corr_diags = {
        k: _correction_diag(None, "paper", k, phi_m, heralds_even=True)
        if config.correction != "none"
        else None
        for k in range(1, n + 1)
    }

    rng = np.random.default_rng(seed)
    remaining = shots
    while remaining > 0:
        chunk = min(remaining, _TRAJECTORY_CHUNK)
        remaining -= chunk
        psi = np.tile(psi0, (chunk, 1))
        active = np.ones(chunk, dtype=bool)
        for k in range(1, n + 1):
            # Draw this round's randomness for the whole chunk in a fixed
            # order so results do not depend on which shots are still active.
            if noise.kind == "gaussian":
                deltas = rng.normal(0.0, noise.width, size=(chunk, 2))
                d_plus, d_minus = _round_diags(
                    config.phi + deltas[:, 0], config.phi + deltas[:, 1], phi_m
                )
            elif pauli is not None:
                dp, dm, dpe, dme, p = pauli
                err = rng.random(chunk) < p
                d_plus = np.where(err[:, None], dpe[None, :], dp[None, :])
                d_minus = np.where(err[:, None], dme[None, :], dm[None, :])
            else:
                d_plus = np.broadcast_to(fixed_pair[0], (chunk, 4))
                d_minus = np.broadcast_to(fixed_pair[1], (chunk, 4))
            u_outcome = rng.random(chunk)
            u_recheck = rng.random(chunk)

            amp_minus = d_minus * psi
            p_minus = np.sum(np.abs(amp_minus) ** 2, axis=1)
            stop = active & (u_outcome < p_minus)
            if np.any(stop):
                final = amp_minus[stop] / np.sqrt(p_minus[stop])[:, None]
                u = corr_diags[k]
                if u is not None:
                    final = final * u
                label = f"even@{k}"
                counts[label] += int(stop.sum())
                p_wrong = np.sum(np.abs(final) ** 2 * ODD_MASK, axis=1)
                error_counts[label] += int(np.sum(u_recheck[stop] < p_wrong))
                sums[label] += np.einsum("ni,nj->ij", final, final.conj())
            cont = active & ~stop
            active = cont
            if not np.any(active):
                break
            norm = np.sqrt(np.clip(1.0 - p_minus[active], 1e-300, None))
            psi[active] = (d_plus[active] * psi[active]) / norm[:, None]
        if np.any(active):
            label = f"odd@{n}"
            final = psi[active]
            counts[label] += int(active.sum())
            p_wrong = np.sum(np.abs(final) ** 2 * EVEN_MASK, axis=1)
            u_final = rng.random(chunk)
            error_counts[label] += int(np.sum(u_final[active] < p_wrong))
            sums[label] += np.einsum("ni,nj->ij", final, final.conj())

    conditional = {
        label: sums[label] / counts[label] for label in labels if counts[label] > 0
    }
    return TrajectoryResult(
        counts=counts,
        error_counts=error_counts,
        conditional_states=conditional,
        shots=shots,
        seed=seed,
    )

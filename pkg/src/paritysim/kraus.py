"""Kraus operator families for the repeated-cycle parity-projection protocol.

A single cycle entangles the matter qubit (prepared in |+>) with the two
photonic qubits through two controlled-phase gates and reads the matter qubit
out in a rotated-X basis.  Outcome -1 heralds an even-parity projection and
stops the protocol; outcome +1 continues to the next cycle, up to n cycles.
This module builds the single-round operators by explicit contraction over
the 8-dimensional joint space, the closed-form n-round families (ideal,
imbalanced-gate and Pauli-faulty), per-outcome phase corrections, and the
composed n-round channel.

Every operator acts on the two photonic qubits (4x4, basis |00>,|01>,|10>,
|11>) and, for this protocol, is diagonal.  Operator families satisfy the
completeness relation sum(E^dag E) = I to 1e-12 by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .quantum import (
    ATOL_CONSTRUCT,
    IDENTITY_2,
    P00,
    P01,
    P10,
    P11,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    PLUS_KET,
    PROJ_EVEN,
    PROJ_ODD,
    dagger,
    measurement_kets,
    phase_gate,
    tensor,
)

if TYPE_CHECKING:  # pragma: no cover
    from .simulate import ProtocolConfig

NOISE_KINDS = (
    "none",
    "imbalanced",
    "gaussian",
    "pauli_z_before",
    "pauli_x_between",
    "pauli_y_between",
    "depolarizing_before",
)

PAULI_KINDS = ("pauli_z_before", "pauli_x_between", "pauli_y_between", "depolarizing_before")

CORRECTION_MODES = ("none", "paper", "aligned")


@dataclass(frozen=True)
class NoiseModel:
    """One imperfection acting on the protocol, with its single parameter.

    kind selects the model; delta1/delta2 are fixed gate-angle offsets
    (radians) for the imbalanced model, width is the Gaussian spread of
    per-cycle angle fluctuations, prob is the per-cycle Pauli (or
    depolarizing) error probability.
    """

    kind: str = "none"
    delta1: float = 0.0
    delta2: float = 0.0
    width: float = 0.0
    prob: float = 0.0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if not (np.isfinite(self.delta1) and np.isfinite(self.delta2)):
            raise ValueError("gate-angle offsets must be finite")
        if not (0.0 <= self.prob <= 1.0):
            raise ValueError(f"error probability must lie in [0, 1], got {self.prob}")
        if self.width < 0.0 or not np.isfinite(self.width):
            raise ValueError(f"Gaussian width must be finite and >= 0, got {self.width}")

    @classmethod
    def none(cls) -> "NoiseModel":
        return cls("none")

    @classmethod
    def imbalanced(cls, delta1: float, delta2: float) -> "NoiseModel":
        return cls("imbalanced", delta1=delta1, delta2=delta2)

    @classmethod
    def gaussian(cls, width: float) -> "NoiseModel":
        return cls("gaussian", width=width)

    @classmethod
    def pauli_z(cls, prob: float) -> "NoiseModel":
        return cls("pauli_z_before", prob=prob)

    @classmethod
    def pauli_x(cls, prob: float) -> "NoiseModel":
        return cls("pauli_x_between", prob=prob)

    @classmethod
    def pauli_y(cls, prob: float) -> "NoiseModel":
        return cls("pauli_y_between", prob=prob)

    @classmethod
    def depolarizing(cls, prob: float) -> "NoiseModel":
        return cls("depolarizing_before", prob=prob)

    @property
    def is_pauli(self) -> bool:
        return self.kind in PAULI_KINDS


def depolarizing_to_dephasing(p: float) -> NoiseModel:
    """Equivalent dephasing model for depolarizing noise on the |+> matter qubit.

    The X part of the depolarizing channel leaves |+> invariant, so the channel
    acts like pure dephasing with probability p_z = 2p/3.
    """
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return NoiseModel.pauli_z(2.0 * p / 3.0)


@dataclass(frozen=True)
class KrausChannel:
    """Ordered Kraus operators with one outcome label per operator."""

    ops: tuple = ()
    labels: tuple = ()

    def __post_init__(self):
        if len(self.ops) != len(self.labels):
            raise ValueError("one label is required per operator")
        object.__setattr__(self, "ops", tuple(np.asarray(op, dtype=complex) for op in self.ops))
        defect = self.completeness_defect()
        if defect > ATOL_CONSTRUCT:
            raise ValueError(f"Kraus family violates completeness: defect {defect:g}")

    def completeness_defect(self) -> float:
        dim = self.ops[0].shape[0]
        acc = np.zeros((dim, dim), dtype=complex)
        for op in self.ops:
            acc += dagger(op) @ op
        return float(np.max(np.abs(acc - np.eye(dim))))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Channel action rho -> sum_k E_k rho E_k^dag."""
        out = np.zeros_like(np.asarray(rho, dtype=complex))
        for op in self.ops:
            out += op @ rho @ dagger(op)
        return out

    def __len__(self) -> int:
        return len(self.ops)


# ---------------------------------------------------------------------------
# single-round operators by contraction over the 8-dimensional joint space
# ---------------------------------------------------------------------------
# Tensor order: photon 1 (x) photon 2 (x) matter, so the matter qubit is the
# last factor and a joint index reads (q1, q2, m).

_PROJ0 = np.diag([1.0, 0.0]).astype(complex)
_PROJ1 = np.diag([0.0, 1.0]).astype(complex)


def _cp_photon1(phi: float) -> np.ndarray:
    return tensor(tensor(_PROJ0, IDENTITY_2), IDENTITY_2) + tensor(
        tensor(_PROJ1, IDENTITY_2), phase_gate(phi)
    )


def _cp_photon2(phi: float) -> np.ndarray:
    return tensor(tensor(IDENTITY_2, _PROJ0), IDENTITY_2) + tensor(
        tensor(IDENTITY_2, _PROJ1), phase_gate(phi)
    )


def _matter_op(op: np.ndarray) -> np.ndarray:
    return tensor(np.eye(4, dtype=complex), op)


def _round_operator(
    phi1: float,
    phi2: float,
    phi_meas: float,
    outcome: int,
    before: np.ndarray | None = None,
    between: np.ndarray | None = None,
) -> np.ndarray:
    """<outcome_{phi_meas}| CP2(phi2) [between] CP1(phi1) [before] |+>_matter.

    ``before`` and ``between`` are optional matter-qubit error operators
    inserted ahead of the first gate and between the two gates.  The result is
    the 4x4 operator acting on the photonic qubits.
    """
    u = _cp_photon1(phi1)
    if before is not None:
        u = u @ _matter_op(before)
    if between is not None:
        u = _matter_op(between) @ u
    u = _cp_photon2(phi2) @ u
    plus, minus = measurement_kets(phi_meas)
    ket = plus if outcome == +1 else minus
    t = u.reshape(4, 2, 4, 2)
    return np.einsum("m,ambn,n->ab", ket.conj(), t, PLUS_KET)


def single_round_kraus(phi1: float, phi2: float, phi_meas: float | None = None) -> KrausChannel:
    """Kraus pair {E_+1, E_-1} for one protocol cycle.

    Built by contracting the matter qubit out of the 8-dimensional circuit;
    the measurement basis defaults to the midpoint (phi1 + phi2) / 2, which
    minimizes the single-round error for imbalanced gates.
    """
    if phi_meas is None:
        phi_meas = 0.5 * (phi1 + phi2)
    e_plus = _round_operator(phi1, phi2, phi_meas, +1)
    e_minus = _round_operator(phi1, phi2, phi_meas, -1)
    return KrausChannel((e_plus, e_minus), ("+1", "-1"))


def naive_projectors(phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Faulty projector pair produced by the textbook circuit with CP(phi) gates.

    P_even_err = P00 + e^{i phi/2} cos(phi/2) (P01 + P10) + e^{i phi} cos(phi) P11
    P_odd_err  = -i e^{i phi/2} sin(phi/2) (P01 + P10) - i e^{i phi} sin(phi) P11
    """
    half = 0.5 * phi
    p_even_err = (
        P00
        + np.exp(1j * half) * np.cos(half) * (P01 + P10)
        + np.exp(1j * phi) * np.cos(phi) * P11
    )
    p_odd_err = (
        -1j * np.exp(1j * half) * np.sin(half) * (P01 + P10)
        - 1j * np.exp(1j * phi) * np.sin(phi) * P11
    )
    return p_even_err, p_odd_err


# ---------------------------------------------------------------------------
# per-outcome phase corrections
# ---------------------------------------------------------------------------

def _zz_phase_diag(total: float, diff: float) -> np.ndarray:
    """Diagonal of Rz(theta1) (x) Rz(theta2) with total = theta1 + theta2, diff = theta1 - theta2."""
    return np.array(
        [
            np.exp(-0.5j * total),
            np.exp(-0.5j * diff),
            np.exp(0.5j * diff),
            np.exp(0.5j * total),
        ]
    )


def paper_correction_diag(cycle: int, phi_meas: float) -> np.ndarray:
    """Diagonal of the published even-outcome fix-up Rz(-m*phi + pi) on qubit 1."""
    theta = -cycle * phi_meas + np.pi
    return _zz_phase_diag(theta, theta)


def aligned_correction_diag(op: np.ndarray) -> np.ndarray:
    """Virtual-Z pair that phase-aligns the even and odd blocks of a diagonal operator.

    Chooses Rz angles so the P00/P11 coefficients share one phase and the
    P01/P10 coefficients share another; coefficients below tolerance leave the
    corresponding block untouched.  Cross-block phases cannot be fixed by
    single-qubit Z rotations and are left as is.
    """
    d = np.diagonal(op)
    total = float(np.angle(d[0]) - np.angle(d[3])) if min(abs(d[0]), abs(d[3])) > 1e-14 else 0.0
    diff = float(np.angle(d[1]) - np.angle(d[2])) if min(abs(d[1]), abs(d[2])) > 1e-14 else 0.0
    return _zz_phase_diag(total, diff)


def correct_outcome_operator(op: np.ndarray, mode: str, cycle: int, phi_meas: float, heralds_even: bool) -> np.ndarray:
    """Apply the configured post-measurement Z correction to one Kraus operator."""
    if mode == "none":
        return op
    if mode == "paper":
        # The published rule corrects only even heralds, at the nominal angle.
        if not heralds_even:
            return op
        return paper_correction_diag(cycle, phi_meas)[:, None] * op
    if mode == "aligned":
        return aligned_correction_diag(op)[:, None] * op
    raise ValueError(f"unknown correction mode {mode!r}")


# ---------------------------------------------------------------------------
# closed-form n-round families
# ---------------------------------------------------------------------------

def kraus_ideal_family(n: int, phi: float, corrected: bool = False) -> KrausChannel:
    """The n+1 Kraus operators of n protocol cycles with identical CP(phi) gates.

    Uncorrected even operators carry a cycle-dependent relative phase between
    P00 and P11; with ``corrected`` the virtual Rz(-m*phi + pi) fix-up is
    folded in, leaving real nonnegative multiples of the perfect even
    projector.  The final operator (all +1 outcomes) suppresses the even block
    by cos^n(phi/2).
    """
    if n < 1:
        raise ValueError(f"cycle count must be >= 1, got {n}")
    half = 0.5 * phi
    sin_h, cos_h = np.sin(half), np.cos(half)
    ops = []
    labels = []
    for m in range(1, n + 1):
        amp = sin_h * cos_h ** (m - 1)
        if corrected:
            op = amp * (P00 + P11)
        else:
            op = 1j * amp * (P00 - np.exp(1j * m * phi) * P11)
        ops.append(op)
        labels.append(f"even@{m}")
    odd = np.exp(0.5j * n * phi) * (P01 + P10) + cos_h**n * (P00 + np.exp(1j * n * phi) * P11)
    ops.append(odd)
    labels.append(f"odd@{n}")
    return KrausChannel(tuple(ops), tuple(labels))


def kraus_imbalanced_family(
    n: int,
    phi: float,
    delta1: float,
    delta2: float,
    correction: str = "none",
) -> KrausChannel:
    """n-round family when the two gates are CP(phi + delta1) and CP(phi + delta2).

    ``phi`` is the measurement-basis angle, held fixed across cycles.  At
    delta1 = delta2 = 0 the family reduces entrywise to the uncorrected ideal
    one.  The even operators acquire small odd-block components, so the -1
    outcome no longer heralds a pure even projection.
    """
    if n < 1:
        raise ValueError(f"cycle count must be >= 1, got {n}")
    if correction not in CORRECTION_MODES:
        raise ValueError(f"unknown correction mode {correction!r}")
    dsum = delta1 + delta2
    h = 0.5 * phi
    hs = 0.5 * (phi + dsum)
    h1 = 0.5 * delta1
    h2 = 0.5 * delta2
    ops = []
    labels = []
    for m in range(1, n + 1):
        op = (
            1j * np.sin(h) * np.cos(h) ** (m - 1) * P00
            - 1j * np.exp(1j * m * (phi + 0.5 * dsum)) * np.sin(hs) * np.cos(hs) ** (m - 1) * P11
            - 1j * np.exp(0.5j * m * (phi + delta2)) * np.sin(h2) * np.cos(h2) ** (m - 1) * P01
            - 1j * np.exp(0.5j * m * (phi + delta1)) * np.sin(h1) * np.cos(h1) ** (m - 1) * P10
        )
        ops.append(correct_outcome_operator(op, correction, m, phi, heralds_even=True))
        labels.append(f"even@{m}")
    odd = (
        np.cos(h) ** n * P00
        + np.exp(0.5j * n * (phi + delta2)) * np.cos(h2) ** n * P01
        + np.exp(0.5j * n * (phi + delta1)) * np.cos(h1) ** n * P10
        + np.exp(1j * n * (phi + 0.5 * dsum)) * np.cos(hs) ** n * P11
    )
    ops.append(correct_outcome_operator(odd, correction, n, phi, heralds_even=False))
    labels.append(f"odd@{n}")
    return KrausChannel(tuple(ops), tuple(labels))


# ---------------------------------------------------------------------------
# Pauli-faulty single rounds
# ---------------------------------------------------------------------------

def _pauli_effective(error: NoiseModel) -> tuple[str, float]:
    if not error.is_pauli:
        raise ValueError(f"noise kind {error.kind!r} is not a Pauli model")
    if error.kind == "depolarizing_before":
        return "pauli_z_before", 2.0 * error.prob / 3.0
    return error.kind, error.prob


def faulty_round_operators(
    kind: str, phi: float, phi_meas: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Single-round operators {E_+1^err, E_-1^err} for one Pauli error insertion.

    A Z error before the gates flips the matter qubit to |->, which swaps the
    two outcome operators; X and Y errors act between the two gates.
    """
    if phi_meas is None:
        phi_meas = phi
    if kind == "pauli_z_before":
        insert = dict(before=PAULI_Z)
    elif kind == "pauli_x_between":
        insert = dict(between=PAULI_X)
    elif kind == "pauli_y_between":
        insert = dict(between=PAULI_Y)
    else:
        raise ValueError(f"unknown Pauli error kind {kind!r}")
    e_plus = _round_operator(phi, phi, phi_meas, +1, **insert)
    e_minus = _round_operator(phi, phi, phi_meas, -1, **insert)
    return e_plus, e_minus


def pauli_round_kraus(error: NoiseModel, phi: float) -> KrausChannel:
    """Four-operator single-round family with a per-cycle Pauli error of probability p.

    {sqrt(1-p) E_+1, sqrt(1-p) E_-1, sqrt(p) E_+1^err, sqrt(p) E_-1^err};
    depolarizing input is folded into the equivalent dephasing probability.
    """
    kind, p = _pauli_effective(error)
    clean = single_round_kraus(phi, phi, phi)
    err_plus, err_minus = faulty_round_operators(kind, phi)
    ops = (
        np.sqrt(1.0 - p) * clean.ops[0],
        np.sqrt(1.0 - p) * clean.ops[1],
        np.sqrt(p) * err_plus,
        np.sqrt(p) * err_minus,
    )
    return KrausChannel(ops, ("+1", "-1", "+1,err", "-1,err"))


# ---------------------------------------------------------------------------
# n-round channel composition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChannelClasses:
    """Un-normalized output states of the n+1 outcome-history classes.

    Labels even@k (first -1 outcome in cycle k) and odd@n (all +1 outcomes);
    the trace of each state is the probability of that history class.
    """

    labels: tuple
    states: tuple
    probabilities: np.ndarray = field(default=None)

    def __post_init__(self):
        probs = np.array([float(np.trace(s).real) for s in self.states])
        object.__setattr__(self, "probabilities", probs)

    def output_state(self) -> np.ndarray:
        total = np.zeros_like(self.states[0])
        for s in self.states:
            total += s
        return total

    def error_probability(self) -> float:
        """Chance that re-measuring parity contradicts the heralded branch."""
        p = 0.0
        for label, state in zip(self.labels, self.states):
            wrong = PROJ_ODD if label.startswith("even") else PROJ_EVEN
            p += float(np.trace(wrong @ state).real)
        return p


def _binomial_class_states(rho0, n, p, clean_plus, clean_minus, err_plus, err_minus):
    """Outcome-class states for per-cycle Pauli errors via the binomial expansion.

    Valid because all four single-round operators commute (they are diagonal),
    so a history with j error cycles collapses to clean^(k-j) err^j regardless
    of when the errors happened.
    """
    def sandwich(a: np.ndarray) -> np.ndarray:
        return a @ rho0 @ dagger(a)

    plus_powers = [np.eye(4, dtype=complex)]
    err_powers = [np.eye(4, dtype=complex)]
    for _ in range(n):
        plus_powers.append(plus_powers[-1] @ clean_plus)
        err_powers.append(err_powers[-1] @ err_plus)

    states = []
    for k in range(1, n + 1):
        acc = np.zeros((4, 4), dtype=complex)
        for j in range(k):
            base = plus_powers[k - 1 - j] @ err_powers[j]
            weight = math.comb(k - 1, j) * (1.0 - p) ** (k - 1 - j) * p**j
            acc += weight * (1.0 - p) * sandwich(clean_minus @ base)
            acc += weight * p * sandwich(err_minus @ base)
        states.append(acc)
    final = np.zeros((4, 4), dtype=complex)
    for j in range(n + 1):
        weight = math.comb(n, j) * (1.0 - p) ** (n - j) * p**j
        final += weight * sandwich(plus_powers[n - j] @ err_powers[j])
    states.append(final)
    return states


def compose_protocol_channel(rho0: np.ndarray, config: "ProtocolConfig") -> ChannelClasses:
    """Exact n-round channel output of the protocol, one state per outcome class.

    Deterministic noise only; the Gaussian model has no fixed Kraus family and
    must go through the sampling estimators.  Pauli models use the commuting
    binomial expansion, everything else the closed-form operator families.
    Class traces are the outcome probabilities and sum to 1.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    noise = config.noise
    phi_m = config.measurement_angle
    if noise.kind == "gaussian":
        raise ValueError("gaussian noise has no fixed Kraus family; use the sampling estimators")
    if noise.is_pauli:
        kind, p = _pauli_effective(noise)
        clean = single_round_kraus(config.phi, config.phi, phi_m)
        err_plus, err_minus = faulty_round_operators(kind, config.phi, phi_m)
        states = _binomial_class_states(
            rho0, config.n, p, clean.ops[0], clean.ops[1], err_plus, err_minus
        )
        labels = tuple(f"even@{k}" for k in range(1, config.n + 1)) + (f"odd@{config.n}",)
        if config.correction == "paper":
            corrected = []
            for label, state in zip(labels, states):
                if label.startswith("even"):
                    k = int(label.split("@")[1])
                    u = paper_correction_diag(k, phi_m)
                    state = (u[:, None] * state) * u.conj()[None, :]
                corrected.append(state)
            states = corrected
        return ChannelClasses(labels, tuple(states))

    family = kraus_imbalanced_family(
        config.n,
        phi_m,
        config.phi1 - phi_m,
        config.phi2 - phi_m,
        correction=config.correction,
    )
    states = tuple(op @ rho0 @ dagger(op) for op in family.ops)
    return ChannelClasses(family.labels, states)

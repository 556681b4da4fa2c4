"""Simulator and analytics for a repeated-cycle photonic parity-projection protocol.

The protocol entangles two photonic qubits with a matter qubit through
controlled-phase gates and heralds a parity projection from the matter-qubit
readout; repeating the cycle suppresses the heralding error exponentially.
The package provides the exact Kraus channels, the closed-form error
probabilities under coherent, Gaussian and Pauli noise, Monte Carlo fidelity
estimators, and a CLI that regenerates the data behind every figure.
"""

from .analytics import (
    ErrorProbabilityReport,
    errp_gaussian,
    errp_imbalanced,
    errp_pauli_x,
    errp_pauli_y,
    errp_pauli_z,
    errp_perfect,
    error_probability_report,
    haar_average_sampled,
    turning_point,
)
from .kraus import (
    ChannelClasses,
    KrausChannel,
    NoiseModel,
    compose_protocol_channel,
    depolarizing_to_dephasing,
    kraus_ideal_family,
    kraus_imbalanced_family,
    naive_projectors,
    pauli_round_kraus,
    single_round_kraus,
)
from .quantum import (
    cphase,
    dagger,
    haar_random_state,
    haar_random_states,
    measurement_kets,
    outer,
    parity_split,
    rank2_fidelity,
    state_fidelity,
    tensor,
)
from .simulate import (
    FidelityEstimate,
    ProtocolConfig,
    TrajectoryResult,
    avg_channel_fidelity,
    exact_error_probability,
    exact_output,
    gaussian_avg_fidelity,
    naive_avg_fidelity,
    trajectory_sample,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelClasses",
    "ErrorProbabilityReport",
    "FidelityEstimate",
    "KrausChannel",
    "NoiseModel",
    "ProtocolConfig",
    "TrajectoryResult",
    "avg_channel_fidelity",
    "compose_protocol_channel",
    "cphase",
    "dagger",
    "depolarizing_to_dephasing",
    "errp_gaussian",
    "errp_imbalanced",
    "errp_pauli_x",
    "errp_pauli_y",
    "errp_pauli_z",
    "errp_perfect",
    "error_probability_report",
    "exact_error_probability",
    "exact_output",
    "gaussian_avg_fidelity",
    "haar_average_sampled",
    "haar_random_state",
    "haar_random_states",
    "kraus_ideal_family",
    "kraus_imbalanced_family",
    "measurement_kets",
    "naive_avg_fidelity",
    "naive_projectors",
    "outer",
    "parity_split",
    "pauli_round_kraus",
    "rank2_fidelity",
    "single_round_kraus",
    "state_fidelity",
    "tensor",
    "trajectory_sample",
    "turning_point",
]

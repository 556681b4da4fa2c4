"""Dense complex linear algebra on 2-, 4- and 8-dimensional Hilbert spaces.

Standard gates, computational projectors, Haar-random state sampling and
fidelity metrics.  Kets are 1-d complex numpy arrays, operators and density
matrices are 2-d; basis order for two qubits is |00>, |01>, |10>, |11>.
All functions are pure, so they are safe to call from concurrent workers.
"""

from __future__ import annotations

import numpy as np

# Tolerance for construction-level identities (unitarity, normalization) and
# the looser one for derived equalities (fidelity symmetry, oracle matches).
ATOL_CONSTRUCT = 1e-12
ATOL_DERIVED = 1e-10

IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# Projectors onto the two-qubit computational states.
P00 = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
P01 = np.diag([0.0, 1.0, 0.0, 0.0]).astype(complex)
P10 = np.diag([0.0, 0.0, 1.0, 0.0]).astype(complex)
P11 = np.diag([0.0, 0.0, 0.0, 1.0]).astype(complex)

# Parity projectors: even span {|00>, |11>}, odd span {|01>, |10>}.
PROJ_EVEN = P00 + P11
PROJ_ODD = P01 + P10
EVEN_MASK = np.array([1.0, 0.0, 0.0, 1.0])
ODD_MASK = np.array([0.0, 1.0, 1.0, 0.0])

PLUS_KET = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)


def cphase(phi: float) -> np.ndarray:
    """Controlled-phase gate diag(1, 1, 1, e^{i*phi}); phi = pi gives CZ."""
    return np.diag([1.0, 1.0, 1.0, np.exp(1j * phi)])


def phase_gate(phi: float) -> np.ndarray:
    """Single-qubit phase gate diag(1, e^{i*phi})."""
    return np.diag([1.0, np.exp(1j * phi)])


def rz(theta: float) -> np.ndarray:
    """Pauli-Z rotation diag(e^{-i*theta/2}, e^{i*theta/2})."""
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def measurement_kets(phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigenkets |+_phi>, |-_phi> of the rotated-X observable Rz(phi) X Rz(phi)^dag.

    |±_phi> = (e^{-i*phi/2}|0> ± e^{i*phi/2}|1>) / sqrt(2); the matter qubit of
    the protocol is read out in this basis.
    """
    a = np.exp(-0.5j * phi) / np.sqrt(2.0)
    b = np.exp(0.5j * phi) / np.sqrt(2.0)
    plus = np.array([a, b])
    minus = np.array([a, -b])
    return plus, minus


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; output dimension is the product of the inputs'."""
    return np.kron(a, b)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def apply(a: np.ndarray, state: np.ndarray) -> np.ndarray:
    """Apply operator ``a`` to a ket."""
    return a @ state


def outer(state: np.ndarray) -> np.ndarray:
    """Rank-1 density matrix |state><state|."""
    return np.outer(state, state.conj())


def unitarity_defect(u: np.ndarray) -> float:
    """Max entrywise deviation of U^dag U from the identity."""
    d = dagger(u) @ u - np.eye(u.shape[0])
    return float(np.max(np.abs(d)))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# Haar sampling
# ---------------------------------------------------------------------------

def haar_random_state(dim: int, seed) -> np.ndarray:
    """Draw one Haar-random pure state of the given dimension.

    Each amplitude is an independent standard complex Gaussian; normalizing
    the vector yields the unitarily invariant (Haar) distribution.  ``seed``
    may be an int, a SeedSequence or an existing Generator.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    rng = _as_rng(seed)
    while True:
        z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        norm = np.linalg.norm(z)
        if norm > 0.0:
            return z / norm


def haar_random_states(count: int, dim: int, seed) -> np.ndarray:
    """Batch of Haar-random pure states, shape (count, dim)."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    rng = _as_rng(seed)
    z = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    norms = np.linalg.norm(z, axis=1)
    bad = norms == 0.0
    while np.any(bad):
        idx = np.flatnonzero(bad)
        z[idx] = rng.standard_normal((idx.size, dim)) + 1j * rng.standard_normal((idx.size, dim))
        norms = np.linalg.norm(z, axis=1)
        bad = norms == 0.0
    return z / norms[:, None]


# ---------------------------------------------------------------------------
# fidelity metrics
# ---------------------------------------------------------------------------

def _check_density_matrix(rho: np.ndarray, name: str) -> np.ndarray:
    if np.max(np.abs(rho - rho.conj().T)) > ATOL_DERIVED:
        raise ValueError(f"{name} is not Hermitian within tolerance")
    evals = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if evals.min() < -ATOL_DERIVED:
        raise ValueError(f"{name} has a negative eigenvalue beyond tolerance: {evals.min():g}")
    return rho


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    # Hermitian eigendecomposition; eigenvalues indistinguishable from zero
    # (including tiny negatives from roundoff) are clamped to zero so the
    # square root does not amplify their noise.
    evals, vecs = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    cutoff = max(float(evals.max()), 0.0) * 16.0 * np.finfo(float).eps
    evals = np.where(evals < cutoff, 0.0, evals)
    return (vecs * np.sqrt(evals)) @ vecs.conj().T


def state_fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.

    Evaluated as the squared trace norm of sqrt(sigma) sqrt(rho), which is the
    same quantity but keeps full precision when either state is rank
    deficient.  Both inputs must be normalized density matrices of the same
    dimension; non-Hermitian input or eigenvalues below -1e-10 are rejected.
    """
    if rho.shape != sigma.shape:
        raise ValueError("density matrices must have the same dimension")
    _check_density_matrix(rho, "rho")
    _check_density_matrix(sigma, "sigma")
    singulars = np.linalg.svd(_psd_sqrt(sigma) @ _psd_sqrt(rho), compute_uv=False)
    return float(np.sum(singulars) ** 2)


def parity_split(psi: np.ndarray):
    """Split a normalized two-qubit ket into even- and odd-parity parts.

    Returns (p_even, psi_even, p_odd, psi_odd) with normalized branch kets;
    a branch of zero weight is returned as None instead of a zero-norm ket.
    """
    even = psi * EVEN_MASK
    odd = psi * ODD_MASK
    p_even = float(np.vdot(even, even).real)
    p_odd = float(np.vdot(odd, odd).real)
    psi_even = even / np.sqrt(p_even) if p_even > 1e-150 else None
    psi_odd = odd / np.sqrt(p_odd) if p_odd > 1e-150 else None
    if psi_even is None:
        p_even = 0.0
    if psi_odd is None:
        p_odd = 0.0
    return p_even, psi_even, p_odd, psi_odd


def rank2_fidelity(p_e: float, psi_e, p_o: float, psi_o, rho_out: np.ndarray) -> float:
    """Fidelity of ``rho_out`` against the rank-2 ideal parity-projection output.

    The ideal state p_e |psi_e><psi_e| + p_o |psi_o><psi_o| is supported on the
    two orthonormal kets, so sqrt(rho_ideal) rho_out sqrt(rho_ideal) reduces to
    a 2x2 problem with the closed form

        F = <>_ee + <>_oo + 2 sqrt(<>_ee <>_oo - |<>_eo|^2),

    where <>_ij = sqrt(p_i p_j) <psi_i| rho_out |psi_j>.  Absent branches
    (weight 0, ket None) contribute nothing.
    """
    if not (p_e >= 0.0 and p_o >= 0.0 and abs(p_e + p_o - 1.0) < 1e-10):
        raise ValueError("branch probabilities must be nonnegative and sum to 1")
    a = p_e * float(np.vdot(psi_e, rho_out @ psi_e).real) if psi_e is not None else 0.0
    b = p_o * float(np.vdot(psi_o, rho_out @ psi_o).real) if psi_o is not None else 0.0
    if psi_e is not None and psi_o is not None:
        c = np.sqrt(p_e * p_o) * np.vdot(psi_e, rho_out @ psi_o)
    else:
        c = 0.0
    disc = a * b - abs(c) ** 2
    if disc < -ATOL_CONSTRUCT:
        raise ValueError(f"negative fidelity discriminant: {disc:g}")
    return float(a + b + 2.0 * np.sqrt(max(disc, 0.0)))

"""Cross-validation audit: closed forms against the brute-force channel.

Every analytic error-probability expression is replayed against the exact
channel on a randomized parameter grid, the Gaussian-noise average against
numerical quadrature, the rank-2 fidelity against the general Uhlmann
formula, and every Kraus family against its completeness relation.  The audit
also re-derives the pinned reference figures (the headline numbers the
project reproduces) and records, for the two known reference discrepancies,
which side the exact channel supports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import analytics
from .kraus import (
    NoiseModel,
    kraus_ideal_family,
    kraus_imbalanced_family,
    pauli_round_kraus,
    single_round_kraus,
)
from .quantum import (
    PROJ_EVEN,
    PROJ_ODD,
    haar_random_state,
    outer,
    parity_split,
    rank2_fidelity,
    state_fidelity,
)
from .simulate import (
    ProtocolConfig,
    _round_ops,
    exact_class_states,
    exact_error_probability,
    gaussian_avg_fidelity,
)

EQUIV_TOL = 1e-10
QUAD_TOL = 1e-6
COMPLETENESS_TOL = 1e-12
REDUCTION_TOL = 1e-12


@dataclass(frozen=True)
class CheckRow:
    """One audit line: a computed value against its reference and tolerance."""

    check: str
    detail: str
    cases: int
    value: float
    reference: float
    tolerance: float
    status: str  # pass / fail / info

    @property
    def deviation(self) -> float:
        return abs(self.value - self.reference)


@dataclass(frozen=True)
class AuditReport:
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(row.status != "fail" for row in self.rows)

    @property
    def worst_equivalence_deviation(self) -> float:
        devs = [row.deviation for row in self.rows if row.check.startswith("equiv")]
        return max(devs) if devs else 0.0


def _equiv_row(check, detail, cases, worst, tol) -> CheckRow:
    status = "pass" if worst <= tol else "fail"
    return CheckRow(check, detail, cases, float(worst), 0.0, tol, status)


def _reference_row(check, detail, value, reference, tol, informational=False) -> CheckRow:
    if informational:
        status = "info"
    else:
        status = "pass" if abs(value - reference) <= tol else "fail"
    return CheckRow(check, detail, 0, float(value), float(reference), tol, status)


_MODEL_SAMPLERS = {
    "none": lambda rng: NoiseModel.none(),
    "imbalanced": lambda rng: NoiseModel.imbalanced(*rng.uniform(-0.15, 0.15, 2)),
    "pauli_z": lambda rng: NoiseModel.pauli_z(rng.uniform(0.0, 0.2)),
    "pauli_x": lambda rng: NoiseModel.pauli_x(rng.uniform(0.0, 0.2)),
    "pauli_y": lambda rng: NoiseModel.pauli_y(rng.uniform(0.0, 0.2)),
    "depolarizing": lambda rng: NoiseModel.depolarizing(rng.uniform(0.0, 0.2)),
}


def _closed_vs_exact(rng, grid_size: int, n_max: int):
    rows = []
    for name, sampler in _MODEL_SAMPLERS.items():
        worst = 0.0
        for _ in range(grid_size):
            n = int(rng.integers(1, n_max + 1))
            phi = rng.uniform(0.5, 1.0) * np.pi
            noise = sampler(rng)
            psi = haar_random_state(4, rng)
            closed = analytics.error_probability_report(n, phi, noise, psi).value_for_state
            cfg = ProtocolConfig(n=n, phi=phi, noise=noise, phi_meas=phi, correction="none")
            worst = max(worst, abs(closed - exact_error_probability(cfg, psi)))
        rows.append(
            _equiv_row(
                f"equiv:errp:{name}",
                "closed-form error probability vs exact channel",
                grid_size,
                worst,
                EQUIV_TOL,
            )
        )
    return rows


def _gaussian_sample_formula(n, phi, deltas, weights):
    """Per-sample error probability with known per-cycle angle offsets."""
    d1, d2 = deltas[:, 0], deltas[:, 1]
    coeffs = np.array(
        [
            np.cos(0.5 * phi) ** (2 * n),
            1.0 - np.prod(np.cos(0.5 * d2) ** 2),
            1.0 - np.prod(np.cos(0.5 * d1) ** 2),
            np.prod(np.cos(0.5 * (phi + d1 + d2)) ** 2),
        ]
    )
    return float(coeffs @ weights)


def _gaussian_per_sample_vs_exact(rng, grid_size: int, n_max: int):
    worst = 0.0
    for _ in range(grid_size):
        n = int(rng.integers(1, n_max + 1))
        phi = rng.uniform(0.5, 1.0) * np.pi
        deltas = rng.normal(0.0, 0.1, size=(n, 2))
        psi = haar_random_state(4, rng)
        closed = _gaussian_sample_formula(n, phi, deltas, np.abs(psi) ** 2)
        # sequential channel with the drawn per-cycle angles
        rho = outer(psi)
        prod = np.eye(4, dtype=complex)
        p_err = 0.0
        for k in range(n):
            e_plus, e_minus = _round_ops(phi + deltas[k, 0], phi + deltas[k, 1], phi)
            op = e_minus @ prod
            p_err += float(np.trace(PROJ_ODD @ (op @ rho @ op.conj().T)).real)
            prod = e_plus @ prod
        p_err += float(np.trace(PROJ_EVEN @ (prod @ rho @ prod.conj().T)).real)
        worst = max(worst, abs(closed - p_err))
    return [
        _equiv_row(
            "equiv:errp:gaussian_sample",
            "per-sample product formula vs exact channel with drawn angles",
            grid_size,
            worst,
            EQUIV_TOL,
        )
    ]


def _gauss_hermite_mean(func, width: float, nodes: int = 80) -> float:
    x, w = np.polynomial.hermite.hermgauss(nodes)
    return float(np.sum(w * func(np.sqrt(2.0) * width * x)) / np.sqrt(np.pi))


def _gaussian_quadrature_check(widths=(0.05, 0.1257, 0.25), ns=(1, 2, 5)):
    worst = 0.0
    cases = 0
    for width in widths:
        # single-cycle expectations of the per-cycle factors
        odd_factor = _gauss_hermite_mean(lambda d: np.cos(0.5 * d) ** 2, width)
        x, wts = np.polynomial.hermite.hermgauss(60)
        grid1, grid2 = np.meshgrid(np.sqrt(2.0) * width * x, np.sqrt(2.0) * width * x)
        weight2 = np.outer(wts, wts) / np.pi
        for n in ns:
            for phi in (0.7 * np.pi, 0.9 * np.pi):
                even_factor = float(
                    np.sum(weight2 * np.cos(0.5 * (phi + grid1 + grid2)) ** 2)
                )
                closed = analytics.errp_gaussian(n, phi, width)
                worst = max(worst, abs(even_factor**n - closed.coefficients[3]))
                worst = max(worst, abs(1.0 - odd_factor**n - closed.coefficients[1]))
                cases += 1
    return [
        _equiv_row(
            "equiv:errp:gaussian_quadrature",
            "Gauss-Hermite average of per-cycle factors vs closed form",
            cases,
            worst,
            QUAD_TOL,
        )
    ]


def _completeness_check(rng, count: int):
    worst = 0.0
    for _ in range(count):
        pick = rng.integers(0, 4)
        n = int(rng.integers(1, 7))
        phi = rng.uniform(0.0, 1.0) * np.pi
        if pick == 0:
            fam = kraus_ideal_family(n, phi, corrected=bool(rng.integers(0, 2)))
        elif pick == 1:
            d1, d2 = rng.uniform(-0.2, 0.2, 2)
            mode = ("none", "paper", "aligned")[rng.integers(0, 3)]
            fam = kraus_imbalanced_family(n, phi, d1, d2, correction=mode)
        elif pick == 2:
            fam = single_round_kraus(*rng.uniform(0.4, 1.0, 2) * np.pi)
        else:
            maker = (NoiseModel.pauli_z, NoiseModel.pauli_x, NoiseModel.pauli_y, NoiseModel.depolarizing)[
                rng.integers(0, 4)
            ]
            fam = pauli_round_kraus(maker(rng.uniform(0.0, 1.0)), phi)
        worst = max(worst, fam.completeness_defect())
    return [
        _equiv_row(
            "equiv:kraus:completeness",
            "sum E^dag E = I over randomized families",
            count,
            worst,
            COMPLETENESS_TOL,
        )
    ]


def _rank2_check(rng, count: int):
    worst = 0.0
    makers = (
        lambda: NoiseModel.none(),
        lambda: NoiseModel.imbalanced(*rng.uniform(-0.12, 0.12, 2)),
        lambda: NoiseModel.pauli_z(rng.uniform(0.0, 0.15)),
        lambda: NoiseModel.pauli_x(rng.uniform(0.0, 0.15)),
        lambda: NoiseModel.pauli_y(rng.uniform(0.0, 0.15)),
    )
    for i in range(count):
        noise = makers[i % len(makers)]()
        corr = "paper" if noise.is_pauli else ("none", "paper", "aligned")[rng.integers(0, 3)]
        cfg = ProtocolConfig(
            n=int(rng.integers(1, 6)),
            phi=rng.uniform(0.5, 1.0) * np.pi,
            noise=noise,
            correction=corr,
        )
        psi = haar_random_state(4, rng)
        rho_out = exact_class_states(cfg, psi).output_state()
        p_e, psi_e, p_o, psi_o = parity_split(psi)
        fast = rank2_fidelity(p_e, psi_e, p_o, psi_o, rho_out)
        ideal = np.zeros((4, 4), dtype=complex)
        if psi_e is not None:
            ideal += p_e * outer(psi_e)
        if psi_o is not None:
            ideal += p_o * outer(psi_o)
        worst = max(worst, abs(fast - state_fidelity(ideal, rho_out)))
    return [
        _equiv_row(
            "equiv:fidelity:rank2_vs_uhlmann",
            "rank-2 closed form vs general Uhlmann fidelity",
            count,
            worst,
            EQUIV_TOL,
        )
    ]


def _reduction_checks(rng, count: int):
    worst_family = 0.0
    worst_coeff = 0.0
    for _ in range(count):
        n = int(rng.integers(1, 7))
        phi = rng.uniform(0.4, 1.0) * np.pi
        ideal = kraus_ideal_family(n, phi, corrected=False)
        imb = kraus_imbalanced_family(n, phi, 0.0, 0.0)
        worst_family = max(
            worst_family,
            max(np.max(np.abs(a - b)) for a, b in zip(ideal.ops, imb.ops)),
        )
        base = analytics.errp_perfect(n, phi).coefficients
        for variant in (
            analytics.errp_imbalanced(n, phi, 0.0, 0.0),
            analytics.errp_gaussian(n, phi, 0.0),
            analytics.errp_pauli_z(n, phi, 0.0),
            analytics.errp_pauli_x(n, phi, 0.0),
            analytics.errp_pauli_y(n, phi, 0.0),
        ):
            worst_coeff = max(worst_coeff, np.max(np.abs(np.array(variant.coefficients) - base)))
        clean = single_round_kraus(phi, phi, phi)
        zero_p = pauli_round_kraus(NoiseModel.pauli_x(0.0), phi)
        worst_family = max(
            worst_family,
            np.max(np.abs(zero_p.ops[0] - clean.ops[0])),
            np.max(np.abs(zero_p.ops[1] - clean.ops[1])),
        )
    return [
        _equiv_row(
            "equiv:reduction:families",
            "imbalanced(0)=ideal and pauli(0)=clean, entrywise",
            count,
            worst_family,
            REDUCTION_TOL,
        ),
        _equiv_row(
            "equiv:reduction:coefficients",
            "all noisy closed forms at zero noise vs noiseless form",
            count,
            worst_coeff,
            REDUCTION_TOL,
        ),
    ]


def _reference_checks(seed: int):
    """Re-derive the pinned reference figures and resolve the two known discrepancies."""
    pi = np.pi
    rows = []
    # tolerance = half a unit in the reference's last quoted digit, except the
    # dephasing n=2 average, whose 2.0% reference is truncated from 2.07%
    perfect2 = analytics.errp_perfect(2, 0.9 * pi)
    rows.append(
        _reference_row(
            "reference:perfect:max_n2",
            "max error probability, phi=0.9pi, n=2",
            perfect2.max_over_states,
            6.0e-4,
            5.0e-6,
        )
    )
    rows.append(
        _reference_row(
            "reference:perfect:avg_n2",
            "Haar-average error probability, phi=0.9pi, n=2",
            perfect2.haar_average,
            3.0e-4,
            5.0e-6,
        )
    )

    for n, ref, tol in ((1, 0.032, 5.0e-4), (2, 0.008, 5.0e-4)):
        rows.append(
            _reference_row(
                f"reference:gaussian:max_n{n}",
                f"max error probability, phi=0.9pi, w=0.04pi, n={n}",
                analytics.errp_gaussian(n, 0.9 * pi, 0.04 * pi).max_over_states,
                ref,
                tol,
            )
        )
    for n, ref, tol in ((1, 0.032, 5.0e-4), (2, 0.020, 1.0e-3)):
        rows.append(
            _reference_row(
                f"reference:pauli_z:avg_n{n}",
                f"Haar-average error probability, phi=0.9pi, p_z=0.02, n={n}",
                analytics.errp_pauli_z(n, 0.9 * pi, 0.02).haar_average,
                ref,
                tol,
            )
        )
    for n, ref in ((1, 0.024), (2, 0.015)):
        rows.append(
            _reference_row(
                f"reference:pauli_x:max_n{n}",
                f"max error probability, phi=0.9pi, p_x=0.08, n={n}",
                analytics.errp_pauli_x(n, 0.9 * pi, 0.08).max_over_states,
                ref,
                5.0e-4,
            )
        )

    # Discrepancy 1: the quoted Pauli-X averages (1.6% -> 0.8%) match a variant
    # whose noise coefficient multiplies both odd populations.  The exact
    # channel sides with the single-population form: an |01> input never
    # produces a wrong herald.
    cfg = ProtocolConfig(n=2, phi=0.9 * pi, noise=NoiseModel.pauli_x(0.08), correction="none")
    ket01 = np.array([0.0, 1.0, 0.0, 0.0], dtype=complex)
    err01 = exact_error_probability(cfg, ket01)
    rows.append(
        _reference_row(
            "finding:pauli_x:err01_exact",
            "exact channel error probability for |01> input (p_x=0.08, n=2)",
            err01,
            0.0,
            1e-12,
        )
    )
    for n in (1, 2):
        rep = analytics.errp_pauli_x(n, 0.9 * pi, 0.08)
        doubled = rep.haar_average + rep.coefficients[2] / 4.0
        rows.append(
            _reference_row(
                f"finding:pauli_x:avg_n{n}_implemented",
                f"Haar-average from the implemented form, n={n}",
                rep.haar_average,
                (0.016, 0.008)[n - 1],
                0.0,
                informational=True,
            )
        )
        rows.append(
            _reference_row(
                f"finding:pauli_x:avg_n{n}_both_odd_variant",
                f"Haar-average if the noise term also hit |c01|^2, n={n}",
                doubled,
                (0.016, 0.008)[n - 1],
                0.0,
                informational=True,
            )
        )

    # Discrepancy 2: the quoted imbalanced-gate figure (1.2% at
    # delta_phi=0.08pi, n=2) is not reproduced; both the closed form and the
    # exact channel give 0.79%.
    delta = 0.04 * np.pi
    imb = analytics.errp_imbalanced(2, 0.9 * pi, delta, -delta)
    cfg = ProtocolConfig(
        n=2,
        phi=0.9 * pi,
        noise=NoiseModel.imbalanced(delta, -delta),
        correction="none",
    )
    ket = np.array([0.0, 1.0, 0.0, 0.0], dtype=complex)
    rows.append(
        _reference_row(
            "finding:imbalanced:max_n2_closed",
            "closed-form max error probability, delta_phi=0.08pi, n=2",
            imb.max_over_states,
            0.012,
            0.0,
            informational=True,
        )
    )
    rows.append(
        _reference_row(
            "finding:imbalanced:max_n2_exact",
            "exact-channel value on the max-coefficient input",
            exact_error_probability(cfg, ket),
            imb.max_over_states,
            EQUIV_TOL,
        )
    )

    # Discrepancy 3: the averaged-fidelity reference (0.96 at w=0.04pi) is not
    # reached; the faithful estimator peaks near 0.995, consistent with the
    # error-probability references above.
    best = 0.0
    for n in range(1, 9):
        cfg = ProtocolConfig(n=n, phi=0.9 * pi, noise=NoiseModel.gaussian(0.04 * pi))
        best = max(best, gaussian_avg_fidelity(cfg, 256, 200, seed=seed).mean)
    rows.append(
        _reference_row(
            "finding:gaussian:best_fidelity",
            "best averaged channel fidelity over n<=8, w=0.04pi (reference 0.96)",
            best,
            0.96,
            0.0,
            informational=True,
        )
    )
    return rows


def run_oracle_audit(grid_size: int = 500, seed: int = 0, n_max: int = 5) -> AuditReport:
    """Run the full equivalence suite plus the reference-figure re-derivations.

    ``grid_size`` sets the number of random tuples per error model; the
    completeness and rank-2 checks are run on max(grid_size, 1000) cases to
    match the property-suite requirements.
    """
    rng = np.random.default_rng(seed)
    rows = []
    rows += _closed_vs_exact(rng, grid_size, n_max)
    rows += _gaussian_per_sample_vs_exact(rng, grid_size, n_max)
    rows += _gaussian_quadrature_check()
    rows += _completeness_check(rng, max(grid_size, 1000))
    rows += _rank2_check(rng, max(grid_size, 1000))
    rows += _reduction_checks(rng, max(grid_size // 5, 50))
    rows += _reference_checks(seed)
    return AuditReport(tuple(rows))

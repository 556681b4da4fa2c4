"""Simulator tests: exact channel output, fidelity estimators, trajectory sampling."""

import numpy as np
import pytest

from paritysim import simulate
from paritysim.kraus import NoiseModel, compose_protocol_channel
from paritysim.quantum import (
    haar_random_state,
    outer,
    parity_split,
    rank2_fidelity,
)
from paritysim.simulate import (
    FidelityEstimate,
    ProtocolConfig,
    avg_channel_fidelity,
    exact_output,
    gaussian_avg_fidelity,
    naive_avg_fidelity,
    trajectory_sample,
)

PI = np.pi
KET00 = np.array([1, 0, 0, 0], dtype=complex)
KET01 = np.array([0, 1, 0, 0], dtype=complex)
KET10 = np.array([0, 0, 1, 0], dtype=complex)
KET11 = np.array([0, 0, 0, 1], dtype=complex)


class TestConfig:
    def test_measurement_angle_defaults_to_midpoint(self):
        cfg = ProtocolConfig(n=1, phi=0.8 * PI, noise=NoiseModel.imbalanced(0.1, -0.04))
        assert cfg.phi1 == pytest.approx(0.8 * PI + 0.1)
        assert cfg.phi2 == pytest.approx(0.8 * PI - 0.04)
        assert cfg.measurement_angle == pytest.approx(0.8 * PI + 0.03)

    def test_explicit_measurement_angle_wins(self):
        cfg = ProtocolConfig(n=1, phi=0.8 * PI, phi_meas=0.7 * PI)
        assert cfg.measurement_angle == pytest.approx(0.7 * PI)

    def test_rejects_bad_cycle_count(self):
        with pytest.raises(ValueError):
            ProtocolConfig(n=0, phi=0.9 * PI)

    def test_aligned_needs_known_angles(self):
        with pytest.raises(ValueError):
            ProtocolConfig(n=1, phi=0.9 * PI, noise=NoiseModel.pauli_z(0.1), correction="aligned")
        with pytest.raises(ValueError):
            ProtocolConfig(n=1, phi=0.9 * PI, noise=NoiseModel.gaussian(0.1), correction="aligned")


class TestExactOutput:
    def test_cz_reproduces_ideal_projection(self):
        psi = haar_random_state(4, 2)
        cfg = ProtocolConfig(n=1, phi=PI)
        rho_out, probs = exact_output(cfg, outer(psi))
        p_e, psi_e, p_o, psi_o = parity_split(psi)
        ideal = p_e * outer(psi_e) + p_o * outer(psi_o)
        assert np.max(np.abs(rho_out - ideal)) < 1e-12
        assert sum(probs.values()) == pytest.approx(1.0, abs=1e-12)

    def test_many_cycles_converge_to_ideal(self):
        psi = haar_random_state(4, 3)
        cfg = ProtocolConfig(n=8, phi=0.9 * PI)
        rho_out, _ = exact_output(cfg, outer(psi))
        p_e, psi_e, p_o, psi_o = parity_split(psi)
        assert rank2_fidelity(p_e, psi_e, p_o, psi_o, rho_out) >= 1 - 1e-8

    def test_matches_binomial_channel_for_pauli(self):
        psi = haar_random_state(4, 4)
        cfg = ProtocolConfig(n=2, phi=0.9 * PI, noise=NoiseModel.pauli_z(0.02), correction="paper")
        rho_a, probs_a = exact_output(cfg, outer(psi))
        classes = compose_protocol_channel(outer(psi), cfg)
        assert np.max(np.abs(rho_a - classes.output_state())) < 1e-12
        assert np.allclose(list(probs_a.values()), classes.probabilities, atol=1e-12)

    def test_accepts_ket_input(self):
        psi = haar_random_state(4, 5)
        a, _ = exact_output(ProtocolConfig(n=2, phi=0.85 * PI), psi)
        b, _ = exact_output(ProtocolConfig(n=2, phi=0.85 * PI), outer(psi))
        assert np.max(np.abs(a - b)) == 0.0

    def test_rejects_gaussian(self):
        cfg = ProtocolConfig(n=2, phi=0.9 * PI, noise=NoiseModel.gaussian(0.1))
        with pytest.raises(ValueError):
            exact_output(cfg, np.eye(4) / 4)

    def test_trace_is_unity(self):
        rng = np.random.default_rng(6)
        for noise in (NoiseModel.none(), NoiseModel.imbalanced(0.07, 0.02), NoiseModel.pauli_y(0.1)):
            cfg = ProtocolConfig(n=4, phi=0.87 * PI, noise=noise)
            rho_out, _ = exact_output(cfg, outer(haar_random_state(4, rng)))
            assert np.trace(rho_out).real == pytest.approx(1.0, abs=1e-10)


class TestAvgChannelFidelity:
    def test_cz_gives_unit_fidelity(self):
        est = avg_channel_fidelity(ProtocolConfig(n=1, phi=PI), 200, seed=1)
        assert est.mean == pytest.approx(1.0, abs=1e-12)
        assert est.std_dev == pytest.approx(0.0, abs=1e-12)

    def test_infidelity_below_target_by_three_cycles(self):
        est = avg_channel_fidelity(ProtocolConfig(n=3, phi=0.8 * PI), 5000, seed=2)
        assert est.infidelity < 0.001

    def test_deterministic_for_fixed_seed(self):
        cfg = ProtocolConfig(n=2, phi=0.9 * PI, noise=NoiseModel.pauli_x(0.05))
        a = avg_channel_fidelity(cfg, 400, seed=3)
        b = avg_channel_fidelity(cfg, 400, seed=3)
        assert a == b

    def test_seed_required(self):
        with pytest.raises(ValueError):
            avg_channel_fidelity(ProtocolConfig(n=1, phi=0.9 * PI), 100)

    def test_matches_per_state_rank2_route(self):
        # the batch engines must agree with exact_output + rank-2 fidelity
        for noise, corr in (
            (NoiseModel.imbalanced(0.05, -0.02), "aligned"),
            (NoiseModel.pauli_y(0.07), "paper"),
        ):
            cfg = ProtocolConfig(n=3, phi=0.88 * PI, noise=noise, correction=corr)
            states = simulate._state_batch(40, 9)
            if noise.is_pauli:
                fast = simulate._fidelities_from_rho(states, simulate._pauli_rho_out(states, cfg))
            else:
                fast = simulate._fidelities_pure(states, simulate._pure_class_diags(cfg))
            for psi, f_fast in zip(states, fast):
                rho_out, _ = exact_output(cfg, outer(psi))
                p_e, psi_e, p_o, psi_o = parity_split(psi)
                assert f_fast == pytest.approx(
                    rank2_fidelity(p_e, psi_e, p_o, psi_o, rho_out), abs=1e-12
                )

    def test_monotone_in_phi_toward_cz(self):
        means = [
            avg_channel_fidelity(ProtocolConfig(n=2, phi=f * PI), 2000, seed=4).mean
            for f in (0.7, 0.8, 0.9, 1.0)
        ]
        assert all(b > a for a, b in zip(means, means[1:]))


class TestGaussianFidelity:
    def test_zero_width_equals_noiseless_estimator(self):
        cfg0 = ProtocolConfig(n=3, phi=0.9 * PI)
        cfgw = ProtocolConfig(n=3, phi=0.9 * PI, noise=NoiseModel.gaussian(0.0))
        a = avg_channel_fidelity(cfg0, 400, seed=5)
        b = gaussian_avg_fidelity(cfgw, 400, 4, seed=5)
        assert b.mean == a.mean

    def test_requires_gaussian_noise(self):
        with pytest.raises(ValueError):
            gaussian_avg_fidelity(ProtocolConfig(n=1, phi=0.9 * PI), 100, 10, seed=1)

    def test_deterministic(self):
        cfg = ProtocolConfig(n=2, phi=0.9 * PI, noise=NoiseModel.gaussian(0.04 * PI))
        assert gaussian_avg_fidelity(cfg, 100, 20, seed=6) == gaussian_avg_fidelity(
            cfg, 100, 20, seed=6
        )

    def test_std_error_shrinks_with_noise_samples(self):
        cfg = ProtocolConfig(n=2, phi=0.9 * PI, noise=NoiseModel.gaussian(0.04 * PI))
        counts = [50, 100, 200, 400, 800]
        errors = [gaussian_avg_fidelity(cfg, 64, m, seed=7).std_error for m in counts]
        slope = np.polyfit(np.log(counts), np.log(errors), 1)[0]
        assert slope == pytest.approx(-0.5, abs=0.15)


class TestNaiveFidelity:
    def test_cz_is_perfect_for_all_nestings(self):
        for k in (1, 3, 6):
            est = naive_avg_fidelity(PI, k, 300, seed=8)
            assert est.mean == pytest.approx(1.0, abs=1e-12)

    def test_infidelity_non_decreasing_in_nesting(self):
        for phi_frac in (0.8, 0.85, 0.9):
            series = [
                naive_avg_fidelity(phi_frac * PI, k, 3000, seed=9).infidelity for k in range(1, 7)
            ]
            assert all(b >= a - 1e-12 for a, b in zip(series, series[1:]))

    def test_worse_than_protocol_beyond_one_cycle(self):
        naive1 = naive_avg_fidelity(0.8 * PI, 1, 500, seed=10).infidelity
        for n in (2, 3, 4):
            ours = avg_channel_fidelity(ProtocolConfig(n=n, phi=0.8 * PI), 500, seed=10).infidelity
            assert naive1 > ours

    def test_uncorrected_variant_supported(self):
        est = naive_avg_fidelity(0.8 * PI, 2, 300, seed=11, correction="none")
        assert 0.0 < est.mean < 1.0


class TestTrajectory:
    def test_cz_odd_input_always_heralds_odd(self):
        cfg = ProtocolConfig(n=3, phi=PI)
        res = trajectory_sample(cfg, KET01, 2000, seed=12)
        assert res.counts["odd@3"] == 2000
        assert res.error_probability == 0.0

    def test_born_consistency_with_exact_channel(self):
        rng = np.random.default_rng(13)
        shots = 100_000
        for noise in (NoiseModel.none(), NoiseModel.imbalanced(0.08, -0.03), NoiseModel.pauli_z(0.05)):
            psi = haar_random_state(4, rng)
            cfg = ProtocolConfig(n=3, phi=0.85 * PI, noise=noise)
            res = trajectory_sample(cfg, psi, shots, seed=14)
            _, probs = exact_output(cfg, outer(psi))
            for label, prob in probs.items():
                sigma = np.sqrt(max(prob * (1 - prob), 1e-12) / shots)
                assert abs(res.frequency(label) - prob) < 4 * sigma

    def test_perfect_protocol_error_rate(self):
        cfg = ProtocolConfig(n=2, phi=0.9 * PI)
        shots = 10**6
        res = trajectory_sample(cfg, KET00, shots, seed=15)
        exact = np.cos(0.45 * PI) ** 4
        sigma = np.sqrt(exact * (1 - exact) / shots)
        assert abs(res.error_probability - exact) < 3 * sigma

    def test_gaussian_matches_closed_form_coefficient(self):
        from paritysim.analytics import errp_gaussian

        cfg = ProtocolConfig(n=2, phi=0.9 * PI, noise=NoiseModel.gaussian(0.04 * PI))
        shots = 10**6
        res = trajectory_sample(cfg, KET11, shots, seed=16)
        exact = errp_gaussian(2, 0.9 * PI, 0.04 * PI).coefficients[3]
        sigma = np.sqrt(exact * (1 - exact) / shots)
        assert abs(res.error_probability - exact) < 3 * sigma

    def test_bit_identical_for_fixed_seed(self):
        cfg = ProtocolConfig(n=2, phi=0.9 * PI, noise=NoiseModel.pauli_x(0.08))
        a = trajectory_sample(cfg, KET10, 50_000, seed=17)
        b = trajectory_sample(cfg, KET10, 50_000, seed=17)
        assert a.counts == b.counts
        assert a.error_counts == b.error_counts

    def test_conditional_states_are_normalized(self):
        cfg = ProtocolConfig(n=2, phi=0.88 * PI, noise=NoiseModel.pauli_y(0.1))
        res = trajectory_sample(cfg, haar_random_state(4, 18), 20_000, seed=19)
        for label, rho in res.conditional_states.items():
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)
            assert np.max(np.abs(rho - rho.conj().T)) < 1e-10


class TestEstimateType:
    def test_std_error_uses_the_right_count(self):
        single = FidelityEstimate(0.9, 0.1, n_states=400, n_noise_samples=1, seed=0)
        assert single.std_error == pytest.approx(0.1 / 20)
        sampled = FidelityEstimate(0.9, 0.1, n_states=400, n_noise_samples=100, seed=0)
        assert sampled.std_error == pytest.approx(0.1 / 10)

    def test_infidelity(self):
        assert FidelityEstimate(0.97, 0.0, 10, 1, 0).infidelity == pytest.approx(0.03)

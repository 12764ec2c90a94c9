"""Operator layer: spaces, embeddings, generators, steady states, currents."""

import numpy as np
import pytest
import scipy.linalg

from qtricycle import (
    DensityOperator,
    GKSSector,
    HilbertSpace,
    LindbladTerm,
    Operator,
    Superoperator,
    build_liouvillian,
    channel_current,
    ladder_pair,
    steady_state,
    tensor_embed,
    unvec,
    vec,
)
from qtricycle.errors import (
    DegenerateSteadyStateWarning,
    HermiticityError,
    SpaceMismatchError,
    StateValidationError,
)

SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def qubit(label="q"):
    return HilbertSpace(((label, 2),))


def thermal_qubit_liouvillian(gamma_down, gamma_up, space=None, channel=None):
    space = space or qubit()
    sm = Operator(space, SIGMA_MINUS)
    return build_liouvillian(
        None,
        [
            LindbladTerm(sm, gamma_down, channel=channel),
            LindbladTerm(sm.dagger(), gamma_up, channel=channel),
        ],
    )


class TestHilbertSpace:
    def test_total_dim_and_labels(self):
        space = HilbertSpace((("osc", 5), ("q", 2)))
        assert space.total_dim == 10
        assert space.labels == ("osc", "q")
        assert space.dims == (5, 2)
        assert space.factor_index("q") == 1
        assert space.dim_of("osc") == 5

    def test_rejects_duplicate_labels(self):
        with pytest.raises(ValueError):
            HilbertSpace((("a", 2), ("a", 3)))

    def test_rejects_trivial_factor(self):
        with pytest.raises(ValueError):
            HilbertSpace((("a", 1),))

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            HilbertSpace((("a", 2),)).factor_index("b")


class TestOperator:
    def test_hermitian_flag_is_checked(self):
        space = qubit()
        Operator(space, SIGMA_Z, hermitian=True)
        with pytest.raises(HermiticityError):
            Operator(space, SIGMA_MINUS, hermitian=True)

    def test_algebra_preserves_hermitian_flag(self):
        space = qubit()
        z = Operator(space, SIGMA_Z, hermitian=True)
        assert (z + z).hermitian
        assert (2.0 * z).hermitian
        assert not (2.0j * z).hermitian
        assert (-z).hermitian

    def test_space_mismatch(self):
        a = Operator(qubit("a"), SIGMA_Z)
        b = Operator(qubit("b"), SIGMA_Z)
        with pytest.raises(SpaceMismatchError):
            _ = a + b

    def test_matrix_is_read_only(self):
        op = Operator(qubit(), SIGMA_Z)
        with pytest.raises(ValueError):
            op.matrix[0, 0] = 5.0


class TestVectorization:
    def test_round_trip(self):
        rng = np.random.default_rng(7)
        mat = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        assert np.array_equal(unvec(vec(mat), 4), mat)

    def test_column_stacking_identity(self):
        rng = np.random.default_rng(8)
        a, x, b = (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(3))
        lhs = vec(a @ x @ b)
        rhs = np.kron(b.T, a) @ vec(x)
        assert np.allclose(lhs, rhs, atol=1e-13)


class TestTensorEmbed:
    def test_identity_embeds_to_identity(self):
        space = HilbertSpace((("a", 3), ("b", 2)))
        ident = Operator(HilbertSpace((("a", 3),)), np.eye(3), hermitian=True)
        out = tensor_embed(ident, space, "a")
        assert np.array_equal(out.matrix, np.eye(6))

    def test_sigma_z_on_first_of_two_qubits(self):
        space = HilbertSpace((("q0", 2), ("q1", 2)))
        z = Operator(HilbertSpace((("q0", 2),)), SIGMA_Z, hermitian=True)
        out = tensor_embed(z, space, "q0")
        assert np.array_equal(out.matrix, np.diag([1.0, 1.0, -1.0, -1.0]))

    def test_lowering_operator_on_oscillator_qubit_product(self):
        # factor 0 slowest: flat index = oscillator_level * 2 + qubit_state
        space = HilbertSpace((("osc", 3), ("q", 2)))
        a, _ = ladder_pair(3, label="osc")
        out = tensor_embed(a, space, "osc").matrix
        expected = np.zeros((6, 6), dtype=complex)
        for i in range(2):
            for s in range(2):
                expected[i * 2 + s, (i + 1) * 2 + s] = np.sqrt(i + 1.0)
        assert np.array_equal(out, expected)

    def test_dimension_mismatch(self):
        space = HilbertSpace((("osc", 3), ("q", 2)))
        a, _ = ladder_pair(4, label="osc")
        with pytest.raises(SpaceMismatchError):
            tensor_embed(a, space, "osc")


class TestLadderPair:
    def test_smallest_truncation(self):
        a, adag = ladder_pair(2)
        assert np.array_equal(a.matrix, [[0.0, 1.0], [0.0, 0.0]])
        assert np.array_equal(adag.matrix, a.matrix.conj().T)

    def test_commutator_defect_in_top_state(self):
        n = 6
        a, adag = ladder_pair(n)
        comm = a.matrix @ adag.matrix - adag.matrix @ a.matrix
        expected = np.eye(n)
        expected[-1, -1] = -(n - 1)
        assert np.allclose(comm, expected, atol=1e-13)

    def test_annihilates_vacuum(self):
        a, _ = ladder_pair(5)
        vac = np.zeros(5)
        vac[0] = 1.0
        assert np.allclose(a.matrix @ vac, 0.0)

    def test_rejects_too_small(self):
        with pytest.raises(ValueError):
            ladder_pair(1)


class TestBuildLiouvillian:
    def test_pure_commutator_spectrum(self):
        z = Operator(qubit(), SIGMA_Z, hermitian=True)
        gen = build_liouvillian(z, [])
        eigvals = np.linalg.eigvals(gen.matrix)
        expected = np.array([0.0, 0.0, 2.0j, -2.0j])
        assert np.allclose(np.sort_complex(eigvals), np.sort_complex(expected), atol=1e-12)

    def test_negative_rate_rejected(self):
        sm = Operator(qubit(), SIGMA_MINUS)
        with pytest.raises(ValueError):
            LindbladTerm(sm, -0.1)

    def test_channel_partition(self):
        gen = thermal_qubit_liouvillian(0.3, 0.1, channel="bath")
        assert gen.channel_names == ("bath",)
        assert np.allclose(gen.channel("bath").matrix, gen.matrix, atol=1e-14)
        with pytest.raises(KeyError):
            gen.channel("nope")

    def test_trace_preservation_validated(self):
        space = qubit()
        bad = np.eye(4, dtype=complex)
        with pytest.raises(ValueError, match="trace preserving"):
            Superoperator(space, bad)

    def test_gks_sector_matches_diagonal_terms(self):
        space = qubit()
        sm = Operator(space, SIGMA_MINUS)
        sp_ = sm.dagger()
        diag = build_liouvillian(
            None, [LindbladTerm(sm, 0.4), LindbladTerm(sp_, 0.2)]
        )
        sector = build_liouvillian(
            None,
            [GKSSector((sm, sp_), np.diag([0.4, 0.2]))],
        )
        assert np.allclose(diag.matrix, sector.matrix, atol=1e-14)

    def test_indefinite_sector_is_trace_preserving(self):
        space = qubit()
        sm = Operator(space, SIGMA_MINUS)
        coeff = np.array([[0.5, 0.4], [0.4, 0.1]])  # det < 0: indefinite
        gen = build_liouvillian(None, [GKSSector((sm, sm.dagger()), coeff)])
        ident = vec(np.eye(2))
        assert np.max(np.abs(gen.matrix.conj().T @ ident)) < 1e-12

    def test_sector_requires_hermitian_coefficients(self):
        sm = Operator(qubit(), SIGMA_MINUS)
        with pytest.raises(HermiticityError):
            GKSSector((sm, sm.dagger()), np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestSteadyState:
    def test_thermal_qubit_populations(self):
        # rates (gamma*(N+1), gamma*N) should stabilize populations
        # (N+1, N) / (2N + 1)
        n_bar = 0.7
        gamma = 0.25
        gen = thermal_qubit_liouvillian(gamma * (n_bar + 1.0), gamma * n_bar)
        rho = steady_state(gen)
        pops = np.diag(rho.matrix).real
        expected = np.array([n_bar + 1.0, n_bar]) / (2.0 * n_bar + 1.0)
        assert np.allclose(pops, expected, atol=1e-12)
        assert abs(rho.matrix[0, 1]) < 1e-12

    def test_detailed_balance_gives_gibbs(self):
        # SIGMA_MINUS moves population from state 1 to state 0, so state 0
        # is the ground level: H = omega * |1><1|
        omega, temperature = 1.3, 0.45
        gamma_down, gamma_up = 0.2, 0.2 * np.exp(-omega / temperature)
        space = qubit()
        h = Operator(space, omega * np.diag([0.0, 1.0]), hermitian=True)
        sm = Operator(space, SIGMA_MINUS)
        gen = build_liouvillian(
            h, [LindbladTerm(sm, gamma_down), LindbladTerm(sm.dagger(), gamma_up)]
        )
        rho = steady_state(gen)
        gibbs = scipy.linalg.expm(-h.matrix / temperature)
        gibbs /= np.trace(gibbs).real
        assert np.max(np.abs(rho.matrix - gibbs)) < 1e-10

    def test_thermal_oscillator_gibbs(self):
        omega, temperature, kappa = 2.0, 0.9, 0.05
        n_bar = 1.0 / np.expm1(omega / temperature)
        a, adag = ladder_pair(14, label="osc")
        num = adag @ a
        h = Operator(a.space, omega * num.matrix, hermitian=True)
        gen = build_liouvillian(
            h,
            [
                LindbladTerm(a, kappa * (n_bar + 1.0)),
                LindbladTerm(adag, kappa * n_bar),
            ],
        )
        rho = steady_state(gen, method="direct")
        levels = omega * np.arange(14)
        gibbs = np.exp(-levels / temperature)
        gibbs /= gibbs.sum()
        # top of the truncated ladder deviates; compare low levels
        assert np.allclose(np.diag(rho.matrix).real[:8], gibbs[:8], atol=1e-8)

    def test_eig_and_direct_agree(self):
        gen = thermal_qubit_liouvillian(0.37, 0.12)
        rho_eig = steady_state(gen, method="eig")
        rho_direct = steady_state(gen, method="direct")
        assert np.max(np.abs(rho_eig.matrix - rho_direct.matrix)) < 1e-12

    def test_degenerate_kernel_warns_and_propagates(self):
        # one thermal qubit, one untouched qubit: every state of the idle
        # factor is stationary, so the kernel is degenerate
        space = HilbertSpace((("hot", 2), ("idle", 2)))
        sm_local = Operator(qubit("hot"), SIGMA_MINUS)
        sm = tensor_embed(sm_local, space, "hot")
        gen = build_liouvillian(
            None, [LindbladTerm(sm, 0.3), LindbladTerm(sm.dagger(), 0.1)]
        )
        with pytest.warns(DegenerateSteadyStateWarning):
            rho = steady_state(gen)
        # propagation from maximally mixed keeps the idle factor maximally mixed
        pops = np.diag(rho.matrix).real
        thermal = np.array([0.3, 0.1]) / 0.4
        expected = np.kron(thermal, [0.5, 0.5])
        assert np.allclose(pops, expected, atol=1e-9)

    def test_cross_check_accepts_consistent_state(self):
        gen = thermal_qubit_liouvillian(0.3, 0.1)
        rho = steady_state(gen, cross_check=True)
        assert abs(np.trace(rho.matrix) - 1.0) < 1e-12

    def test_residual_of_returned_state(self):
        gen = thermal_qubit_liouvillian(0.52, 0.11)
        rho = steady_state(gen)
        assert np.max(np.abs(gen.apply(rho.matrix))) < 1e-10


class TestDensityOperator:
    def test_rejects_bad_trace(self):
        with pytest.raises(StateValidationError):
            DensityOperator(qubit(), np.diag([0.9, 0.2]))

    def test_rejects_nonhermitian(self):
        mat = np.array([[0.5, 0.3], [0.0, 0.5]])
        with pytest.raises(StateValidationError):
            DensityOperator(qubit(), mat)

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(StateValidationError):
            DensityOperator(qubit(), np.diag([1.2, -0.2]))

    def test_tolerates_tiny_negative_eigenvalue(self):
        rho = DensityOperator(qubit(), np.diag([1.0 + 5e-10, -5e-10]))
        assert rho.real_expectation(Operator(qubit(), SIGMA_Z, hermitian=True)) > 0.99


class TestChannelCurrent:
    @staticmethod
    def _qubit_setup(gamma_down, gamma_up, omega=1.0):
        space = qubit()
        h = Operator(space, omega * np.diag([0.0, 1.0]), hermitian=True)
        sm = Operator(space, SIGMA_MINUS)
        gen = build_liouvillian(
            h,
            [
                LindbladTerm(sm, gamma_down, channel="bath"),
                LindbladTerm(sm.dagger(), gamma_up, channel="bath"),
            ],
        )
        return space, h, gen

    def test_equilibrium_current_vanishes(self):
        space, h, gen = self._qubit_setup(0.3, 0.1)
        rho = steady_state(gen)
        assert abs(channel_current(gen.channel("bath"), rho, h)) < 1e-12

    def test_hot_state_releases_energy(self):
        # excited-state population above the bath's stationary value: energy
        # must flow out of the system, so the current into it is negative
        space, h, gen = self._qubit_setup(0.3, 0.1)
        hot = DensityOperator(space, np.diag([0.4, 0.6]))
        assert channel_current(gen.channel("bath"), hot, h) < 0.0

    def test_two_bath_currents_balance(self):
        space = qubit()
        h = Operator(space, 0.8 * SIGMA_Z, hermitian=True)
        sm = Operator(space, SIGMA_MINUS)
        gen = build_liouvillian(
            h,
            [
                LindbladTerm(sm, 0.31, channel="cold"),
                LindbladTerm(sm.dagger(), 0.02, channel="cold"),
                LindbladTerm(sm, 0.11, channel="hot"),
                LindbladTerm(sm.dagger(), 0.09, channel="hot"),
            ],
        )
        rho = steady_state(gen)
        total = channel_current(gen.channel("cold"), rho, h) + channel_current(
            gen.channel("hot"), rho, h
        )
        assert abs(total) < 1e-9


class TestInvariantSweeps:
    """Randomized structural checks on generators up to dimension 12."""

    @staticmethod
    def _random_generator(rng, dim, tagged=False):
        space = HilbertSpace((("sys", dim),))
        h_raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = Operator(space, (h_raw + h_raw.conj().T) / 2.0, hermitian=True)
        terms = []
        for k in range(rng.integers(1, 4)):
            v = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            terms.append(
                LindbladTerm(
                    Operator(space, v),
                    float(rng.uniform(0.01, 1.0)),
                    channel=f"ch{k}" if tagged else None,
                )
            )
        return space, h, build_liouvillian(h, terms)

    def test_trace_and_hermiticity_preserved(self):
        rng = np.random.default_rng(101)
        for _ in range(25):
            dim = int(rng.integers(2, 13))
            space, _, gen = self._random_generator(rng, dim)
            raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            rho = raw @ raw.conj().T
            rho /= np.trace(rho).real
            out = gen.apply(rho)
            assert abs(np.trace(out)) < 1e-10
            assert np.max(np.abs(out - out.conj().T)) < 1e-10

    def test_steady_states_are_positive(self):
        rng = np.random.default_rng(102)
        for _ in range(15):
            dim = int(rng.integers(2, 9))
            _, _, gen = self._random_generator(rng, dim)
            rho = steady_state(gen)
            assert np.linalg.eigvalsh(rho.matrix).min() >= -1e-9

    def test_tagged_channel_currents_sum_to_zero(self):
        rng = np.random.default_rng(103)
        for _ in range(10):
            dim = int(rng.integers(2, 9))
            space, h, gen = self._random_generator(rng, dim, tagged=True)
            rho = steady_state(gen)
            total = sum(
                channel_current(gen.channel(name), rho, h)
                for name in gen.channel_names
            )
            assert abs(total) < 1e-9 * max(1.0, np.abs(h.matrix).max())

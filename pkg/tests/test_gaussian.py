import numpy as np
import pytest

from floqimp.model import ChainParams, DriveFamily, DriveSpec, single_particle_hamiltonian
from floqimp.gaussian import (
    DegenerateFermiLevel,
    GaussianState,
    Propagator,
    RankDeficient,
    entanglement_entropy,
    entanglement_profile,
    evolve,
    ground_state,
    half_chain_entropy,
    half_filled_ground_state,
    harmonic_propagator,
    two_step_propagator,
)
from floqimp.floquet_analytics import floquet_hamiltonian_exact


def uniform_h(L):
    return single_particle_hamiltonian(ChainParams(half_length=L), 1.0)


def test_ground_state_four_sites_site_occupation():
    # half-filled open chain is particle-hole symmetric: <n_j> = 1/2 exactly
    state = ground_state(uniform_h(2), 2)
    c = state.correlation_matrix()
    assert np.max(np.abs(np.diag(c).real - 0.5)) < 1e-12
    assert np.trace(c).real == pytest.approx(2.0, abs=1e-12)
    # independent oracle: fill the two lowest analytic standing waves
    k = np.arange(1, 5)
    modes = np.sqrt(2.0 / 5.0) * np.sin(np.outer(np.arange(1, 5), k[:2] * np.pi / 5.0))
    c_oracle = modes @ modes.T
    assert np.max(np.abs(c - c_oracle)) < 1e-12


def test_ground_state_empty():
    state = ground_state(uniform_h(3), 0)
    assert state.filling == 0
    assert np.array_equal(state.correlation_matrix(), np.zeros((6, 6), dtype=complex))


def test_ground_state_correlation_invariants():
    state = half_filled_ground_state(ChainParams(half_length=20))
    c = state.correlation_matrix()
    assert np.max(np.abs(c - c.conj().T)) < 1e-12
    assert np.max(np.abs(c @ c - c)) < 1e-9
    g = state.orbitals.conj().T @ state.orbitals
    assert np.max(np.abs(g - np.eye(20))) < 1e-10


def test_ground_state_degenerate_fermi_level():
    h = np.diag([0.0, 1.0, 1.0, 2.0]).astype(complex)
    with pytest.raises(DegenerateFermiLevel):
        ground_state(h, 2)


def test_ground_state_phase_fixing_deterministic():
    h = uniform_h(10)
    a = ground_state(h, 10).orbitals
    b = ground_state(h, 10).orbitals
    assert np.array_equal(a, b)
    lead = np.abs(a).argmax(axis=0)
    lead_vals = a[lead, np.arange(a.shape[1])]
    assert np.all(lead_vals.imag == 0) and np.all(lead_vals.real > 0)


def test_half_chain_entropy_log_scaling():
    # central-cut entropy of the critical ground state grows as (1/6) ln(2L)
    sizes = [50, 100, 200]
    ents = []
    for L in sizes:
        ents.append(half_chain_entropy(half_filled_ground_state(ChainParams(half_length=L))))
    slope = np.polyfit(np.log(np.array(sizes) * 2.0), ents, 1)[0]
    assert 0.13 < slope < 0.20


def test_two_step_propagator_uniform_limit():
    params = ChainParams(half_length=10)
    T = 1.7
    drive = DriveSpec(DriveFamily.TWO_STEP, period=T, lam=1.0)
    u = two_step_propagator(params, drive).matrix
    h = single_particle_hamiltonian(params, 1.0)
    w, v = np.linalg.eigh(h)
    expected = (v * np.exp(-1j * w * T)) @ v.conj().T
    assert np.max(np.abs(u - expected)) < 1e-12


def test_two_step_propagator_short_period_limit():
    params = ChainParams(half_length=8)
    T = 1e-4
    drive = DriveSpec(DriveFamily.TWO_STEP, period=T, lam=0.5)
    u = two_step_propagator(params, drive).matrix
    h0 = single_particle_hamiltonian(params, 1.0)
    h1 = single_particle_hamiltonian(params, 0.5)
    bound = T * (np.linalg.norm(h0, 2) + np.linalg.norm(h1, 2)) / 2.0 + 10 * T * T
    assert np.max(np.abs(u - np.eye(16))) <= bound


def test_two_step_propagator_unitary_at_figure_scale():
    params = ChainParams(half_length=200)
    drive = DriveSpec(DriveFamily.TWO_STEP, period=2.5, lam=0.5)
    prop = two_step_propagator(params, drive)
    assert prop.unitary
    assert np.max(np.abs(np.abs(np.linalg.eigvals(prop.matrix)) - 1.0)) < 1e-10


def test_harmonic_propagator_single_step_definition():
    params = ChainParams(half_length=6)
    T = 1.3
    u = harmonic_propagator(params, T, n_sub=1).matrix
    from floqimp.model import hamiltonian_at

    h = hamiltonian_at(params, DriveSpec(DriveFamily.HARMONIC, period=T), T / 2.0)
    w, v = np.linalg.eigh(h)
    expected = (v * np.exp(-1j * w * T)) @ v.conj().T
    assert np.max(np.abs(u - expected)) < 1e-13


def test_harmonic_propagator_second_order_convergence():
    params = ChainParams(half_length=10)
    T = 2.5
    hf = floquet_hamiltonian_exact(params, T)
    w, v = np.linalg.eigh(hf)
    exact = (v * np.exp(-1j * w * T)) @ v.conj().T
    errs = [
        np.max(np.abs(harmonic_propagator(params, T, n_sub=n).matrix - exact))
        for n in (64, 128, 256)
    ]
    for e1, e2 in zip(errs, errs[1:]):
        assert 3.5 < e1 / e2 < 4.5


def test_harmonic_stroboscopic_entropy_converges_second_order():
    # entanglement profile from the midpoint product approaches the profile
    # evolved with the closed-form one-period exponential at rate (T/n_sub)^2
    params = ChainParams(half_length=20)
    T = 2.5
    hf = floquet_hamiltonian_exact(params, T)
    w, v = np.linalg.eigh(hf)
    exact = Propagator(matrix=(v * np.exp(-1j * w * T)) @ v.conj().T, unitary=True)
    state0 = half_filled_ground_state(params)
    ref = state0
    for _ in range(5):
        ref = evolve(ref, exact, renormalize=False)
    ref_prof = entanglement_profile(ref).entropies
    errs = []
    for n_sub in (16, 32, 64):
        st = state0
        prop = harmonic_propagator(params, T, n_sub=n_sub)
        for _ in range(5):
            st = evolve(st, prop, renormalize=False)
        errs.append(np.max(np.abs(entanglement_profile(st).entropies - ref_prof)))
    for e1, e2 in zip(errs, errs[1:]):
        assert 3.0 < e1 / e2 < 5.0


def test_evolve_identity_keeps_state():
    state = half_filled_ground_state(ChainParams(half_length=6))
    prop = Propagator(matrix=np.eye(12, dtype=complex), unitary=True)
    out = evolve(state, prop, renormalize=False)
    assert np.array_equal(out.orbitals, state.orbitals)


def test_evolve_unitary_preserves_orthonormality_without_qr():
    params = ChainParams(half_length=30)
    prop = two_step_propagator(params, DriveSpec(DriveFamily.TWO_STEP, period=2.5, lam=0.5))
    state = evolve(half_filled_ground_state(params), prop, renormalize=False)
    g = state.orbitals.conj().T @ state.orbitals
    assert np.max(np.abs(g - np.eye(30))) < 1e-10


def test_evolve_renormalized_matches_plain_for_unitary():
    params = ChainParams(half_length=20)
    prop = two_step_propagator(params, DriveSpec(DriveFamily.TWO_STEP, period=2.0, lam=0.3))
    state = half_filled_ground_state(params)
    a = evolve(state, prop, renormalize=False)
    b = evolve(state, prop, renormalize=True)
    # same subspace: correlation matrices agree
    assert np.max(np.abs(a.correlation_matrix() - b.correlation_matrix())) < 1e-10


def test_evolve_requires_renormalization_for_nonunitary():
    params = ChainParams(half_length=10)
    drive = DriveSpec(DriveFamily.NON_HERMITIAN_TWO_STEP, period=2.5, lam=1.2)
    prop = two_step_propagator(params, drive)
    assert not prop.unitary
    with pytest.raises(ValueError):
        evolve(half_filled_ground_state(params), prop, renormalize=False)


def test_evolve_rank_deficient_raises():
    decay = np.diag(np.exp(-200.0 * np.arange(8)).astype(complex))
    prop = Propagator(matrix=decay, unitary=False)
    state = ground_state(uniform_h(4), 4)
    with pytest.raises(RankDeficient):
        evolve(state, prop, renormalize=True)


def test_nonhermitian_no_click_entropy_stays_bounded():
    params = ChainParams(half_length=50)
    drive = DriveSpec(DriveFamily.NON_HERMITIAN_TWO_STEP, period=2.5, lam=1.2)
    prop = two_step_propagator(params, drive)
    state = half_filled_ground_state(params)
    s0 = half_chain_entropy(state)
    for _ in range(100):
        state = evolve(state, prop, renormalize=True)
        g = state.orbitals.conj().T @ state.orbitals
        assert np.max(np.abs(g - np.eye(50))) < 1e-10
    assert half_chain_entropy(state) < s0 + 2.5


def test_entropy_product_state_is_zero():
    phi = np.zeros((6, 3), dtype=complex)
    phi[0, 0] = phi[2, 1] = phi[5, 2] = 1.0
    state = GaussianState(orbitals=phi)
    assert entanglement_entropy(state, (1, 3)) < 1e-12


def test_entropy_single_shared_mode():
    phi = np.full((2, 1), 1.0 / np.sqrt(2.0), dtype=complex)
    state = GaussianState(orbitals=phi)
    assert entanglement_entropy(state, (1, 1)) == pytest.approx(np.log(2.0), abs=1e-12)


def test_entropy_interval_validation():
    state = half_filled_ground_state(ChainParams(half_length=4))
    with pytest.raises(ValueError):
        entanglement_entropy(state, (0, 3))
    with pytest.raises(ValueError):
        entanglement_entropy(state, (3, 9))
    with pytest.raises(ValueError):
        entanglement_entropy(state, (5, 4))


def test_profile_mirror_symmetry_and_peak():
    state = half_filled_ground_state(ChainParams(half_length=200))
    prof = entanglement_profile(state)
    assert np.max(np.abs(prof.entropies - prof.entropies[::-1])) < 1e-9
    # even/odd parity oscillations put the literal argmax on a cut adjacent
    # to the centre; the central value is within the oscillation amplitude
    peak = prof.cuts[np.argmax(prof.entropies)]
    assert abs(int(peak) - 200) <= 1
    assert prof.entropies.max() - prof.entropies[199] < 0.02
    # the bound saturates at the edge cuts (<n> = 1/2), so allow rounding
    page = np.minimum(prof.cuts, 400 - prof.cuts) * np.log(2.0)
    assert np.all(prof.entropies >= 0) and np.all(prof.entropies <= page + 1e-9)


def test_profile_filled_band_is_zero():
    state = ground_state(uniform_h(5), 10)
    prof = entanglement_profile(state)
    assert np.max(prof.entropies) < 1e-10


def test_profile_matches_per_cut_definition():
    state = half_filled_ground_state(ChainParams(half_length=30))
    prof = entanglement_profile(state)
    for cut in (1, 7, 30, 55, 59):
        direct = entanglement_entropy(state, (1, cut))
        assert abs(prof.entropies[cut - 1] - direct) < 1e-9


def test_long_unitary_run_conserves_number_and_purity():
    params = ChainParams(half_length=50)
    prop = two_step_propagator(params, DriveSpec(DriveFamily.TWO_STEP, period=2.5, lam=0.5))
    state = half_filled_ground_state(params)
    for _ in range(1000):
        state = evolve(state, prop, renormalize=False)
    c = state.correlation_matrix()
    assert np.trace(c).real == pytest.approx(50.0, abs=1e-9)
    assert np.max(np.abs(c @ c - c)) < 1e-8

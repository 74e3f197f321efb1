"""Slater-determinant states, stroboscopic propagators, entanglement entropies.

A free-fermion pure state is stored as its orbital matrix Phi (2L x N with
orthonormal columns); every observable follows from the correlation matrix
C = Phi Phi^dagger.  Evolution multiplies the orbitals by a one-period
propagator; non-unitary (no-click) dynamics re-orthonormalises the columns
after every step, which implements the normalised non-Hermitian evolution.

Entropies are reported in nats (natural log).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .model import ChainParams, DriveFamily, DriveSpec, single_particle_hamiltonian

_ORTHO_TOL = 1e-8
_CLIP = 1e-14


class DegenerateFermiLevel(Exception):
    """Raised when the requested filling cuts through a degenerate level."""


class RankDeficient(Exception):
    """Raised when non-unitary evolution collapses the orbital rank."""


@dataclass(frozen=True)
class GaussianState:
    """Slater determinant with orthonormal orbital columns (2L x N)."""

    orbitals: np.ndarray = field(repr=False)

    def __post_init__(self):
        phi = self.orbitals
        if phi.ndim != 2 or phi.shape[0] < phi.shape[1]:
            raise ValueError(f"orbital matrix must be tall, got shape {phi.shape}")
        if phi.shape[1] > 0:
            g = phi.conj().T @ phi
            dev = np.max(np.abs(g - np.eye(phi.shape[1])))
            if dev > _ORTHO_TOL:
                raise ValueError(f"orbitals not orthonormal (deviation {dev:.2e})")

    @property
    def n_sites(self) -> int:
        return self.orbitals.shape[0]

    @property
    def filling(self) -> int:
        return self.orbitals.shape[1]

    def correlation_matrix(self) -> np.ndarray:
        return self.orbitals @ self.orbitals.conj().T


@dataclass(frozen=True)
class Propagator:
    """One-period single-particle evolution operator."""

    matrix: np.ndarray = field(repr=False)
    unitary: bool = True


@dataclass(frozen=True)
class EntanglementProfile:
    """Entropies of the left blocks [1, cut] for every cut = 1 .. 2L-1."""

    cuts: np.ndarray
    entropies: np.ndarray


def _fix_phases(v: np.ndarray) -> np.ndarray:
    """Make the largest-modulus component of each column real positive."""
    if v.shape[1] == 0:
        return v
    idx = np.argmax(np.abs(v), axis=0)
    lead = v[idx, np.arange(v.shape[1])]
    phase = lead / np.abs(lead)
    return v * phase.conj()


def ground_state(h: np.ndarray, filling: int) -> GaussianState:
    """Fill the lowest ``filling`` orbitals of a Hermitian hopping matrix.

    Orbital phases are fixed (largest component real positive) so repeated
    runs are bitwise reproducible.  Raises DegenerateFermiLevel when the gap
    between the highest filled and lowest empty level is below 1e-12.
    """
    n = h.shape[0]
    if not 0 <= filling <= n:
        raise ValueError(f"filling must be in [0, {n}], got {filling}")
    if np.max(np.abs(h - h.conj().T)) > 1e-12:
        raise ValueError("ground_state requires a Hermitian matrix")
    w, v = np.linalg.eigh(h)
    if 0 < filling < n and w[filling] - w[filling - 1] < 1e-12:
        raise DegenerateFermiLevel(
            f"levels {filling} and {filling + 1} are degenerate "
            f"(gap {w[filling] - w[filling - 1]:.2e})"
        )
    return GaussianState(orbitals=_fix_phases(v[:, :filling]))


def half_filled_ground_state(params: ChainParams) -> GaussianState:
    """Ground state of the uniform chain at half filling (the initial state)."""
    return ground_state(single_particle_hamiltonian(params, 1.0), params.half_length)


def _expm_h(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) via eigendecomposition for Hermitian h, Pade otherwise."""
    if np.max(np.abs(h - h.conj().T)) < 1e-12:
        if not np.any(h.imag):
            h = h.real  # real-symmetric solver is noticeably faster
        w, v = np.linalg.eigh(h)
        return (v * np.exp(-1j * w * t)) @ v.conj().T
    return expm(-1j * t * h)


def two_step_propagator(params: ChainParams, drive: DriveSpec) -> Propagator:
    """One-period propagator of the two-step drive, uniform half first.

    U = exp(-i h(lam) T/2) exp(-i h(1) T/2); the right factor acts first.
    Unitary iff |lam| <= 1.
    """
    if drive.family not in (DriveFamily.TWO_STEP, DriveFamily.NON_HERMITIAN_TWO_STEP):
        raise ValueError("two_step_propagator requires a two-step drive family")
    half = drive.period / 2.0
    u_uniform = _expm_h(single_particle_hamiltonian(params, 1.0), half)
    u_defect = _expm_h(single_particle_hamiltonian(params, drive.lam), half)
    return Propagator(matrix=u_defect @ u_uniform, unitary=abs(drive.lam) <= 1.0)


def harmonic_propagator(params: ChainParams, T: float, n_sub: int = 1024) -> Propagator:
    """Midpoint-rule propagator of the harmonic drive over one period.

    Ordered product of n_sub exponentials exp(-i H(t_mid) T/n_sub);
    second-order accurate in T/n_sub.  Serves as the numerical route that
    the closed-form exp(-i h_F T) is checked against.
    """
    if n_sub < 1:
        raise ValueError("n_sub must be >= 1")
    dt = T / n_sub
    n = params.n_sites
    L = params.half_length
    sgn = np.ones(n)
    sgn[L:] = -1.0

    def partial_product(ks):
        # ordered product of the midpoint factors exp(-i H(t_k) dt), first
        # index applied first; the drive is real symmetric, uniform except
        # for the rotating central block
        h = single_particle_hamiltonian(params, 1.0).real
        u = np.eye(n, dtype=complex)
        for k in ks:
            phase = 2.0 * np.pi * (k + 0.5) * dt / T
            c, s = np.cos(phase), np.sin(phase)
            h[L - 1, L] = h[L, L - 1] = -0.5 * c
            h[L - 1, L - 1] = 0.5 * s
            h[L, L] = -0.5 * s
            w, v = np.linalg.eigh(h)
            u = (v * np.exp(-1j * w * dt)) @ (v.T @ u)
        return u

    if n_sub % 4:
        return Propagator(matrix=partial_product(range(n_sub)), unitary=True)
    # the factors obey two exact conjugation symmetries that fold the full
    # ordered product onto its first quarter: H(T/2 - t) = D H(t) D with D
    # the +-1 half-chain gauge, and H(T - t) = P H(t) P with P the spatial
    # reflection; each factor is complex symmetric, so reversed-order
    # partial products are plain transposes.
    u_quarter = partial_product(range(n_sub // 4))
    flipped = u_quarter.T * np.outer(sgn, sgn)
    u_half = flipped @ u_quarter
    u = u_half.T[::-1, ::-1] @ u_half
    return Propagator(matrix=u, unitary=True)


def evolve(state: GaussianState, prop: Propagator, renormalize: bool = True) -> GaussianState:
    """Apply a one-period propagator to the orbitals.

    With ``renormalize`` the propagated orbitals are QR-orthonormalised
    (a no-op up to 1e-10 for unitary propagators); non-unitary propagators
    require it.  Raises RankDeficient when the propagated columns become
    linearly dependent beyond 1e-12 (non-Hermitian decay collision).
    """
    if prop.matrix.shape[1] != state.n_sites:
        raise ValueError("propagator and state dimensions do not match")
    if not prop.unitary and not renormalize:
        raise ValueError("non-unitary evolution requires renormalize=True")
    phi = prop.matrix @ state.orbitals
    if not renormalize:
        return GaussianState(orbitals=phi)
    if phi.shape[1] == 0:
        return GaussianState(orbitals=phi)
    q, r = np.linalg.qr(phi)
    d = np.abs(np.diag(r))
    if d.min() <= d.max() * 1e-12:
        raise RankDeficient("propagated orbitals lost rank")
    phase = np.diag(r) / d
    return GaussianState(orbitals=q * phase)


def _block_entropy(phi: np.ndarray, a: int, b: int) -> float:
    """Entropy of sites [a, b] (1-based, inclusive) from restricted-C spectra."""
    rows = phi[a - 1 : b, :]
    m, n_orb = rows.shape
    if n_orb == 0:
        return 0.0
    if m <= n_orb:
        gram = rows @ rows.conj().T
        pad = 0
    else:
        gram = rows.conj().T @ rows
        pad = m - n_orb
    nu = np.linalg.eigvalsh(gram)
    if pad:
        nu = np.concatenate([np.zeros(pad), nu])
    nu = np.clip(nu, _CLIP, 1.0 - _CLIP)
    return float(-np.sum(nu * np.log(nu) + (1.0 - nu) * np.log(1.0 - nu)))


def entanglement_entropy(state: GaussianState, interval: tuple[int, int]) -> float:
    """Von Neumann entropy (nats) of the sites in ``interval`` = (a, b), 1-based.

    Eigenvalues of the restricted correlation matrix are clipped to
    [1e-14, 1 - 1e-14] before entering the binary-entropy sum.
    """
    a, b = interval
    if not 1 <= a <= b <= state.n_sites:
        raise ValueError(f"interval {interval} out of range for {state.n_sites} sites")
    return _block_entropy(state.orbitals, a, b)


def half_chain_entropy(state: GaussianState) -> float:
    return _block_entropy(state.orbitals, 1, state.n_sites // 2)


def entanglement_profile(state: GaussianState) -> EntanglementProfile:
    """Entropy of every left block [1, cut], cut = 1 .. 2L-1."""
    n = state.n_sites
    cuts = np.arange(1, n)
    ent = np.array([_block_entropy(state.orbitals, 1, c) for c in cuts])
    return EntanglementProfile(cuts=cuts, entropies=ent)


def build_propagator(params: ChainParams, drive: DriveSpec, n_sub: int = 1024) -> Propagator:
    """One-period propagator for any drive family (dispatch helper)."""
    if drive.family is DriveFamily.HARMONIC:
        return harmonic_propagator(params, drive.period, n_sub=n_sub)
    return two_step_propagator(params, drive)

"""Eigengate construction and verification: basis change between chain and dual."""

import dataclasses

import numpy as np

from .hamiltonians import (
    ChainSpec,
    build_hk,
    build_hz,
    hz_diagonal,
    krawtchouk_chain,
    single_particle_hopping,
)
from .krawtchouk import KrawtchoukBasis, build_basis, eigenstate_vector
from .linalg import assert_unitary, expm_hermitian, occupied_sites, trace_error

__all__ = [
    "EigengateForm",
    "build_eigengate",
    "expected_phase",
    "mapping_table",
    "check_intertwining",
    "so3_checks",
    "bch_rotation_residual",
    "compare_forms",
    "eigengate_single_particle",
    "free_fermion_trace_error",
    "noisy_eigengate_error",
]

VARIANTS = ("three_step", "single_pulse")


@dataclasses.dataclass(frozen=True)
class EigengateForm:
    variant: str
    N: int
    J: float
    unitary: np.ndarray


def build_eigengate(
    N: int, J: float, variant: str = "three_step", spec: ChainSpec | None = None
) -> EigengateForm:
    """Unitary mapping every computational state to the chain eigenstate.

    three_step: exp(-i pi/2J Hz) exp(-i pi/2J Hk) exp(-i pi/2J Hz)
    single_pulse: exp(-i pi/J (Hk+Hz)/sqrt(2))
    A noisy spec perturbs only the chain pulse; the diagonal pulses are exact.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if spec is None:
        spec = krawtchouk_chain(N, J)
    hk = build_hk(spec)
    hz = build_hz(N, J)
    quarter = np.pi / (2.0 * J)
    if variant == "three_step":
        ez = np.diag(np.exp(-1.0j * hz_diagonal(N, J) * quarter))
        u = ez @ expm_hermitian(hk, quarter) @ ez
    else:
        u = expm_hermitian((hk + hz) / np.sqrt(2.0), 2.0 * quarter)
    assert_unitary(u)
    return EigengateForm(variant=variant, N=N, J=J, unitary=u)


def expected_phase(q: int, n: int) -> complex:
    """Phase i^(q n) carried by a q-excitation state under the eigengate."""
    return 1.0j ** (q * n)


def mapping_table(gate: EigengateForm, basis: KrawtchoukBasis | None = None):
    """Overlaps <s|_chain U |s> for every computational label s.

    Returns (magnitudes, phases) arrays indexed by basis index; a perfect
    eigengate has every magnitude 1.
    """
    N = gate.N
    if basis is None:
        basis = build_basis(N - 1, gate.J)
    dim = 2**N
    mags = np.zeros(dim)
    phases = np.zeros(dim, dtype=complex)
    for s in range(dim):
        modes = occupied_sites(s, N)
        target = eigenstate_vector(basis, modes)
        amp = complex(target.conj() @ gate.unitary[:, s])
        mags[s] = abs(amp)
        phases[s] = amp / abs(amp) if abs(amp) > 0 else 0.0
    return mags, phases


def check_intertwining(gate: EigengateForm, hk: np.ndarray, hz: np.ndarray) -> float:
    """Max entry of |Hk U - U Hz|."""
    return float(np.max(np.abs(hk @ gate.unitary - gate.unitary @ hz)))


def _angular_triple(N: int, J: float):
    spec = krawtchouk_chain(N, J)
    lx = build_hk(spec) / J
    lz = build_hz(N, J) / J
    ly = -1.0j * (lz @ lx - lx @ lz)
    return lx, ly, lz


def so3_checks(N: int, J: float = 1.0) -> dict:
    """Residuals of the angular-momentum commutators on the full 2^N space."""
    lx, ly, lz = _angular_triple(N, J)
    comm = lambda a, b: a @ b - b @ a
    return {
        "xy_z": float(np.max(np.abs(comm(lx, ly) - 1.0j * lz))),
        "yz_x": float(np.max(np.abs(comm(ly, lz) - 1.0j * lx))),
        "zx_y": float(np.max(np.abs(comm(lz, lx) - 1.0j * ly))),
    }


def bch_rotation_residual(N: int, J: float, theta: float) -> float:
    """Residual of the rotation identity for conjugation by the combined pulse.

    exp(-i Lh theta) Lz exp(+i Lh theta) should equal
    sin^2(theta/2) Lx - (sin theta / sqrt 2) Ly + cos^2(theta/2) Lz,
    with Lh = (Lx + Lz)/sqrt(2).
    """
    lx, ly, lz = _angular_triple(N, J)
    lh = (lx + lz) / np.sqrt(2.0)
    u = expm_hermitian(lh, theta)
    lhs = u @ lz @ u.conj().T
    rhs = (
        np.sin(theta / 2.0) ** 2 * lx
        - (np.sin(theta) / np.sqrt(2.0)) * ly
        + np.cos(theta / 2.0) ** 2 * lz
    )
    return float(np.max(np.abs(lhs - rhs)))


def compare_forms(N: int, J: float = 1.0) -> dict:
    """Phase table for both gate variants plus their entrywise difference."""
    basis = build_basis(N - 1, J)
    report = {"N": N, "variants": {}}
    gates = {}
    for variant in VARIANTS:
        gate = build_eigengate(N, J, variant)
        gates[variant] = gate
        mags, phases = mapping_table(gate, basis)
        report["variants"][variant] = {
            "min_overlap": float(mags.min()),
            "phases": phases,
        }
    diff = float(
        np.max(np.abs(gates["three_step"].unitary - gates["single_pulse"].unitary))
    )
    report["entrywise_difference"] = diff
    return report


def eigengate_single_particle(
    N: int, J: float, variant: str = "three_step", spec: ChainSpec | None = None
) -> np.ndarray:
    """(N x N) single-particle matrix of the eigengate.

    The gate is a particle-number-conserving free-fermion unitary fixing the
    vacuum with phase one, so this matrix determines it completely.
    """
    if spec is None:
        spec = krawtchouk_chain(N, J)
    hop = single_particle_hopping(spec)
    n = N - 1
    zdiag = J * (np.arange(N) - n / 2.0)
    quarter = np.pi / (2.0 * J)
    if variant == "three_step":
        ez = np.diag(np.exp(-1.0j * zdiag * quarter))
        return ez @ expm_hermitian(hop, quarter) @ ez
    return expm_hermitian((hop + np.diag(zdiag)) / np.sqrt(2.0), 2.0 * quarter)


def free_fermion_trace_error(u_exact: np.ndarray, u_actual: np.ndarray) -> float:
    """Trace error between two vacuum-fixing free-fermion unitaries.

    The many-body trace of U_exact^dagger U_actual over the full 2^N space
    equals det(1 + w) with w the product of the single-particle matrices, by
    summing the exterior powers of w over all particle-number sectors.
    """
    N = u_exact.shape[0]
    w = u_exact.conj().T @ u_actual
    return 1.0 - abs(np.linalg.det(np.eye(N) + w)) / 2**N


def noisy_eigengate_error(N: int, J: float, eps: float, seed) -> float:
    """Trace error of a noisy three-step gate against the clean one."""
    from .hamiltonians import apply_coupling_noise

    noisy = apply_coupling_noise(krawtchouk_chain(N, J, noise_eps=eps, seed=seed))
    u_exact = eigengate_single_particle(N, J, "three_step")
    u_noisy = eigengate_single_particle(N, J, "three_step", spec=noisy)
    return free_fermion_trace_error(u_exact, u_noisy)

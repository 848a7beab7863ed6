"""Spin-chain Hamiltonians: XX+YY chains, their diagonal dual, and resonant drives."""

import dataclasses
import math

import numpy as np

from .linalg import assert_hermitian

__all__ = [
    "ChainSpec",
    "DrivingSpec",
    "krawtchouk_couplings",
    "krawtchouk_chain",
    "apply_coupling_noise",
    "build_hk",
    "build_hz",
    "hz_diagonal",
    "single_particle_hopping",
    "driving_operator",
    "build_driving",
]


@dataclasses.dataclass(frozen=True)
class ChainSpec:
    """Parameters of an open XX+YY chain on N qubits.

    couplings[x] couples qubits x and x+1; zfields[x] is a longitudinal
    field gamma_x on qubit x.  noise_eps is the half-width of the
    multiplicative coupling noise drawn by apply_coupling_noise.
    """

    N: int
    J: float
    couplings: np.ndarray
    zfields: np.ndarray
    noise_eps: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "couplings", np.asarray(self.couplings, dtype=float))
        object.__setattr__(self, "zfields", np.asarray(self.zfields, dtype=float))
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if self.couplings.shape != (self.N - 1,):
            raise ValueError("couplings must have length N-1")
        if self.zfields.shape != (self.N,):
            raise ValueError("zfields must have length N")
        if not 0.0 <= self.noise_eps < 1.0:
            raise ValueError("noise_eps must lie in [0, 1)")

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "J": self.J,
            "couplings": list(self.couplings),
            "zfields": list(self.zfields),
            "noise_eps": self.noise_eps,
            "seed": self.seed,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ChainSpec":
        return cls(
            N=int(doc["N"]),
            J=float(doc["J"]),
            couplings=np.asarray(doc["couplings"], dtype=float),
            zfields=np.asarray(doc["zfields"], dtype=float),
            noise_eps=float(doc.get("noise_eps", 0.0)),
            seed=doc.get("seed"),
        )


@dataclasses.dataclass(frozen=True)
class DrivingSpec:
    """One oscillatory two-site driving term.

    Site j carries the raising operator and site j+d the lowering one (and
    conjugates).  sign selects the real ('+') or imaginary ('-') pairing.
    The full term is the constant operator times cos(omega*t + phase).
    """

    j: int
    d: int
    sign: str
    J_D: float
    omega: float
    phase: float = 0.0

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")
        if self.j < 0 or self.d < 1:
            raise ValueError("need j >= 0 and d >= 1")

    def to_json_dict(self) -> dict:
        return {
            "j": self.j,
            "d": self.d,
            "sign": self.sign,
            "J_D": self.J_D,
            "omega": self.omega,
            "phase": self.phase,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "DrivingSpec":
        return cls(
            j=int(doc["j"]),
            d=int(doc["d"]),
            sign=str(doc["sign"]),
            J_D=float(doc["J_D"]),
            omega=float(doc["omega"]),
            phase=float(doc.get("phase", 0.0)),
        )


def krawtchouk_couplings(n: int, J: float) -> np.ndarray:
    """Engineered couplings -J/2 * sqrt((x+1)(n-x)) for x = 0..n-1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    x = np.arange(n)
    return -(J / 2.0) * np.sqrt((x + 1.0) * (n - x))


def krawtchouk_chain(N: int, J: float, noise_eps: float = 0.0, seed=None) -> ChainSpec:
    """ChainSpec with the engineered couplings and zero fields."""
    return ChainSpec(
        N=N,
        J=J,
        couplings=krawtchouk_couplings(N - 1, J),
        zfields=np.zeros(N),
        noise_eps=noise_eps,
        seed=seed,
    )


def apply_coupling_noise(spec: ChainSpec) -> ChainSpec:
    """Draw quenched multiplicative noise: J_x -> (1 + eps_x) J_x.

    eps_x is uniform on [-noise_eps, noise_eps], drawn once per call from a
    generator seeded by spec.seed, so the result is reproducible.
    """
    if spec.noise_eps == 0.0:
        return spec
    rng = np.random.default_rng(spec.seed)
    eps = rng.uniform(-spec.noise_eps, spec.noise_eps, size=spec.N - 1)
    return dataclasses.replace(spec, couplings=spec.couplings * (1.0 + eps))


def _bit(index: int, x: int, N: int) -> int:
    return (index >> (N - 1 - x)) & 1


def build_hk(spec: ChainSpec) -> np.ndarray:
    """Full 2^N chain Hamiltonian sum_x (J_x/2)(XX+YY) + sum_x gamma_x Z_x.

    The hopping part has matrix element J_x between |..10..> and |..01..>
    on bond x, which fixes the single-particle normalization.
    """
    N = spec.N
    dim = 2**N
    ham = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim)
    for x in range(N - 1):
        hi = 1 << (N - 1 - x)
        lo = 1 << (N - 2 - x)
        src = idx[(idx & hi != 0) & (idx & lo == 0)]
        dst = src ^ (hi | lo)
        ham[dst, src] += spec.couplings[x]
        ham[src, dst] += spec.couplings[x]
    if np.any(spec.zfields):
        zdiag = np.zeros(dim)
        for x in range(N):
            bit = (idx >> (N - 1 - x)) & 1
            zdiag += spec.zfields[x] * (1.0 - 2.0 * bit)
        ham[idx, idx] += zdiag
    assert_hermitian(ham)
    return ham


def hz_diagonal(N: int, J: float) -> np.ndarray:
    """Diagonal of the dual Hamiltonian: J * sum over excited sites of (x - n/2)."""
    n = N - 1
    dim = 2**N
    idx = np.arange(dim)
    diag = np.zeros(dim)
    for x in range(N):
        bit = (idx >> (N - 1 - x)) & 1
        diag += J * (x - n / 2.0) * bit
    return diag


def build_hz(N: int, J: float) -> np.ndarray:
    """(J/2) sum_x (x - n/2)(1 - Z)_x, diagonal in the computational basis."""
    if N < 2:
        raise ValueError("N must be at least 2")
    return np.diag(hz_diagonal(N, J)).astype(complex)


def single_particle_hopping(spec: ChainSpec) -> np.ndarray:
    """(N x N) one-excitation block: tridiagonal with off-diagonals J_x."""
    mat = np.zeros((spec.N, spec.N))
    for x in range(spec.N - 1):
        mat[x, x + 1] = spec.couplings[x]
        mat[x + 1, x] = spec.couplings[x]
    if np.any(spec.zfields):
        # sum_y gamma_y Z_y on a one-excitation state: every site contributes
        # +gamma, the excited one flips to -gamma
        mat += np.diag(spec.zfields.sum() - 2.0 * spec.zfields)
    return mat


def driving_operator(spec: DrivingSpec, N: int) -> np.ndarray:
    """Constant operator part of the drive (the cos factor stripped).

    sign '+': J_D [sp_j sm_{j+d} + sm_j sp_{j+d}]
    sign '-': i J_D [sp_j sm_{j+d} - sm_j sp_{j+d}]
    where sp removes and sm creates an excitation.
    """
    a, b = spec.j, spec.j + spec.d
    if b >= N:
        raise ValueError("site j+d out of range")
    dim = 2**N
    op = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim)
    ma = 1 << (N - 1 - a)
    mb = 1 << (N - 1 - b)
    src = idx[(idx & ma != 0) & (idx & mb == 0)]  # excited at j, empty at j+d
    dst = src ^ (ma | mb)
    if spec.sign == "+":
        op[dst, src] = spec.J_D
        op[src, dst] = spec.J_D
    else:
        op[dst, src] = 1.0j * spec.J_D
        op[src, dst] = -1.0j * spec.J_D
    return op


def build_driving(spec: DrivingSpec, N: int, t: float) -> np.ndarray:
    """Drive Hamiltonian at absolute time t."""
    return math.cos(spec.omega * t + spec.phase) * driving_operator(spec, N)

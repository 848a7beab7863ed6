"""Dense linear-algebra helpers for small multi-qubit Hilbert spaces."""

import math

import numpy as np

__all__ = [
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "basis_index",
    "bits_of_index",
    "basis_state",
    "occupied_sites",
    "sector_indices",
    "tensor_embed",
    "is_hermitian",
    "assert_hermitian",
    "assert_unitary",
    "expm_hermitian",
    "trace_error",
    "unitary_deviation",
    "max_column_distance",
]

# Single-qubit operators in the |0>, |1> basis.  |1> is the excited state;
# SIGMA_MINUS creates it (|0> -> |1>) and SIGMA_PLUS removes it.
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = 0.5 * (PAULI_X + 1.0j * PAULI_Y)
SIGMA_MINUS = 0.5 * (PAULI_X - 1.0j * PAULI_Y)


# ---------------------------------------------------------------- basis maps

def basis_index(bits) -> int:
    """Index of the computational state |b_0 b_1 ... b_n>.

    Qubit 0 is the leftmost symbol and the most significant bit, so the
    index is sum_x b_x * 2**(N-1-x).
    """
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    return idx


def bits_of_index(index: int, nqubits: int):
    """Tuple (b_0, ..., b_{N-1}) for a basis index, qubit 0 most significant."""
    return tuple((index >> (nqubits - 1 - x)) & 1 for x in range(nqubits))


def basis_state(bits_or_index, nqubits: int) -> np.ndarray:
    """Unit state vector for a bitstring (iterable/str) or basis index."""
    if isinstance(bits_or_index, (int, np.integer)):
        idx = int(bits_or_index)
    else:
        idx = basis_index(int(b) for b in bits_or_index)
    vec = np.zeros(2**nqubits, dtype=complex)
    vec[idx] = 1.0
    return vec


def occupied_sites(index: int, nqubits: int):
    """Ascending tuple of excited qubit positions in a basis state."""
    return tuple(x for x in range(nqubits) if (index >> (nqubits - 1 - x)) & 1)


def sector_indices(nqubits: int, weight: int) -> np.ndarray:
    """Basis indices with the given excitation number, in increasing order."""
    idx = np.arange(2**nqubits, dtype=np.int64)
    pop = np.zeros(2**nqubits, dtype=np.int64)
    v = idx.copy()
    while v.any():
        pop += v & 1
        v >>= 1
    return idx[pop == weight]


# ------------------------------------------------------------ operator tools

def tensor_embed(op: np.ndarray, sites, nqubits: int) -> np.ndarray:
    """Embed a k-qubit operator acting on ``sites`` into the full register.

    ``op`` is a 2^k x 2^k matrix whose tensor factors correspond to the
    listed sites in order.  The result follows the global convention that
    qubit 0 is the most significant tensor factor.
    """
    sites = list(sites)
    k = len(sites)
    if op.shape != (2**k, 2**k):
        raise ValueError("operator shape does not match number of sites")
    if len(set(sites)) != k or any(s < 0 or s >= nqubits for s in sites):
        raise ValueError("sites must be distinct and in range")
    rest = [x for x in range(nqubits) if x not in sites]
    full = np.kron(op, np.eye(2 ** (nqubits - k), dtype=complex))
    # full acts on (sites..., rest...); permute tensor axes to natural order
    order = sites + rest
    perm = [order.index(x) for x in range(nqubits)]
    t = full.reshape((2,) * (2 * nqubits))
    t = t.transpose(perm + [nqubits + p for p in perm])
    return np.ascontiguousarray(t.reshape(2**nqubits, 2**nqubits))


def is_hermitian(mat: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(mat - mat.conj().T)) <= tol)


def assert_hermitian(mat: np.ndarray, tol: float = 1e-12) -> None:
    dev = float(np.max(np.abs(mat - mat.conj().T)))
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e})")


def assert_unitary(mat: np.ndarray, tol: float = 1e-10) -> None:
    dim = mat.shape[0]
    dev = float(np.max(np.abs(mat.conj().T @ mat - np.eye(dim))))
    if dev > tol:
        raise ValueError(f"matrix is not unitary (deviation {dev:.3e})")


def expm_hermitian(ham: np.ndarray, t: float = 1.0) -> np.ndarray:
    """exp(-i*ham*t) for Hermitian ham, via eigendecomposition.

    Exactly unitary up to roundoff for any step size, unlike truncated
    series methods.
    """
    assert_hermitian(ham, tol=1e-10 * max(1.0, float(np.max(np.abs(ham)))))
    w, v = np.linalg.eigh(ham)
    phases = np.exp(-1.0j * w * t)
    return (v * phases) @ v.conj().T


# ----------------------------------------------------------------- distances

def trace_error(target: np.ndarray, actual: np.ndarray) -> float:
    """Global-phase-invariant gate error 1 - |Tr(target @ actual^dagger)| / dim."""
    dim = target.shape[0]
    return 1.0 - abs(np.trace(target @ actual.conj().T)) / dim


def unitary_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """Alias of :func:`trace_error`; used as the circuit-equivalence metric."""
    return trace_error(a, b)


def max_column_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Largest 2-norm difference between corresponding columns."""
    return float(math.sqrt(np.max(np.sum(np.abs(a - b) ** 2, axis=0))))

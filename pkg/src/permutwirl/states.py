"""Quantum states, permutations, and the standard constant matrices.

Constructors return either plain arrays (operators) or validated
:class:`DensityMatrix` values.  All randomness is channelled through an
explicit ``numpy.random.Generator``.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    BlochOutsideBallError,
    DimensionTooLargeError,
    DimMismatchError,
    InvalidBellParamsError,
    NotHermitianError,
    NotPositiveError,
    TraceNotOneError,
    WeightOutOfRangeError,
)

SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_1, SIGMA_2, SIGMA_3)

# Guard against runaway factorial enumeration.
MAX_ENUM_DIM = 10

# Validation defaults: Hermiticity/trace at 1e-10, positivity allows
# min eigenvalue down to -1e-10.  Eigensolver round trips sit near 1e-13,
# so this margin does not mask real violations.
VALIDATION_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state: ``mat`` plus its subsystem dimensions."""

    mat: np.ndarray
    dims: tuple[int, ...]

    @property
    def d(self) -> int:
        return self.mat.shape[0]

    @property
    def is_bipartite(self) -> bool:
        return len(self.dims) == 2


def _normalize_dims(d: int, dims) -> tuple[int, ...]:
    if dims is None:
        return (d,)
    out = tuple(int(k) for k in dims)
    if any(k < 1 for k in out):
        raise DimMismatchError(f"dimensions must be positive, got {dims}")
    prod = 1
    for k in out:
        prod *= k
    if prod != d:
        raise DimMismatchError(f"product of dims {out} does not equal matrix side {d}")
    return out


def validate_density(m, dims=None, tol: float = VALIDATION_TOL) -> DensityMatrix:
    """Check Hermiticity, unit trace and positivity; return the state.

    Never repairs the input.  Use :func:`sanitize_density` to clamp tiny
    negative eigenvalues explicitly.

    Raises:
        NotHermitianError, TraceNotOneError, NotPositiveError
    """
    mat = linalg.as_complex_matrix(m)
    d = linalg.require_square(mat)
    dims = _normalize_dims(d, dims)
    dev = linalg.max_abs_diff(mat, mat.conj().T)
    if dev > tol:
        raise NotHermitianError(f"not Hermitian within {tol:g} (deviation {dev:.3e})")
    tr = complex(np.trace(mat))
    if abs(tr - 1.0) > tol:
        raise TraceNotOneError(f"trace is {tr:.12g}, expected 1 within {tol:g}")
    w, _ = linalg.hermitian_eigen(mat, tol=tol)
    min_eig = float(w[0])
    if min_eig < -tol:
        raise NotPositiveError(
            f"min eigenvalue {min_eig:.6e} below -{tol:g}", min_eigenvalue=min_eig
        )
    return DensityMatrix(mat, dims)


def sanitize_density(m, dims=None, tol: float = VALIDATION_TOL) -> DensityMatrix:
    """Clamp negative eigenvalues to zero, renormalize, then validate.

    Opt-in repair for states that failed positivity or trace checks by
    numerical noise; silent use would hide bugs, so no other constructor
    calls this.
    """
    mat = linalg.as_complex_matrix(m)
    d = linalg.require_square(mat)
    dims = _normalize_dims(d, dims)
    w, v = linalg.hermitian_eigen(mat, tol=tol)
    w = np.clip(w.real, 0.0, None)
    total = float(w.sum())
    if total <= 0.0:
        raise NotPositiveError("matrix has no positive spectral weight")
    w /= total
    repaired = (v * w) @ v.conj().T
    return DensityMatrix(repaired, dims)


def qubit_from_bloch(r, tol: float = VALIDATION_TOL) -> DensityMatrix:
    """Qubit state 1/2 (I + r . sigma) for a Bloch vector inside the ball."""
    r1, r2, r3 = (float(c) for c in r)
    norm = np.sqrt(r1 * r1 + r2 * r2 + r3 * r3)
    if norm > 1.0 + tol:
        raise BlochOutsideBallError(f"|r| = {norm:.12g} exceeds 1")
    mat = 0.5 * np.array(
        [[1 + r3, r1 - 1j * r2], [r1 + 1j * r2, 1 - r3]], dtype=complex
    )
    return DensityMatrix(mat, (2,))


def bloch_of_qubit(rho: DensityMatrix) -> np.ndarray:
    """Bloch vector (Tr rho sigma_k for k = 1..3) of a qubit state."""
    if rho.dims != (2,):
        raise DimMismatchError(f"expected a single qubit, got dims {rho.dims}")
    return np.array([np.trace(rho.mat @ s).real for s in PAULIS])


def _check_permutation(perm) -> tuple[int, ...]:
    p = tuple(int(i) for i in perm)
    d = len(p)
    if d == 0 or sorted(p) != list(range(d)):
        raise ValueError(f"not a permutation of 0..{d - 1}: {perm!r}")
    return p


def permutation_matrix(perm) -> np.ndarray:
    """0/1 matrix sending basis vector i to basis vector perm[i]."""
    p = _check_permutation(perm)
    d = len(p)
    mat = np.zeros((d, d), dtype=complex)
    mat[np.array(p), np.arange(d)] = 1.0
    return mat


def compose_permutations(p, q) -> tuple[int, ...]:
    """Composition p after q: i -> p[q[i]].  Matches matrix products."""
    p = _check_permutation(p)
    q = _check_permutation(q)
    if len(p) != len(q):
        raise ValueError("permutations act on different sets")
    return tuple(p[i] for i in q)


def invert_permutation(perm) -> tuple[int, ...]:
    p = _check_permutation(perm)
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def conjugate_by_permutation(x, perm) -> np.ndarray:
    """P x P^dagger via index gymnastics, avoiding explicit matrices."""
    m = linalg.as_complex_matrix(x)
    d = linalg.require_square(m)
    p = _check_permutation(perm)
    if len(p) != d:
        raise DimMismatchError(f"permutation on {len(p)} elements, matrix side {d}")
    inv = np.array(invert_permutation(p))
    return m[np.ix_(inv, inv)]


def enumerate_permutations(d: int):
    """Yield all d! permutations of 0..d-1 in lexicographic order.

    The deterministic order makes brute-force group averages
    bit-reproducible in serial mode.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if d > MAX_ENUM_DIM:
        raise DimensionTooLargeError(
            f"refusing to enumerate {d}! permutations (limit d <= {MAX_ENUM_DIM})"
        )
    return itertools.permutations(range(d))


def all_ones_projector(d: int) -> np.ndarray:
    """The all-ones matrix; satisfies E @ E = d * E."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return np.ones((d, d), dtype=complex)


def maximally_coherent_state(d: int) -> DensityMatrix:
    """Rank-one projector onto the uniform superposition; all entries 1/d."""
    return DensityMatrix(all_ones_projector(d) / d, (d,))


def maximally_coherent_mixed_state(
    d: int, p: float, tol: float = VALIDATION_TOL
) -> DensityMatrix:
    """One-parameter family (1-p) I/d + p * uniform-superposition projector.

    Valid for p in [-1/(d-1), 1]; diagonal entries are 1/d and every
    off-diagonal entry is p/d.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    p = float(p)
    if d == 1:
        return DensityMatrix(np.ones((1, 1), dtype=complex), (1,))
    lo = -1.0 / (d - 1)
    if p < lo - tol or p > 1.0 + tol:
        raise WeightOutOfRangeError(f"weight {p:.12g} outside [{lo:.12g}, 1]")
    mat = np.full((d, d), p / d, dtype=complex)
    np.fill_diagonal(mat, 1.0 / d)
    return DensityMatrix(mat, (d,))


def maximally_entangled_state(d: int) -> DensityMatrix:
    """Projector onto (1/sqrt(d)) sum_i |ii>, as a d x d bipartite state."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    vec = np.zeros(d * d, dtype=complex)
    vec[np.arange(d) * d + np.arange(d)] = 1.0 / np.sqrt(d)
    return DensityMatrix(np.outer(vec, vec.conj()), (d, d))


def bell_eigenvalues(t1: float, t2: float, t3: float) -> np.ndarray:
    """The four eigenvalues of the correlation-triple state, unsorted."""
    return 0.25 * np.array(
        [1 - t1 - t2 - t3, 1 - t1 + t2 + t3, 1 + t1 - t2 + t3, 1 + t1 + t2 - t3]
    )


def validate_bell_params(t1, t2, t3, tol: float = VALIDATION_TOL) -> None:
    for i, t in enumerate((t1, t2, t3), start=1):
        if abs(t) > 1.0 + tol:
            raise InvalidBellParamsError(f"|t{i}| = {abs(t):.12g} exceeds 1")
    for lam, label in zip(
        bell_eigenvalues(t1, t2, t3),
        ("1-t1-t2-t3", "1-t1+t2+t3", "1+t1-t2+t3", "1+t1+t2-t3"),
    ):
        if lam < -tol:
            raise InvalidBellParamsError(
                f"constraint {label} >= 0 violated (value {4 * lam:.12g})"
            )


def bell_diagonal_state(t1, t2, t3, tol: float = VALIDATION_TOL) -> DensityMatrix:
    """Two-qubit state 1/4 (I + sum_i t_i sigma_i x sigma_i)."""
    t1, t2, t3 = float(t1), float(t2), float(t3)
    validate_bell_params(t1, t2, t3, tol=tol)
    mat = np.eye(4, dtype=complex)
    for t, sigma in zip((t1, t2, t3), PAULIS):
        mat += t * np.kron(sigma, sigma)
    return DensityMatrix(0.25 * mat, (2, 2))


def random_density(d: int, rng: np.random.Generator, dims=None) -> DensityMatrix:
    """Full-rank random state G G^dagger / Tr, G with iid complex normals."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    mat = g @ g.conj().T
    mat /= np.trace(mat).real
    return DensityMatrix(mat, _normalize_dims(d, dims))


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    """Hermitian part of a complex Ginibre matrix."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (g + g.conj().T)


def random_bloch(rng: np.random.Generator) -> np.ndarray:
    """Uniform point in the unit ball (direction from normals, radius cube root)."""
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    return v * rng.uniform(0.0, 1.0) ** (1.0 / 3.0)

"""Input validation helpers for complex quantum data.

scikit-learn's ``check_array`` refuses complex input, so the estimator and
channel layers use these small checks instead.  They normalize shapes and
dtypes, enforce unit norms where the physics requires them, and fail with
messages that name the offending argument.
"""

from __future__ import annotations

import numpy as np

_ZERO_NORM = 1e-12


def as_complex_array(x, name: str = "array") -> np.ndarray:
    """Coerce to a finite complex128 ndarray."""
    arr = np.asarray(x, dtype=complex)
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_square_matrix(x, dim: int | None = None, name: str = "matrix") -> np.ndarray:
    arr = as_complex_array(x, name)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"{name} must be {dim}x{dim}, got {arr.shape[0]}x{arr.shape[1]}")
    return arr


def check_unit_vector(
    x, dim: int | None = None, name: str = "state", tol: float = 1e-8
) -> np.ndarray:
    """Validate a state vector and return it renormalized to kill norm drift."""
    arr = as_complex_array(x, name).reshape(-1)
    if dim is not None and arr.size != dim:
        raise ValueError(f"{name} must have {dim} entries, got {arr.size}")
    norm = np.linalg.norm(arr)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"{name} must be normalized; got norm {norm:.6g}")
    return arr / norm


def normalized(x, name: str = "state") -> np.ndarray:
    """Return x scaled to unit norm, rejecting near-zero input."""
    arr = as_complex_array(x, name).reshape(-1)
    norm = np.linalg.norm(arr)
    if norm < _ZERO_NORM:
        raise ValueError(f"{name} has near-zero norm {norm:.3e}; cannot normalize")
    return arr / norm


def check_density_matrix(
    x, dim: int | None = None, name: str = "rho", tol: float = 1e-10
) -> np.ndarray:
    """Validate hermiticity, unit trace, and positivity up to tol."""
    arr = check_square_matrix(x, dim, name)
    herm = np.linalg.norm(arr - arr.conj().T)
    if herm > tol:
        raise ValueError(f"{name} is not hermitian (residual {herm:.3e})")
    trace = np.trace(arr)
    if abs(trace - 1.0) > tol:
        raise ValueError(f"{name} must have unit trace, got {trace:.6g}")
    min_eig = float(np.linalg.eigvalsh(arr).min())
    if min_eig < -tol:
        raise ValueError(f"{name} has negative eigenvalue {min_eig:.3e}")
    return arr


def check_state_batch(X, block_dim: int, n_blocks: int, name: str = "X") -> np.ndarray:
    """Validate a 2-D batch of concatenated qudit factors.

    Each row holds ``n_blocks`` contiguous blocks of ``block_dim`` complex
    amplitudes.  Every block is renormalized to unit norm; blocks with
    near-zero norm are rejected.  Returns a fresh complex array of shape
    (n_samples, n_blocks * block_dim).
    """
    arr = as_complex_array(X, name)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got ndim={arr.ndim}")
    expected = n_blocks * block_dim
    if arr.shape[1] != expected:
        raise ValueError(
            f"{name} must have {expected} columns "
            f"({n_blocks} blocks of {block_dim}), got {arr.shape[1]}"
        )
    blocks = arr.reshape(arr.shape[0], n_blocks, block_dim).copy()
    norms = np.linalg.norm(blocks, axis=2)
    if np.any(norms < _ZERO_NORM):
        bad = np.argwhere(norms < _ZERO_NORM)[0]
        raise ValueError(
            f"{name}[{bad[0]}] block {bad[1]} has near-zero norm; "
            "each qudit factor must be a nonzero vector"
        )
    blocks /= norms[:, :, None]
    return blocks.reshape(arr.shape[0], expected)

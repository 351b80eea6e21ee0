"""Dense complex linear algebra for collective-noise calculations.

Thin, explicit wrappers around numpy/scipy: Kronecker assembly of collective
operators, seeded Haar and SL(d,C) sampling, partial traces, fidelities, and
a small JSON schema for exchanging matrices between runs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

_EPS_RANK = 1e-10


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the row-major index convention."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of a sequence of arrays, left factor most significant."""
    if len(factors) == 0:
        raise ValueError("kron_all needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def collective_operator(w: np.ndarray, n: int) -> np.ndarray:
    """The n-fold Kronecker power of w: the same single-site action on every slot.

    Parameters
    ----------
    w : ndarray
        Square matrix acting on one slot.
    n : int
        Number of slots, at least 1.
    """
    w = np.asarray(w, dtype=complex)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"w must be square, got shape {w.shape}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    out = w
    for _ in range(n - 1):
        out = np.kron(out, w)
    return out


def random_special_unitary(
    d: int, seed: int | np.random.Generator | None = None
) -> np.ndarray:
    """Haar-distributed element of SU(d).

    QR of a complex Ginibre matrix, with the R-diagonal phase correction that
    makes the distribution Haar, then a global phase fix so the determinant
    is exactly one (up to roundoff).
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    q = q * (diag / np.abs(diag))
    det = np.linalg.det(q)
    return q * np.exp(-1j * np.angle(det) / d)


def random_special_linear(
    d: int,
    seed: int | np.random.Generator | None = None,
    max_condition: float = 100.0,
    max_tries: int = 1000,
) -> np.ndarray:
    """Random element of SL(d,C): det-normalized Ginibre, rejecting ill-conditioned draws.

    The principal d-th root of the determinant is divided out, so the result
    has determinant one to roundoff.  Samples with 2-norm condition number
    above ``max_condition`` are rejected and redrawn; this keeps downstream
    verification tolerances attainable.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d}")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        g = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
        det = np.linalg.det(g)
        if np.abs(det) < 1e-12:
            continue
        w = g / np.exp(np.log(complex(det)) / d)
        if np.linalg.cond(w, 2) <= max_condition:
            return w
    raise RuntimeError(
        f"no SL({d},C) sample with condition <= {max_condition} in {max_tries} tries"
    )


def random_state_vector(
    dim: int, seed: int | np.random.Generator | None = None
) -> np.ndarray:
    """Haar-random unit vector in C^dim."""
    if not isinstance(dim, int) or dim < 1:
        raise ValueError(f"dimension must be a positive integer, got {dim}")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def basis_state(dim: int, index: int) -> np.ndarray:
    """Computational basis vector e_index in C^dim."""
    if not 0 <= index < dim:
        raise ValueError(f"index {index} out of range for dimension {dim}")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def unitarity_residual(u: np.ndarray) -> float:
    """Frobenius norm of U*U - I."""
    u = np.asarray(u, dtype=complex)
    eye = np.eye(u.shape[1])
    return float(np.linalg.norm(u.conj().T @ u - eye))


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return unitarity_residual(u) <= tol


def partial_trace(
    rho: np.ndarray, dims: Sequence[int], keep: Iterable[int]
) -> np.ndarray:
    """Trace out all slots except ``keep`` from a density matrix.

    Parameters
    ----------
    rho : ndarray
        Square matrix on the full tensor product space.
    dims : sequence of int
        Local dimension of each slot; their product must match rho.
    keep : iterable of int
        Slot indices (0-based) to retain, returned in ascending slot order.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = tuple(int(x) for x in dims)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"rho has shape {rho.shape}, expected ({total}, {total})")
    keep = sorted(set(int(s) for s in keep))
    if any(s < 0 or s >= len(dims) for s in keep):
        raise ValueError(f"keep indices {keep} out of range for {len(dims)} slots")
    n = len(dims)
    tensor = rho.reshape(dims + dims)
    # Row axes are 0..n-1, column axes n..2n-1; contract traced pairs.
    row_sub = list(range(n))
    col_sub = [i + n if i in keep else i for i in range(n)]
    out_sub = [i for i in keep] + [i + n for i in keep]
    reduced = np.einsum(tensor, row_sub + col_sub, out_sub)
    kept_dim = int(np.prod([dims[s] for s in keep])) if keep else 1
    return reduced.reshape(kept_dim, kept_dim)


def reduced_density_matrix(
    state: np.ndarray, dims: Sequence[int], keep: Iterable[int]
) -> np.ndarray:
    """Reduced density matrix of a pure state, without forming the full projector."""
    state = np.asarray(state, dtype=complex).reshape(-1)
    dims = tuple(int(x) for x in dims)
    if state.size != int(np.prod(dims)):
        raise ValueError(f"state has {state.size} entries, expected {np.prod(dims)}")
    keep = sorted(set(int(s) for s in keep))
    if any(s < 0 or s >= len(dims) for s in keep):
        raise ValueError(f"keep indices {keep} out of range for {len(dims)} slots")
    tensor = state.reshape(dims)
    moved = np.moveaxis(tensor, keep, range(len(keep)))
    kept_dim = int(np.prod([dims[s] for s in keep])) if keep else 1
    flat = moved.reshape(kept_dim, -1)
    return flat @ flat.conj().T


def fidelity(rho: np.ndarray, psi: np.ndarray) -> float:
    """Overlap <psi|rho|psi> of a density matrix with a pure state, clamped to [0, 1]."""
    rho = np.asarray(rho, dtype=complex)
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if rho.shape != (psi.size, psi.size):
        raise ValueError(f"shape mismatch: rho {rho.shape} vs state of size {psi.size}")
    value = float(np.real(psi.conj() @ rho @ psi))
    return min(1.0, max(0.0, value))


def polar_unitary_factor(m: np.ndarray) -> np.ndarray:
    """Closest unitary to m (the polar factor), via SVD.

    Raises on numerically rank-deficient input, where the factor is not
    well defined.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"polar factor needs a square matrix, got shape {m.shape}")
    u, s, vh = np.linalg.svd(m)
    if s[-1] < _EPS_RANK * s[0]:
        raise ValueError(
            f"matrix is numerically rank deficient (smallest/largest singular "
            f"value {s[-1]:.3e}/{s[0]:.3e}); polar factor is not well defined"
        )
    return u @ vh


def canonical_phase(a: np.ndarray) -> np.ndarray:
    """Rescale by a global phase so the largest-magnitude entry is real positive."""
    a = np.asarray(a, dtype=complex)
    idx = int(np.argmax(np.abs(a)))
    pivot = a.reshape(-1)[idx]
    if pivot == 0:
        raise ValueError("cannot fix the phase of an all-zero array")
    return a * (np.abs(pivot) / pivot)


def matrix_to_json_dict(m: np.ndarray) -> dict:
    """Serialize a complex matrix as {"rows", "cols", "entries"}.

    Entries are row-major [real, imag] pairs of Python floats, which
    round-trip bit-exactly through the json module.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D array, got ndim={m.ndim}")
    entries = [[float(z.real), float(z.imag)] for z in m.reshape(-1)]
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "entries": entries}


def matrix_from_json_dict(obj: dict) -> np.ndarray:
    """Inverse of matrix_to_json_dict, with shape and length validation."""
    try:
        rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"not a matrix JSON object: {exc}") from exc
    if rows < 1 or cols < 1:
        raise ValueError(f"invalid matrix shape ({rows}, {cols})")
    if len(entries) != rows * cols:
        raise ValueError(
            f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
            f"got {len(entries)}"
        )
    flat = np.array(
        [complex(float(re), float(im)) for re, im in entries], dtype=complex
    )
    return flat.reshape(rows, cols)

"""Construction of the collective-noise encoder unitary.

The protected subspace of (C^d)^(d+1) is the span of d copies of the
fundamental representation of SU(d).  This module finds those copies with
Young symmetrizer projectors (one per standard tableau of the
fundamental-equivalent shape), orthonormalizes them, rotates every copy so
the collective action restricts to the defining matrix itself, and packs the
result into a unitary whose leading d*d columns form the protected block in
multiplicity-major order (column i*d + j holds weight vector j of copy i).
"""

from __future__ import annotations

import itertools
import json
import pathlib
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from math import factorial

import numpy as np
from scipy.linalg import null_space

from .linalg import (
    canonical_phase,
    collective_operator,
    kron,
    matrix_from_json_dict,
    matrix_to_json_dict,
    random_special_unitary,
    unitarity_residual,
)
from .tableaux import (
    StandardTableau,
    frobenius_multiplicity,
    fundamental_equivalent_shape,
    irrep_dimension,
    standard_tableau_count,
    standard_tableaux,
)
from .validation import check_square_matrix

_UNITARITY_TOL = 1e-12
_ALIGN_TOL = 1e-8
_RANK_TOL = 1e-10
_PROBE_SEED = 24245  # fixed probe RNG: construction stays deterministic

_LAYOUTS = ("multiplicity-major",)
_GENERATORS = ("symmetrizer", "reference")


class AlignmentError(RuntimeError):
    """Raised when copies of the fundamental cannot be aligned to one basis."""


@dataclass(frozen=True)
class EncoderSpec:
    """A validated encoder unitary on d+1 qudits.

    Attributes
    ----------
    d : int
        Local dimension.
    matrix : ndarray
        Unitary of size d^(d+1); the first d*d columns span the protected
        subspace in multiplicity-major order.
    layout : str
        Column layout tag; only "multiplicity-major" is defined.
    generator : str
        How the matrix was produced: "symmetrizer" or "reference".
    """

    d: int
    matrix: np.ndarray
    layout: str = "multiplicity-major"
    generator: str = "symmetrizer"

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError(f"local dimension d must be an integer >= 2, got {self.d}")
        if self.layout not in _LAYOUTS:
            raise ValueError(f"unknown layout {self.layout!r}")
        if self.generator not in _GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}")
        m = np.array(self.matrix, dtype=complex)
        dim = self.d ** (self.d + 1)
        if m.shape != (dim, dim):
            raise ValueError(
                f"encoder for d={self.d} must be {dim}x{dim}, got {m.shape}"
            )
        residual = unitarity_residual(m)
        if residual > _UNITARITY_TOL:
            raise ValueError(
                f"encoder matrix is not unitary (residual {residual:.3e} "
                f"> {_UNITARITY_TOL})"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n_slots(self) -> int:
        return self.d + 1

    @property
    def protected_dim(self) -> int:
        return self.d * self.d


@dataclass(frozen=True)
class BlockReport:
    """Residuals of one block-structure check of an encoder against one w."""

    residual_ns: float
    residual_offdiag: float
    w_used: np.ndarray = field(repr=False)
    tol: float
    passed: bool


def _slot_permutation_terms(
    tableau: StandardTableau,
) -> list[tuple[int, tuple[int, ...]]]:
    """Signed slot permutations of the tableau's Young symmetrizer.

    Tableau labels name tensor slots (label k acts on slot k-1).  Each term
    is a column permutation followed by a row permutation; the sign is the
    column permutation's parity.  Permutations are push maps: entry s[k] is
    the destination slot of the content of slot k.
    """
    n = tableau.n_boxes

    def group_elements(groups, signed):
        out = [(1, tuple(range(n)))]
        for g in groups:
            slots = tuple(label - 1 for label in g)
            elems = []
            for perm in itertools.permutations(range(len(slots))):
                sigma = list(range(n))
                for a, b in enumerate(perm):
                    sigma[slots[a]] = slots[b]
                sign = 1
                if signed:
                    inversions = sum(
                        1
                        for x in range(len(perm))
                        for y in range(x + 1, len(perm))
                        if perm[x] > perm[y]
                    )
                    sign = -1 if inversions % 2 else 1
                elems.append((sign, tuple(sigma)))
            combined = []
            for (s1, p1), (s2, p2) in itertools.product(out, elems):
                composed = tuple(p1[p2[k]] for k in range(n))
                combined.append((s1 * s2, composed))
            out = combined
        return out

    row_terms = group_elements(tableau.rows, signed=False)
    col_terms = group_elements(tableau.columns(), signed=True)
    terms = []
    for (sr, pr), (sc, pc) in itertools.product(row_terms, col_terms):
        # column permutation acts first, then the row permutation
        composed = tuple(pr[pc[k]] for k in range(n))
        terms.append((sr * sc, composed))
    return terms


def _apply_terms(
    terms, scale: float, block: np.ndarray, d: int, n: int
) -> np.ndarray:
    """Apply a weighted sum of slot permutations to columns of a (d^n, m) block."""
    m = block.shape[1]
    tensor = block.reshape((d,) * n + (m,))
    out = np.zeros_like(tensor)
    for weight, sigma in terms:
        inverse = tuple(np.argsort(sigma))
        out += weight * np.transpose(tensor, inverse + (n,))
    return scale * out.reshape(d**n, m)


def symmetrizer_projector(tableau: StandardTableau, d: int) -> np.ndarray:
    """Young symmetrizer of the tableau as an idempotent on (C^d)^n.

    Column antisymmetrization is applied first, then row symmetrization,
    and the sum is scaled by (number of standard tableaux) / n! so the
    result is idempotent.  The image is one copy of the SU(d) irrep of the
    tableau's shape; it is in general not orthogonal to the images of the
    other tableaux of the same shape.
    """
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"local dimension d must be an integer >= 2, got {d}")
    shape = tableau.shape
    n = shape.n_boxes
    dim = d**n
    scale = float(Fraction(standard_tableau_count(shape), factorial(n)))
    digits = (np.arange(dim)[:, None] // (d ** np.arange(n - 1, -1, -1))[None, :]) % d
    powers = d ** np.arange(n - 1, -1, -1)
    proj = np.zeros((dim, dim))
    cols = np.arange(dim)
    for weight, sigma in _slot_permutation_terms(tableau):
        inverse = np.argsort(sigma)
        rows = digits[:, inverse] @ powers
        proj[rows, cols] += weight
    return (scale * proj).astype(complex)


def _apply_single_site(
    op: np.ndarray, block: np.ndarray, d: int, n: int, slot: int
) -> np.ndarray:
    """Apply a d x d operator to one tensor slot of each column of a block."""
    m = block.shape[1] if block.ndim == 2 else 1
    left, right = d**slot, d ** (n - 1 - slot)
    tensor = block.reshape(left, d, right, m)
    out = np.einsum("ab,xbym->xaym", op, tensor)
    return out.reshape(d**n, m)


def _collective_apply(w: np.ndarray, block: np.ndarray, d: int, n: int) -> np.ndarray:
    """Apply w to every slot of each column: the collective action on a thin block."""
    out = block
    for slot in range(n):
        out = _apply_single_site(w, out, d, n, slot)
    return out


def isotypic_fundamental_basis(d: int) -> list[np.ndarray]:
    """Orthonormal bases for the d fundamental-equivalent copies in (C^d)^(d+1).

    One copy per standard tableau of shape (2, 1, ..., 1), in deterministic
    tableau order.  Each copy is the symmetrizer image, orthogonalized
    against all earlier copies (the images overlap non-orthogonally), then
    ordered by weight: the first basis vector is the highest-weight state,
    so it pairs with the computational |0> of the defining action.

    Returns
    -------
    list of ndarray
        d matrices of shape (d^(d+1), d) with orthonormal columns.
    """
    shape = fundamental_equivalent_shape(d)
    tableaux = standard_tableaux(shape)
    n = d + 1
    dim = d**n
    if len(tableaux) != frobenius_multiplicity(shape, d):
        raise RuntimeError(
            f"tableau count {len(tableaux)} disagrees with multiplicity "
            f"{frobenius_multiplicity(shape, d)}"
        )
    copy_dim = irrep_dimension(shape, d)
    scale = float(Fraction(standard_tableau_count(shape), factorial(n)))
    rng = np.random.default_rng(_PROBE_SEED)
    probes = rng.standard_normal((dim, copy_dim + 4)) + 1j * rng.standard_normal(
        (dim, copy_dim + 4)
    )
    weights = np.arange(d - 1, -d, -2).astype(float)  # d-1, d-3, ..., -(d-1)
    generator = np.diag(weights).astype(complex)

    copies: list[np.ndarray] = []
    for tableau in tableaux:
        terms = _slot_permutation_terms(tableau)
        image = _apply_terms(terms, scale, probes, d, n)
        for q in copies:
            image = image - q @ (q.conj().T @ image)
        u, s, _ = np.linalg.svd(image, full_matrices=False)
        if s[copy_dim - 1] <= 1e-8 * s[0] or s[copy_dim] >= _RANK_TOL * s[0]:
            raise RuntimeError(
                f"symmetrizer image for tableau {tableau.rows} does not have "
                f"rank {copy_dim}: singular values {s[: copy_dim + 1]}"
            )
        q = u[:, :copy_dim]
        # Restrict the collective weight generator and diagonalize: eigenvalues
        # must reproduce the single-site weights, eigenvectors sort the copy.
        lq = np.zeros_like(q)
        for slot in range(n):
            lq += _apply_single_site(generator, q, d, n, slot)
        restricted = q.conj().T @ lq
        vals, vecs = np.linalg.eigh(restricted)
        vals, vecs = vals[::-1], vecs[:, ::-1]
        if not np.allclose(vals, weights, atol=1e-8):
            raise RuntimeError(
                f"copy of tableau {tableau.rows} has weight spectrum {vals}, "
                f"expected {weights}"
            )
        copies.append(q @ vecs)
    return copies


def align_copies(
    copies: list[np.ndarray], d: int, seed: int | None = 0
) -> list[np.ndarray]:
    """Rotate each copy so the collective action restricts to the defining matrix.

    For each copy, the intertwiner T with M(w) T = T w is fitted by total
    least squares over three Haar samples of w, unitarized with the polar
    decomposition, and phase-fixed by making its largest-magnitude entry real
    positive.  The fit is validated on a fresh sample.  Afterwards all copies
    carry w in literally the same (defining) basis, which is what makes the
    protected block of the encoder equal identity tensor w.

    Raises
    ------
    AlignmentError
        If the fitted intertwiner is not proportional to an isometry, is not
        unique, or fails the fresh-sample check at 1e-8.
    """
    if not copies:
        raise ValueError("no copies to align")
    n = d + 1
    dim = d**n
    for q in copies:
        if q.shape != (dim, d):
            raise ValueError(f"each copy must have shape ({dim}, {d}), got {q.shape}")
    rng = np.random.default_rng(seed)
    fit_samples = [random_special_unitary(d, rng) for _ in range(3)]
    check_sample = random_special_unitary(d, rng)
    eye = np.eye(d)

    aligned = []
    for index, q in enumerate(copies):
        blocks = []
        for w in fit_samples:
            restricted = q.conj().T @ _collective_apply(w, q, d, n)
            blocks.append(np.kron(restricted, eye) - np.kron(eye, w.T))
        stacked = np.vstack(blocks)
        _, sv, vh = np.linalg.svd(stacked)
        if sv[-2] < 1e-6:
            raise AlignmentError(
                f"copy {index}: intertwiner space is not one-dimensional "
                f"(second-smallest singular value {sv[-2]:.3e})"
            )
        t = vh[-1].conj().reshape(d, d)
        ts = np.linalg.svd(t, compute_uv=False)
        if (ts[0] - ts[-1]) / ts[0] > _ALIGN_TOL:
            raise AlignmentError(
                f"copy {index}: fitted intertwiner is not proportional to an "
                f"isometry (singular value spread {(ts[0] - ts[-1]) / ts[0]:.3e})"
            )
        tu, _, tvh = np.linalg.svd(t)
        t = canonical_phase(tu @ tvh)
        restricted = q.conj().T @ _collective_apply(check_sample, q, d, n)
        residual = np.linalg.norm(restricted @ t - t @ check_sample)
        if residual > _ALIGN_TOL:
            raise AlignmentError(
                f"copy {index}: alignment residual {residual:.3e} on a fresh "
                f"sample exceeds {_ALIGN_TOL}"
            )
        aligned.append(q @ t)
    return aligned


def encoder_from_copies(
    copies: list[np.ndarray], d: int, generator: str = "symmetrizer"
) -> EncoderSpec:
    """Pack copy bases into an encoder unitary, completing the remaining columns.

    Column i*d + j is weight vector j of copy i; the orthonormal completion
    of the protected block fills the rest (any completion works, since the
    noise never couples the blocks).
    """
    block = np.hstack(copies)
    completion = null_space(block.conj().T)
    matrix = np.hstack([block, completion])
    return EncoderSpec(d=d, matrix=matrix, generator=generator)


def build_encoder(d: int, seed: int | None = 0) -> EncoderSpec:
    """Construct the encoder unitary for local dimension d.

    Symmetrizer images -> cross-copy orthogonalization -> weight ordering ->
    intertwiner alignment -> orthonormal completion.  Deterministic for a
    fixed seed (the seed feeds the alignment fit samples).  Practical for
    d <= 4; d = 5 already needs 15625-dimensional matrices.

    A self-check verifies the block structure on one fresh Haar sample and
    raises if the construction is inconsistent.
    """
    copies = align_copies(isotypic_fundamental_basis(d), d, seed)
    spec = encoder_from_copies(copies, d, generator="symmetrizer")
    check_rng = np.random.default_rng([0 if seed is None else seed, 0x5E1F])
    report = verify_block_structure(
        spec, random_special_unitary(d, check_rng), tol=1e-10
    )
    if not report.passed:
        raise AlignmentError(
            f"self-check failed: residual_ns={report.residual_ns:.3e}, "
            f"residual_offdiag={report.residual_offdiag:.3e}"
        )
    return spec


def verify_block_structure(
    encoder: EncoderSpec, w: np.ndarray, tol: float = 1e-10
) -> BlockReport:
    """Check that conjugating the collective action block-diagonalizes as promised.

    Forms M = U* w^(tensor d+1) U and reports the Frobenius residual of the
    leading d^2 block against identity tensor w (``residual_ns``) and the sum
    of the two coupling block norms (``residual_offdiag``).
    """
    d = encoder.d
    w = check_square_matrix(w, d, "w")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    u = encoder.matrix
    conjugated = u.conj().T @ collective_operator(w, encoder.n_slots) @ u
    p = encoder.protected_dim
    residual_ns = float(np.linalg.norm(conjugated[:p, :p] - kron(np.eye(d), w)))
    residual_offdiag = float(
        np.linalg.norm(conjugated[:p, p:]) + np.linalg.norm(conjugated[p:, :p])
    )
    passed = residual_ns <= tol and residual_offdiag <= tol
    return BlockReport(
        residual_ns=residual_ns,
        residual_offdiag=residual_offdiag,
        w_used=w,
        tol=float(tol),
        passed=passed,
    )


def reference_encoder_qubit() -> EncoderSpec:
    """The hand-built 3-qubit encoder, with exact entries.

    Columns 0-1: the mixed-symmetry pair reached by symmetrizing qubits 1,2;
    columns 2-3: the singlet of qubits 1,2 tensored with qubit 3; columns
    4-7: the symmetric (spin-3/2) states in descending weight order.  Basis
    indexing is lexicographic: |i1 i2 i3> -> 4 i1 + 2 i2 + i3.
    """
    s2, s3, s6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0)
    u = np.zeros((8, 8), dtype=complex)
    # (2|001> - |010> - |100>) / sqrt(6) and its spin-flip partner
    u[[1, 2, 4], 0] = 2 / s6, -1 / s6, -1 / s6
    u[[3, 5, 6], 1] = 1 / s6, 1 / s6, -2 / s6
    # singlet(1,2) tensor |0> and |1>
    u[[2, 4], 2] = 1 / s2, -1 / s2
    u[[3, 5], 3] = 1 / s2, -1 / s2
    # symmetric sector, weight descending
    u[0, 4] = 1.0
    u[[1, 2, 4], 5] = 1 / s3, 1 / s3, 1 / s3
    u[[3, 5, 6], 6] = 1 / s3, 1 / s3, 1 / s3
    u[7, 7] = 1.0
    return EncoderSpec(d=2, matrix=u, generator="reference")


def spin_three_half_generators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Generators of the symmetric block of the 3-qubit encoder.

    Normalized like the Pauli matrices (twice the conventional spin
    operators), so exp(i r . sigma) on one qubit corresponds to
    exp(i r . J) on the symmetric block and [J_a, J_b] = 2i eps_abc J_c.
    """
    s3 = np.sqrt(3.0)
    jx = np.array(
        [
            [0, s3, 0, 0],
            [s3, 0, 2, 0],
            [0, 2, 0, s3],
            [0, 0, s3, 0],
        ],
        dtype=complex,
    )
    jy = np.array(
        [
            [0, -1j * s3, 0, 0],
            [1j * s3, 0, -2j, 0],
            [0, 2j, 0, -1j * s3],
            [0, 0, 1j * s3, 0],
        ],
        dtype=complex,
    )
    jz = np.diag([3.0, 1.0, -1.0, -3.0]).astype(complex)
    return jx, jy, jz


def save_encoder(encoder: EncoderSpec, path: str | pathlib.Path) -> None:
    """Write an encoder to JSON: header fields plus the matrix schema."""
    payload = {
        "d": encoder.d,
        "layout": encoder.layout,
        "generator": encoder.generator,
        "matrix": matrix_to_json_dict(encoder.matrix),
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def load_encoder(path: str | pathlib.Path) -> EncoderSpec:
    """Read an encoder written by save_encoder, re-validating shape and unitarity."""
    with open(path, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    try:
        d = int(payload["d"])
        layout = payload["layout"]
        generator = payload["generator"]
        matrix = matrix_from_json_dict(payload["matrix"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"not an encoder JSON file: {exc}") from exc
    return EncoderSpec(d=d, matrix=matrix, layout=layout, generator=generator)

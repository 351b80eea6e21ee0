"""Scikit-learn style interface to the recursive collective-noise code.

``fit`` builds the encoder unitary and window schedule, ``transform``
encodes batches of logical states, and ``inverse_transform`` decodes
physical states back to per-qudit factors.  Complex input is validated by
the helpers in :mod:`nscodec.validation`, since scikit-learn's own checks
reject complex dtypes.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .channel import decode, encode, make_code
from .encoder import build_encoder
from .linalg import canonical_phase
from .validation import as_complex_array, check_state_batch


class NoiselessSubsystemEncoder(TransformerMixin, BaseEstimator):
    """Encode k data qudits plus an ancilla into a collective-noise-immune register.

    Parameters
    ----------
    d : int, default=2
        Local dimension of each qudit.
    k : int, default=1
        Number of protected data qudits.
    random_state : int or None, default=None
        Seed for the alignment fit inside the encoder construction.  The
        encoded subspace is the same for every seed; the seed only fixes
        numerical choices, so set it for reproducible matrices.

    Attributes
    ----------
    encoder_ : EncoderSpec
        The fitted (d+1)-qudit encoder unitary.
    code_ : RecursiveCode
        Window schedule over the n_physical_ qudits.
    n_physical_ : int
        Number of physical qudits, k*d + 1.
    n_features_in_ : int
        Expected row width of X: (k+1)*d amplitudes.

    Examples
    --------
    >>> enc = NoiselessSubsystemEncoder(d=2, k=1, random_state=0).fit()
    >>> x = np.zeros((1, 4)); x[0, 0] = 1; x[0, 2] = 1   # psi = |0>, v = |0>
    >>> encoded = enc.transform(x)
    >>> encoded.shape
    (1, 8)
    """

    def __init__(self, d: int = 2, k: int = 1, random_state: int | None = None):
        self.d = d
        self.k = k
        self.random_state = random_state

    def fit(self, X=None, y=None):
        """Build the encoder and window schedule; X and y are ignored."""
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError(f"d must be an integer >= 2, got {self.d}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be an integer >= 1, got {self.k}")
        seed = self.random_state
        if seed is not None and not isinstance(seed, (int, np.integer)):
            raise ValueError(f"random_state must be an int or None, got {seed!r}")
        self.encoder_ = build_encoder(self.d, None if seed is None else int(seed))
        self.code_ = make_code(self.d, self.k, encoder=self.encoder_)
        self.n_physical_ = self.code_.n
        self.n_features_in_ = (self.k + 1) * self.d
        return self

    def transform(self, X) -> np.ndarray:
        """Encode rows of logical factors into physical state vectors.

        Parameters
        ----------
        X : array-like of shape (n_samples, (k+1)*d)
            Each row concatenates the data qudits psi_1 .. psi_k and the
            ancilla, each a nonzero d-vector (renormalized here).

        Returns
        -------
        ndarray of shape (n_samples, d**n_physical_)
        """
        check_is_fitted(self)
        rows = check_state_batch(X, self.d, self.k + 1)
        out = np.empty((rows.shape[0], self.d**self.n_physical_), dtype=complex)
        for i, row in enumerate(rows):
            blocks = row.reshape(self.k + 1, self.d)
            out[i] = encode(self.code_, list(blocks[: self.k]), blocks[self.k])
        return out

    def inverse_transform(self, X) -> np.ndarray:
        """Decode physical states and factor out the data qudits and carry.

        Each recovered factor is the principal eigenvector of its slot
        marginal, rescaled so its largest-magnitude entry is real positive.
        A qudit state is only defined up to a global phase, so round trips
        reproduce the input exactly when the input factors already use that
        canonical phase, and up to per-factor phases otherwise.

        Returns
        -------
        ndarray of shape (n_samples, (k+1)*d)
            Rows concatenate psi_1 .. psi_k and the carry qudit (the
            ancilla as distorted by whatever noise acted in between).
        """
        check_is_fitted(self)
        arr = as_complex_array(X, "X")
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        dim = self.d**self.n_physical_
        if arr.ndim != 2 or arr.shape[1] != dim:
            raise ValueError(f"X must have shape (n_samples, {dim})")
        dims = (self.d,) * self.n_physical_
        out = np.empty((arr.shape[0], (self.k + 1) * self.d), dtype=complex)
        for i, row in enumerate(arr):
            decoded = decode(self.code_, row)
            tensor = decoded.reshape(dims)
            # data slot t*d holds psi_{k-t+1}; the last slot is the carry
            for t in range(1, self.k + 1):
                factor = self._slot_factor(tensor, t * self.d - 1)
                out[i, (self.k - t) * self.d : (self.k - t + 1) * self.d] = factor
            out[i, self.k * self.d :] = self._slot_factor(tensor, self.n_physical_ - 1)
        return out

    def _slot_factor(self, tensor: np.ndarray, slot: int) -> np.ndarray:
        """Principal eigenvector of one slot's marginal, phase-canonicalized."""
        moved = np.moveaxis(tensor, slot, 0).reshape(self.d, -1)
        rho = moved @ moved.conj().T
        _, vecs = np.linalg.eigh(rho)
        return canonical_phase(vecs[:, -1])

"""Recursive composition of the encoder and collective-noise simulation.

A code on n = k*d + 1 qudits chains k copies of the (d+1)-slot encoder over
overlapping windows; consecutive windows share one carry slot.  Collective
noise (the same w on every slot) then acts on the data qudits as the
identity and pushes all distortion onto the final carry, which is exactly
what the simulation here measures.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .encoder import EncoderSpec, build_encoder
from .linalg import (
    basis_state,
    kron_all,
    random_special_linear,
    random_special_unitary,
    random_state_vector,
    reduced_density_matrix,
    fidelity,
)
from .validation import as_complex_array, check_unit_vector

DEFAULT_MAX_ENTRIES = 2**26
_MAX_ENTRIES_ENV = "NSCODEC_MAX_ENTRIES"

_NOISE_KINDS = ("su", "sl")


class ResourceLimitError(RuntimeError):
    """Raised when a requested code would exceed the memory cap."""


def max_entries_limit() -> int:
    """The configured cap on dense complex entries (env NSCODEC_MAX_ENTRIES)."""
    raw = os.environ.get(_MAX_ENTRIES_ENV)
    if raw is None:
        return DEFAULT_MAX_ENTRIES
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(
            f"{_MAX_ENTRIES_ENV} must be an integer, got {raw!r}"
        ) from exc
    if value < 1:
        raise ValueError(f"{_MAX_ENTRIES_ENV} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class RecursiveCode:
    """An encoder plus its window schedule on n = k*d + 1 physical qudits.

    ``windows`` lists (first_slot, last_slot) pairs, 1-indexed inclusive;
    window t covers slots (t-1)*d + 1 .. t*d + 1, so consecutive windows
    overlap in one carry slot.  Encoding applies the encoder on the last
    window first; decoding applies the adjoint on the first window first.
    """

    d: int
    k: int
    n: int
    encoder: EncoderSpec
    windows: tuple[tuple[int, int], ...]

    @property
    def data_slots(self) -> tuple[int, ...]:
        """1-indexed physical slots holding data qudits, in window order.

        Window t's data slot is t*d; under the encode layout it carries
        logical qudit psi_{k - t + 1}.
        """
        return tuple(t * self.d for t in range(1, self.k + 1))


@dataclass(frozen=True)
class NoiseModel:
    """Collective noise specification.

    kind "su" draws Haar-random SU(d) rotations; kind "sl" draws
    det-normalized Ginibre SL(d,C) maps (non-unitary, renormalized after
    application).  ``seed`` is the master seed; trial t uses the stream
    seeded by (seed, t).
    """

    kind: str
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _NOISE_KINDS:
            raise ValueError(f"noise kind must be one of {_NOISE_KINDS}, got {self.kind!r}")
        if not isinstance(self.seed, int):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")

    def sample(self, rng: np.random.Generator, d: int) -> np.ndarray:
        if self.kind == "su":
            return random_special_unitary(d, rng)
        return random_special_linear(d, rng)


@dataclass(frozen=True)
class SimulationReport:
    """Aggregate results of a noise simulation run.

    Per-slot figures are in data order: entry i refers to logical qudit
    psi_{i+1}.  ``max_state_residual`` is the worst Frobenius distance of the
    decoded state from the expected product layout with the carry rotated.
    """

    d: int
    k: int
    n: int
    noise_kind: str
    seed: int
    trials: int
    worst_infidelity_per_slot: tuple[float, ...]
    mean_infidelity: float
    max_infidelity: float
    max_state_residual: float
    w_overridden: bool = field(default=False)

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "n": self.n,
            "noise": self.noise_kind,
            "seed": self.seed,
            "trials": self.trials,
            "worst_infidelity_per_slot": list(self.worst_infidelity_per_slot),
            "mean_infidelity": self.mean_infidelity,
            "max_infidelity": self.max_infidelity,
            "max_state_residual": self.max_state_residual,
            "w_overridden": self.w_overridden,
        }


def make_code(
    d: int,
    k: int,
    encoder: EncoderSpec | None = None,
    max_entries: int | None = None,
    seed: int | None = 0,
) -> RecursiveCode:
    """Build the window schedule for k data qudits of dimension d.

    The encoder is built (seeded) if not supplied.  Raises
    ResourceLimitError when either the full state vector (d^n entries) or
    the dense window unitary (d^(2(d+1)) entries) would exceed the cap,
    which defaults to 2^26 entries and can be overridden with the
    NSCODEC_MAX_ENTRIES environment variable or the ``max_entries`` argument.
    """
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"local dimension d must be an integer >= 2, got {d}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"window count k must be an integer >= 1, got {k}")
    cap = max_entries_limit() if max_entries is None else int(max_entries)
    n = k * d + 1
    state_entries = d**n
    window_entries = d ** (2 * (d + 1))
    worst = max(state_entries, window_entries)
    if worst > cap:
        raise ResourceLimitError(
            f"code (d={d}, k={k}) needs up to {worst} dense complex entries "
            f"(state {state_entries}, window operator {window_entries}); "
            f"cap is {cap}"
        )
    if encoder is None:
        encoder = build_encoder(d, seed)
    if encoder.d != d:
        raise ValueError(f"encoder is for d={encoder.d}, requested d={d}")
    windows = tuple(((t - 1) * d + 1, t * d + 1) for t in range(1, k + 1))
    return RecursiveCode(d=d, k=k, n=n, encoder=encoder, windows=windows)


def _apply_window(
    state: np.ndarray, op: np.ndarray, d: int, n: int, first_slot: int
) -> np.ndarray:
    """Apply a (d+1)-slot operator starting at a 1-indexed slot (contiguous window)."""
    width = d + 1
    left = d ** (first_slot - 1)
    right = d ** (n - first_slot - width + 1)
    tensor = state.reshape(left, d**width, right)
    return np.einsum("pq,aqb->apb", op, tensor).reshape(-1)


def assemble_state(
    code: RecursiveCode, data: Sequence[np.ndarray], ancilla: np.ndarray
) -> np.ndarray:
    """The pre-encoding product layout as one state vector.

    Logical qudit psi_t = data[t-1].  The layout places, left to right,
    d-1 fiducial |0> slots then psi_k, the same for psi_{k-1}, ..., psi_1,
    and finally the ancilla carry: data qudits appear in reverse order so
    window t holds psi_{k-t+1}.
    """
    if len(data) != code.k:
        raise ValueError(f"expected {code.k} data states, got {len(data)}")
    d = code.d
    fiducial = basis_state(d, 0)
    states = [check_unit_vector(psi, d, f"data[{i}]") for i, psi in enumerate(data)]
    carry = check_unit_vector(ancilla, d, "ancilla")
    factors: list[np.ndarray] = []
    for psi in reversed(states):
        factors.extend([fiducial] * (d - 1))
        factors.append(psi)
    factors.append(carry)
    return kron_all(factors)


def encode(
    code: RecursiveCode, data: Sequence[np.ndarray], ancilla: np.ndarray
) -> np.ndarray:
    """Encode k data qudits and one ancilla into the protected n-qudit state.

    Applies the encoder on each window starting from the last window (the
    one containing the ancilla) and working back to the first.
    """
    state = assemble_state(code, data, ancilla)
    u = code.encoder.matrix
    for first, _ in reversed(code.windows):
        state = _apply_window(state, u, code.d, code.n, first)
    return state


def decode(code: RecursiveCode, state: np.ndarray) -> np.ndarray:
    """Invert the encoding circuit: adjoint encoder on windows, first window first."""
    state = as_complex_array(state, "state").reshape(-1)
    if state.size != code.d**code.n:
        raise ValueError(
            f"state has {state.size} entries, expected {code.d**code.n}"
        )
    u_dag = code.encoder.matrix.conj().T
    for first, _ in code.windows:
        state = _apply_window(state, u_dag, code.d, code.n, first)
    return state


def apply_noise(
    state: np.ndarray, w: np.ndarray, n: int, renormalize: bool = False
) -> np.ndarray:
    """Apply the same single-site map w to all n slots of a state vector.

    With ``renormalize`` the result is scaled back to unit norm, which is the
    meaningful convention for non-unitary w.
    """
    state = as_complex_array(state, "state").reshape(-1)
    w = as_complex_array(w, "w")
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"w must be square, got shape {w.shape}")
    d = w.shape[0]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"slot count n must be a positive integer, got {n}")
    if state.size != d**n:
        raise ValueError(f"state has {state.size} entries, expected {d**n}")
    out = state
    for slot in range(n):
        left, right = d**slot, d ** (n - 1 - slot)
        out = np.einsum(
            "ab,xby->xay", w, out.reshape(left, d, right)
        ).reshape(-1)
    if renormalize:
        norm = np.linalg.norm(out)
        if norm < 1e-12:
            raise ValueError("state was annihilated by the noise map")
        out = out / norm
    return out


def extract_data(code: RecursiveCode, state: np.ndarray) -> list[np.ndarray]:
    """Reduced density matrix of each data slot of a decoded state.

    Returned in window order: entry t-1 is the slot t*d marginal, which
    under the encode layout carries logical qudit psi_{k-t+1}.
    """
    state = as_complex_array(state, "state").reshape(-1)
    if state.size != code.d**code.n:
        raise ValueError(
            f"state has {state.size} entries, expected {code.d**code.n}"
        )
    dims = (code.d,) * code.n
    return [
        reduced_density_matrix(state, dims, [slot - 1]) for slot in code.data_slots
    ]


def simulate(
    code: RecursiveCode,
    noise: NoiseModel,
    trials: int,
    w_override: np.ndarray | None = None,
) -> SimulationReport:
    """Monte Carlo check that collective noise leaves the data qudits intact.

    Each trial draws fresh data states, an ancilla, and a noise map from the
    stream seeded by (noise.seed, trial), runs encode -> noise -> decode,
    and compares (a) each data-slot marginal against its input state and
    (b) the full decoded vector against the expected product layout with
    the carry mapped through w (normalized).  ``w_override`` pins the noise
    map instead of sampling, e.g. to the identity as a null check.
    """
    if not isinstance(trials, int) or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials}")
    d, k, n = code.d, code.k, code.n
    renorm = noise.kind == "sl"
    worst = np.zeros(k)
    total = 0.0
    max_residual = 0.0
    for trial in range(trials):
        rng = np.random.default_rng([noise.seed, trial])
        data = [random_state_vector(d, rng) for _ in range(k)]
        ancilla = random_state_vector(d, rng)
        w = noise.sample(rng, d) if w_override is None else np.asarray(w_override)
        received = apply_noise(encode(code, data, ancilla), w, n, renormalize=renorm)
        decoded = decode(code, received)
        carried = w @ ancilla
        expected = assemble_state(code, data, carried / np.linalg.norm(carried))
        max_residual = max(max_residual, float(np.linalg.norm(decoded - expected)))
        marginals = extract_data(code, decoded)
        for t, rho in enumerate(marginals, start=1):
            infid = 1.0 - fidelity(rho, data[k - t])
            worst[k - t] = max(worst[k - t], infid)
            total += infid
    return SimulationReport(
        d=d,
        k=k,
        n=n,
        noise_kind=noise.kind,
        seed=noise.seed,
        trials=trials,
        worst_infidelity_per_slot=tuple(float(x) for x in worst),
        mean_infidelity=total / (trials * k),
        max_infidelity=float(worst.max()),
        max_state_residual=max_residual,
        w_overridden=w_override is not None,
    )


def encoding_rate(d: int, k: int) -> Fraction:
    """Exact data rate k / (k*d + 1); approaches 1/d as k grows."""
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"local dimension d must be an integer >= 2, got {d}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"window count k must be an integer >= 1, got {k}")
    return Fraction(k, k * d + 1)


def rate_table(d: int, k_max: int) -> list[dict]:
    """Rows {d, k, n, rate} for k = 1..k_max, with exact Fraction rates."""
    if not isinstance(k_max, int) or k_max < 1:
        raise ValueError(f"k_max must be an integer >= 1, got {k_max}")
    return [
        {"d": d, "k": k, "n": k * d + 1, "rate": encoding_rate(d, k)}
        for k in range(1, k_max + 1)
    ]


def rate_table_csv(rows: list[dict]) -> str:
    """Serialize rate-table rows as CSV with exact fraction strings."""
    lines = ["d,k,n,rate"]
    for row in rows:
        lines.append(f"{row['d']},{row['k']},{row['n']},{row['rate']}")
    return "\n".join(lines) + "\n"


def rate_table_json_dict(rows: list[dict]) -> list[dict]:
    """Rate-table rows with JSON-safe exact rate strings like \"2/5\"."""
    return [
        {"d": row["d"], "k": row["k"], "n": row["n"], "rate": str(row["rate"])}
        for row in rows
    ]

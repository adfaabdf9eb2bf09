# core/grassmann.py

"""Finite Grassmannian identities behind the Plücker embedding arguments."""

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import TooLarge

MAX_COLUMNS = 12
MINOR_MAX_ROWS = 4
MINOR_MAX_COLUMNS = 9
ENTRY_BOUND = 10.0


@dataclass(frozen=True, eq=False)
class MatrixSample:
    """Local Grassmannian coordinate Z (n x m, n <= m) and the seed it was drawn with."""
    Z: np.ndarray
    seed: Optional[int] = None

    def __post_init__(self):
        z = np.asarray(self.Z)
        if z.ndim != 2:
            raise ValueError(f"Z must be a matrix, got shape {z.shape}")
        n, m = z.shape
        if not (1 <= n <= m):
            raise ValueError(f"Need 1 <= n <= m, got {n}x{m}")
        if m > MAX_COLUMNS:
            raise TooLarge(f"{n}x{m} exceeds the column limit {MAX_COLUMNS}")
        if np.max(np.abs(z)) > ENTRY_BOUND:
            raise ValueError(f"Entries must be bounded by {ENTRY_BOUND}")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.Z.shape


def random_sample(n: int, m: int, seed: int) -> MatrixSample:
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / math.sqrt(2.0)
    modulus = np.abs(z)
    z = np.where(modulus > ENTRY_BOUND, z * ENTRY_BOUND / np.maximum(modulus, 1e-300), z)
    return MatrixSample(z, seed)


def _matrix(sample) -> np.ndarray:
    if isinstance(sample, MatrixSample):
        return np.asarray(sample.Z, dtype=complex)
    return np.asarray(MatrixSample(np.asarray(sample, dtype=complex)).Z, dtype=complex)


def grassmann_inverse_identity(Z) -> float:
    """max |(I - Z*(I + Z Z*)^-1 Z)(I + Z* Z) - I|."""
    z = _matrix(Z)
    n, m = z.shape
    zh = z.conj().T
    left = np.eye(m) - zh @ np.linalg.solve(np.eye(n) + z @ zh, z)
    return float(np.max(np.abs(left @ (np.eye(m) + zh @ z) - np.eye(m))))


def plucker_coordinates(Z) -> np.ndarray:
    """All maximal minors of (I_n, Z), leading minor (equal to 1) first."""
    z = _matrix(Z)
    n, m = z.shape
    extended = np.hstack([np.eye(n), z])
    subsets = list(itertools.combinations(range(n + m), n))
    blocks = np.stack([extended[:, list(cols)] for cols in subsets])
    return np.linalg.det(blocks)


def cauchy_binet_check(Z) -> Tuple[float, float, float]:
    """
    Both sides of det(I + Z Z*) = 1 + sum of |non-leading maximal minors of (I, Z)|^2.

    Returns:
        (det_side, minor_side, |det_side - minor_side| / det_side)
    """
    z = _matrix(Z)
    n, m = z.shape
    if n > MINOR_MAX_ROWS or m > MINOR_MAX_COLUMNS:
        raise TooLarge(f"Minor enumeration capped at {MINOR_MAX_ROWS}x{MINOR_MAX_COLUMNS}, got {n}x{m}")
    det_side = float(np.linalg.det(np.eye(n) + z @ z.conj().T).real)
    minors = plucker_coordinates(z)
    minor_side = float(1.0 + np.sum(np.abs(minors[1:]) ** 2))
    return det_side, minor_side, abs(det_side - minor_side) / det_side


def _log_det_shift(z: np.ndarray, base_inv: np.ndarray, delta: np.ndarray) -> float:
    """log det(I + (Z+d)(Z+d)*) - log det(I + Z Z*), evaluated without cancellation."""
    n = z.shape[0]
    change = z @ delta.conj().T + delta @ z.conj().T + delta @ delta.conj().T
    _, value = np.linalg.slogdet(np.eye(n) + base_inv @ change)
    return float(value)


def fs_pullback_fd_check(Z, E, F, h: float = 1e-4) -> float:
    """
    Mismatch between the analytic and finite-difference Hermitian Hessian, relative to
    sqrt(H(E, E) H(F, F)).

    The analytic value is Tr((I + Z Z*)^-1 E (I + Z* Z)^-1 F*). The numerical value
    polarises four central mixed differences of log det(I + Z Z*) along E, iE, F, iF.
    """
    if not (1e-6 <= h <= 1e-3):
        raise ValueError(f"Step h must lie in [1e-6, 1e-3], got {h}")
    z = _matrix(Z)
    e = np.asarray(E, dtype=complex)
    f = np.asarray(F, dtype=complex)
    if e.shape != z.shape or f.shape != z.shape:
        raise ValueError(f"Directions must have shape {z.shape}")
    n, m = z.shape
    zh = z.conj().T
    row_inv = np.linalg.inv(np.eye(n) + z @ zh)
    col_inv = np.linalg.inv(np.eye(m) + zh @ z)
    exact = complex(np.trace(row_inv @ e @ col_inv @ f.conj().T))
    # Cauchy-Schwarz scale of the Hermitian form
    norm_e = np.trace(row_inv @ e @ col_inv @ e.conj().T).real
    norm_f = np.trace(row_inv @ f @ col_inv @ f.conj().T).real
    scale = math.sqrt(max(norm_e * norm_f, 0.0))

    def mixed(u: np.ndarray, v: np.ndarray) -> float:
        total = 0.0
        for su, sv, weight in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
            total += weight * _log_det_shift(z, row_inv, h * (su * u + sv * v))
        return total / (4.0 * h * h)

    numeric = 0.25 * (mixed(e, f) + mixed(1j * e, 1j * f)) + 0.25j * (mixed(e, 1j * f) - mixed(1j * e, f))
    return float(abs(numeric - exact) / max(scale, 1e-300))


def plucker_distance(Z1, Z2) -> Tuple[float, float, float]:
    """
    Fubini-Study distance between two graphs in the Grassmannian.

    Returns:
        (angle from Plücker minors, angle from arccos |det(I + Z1 Z2*)| / sqrt(...),
        absolute difference of the two cosines)
    """
    a = _matrix(Z1)
    b = _matrix(Z2)
    if a.shape != b.shape:
        raise ValueError(f"Shapes differ: {a.shape} vs {b.shape}")
    n = a.shape[0]
    pa = plucker_coordinates(a)
    pb = plucker_coordinates(b)
    cos_minors = abs(np.vdot(pb, pa)) / (np.linalg.norm(pa) * np.linalg.norm(pb))
    cross = abs(np.linalg.det(np.eye(n) + a @ b.conj().T))
    norms = math.sqrt(
        np.linalg.det(np.eye(n) + a @ a.conj().T).real * np.linalg.det(np.eye(n) + b @ b.conj().T).real
    )
    cos_det = cross / norms
    angle_minors = math.acos(min(1.0, float(cos_minors)))
    angle_det = math.acos(min(1.0, float(cos_det)))
    return angle_minors, angle_det, float(abs(cos_minors - cos_det))

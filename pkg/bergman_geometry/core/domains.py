# core/domains.py

"""Model domains, points and series truncation settings."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Tuple, Union

import numpy as np

from .errors import NotInDomain


class DomainKind(Enum):
    UNIT_DISK = "disk"
    ANNULUS = "annulus"
    PRODUCT = "product"


@dataclass(frozen=True)
class DomainSpec:
    kind: DomainKind
    r: float = 0.0
    factors: Tuple["DomainSpec", ...] = ()

    def __post_init__(self):
        if self.kind is DomainKind.ANNULUS:
            if not (0.0 < self.r < 1.0):
                raise ValueError(f"Annulus inner radius must lie in (0, 1), got r={self.r}")
            if self.r * self.r == 0.0:
                raise ValueError(f"Annulus inner radius r={self.r} underflows r^2")
        if self.kind is DomainKind.PRODUCT:
            if len(self.factors) < 1:
                raise ValueError("Product domain needs at least one factor")
            if any(f.kind is DomainKind.PRODUCT for f in self.factors):
                raise ValueError("Product factors must be one-dimensional domains")

    @classmethod
    def unit_disk(cls) -> "DomainSpec":
        return cls(DomainKind.UNIT_DISK)

    @classmethod
    def annulus(cls, r: float) -> "DomainSpec":
        return cls(DomainKind.ANNULUS, r=float(r))

    @classmethod
    def product(cls, *factors: "DomainSpec") -> "DomainSpec":
        return cls(DomainKind.PRODUCT, factors=tuple(factors))

    @property
    def n(self) -> int:
        return len(self.factors) if self.kind is DomainKind.PRODUCT else 1

    @property
    def factor_list(self) -> Tuple["DomainSpec", ...]:
        return self.factors if self.kind is DomainKind.PRODUCT else (self,)

    @property
    def log_r2(self) -> float:
        """log r^2 for an annulus, computed as 2 log r so tiny radii keep full precision."""
        if self.kind is not DomainKind.ANNULUS:
            raise ValueError(f"log r^2 is only defined for an annulus, got {self.kind.value}")
        return 2.0 * math.log(self.r)

    def describe(self) -> str:
        if self.kind is DomainKind.ANNULUS:
            return f"annulus(r={self.r:g})"
        if self.kind is DomainKind.PRODUCT:
            return " x ".join(f.describe() for f in self.factors)
        return "disk"


@dataclass(frozen=True)
class Truncation:
    tol_abs: float = 1e-14
    max_terms: int = 1_000_000
    boundary_margin: float = 1e-9

    def __post_init__(self):
        if self.tol_abs <= 0.0:
            raise ValueError(f"tol_abs must be positive, got {self.tol_abs}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be at least 1, got {self.max_terms}")
        if self.boundary_margin <= 0.0:
            raise ValueError(f"boundary_margin must be positive, got {self.boundary_margin}")


@dataclass(frozen=True)
class Point:
    coords: Tuple[complex, ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, z: Union["Point", complex, Sequence[complex]]) -> "Point":
        if isinstance(z, Point):
            return z
        if np.isscalar(z):
            return cls((complex(z),))
        return cls(tuple(complex(c) for c in z))

    @property
    def n(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=complex)


PointLike = Union[Point, complex, Sequence[complex], np.ndarray]


def as_coords(domain: DomainSpec, z: PointLike) -> np.ndarray:
    """Normalise a point to a complex coordinate vector of the domain's dimension."""
    if isinstance(z, Point):
        coords = z.as_array()
    else:
        coords = np.atleast_1d(np.asarray(z, dtype=complex))
    if coords.shape != (domain.n,):
        raise ValueError(
            f"Point has {coords.size} coordinates, {domain.describe()} needs {domain.n}"
        )
    return coords


def _factor_contains(factor: DomainSpec, z: complex) -> bool:
    modulus = abs(z)
    if not math.isfinite(modulus) or modulus >= 1.0:
        return False
    if factor.kind is DomainKind.ANNULUS:
        return modulus > factor.r
    return True


def admissible_point(domain: DomainSpec, z: PointLike) -> bool:
    try:
        coords = as_coords(domain, z)
    except ValueError:
        return False
    return all(_factor_contains(f, c) for f, c in zip(domain.factor_list, coords))


def require_admissible(domain: DomainSpec, z: PointLike, label: str = "point") -> np.ndarray:
    coords = as_coords(domain, z)
    for f, c in zip(domain.factor_list, coords):
        if not _factor_contains(f, c):
            raise NotInDomain(f"{label} {c} is not in {f.describe()}")
    return coords


def admissible_mask(domain: DomainSpec, points: np.ndarray) -> np.ndarray:
    """Row-wise admissibility of an (N, n) array of points."""
    points = np.asarray(points, dtype=complex).reshape(-1, domain.n)
    ok = np.ones(points.shape[0], dtype=bool)
    for k, f in enumerate(domain.factor_list):
        modulus = np.abs(points[:, k])
        ok &= np.isfinite(modulus) & (modulus < 1.0)
        if f.kind is DomainKind.ANNULUS:
            ok &= modulus > f.r
    return ok


def parse_domain(kind: str, r: float = None, factors: str = None) -> DomainSpec:
    """
    Builds a DomainSpec from command-line style strings.

    Args:
        kind: 'disk', 'annulus' or 'product'
        r: inner radius, required for 'annulus'
        factors: comma-separated factor list for 'product', e.g. 'annulus:1e-8,disk'

    Returns:
        DomainSpec
    """
    kind = kind.strip().lower()
    if kind == "disk":
        return DomainSpec.unit_disk()
    if kind == "annulus":
        if r is None:
            raise ValueError("Annulus domain requires an inner radius r")
        return DomainSpec.annulus(float(r))
    if kind == "product":
        if not factors:
            raise ValueError("Product domain requires a factor list such as 'annulus:1e-8,disk'")
        return DomainSpec.product(*(_parse_factor(token) for token in factors.split(",")))
    raise ValueError(f"Unknown domain kind: {kind}. Supported kinds: disk, annulus, product")


def _parse_factor(token: str) -> DomainSpec:
    token = token.strip().lower()
    if token == "disk":
        return DomainSpec.unit_disk()
    if token.startswith("annulus:"):
        return DomainSpec.annulus(float(token.split(":", 1)[1]))
    raise ValueError(f"Cannot parse product factor '{token}'")


def parse_complex(text: str) -> complex:
    """Parses 'a,b' into a + bi."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise ValueError(f"Expected a complex number as 'a,b', got '{text}'")
    return complex(float(parts[0]), float(parts[1]))

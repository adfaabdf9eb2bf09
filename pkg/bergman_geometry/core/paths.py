# core/paths.py

"""Piecewise paths and their metric lengths by adaptive Gauss-Legendre quadrature."""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss

from .domains import DomainSpec, Truncation
from .errors import QuadratureNotConverged
from .geometry import metric_weights

logger = logging.getLogger(__name__)

JOIN_TOLERANCE = 1e-12
MAX_PANELS = 1024


def _as_vector(z) -> np.ndarray:
    return np.atleast_1d(np.asarray(z, dtype=complex))


@dataclass(frozen=True)
class LinearSegment:
    start: Tuple[complex, ...]
    end: Tuple[complex, ...]

    def __init__(self, start, end):
        object.__setattr__(self, "start", tuple(_as_vector(start)))
        object.__setattr__(self, "end", tuple(_as_vector(end)))
        if len(self.start) != len(self.end):
            raise ValueError("Segment endpoints have different dimensions")

    @property
    def n(self) -> int:
        return len(self.start)

    @property
    def edges(self) -> int:
        return 1

    def evaluate(self, s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        a = np.asarray(self.start)
        b = np.asarray(self.end)
        points = a[None, None, :] + s[None, :, None] * (b - a)[None, None, :]
        velocity = np.broadcast_to((b - a)[None, None, :], points.shape)
        return points, velocity

    def euclidean_length(self) -> float:
        return float(np.linalg.norm(np.asarray(self.end) - np.asarray(self.start)))

    def reversed(self) -> "LinearSegment":
        return LinearSegment(self.end, self.start)


@dataclass(frozen=True)
class CircularArc:
    """Arc of the circle |z| = radius around the origin, angles in radians."""
    radius: float
    angle_start: float
    angle_end: float

    @property
    def n(self) -> int:
        return 1

    @property
    def edges(self) -> int:
        return 1

    @property
    def start(self) -> Tuple[complex, ...]:
        return (self.radius * complex(math.cos(self.angle_start), math.sin(self.angle_start)),)

    @property
    def end(self) -> Tuple[complex, ...]:
        return (self.radius * complex(math.cos(self.angle_end), math.sin(self.angle_end)),)

    def evaluate(self, s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        sweep = self.angle_end - self.angle_start
        points = self.radius * np.exp(1j * (self.angle_start + s * sweep))
        velocity = 1j * sweep * points
        return points[None, :, None], velocity[None, :, None]

    def euclidean_length(self) -> float:
        return abs(self.radius * (self.angle_end - self.angle_start))

    def reversed(self) -> "CircularArc":
        return CircularArc(self.radius, self.angle_end, self.angle_start)


@dataclass(frozen=True, eq=False)
class Polyline:
    nodes: np.ndarray

    def __init__(self, nodes):
        array = np.array(nodes, dtype=complex)
        if array.ndim == 1:
            array = array[:, None]
        if array.shape[0] < 2:
            raise ValueError("Polyline needs at least two nodes")
        array.setflags(write=False)
        object.__setattr__(self, "nodes", array)

    @property
    def n(self) -> int:
        return self.nodes.shape[1]

    @property
    def edges(self) -> int:
        return self.nodes.shape[0] - 1

    @property
    def start(self) -> Tuple[complex, ...]:
        return tuple(self.nodes[0])

    @property
    def end(self) -> Tuple[complex, ...]:
        return tuple(self.nodes[-1])

    def evaluate(self, s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        a = self.nodes[:-1]
        delta = self.nodes[1:] - a
        points = a[:, None, :] + s[None, :, None] * delta[:, None, :]
        velocity = np.broadcast_to(delta[:, None, :], points.shape)
        return points, velocity

    def euclidean_length(self) -> float:
        return float(np.sum(np.linalg.norm(np.diff(self.nodes, axis=0), axis=1)))

    def reversed(self) -> "Polyline":
        return Polyline(self.nodes[::-1])


Segment = Union[LinearSegment, CircularArc, Polyline]


@dataclass(frozen=True)
class ParamPath:
    """Concatenation of segments, parametrised on [0, 1] in proportion to Euclidean length."""
    segments: Tuple[Segment, ...]

    def __post_init__(self):
        if not self.segments:
            raise ValueError("A path needs at least one segment")
        dims = {seg.n for seg in self.segments}
        if len(dims) != 1:
            raise ValueError(f"Segments mix dimensions {sorted(dims)}")
        for first, second in zip(self.segments, self.segments[1:]):
            gap = np.max(np.abs(np.asarray(first.end) - np.asarray(second.start)))
            if gap > JOIN_TOLERANCE:
                raise ValueError(f"Consecutive segments do not join (gap {gap:.3e})")

    @classmethod
    def of(cls, *segments: Segment) -> "ParamPath":
        return cls(tuple(segments))

    @property
    def n(self) -> int:
        return self.segments[0].n

    @property
    def start(self) -> np.ndarray:
        return np.asarray(self.segments[0].start)

    @property
    def end(self) -> np.ndarray:
        return np.asarray(self.segments[-1].end)

    def euclidean_length(self) -> float:
        return sum(seg.euclidean_length() for seg in self.segments)

    def reversed(self) -> "ParamPath":
        return ParamPath(tuple(seg.reversed() for seg in reversed(self.segments)))

    def sample(self, count: int) -> np.ndarray:
        """count points at equal Euclidean spacing, endpoints included; shape (count, n)."""
        fine = []
        for seg in self.segments:
            s = np.linspace(0.0, 1.0, 65)
            points, _ = seg.evaluate(s)
            fine.append(points.reshape(-1, self.n))
        dense = np.concatenate(fine)
        steps = np.linalg.norm(np.diff(dense, axis=0), axis=1)
        arclength = np.concatenate([[0.0], np.cumsum(steps)])
        if arclength[-1] == 0.0:
            return np.repeat(dense[:1], count, axis=0)
        targets = np.linspace(0.0, arclength[-1], count)
        out = np.empty((count, self.n), dtype=complex)
        for k in range(self.n):
            out[:, k] = (np.interp(targets, arclength, dense[:, k].real)
                         + 1j * np.interp(targets, arclength, dense[:, k].imag))
        out[0] = dense[0]
        out[-1] = dense[-1]
        return out


def _panel_rule(order: int, panels: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(order)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _segment_length(domain: DomainSpec, seg: Segment, kind: str, order: int, panels: int,
                    trunc: Truncation) -> float:
    s, w = _panel_rule(order, panels)
    points, velocity = seg.evaluate(s)
    weights, _ = metric_weights(domain, points.reshape(-1, domain.n), kind, trunc)
    density = np.sum(weights.reshape(points.shape) * np.abs(velocity) ** 2, axis=-1)
    return float(np.sum(np.sqrt(density) * w[None, :]))


def path_length(
    domain: DomainSpec,
    path: Union[ParamPath, Segment],
    kind: str = "bergman",
    quad_order: int = 8,
    tol: float = 1e-10,
    trunc: Truncation = Truncation(),
) -> float:
    """
    Metric length of a path.

    Each segment is integrated with composite Gauss-Legendre rules; the panel count
    doubles until doubling the rule order changes the segment length by less than
    tol (relative, floored at 1).
    """
    if not isinstance(path, ParamPath):
        path = ParamPath.of(path)
    if path.n != domain.n:
        raise ValueError(f"Path dimension {path.n} does not match {domain.describe()}")
    total = 0.0
    for seg in path.segments:
        panels = 1
        while True:
            coarse = _segment_length(domain, seg, kind, quad_order, panels, trunc)
            fine = _segment_length(domain, seg, kind, 2 * quad_order, panels, trunc)
            if abs(fine - coarse) <= tol * max(1.0, abs(fine)):
                break
            panels *= 2
            if panels > MAX_PANELS:
                raise QuadratureNotConverged(
                    f"{kind} length of {type(seg).__name__} not stable at {MAX_PANELS} panels: "
                    f"{coarse!r} vs {fine!r}"
                )
        logger.debug(f"{type(seg).__name__}: {kind} length {fine:.12g} with {panels} panel(s)")
        total += fine
    return total

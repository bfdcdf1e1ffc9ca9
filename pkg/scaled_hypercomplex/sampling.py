"""Points of H_t viewed as R^4, region specs and the seeded sampler.

All randomness in the package goes through :func:`make_rng`, a numpy
``Generator`` driven by the 64-bit counter-based Philox bit generator, so a
seed reproduces the same sample points on every platform.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import ParseError

debug_logger = logging.getLogger("scaled_hypercomplex.sampling")

REGION_KINDS = ("box", "ball")


class Point4(NamedTuple):
    """A point w = x1 + x2 i + x3 j_t + x4 k_t, as four real coordinates."""

    x1: float
    x2: float
    x3: float
    x4: float

    @classmethod
    def coerce(cls, values):
        """Build a point from any length-4 sequence of finite reals."""
        if isinstance(values, cls):
            return values
        try:
            coords = [float(value) for value in values]
        except (TypeError, ValueError) as error:
            raise ParseError(f"'{values}' is not a point of R^4.") from error
        if len(coords) != 4 or not all(math.isfinite(x) for x in coords):
            raise ParseError(f"'{values}' is not a point of R^4.")
        return cls(*coords)

    def scaled(self, s):
        return Point4(*(s * x for x in self))

    def shifted(self, index, step):
        """Return the point moved by ``step`` along coordinate ``index`` (1..4)."""
        coords = list(self)
        coords[index - 1] += step
        return Point4(*coords)


ORIGIN = Point4(0.0, 0.0, 0.0, 0.0)


def make_rng(seed=0):
    """Return a numpy Generator on the Philox counter-based bit generator."""
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True)
class Region:
    """
    An open connected region of R^4, used as the domain U of a verdict.

    Parameters
    ----------
    kind : str
        Either "box" (axis-aligned cube of half-width ``radius``) or "ball".
    center : tuple of float
        Center of the region.
    radius : float
        Half-width of the box or radius of the ball, strictly positive.
    """

    kind: str = "box"
    center: Point4 = ORIGIN
    radius: float = 1.0

    def __post_init__(self):
        if self.kind not in REGION_KINDS:
            raise ParseError(
                f"Unknown region kind '{self.kind}', expected one of {REGION_KINDS}."
            )
        object.__setattr__(self, "center", Point4.coerce(self.center))
        radius = float(self.radius)
        if not (math.isfinite(radius) and radius > 0):
            raise ParseError(f"Region radius must be positive, got {self.radius}.")
        object.__setattr__(self, "radius", radius)

    @classmethod
    def from_dict(cls, spec):
        try:
            return cls(
                kind=spec.get("kind", "box"),
                center=spec.get("center", ORIGIN),
                radius=spec.get("radius", 1.0),
            )
        except AttributeError as error:
            raise ParseError(f"'{spec}' is not a region spec.") from error

    def to_dict(self):
        return {"kind": self.kind, "center": list(self.center), "radius": self.radius}

    def contains(self, point):
        offset = np.asarray(point) - np.asarray(self.center)
        if self.kind == "box":
            return bool(np.all(np.abs(offset) < self.radius))
        return bool(np.linalg.norm(offset) < self.radius)

    def sample(self, count, seed=0):
        """
        Draw ``count`` points from the region, deterministically for a seed.

        Parameters
        ----------
        count : int
            Number of points, at least one.
        seed : int
            Seed of the Philox generator.

        Returns
        -------
        list of Point4
        """
        if count < 1:
            raise ParseError(f"At least one sample is required, got {count}.")
        rng = make_rng(seed)
        center = np.asarray(self.center)
        if self.kind == "box":
            offsets = rng.uniform(-self.radius, self.radius, size=(count, 4))
        else:
            directions = rng.standard_normal(size=(count, 4))
            directions /= np.linalg.norm(directions, axis=1, keepdims=True)
            # uniform in volume: radius scales with u**(1/4) in four dimensions
            radii = self.radius * rng.uniform(0.0, 1.0, size=(count, 1)) ** 0.25
            offsets = directions * radii
        debug_logger.debug(f"Sampled {count} points from {self.kind} with seed {seed}.")
        return [Point4(*row) for row in (center + offsets).tolist()]


UNIT_BOX = Region()

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sampling lattice, ``nx`` points on x and ``ny`` on y."""

    x_range: tuple = (-3.0, 3.0)
    y_range: tuple = (-3.0, 3.0)
    nx: int = 201
    ny: int = 201

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 points per axis")
        for name, (lo, hi) in (("x_range", self.x_range), ("y_range", self.y_range)):
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise ValueError(f"{name} must satisfy min < max, got {(lo, hi)}")

    @property
    def xs(self):
        return np.linspace(self.x_range[0], self.x_range[1], self.nx)

    @property
    def ys(self):
        return np.linspace(self.y_range[0], self.y_range[1], self.ny)

    def mesh(self):
        """Coordinate arrays of shape ``(nx, ny)`` (first index runs over x)."""
        return np.meshgrid(self.xs, self.ys, indexing="ij")

    def refined(self, factor=2):
        """Same box with ``factor`` times as many cells per axis."""
        return GridSpec(
            self.x_range,
            self.y_range,
            (self.nx - 1) * factor + 1,
            (self.ny - 1) * factor + 1,
        )

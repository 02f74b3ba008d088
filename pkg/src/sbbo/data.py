"""Accumulated (x, y) observations shared by surrogates and the harness."""
from __future__ import annotations

import numpy as np


class Dataset:
    """Ordered pairs of evaluated points and their observed responses."""

    def __init__(self, points=None, y=None):
        self.points = [np.asarray(x, dtype=float) for x in (points or [])]
        self.y = [float(v) for v in (y or [])]
        if len(self.points) != len(self.y):
            raise ValueError(f"{len(self.points)} points but {len(self.y)} responses")

    def append(self, x, y):
        self.points.append(np.asarray(x, dtype=float))
        self.y.append(float(y))

    def y_array(self):
        return np.array(self.y)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"Dataset(n={len(self)})"

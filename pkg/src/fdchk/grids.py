"""Rectangular Dirichlet grids and complex fields sampled on them.

Interior nodes sit at i*h (i = 1..n) per axis with h = L/(n+1); the field
is implicitly zero outside the interior.  Nodal quadrature assigns every
interior node an equal share L/n of each axis length, so constant fields
integrate to exactly Phi(c) * measure.  Gradient quadratures live on the
staggered cells of volume prod(h), which tile the closed box exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import expr as dsl

__all__ = ["GridDomain", "GridField"]


@dataclass(frozen=True)
class GridDomain:
    """A 1D or 2D rectangle with an interior-node Dirichlet grid."""

    lengths: tuple
    nodes: tuple

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(float(l) for l in self.lengths))
        object.__setattr__(self, "nodes", tuple(int(n) for n in self.nodes))
        if len(self.lengths) not in (1, 2) or len(self.lengths) != len(self.nodes):
            raise ValueError("GridDomain supports matching 1D or 2D axis specs")
        if any(l <= 0 for l in self.lengths):
            raise ValueError("axis lengths must be positive")
        if any(n < 8 for n in self.nodes):
            raise ValueError("need at least 8 interior nodes per axis")

    @property
    def dims(self) -> int:
        return len(self.lengths)

    @property
    def h(self) -> tuple:
        return tuple(l / (n + 1) for l, n in zip(self.lengths, self.nodes))

    @property
    def measure(self) -> float:
        return float(np.prod(self.lengths))

    @property
    def node_weight(self) -> float:
        """Equal-share quadrature weight of one interior node."""
        return float(np.prod([l / n for l, n in zip(self.lengths, self.nodes)]))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.h))

    def node_axes(self) -> list:
        return [h * np.arange(1, n + 1) for h, n in zip(self.h, self.nodes)]

    def node_mesh(self) -> list:
        """Coordinate arrays broadcast over the interior-node lattice."""
        return list(np.meshgrid(*self.node_axes(), indexing="ij"))

    def cell_axes(self) -> list:
        """Per-axis staggered cell-center coordinates ((p + 1/2) h, p = 0..n)."""
        return [h * (np.arange(0, n + 1) + 0.5) for h, n in zip(self.h, self.nodes)]


@dataclass(frozen=True)
class GridField:
    """Complex values on the interior nodes of a GridDomain."""

    domain: GridDomain
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.domain.nodes:
            raise ValueError(f"values shape {vals.shape} != grid {self.domain.nodes}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, domain: GridDomain, fn: Callable) -> "GridField":
        return cls(domain, np.asarray(fn(*domain.node_mesh()), dtype=complex))

    @classmethod
    def from_expressions(cls, domain: GridDomain, re_text: str,
                         im_text: str = "0") -> "GridField":
        re_tree, im_tree = dsl.parse(re_text), dsl.parse(im_text)
        allowed = {f"x{k + 1}" for k in range(domain.dims)}
        stray = (dsl.free_variables(re_tree) | dsl.free_variables(im_tree)) - allowed
        if stray:
            raise ValueError(f"initial data uses {sorted(stray)} outside "
                             f"x1..x{domain.dims}")
        mesh = domain.node_mesh()
        bindings = {f"x{k + 1}": mesh[k] for k in range(domain.dims)}
        re_part = np.broadcast_to(dsl.evaluate(re_tree, bindings), domain.nodes)
        im_part = np.broadcast_to(dsl.evaluate(im_tree, bindings), domain.nodes)
        return cls(domain, re_part + 1j * np.asarray(im_part))

    @classmethod
    def zeros(cls, domain: GridDomain) -> "GridField":
        return cls(domain, np.zeros(domain.nodes, dtype=complex))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def l2_norm(self) -> float:
        w = self.domain.node_weight
        return float(np.sqrt(w * np.sum(np.abs(self.values) ** 2)))

    def padded(self) -> np.ndarray:
        """Values with the zero Dirichlet boundary ring attached."""
        return np.pad(self.values, 1, mode="constant")

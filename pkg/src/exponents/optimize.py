"""Grid-plus-refine minimisation over products of simplices"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Optional

import numpy as np

import config
from ..measures.grid import SimplexProductGrid, chunk_size

LOGGER = logging.getLogger(__name__)


@dataclass
class ExponentResult:
    """An exponent value in nats with the distribution(s) that attain it"""

    value: float
    argmin: Dict[str, Any] = field(default_factory=dict)
    grid_resolution: int = 0
    refined: bool = False
    converged: Optional[bool] = None
    kind: str = ''

    def summary(self) -> str:
        """Compact argmin description for report rows"""
        parts = []
        for name, item in self.argmin.items():
            if isinstance(item, np.ndarray):
                flat = ' '.join(f"{v:.4g}" for v in np.ravel(item))
                parts.append(f"{name}=[{flat}]")
            else:
                parts.append(f"{name}={item}")
        return '; '.join(parts)


@dataclass
class GridSearch:
    """Outcome of one grid-plus-refine search"""

    value: float
    point: Optional[np.ndarray]
    resolution: int
    refined: bool


def evaluate_in_chunks(objective: Callable[[np.ndarray], np.ndarray], points,
                       per_point_elements=1) -> np.ndarray:
    step = chunk_size(per_point_elements)
    values = [np.asarray(objective(points[i:i + step]), dtype=float)
              for i in range(0, len(points), step)]
    return np.concatenate(values) if values else np.empty(0)


def grid_minimize(objective, grid: SimplexProductGrid, resolution, anchors=None, refine=True,
                  budget=config.GRID_POINT_BUDGET, per_point_elements=1) -> GridSearch:
    """Minimise ``objective`` (points of shape (B, blocks, size) -> values (B,)).

    The exhaustive grid and the ``anchors`` are evaluated first; one local pass
    at finer resolution then searches around the incumbent. Ties keep the
    earliest point. An empty feasible set (all +inf) gives +inf and no point.
    """
    resolution = grid.scaled_resolution(resolution, budget)
    points = grid.points(resolution)
    if anchors is not None and len(anchors):
        points = np.concatenate([np.asarray(anchors, dtype=float).reshape(-1, grid.blocks, grid.size),
                                 points])
    values = evaluate_in_chunks(objective, points, per_point_elements)
    best = int(np.argmin(values))
    value, point = float(values[best]), points[best]
    if not np.isfinite(value) and value > 0:
        return GridSearch(np.inf, None, resolution, False)
    if refine:
        local = grid.local_points(point, resolution)
        local_values = evaluate_in_chunks(objective, local, per_point_elements)
        if len(local_values):
            candidate = int(np.argmin(local_values))
            if local_values[candidate] < value:
                value, point = float(local_values[candidate]), local[candidate]
    LOGGER.debug("grid %dx%d at resolution %d: min %.6g", grid.blocks, grid.size, resolution, value)
    return GridSearch(value, point, resolution, refine)


def grid_maximize(objective, grid: SimplexProductGrid, resolution, anchors=None, refine=True,
                  budget=config.GRID_POINT_BUDGET, per_point_elements=1) -> GridSearch:
    """Supremum counterpart of ``grid_minimize``; an empty set gives -inf"""
    found = grid_minimize(lambda pts: -np.asarray(objective(pts)), grid, resolution,
                          anchors, refine, budget, per_point_elements)
    return replace(found, value=-found.value)


def check_convergence(fn, *args, resolution=config.GRID_RESOLUTION,
                      tolerance=config.CONVERGENCE_TOLERANCE, **kwargs) -> ExponentResult:
    """Run ``fn`` at ``resolution`` and twice that; flag the result converged if they agree"""
    coarse = fn(*args, resolution=resolution, **kwargs)
    fine = fn(*args, resolution=2 * resolution, **kwargs)
    if np.isinf(coarse.value) or np.isinf(fine.value):
        converged = coarse.value == fine.value
    else:
        converged = abs(coarse.value - fine.value) < tolerance
    if not converged:
        LOGGER.warning("%s not converged: %.6g at resolution %d vs %.6g at %d",
                       coarse.kind or getattr(fn, '__name__', 'exponent'),
                       coarse.value, coarse.grid_resolution, fine.value, fine.grid_resolution)
    return replace(coarse, converged=bool(converged))

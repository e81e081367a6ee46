"""Expurgated false-reject exponents.

alpha(R_w, Q_Y)  = sup over {Q_{X|Y}: H_Q(X|Y) > R_w} of a(Q_XY) + H_Q(X|Y) - R_w
gamma(Q_XY)      = max{a(Q_XY), alpha(R_w, Q_Y)}
Lambda(Q_XX')    = min over Q_{Y|XX'} of gamma(Q_XY) - a(Q_X'Y) + D(Q_{Y|XX'} || P_{Y|X} | Q_XX')
E_ex(R_w, Q_X)   = inf over {Q_{X'|X}: H_Q(X'|X) >= R_w} of Lambda - H_Q(X'|X) + R_w

The X-marginal of Q_XX' is always the type q_x under expurgation. For a
map-limit metric the gamma - a term becomes the constraint G <= 0 and Lambda
keeps only the divergence.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree

import config
from ..decoders.metric import DecodingMetric, MetricKind, map_limit, min_entropy
from ..measures.distributions import CondPmf, JointPmf, Pmf
from ..measures.extended import ext_add, ext_sub, pos_part
from ..measures.grid import SimplexProductGrid
from ..measures.information import cond_entropy_array, entropy_array, kl_array
from .false_reject import joints_from_conditionals
from .optimize import ExponentResult, grid_maximize

LOGGER = logging.getLogger(__name__)


def _x_alphabet(metric: DecodingMetric, x_size: Optional[int]) -> int:
    source = metric.base if metric.is_limit else metric
    if source.channel is not None:
        return source.channel.out_size
    if x_size is None:
        raise ValueError(f"{metric.describe()} carries no channel; pass x_size")
    return int(x_size)


def _alpha_closed_form(r_w, metric: DecodingMetric, x_size) -> Optional[float]:
    """alpha for -beta H metrics (and their map limit); None for other metrics"""
    log_x = math.log(x_size)
    if r_w >= log_x:
        return -np.inf
    if metric.is_limit:
        if metric.base.kind is MetricKind.MIN_ENTROPY:
            return -float(r_w)
        return None
    if metric.kind is not MetricKind.MIN_ENTROPY:
        return None
    beta = metric.beta
    if beta >= 1.0:
        return -beta * r_w
    return (1.0 - beta) * log_x - r_w


def alpha(r_w, q_y: Pmf, m: DecodingMetric, resolution=config.GRID_RESOLUTION,
          x_size: Optional[int] = None) -> float:
    """Supremum over Q_{X|Y} with H_Q(X|Y) > r_w; -inf when that set is empty.

    For a map-limit metric this is the supremum of the base metric alone.
    """
    x_size = _x_alphabet(m, x_size)
    closed = _alpha_closed_form(r_w, m, x_size)
    if closed is not None:
        return closed
    return _alpha_grid(r_w, q_y.probs, m, x_size, resolution)


def _alpha_grid(r_w, q_y, metric, x_size, resolution):
    grid = SimplexProductGrid(len(q_y), x_size)

    def objective(points):
        joints = joints_from_conditionals(points, q_y)
        h = cond_entropy_array(joints)
        a = metric.evaluate(joints)
        value = a if metric.is_limit else a + h - r_w
        return np.where(h > r_w, value, -np.inf)

    uniform = np.full((1, len(q_y), x_size), 1.0 / x_size)
    return grid_maximize(objective, grid, resolution, anchors=uniform,
                         budget=config.INNER_GRID_BUDGET).value


def gamma(q_xy: JointPmf, r_w, m: DecodingMetric, resolution=config.GRID_RESOLUTION) -> float:
    """max{a(Q_XY), alpha(r_w, Q_Y)}"""
    a = float(m.evaluate(q_xy.probs))
    return max(a, alpha(r_w, q_xy.y_marginal(), m, resolution, x_size=q_xy.rows))


class AlphaLookup:
    """alpha(r_w, .) for many Y-marginals: a constant, or a nearest-neighbour table"""

    def __init__(self, r_w, metric: DecodingMetric, x_size, y_size,
                 resolution=config.GRID_RESOLUTION,
                 table_resolution=config.ALPHA_TABLE_RESOLUTION):
        self.constant = _alpha_closed_form(r_w, metric, x_size)
        self.tree = None
        if self.constant is not None:
            return
        table_grid = SimplexProductGrid(1, y_size)
        inner_grid = SimplexProductGrid(y_size, x_size)
        per_point = inner_grid.count(inner_grid.scaled_resolution(resolution, config.INNER_GRID_BUDGET))
        table_resolution = table_grid.scaled_resolution(
            table_resolution, max(1, config.NESTED_GRID_BUDGET // per_point))
        points = table_grid.points(table_resolution)[:, 0, :]
        self.values = np.array([_alpha_grid(r_w, q_y, metric, x_size, resolution) for q_y in points])
        self.tree = cKDTree(points)
        LOGGER.debug("alpha table: %d Y-marginals at resolution %d", len(points), table_resolution)

    def __call__(self, q_y) -> np.ndarray:
        q_y = np.asarray(q_y, dtype=float)
        if self.constant is not None:
            return np.full(q_y.shape[:-1], self.constant)
        _, index = self.tree.query(q_y.reshape(-1, q_y.shape[-1]))
        return self.values[index].reshape(q_y.shape[:-1])


class LambdaSurface:
    """Lambda(Q_XX') over a grid of channels Q_{Y|XX'} for one (P_{Y|X}, metric, r_w)"""

    def __init__(self, p_y_given_x: CondPmf, metric: DecodingMetric, r_w,
                 resolution=config.LAMBDA_RESOLUTION, alpha_resolution=config.GRID_RESOLUTION):
        self.channel = p_y_given_x.probs
        self.x_size, self.y_size = self.channel.shape
        self.metric = metric
        self.r_w = float(r_w)
        self.grid = SimplexProductGrid(self.x_size * self.x_size, self.y_size)
        self.resolution = self.grid.scaled_resolution(resolution)
        self.alpha = AlphaLookup(r_w, metric, self.x_size, self.y_size, alpha_resolution)
        self.candidates, self.divergences = self._prepare(self.grid.points(self.resolution))

    def _prepare(self, points):
        cond = points.reshape(-1, self.x_size, self.x_size, self.y_size)
        reference = np.broadcast_to(self.channel[:, None, :], cond.shape)
        return cond, kl_array(cond, reference, axis=-1)

    def _values(self, q_xx, cond, divergences) -> np.ndarray:
        weights = q_xx[None, :, :]
        with np.errstate(invalid='ignore'):
            div = np.sum(np.where(weights > 0.0, weights * divergences, 0.0), axis=(1, 2))
        joint = q_xx[None, :, :, None] * cond
        q_xy = joint.sum(axis=2)
        q_x2y = joint.sum(axis=1)
        a_xy = self.metric.evaluate(q_xy)
        a_x2y = self.metric.evaluate(q_x2y)
        gam = np.maximum(a_xy, self.alpha(q_xy.sum(axis=1)))
        if self.metric.is_limit:
            feasible = ext_sub(gam, a_x2y) <= config.CONSTRAINT_SLACK
            return np.where(feasible, div, np.inf)
        return ext_add(gam, -a_x2y, div)

    def evaluate(self, q_xx, refine=False) -> Tuple[float, np.ndarray]:
        """Lambda at one Q_XX' (shape (X, X')) and the minimising Q_{Y|XX'}"""
        q_xx = np.asarray(q_xx, dtype=float)
        values = self._values(q_xx, self.candidates, self.divergences)
        best = int(np.argmin(values))
        value, cond = float(values[best]), self.candidates[best]
        if refine and np.isfinite(value):
            local = self.grid.local_points(cond.reshape(-1, self.y_size), self.resolution)
            local_cond, local_div = self._prepare(local)
            local_values = self._values(q_xx, local_cond, local_div)
            pick = int(np.argmin(local_values))
            if local_values[pick] < value:
                value, cond = float(local_values[pick]), local_cond[pick]
        return value, cond


def lambda_pairwise(q_xx: JointPmf, p_y_given_x: CondPmf, m: DecodingMetric, r_w,
                    resolution=config.LAMBDA_RESOLUTION) -> float:
    """Lambda(Q_XX') by grid search over Q_{Y|XX'} with one refinement pass"""
    surface = LambdaSurface(p_y_given_x, m, r_w, resolution)
    value, _ = surface.evaluate(q_xx.probs, refine=True)
    return value


class ExpurgationAnalyzer:
    """Lambda over a grid of Q_{X'|X} for one type q_x, shared by E_ex, E_1 and E_x(rho)"""

    def __init__(self, q_x: Pmf, p_y_given_x: CondPmf, r_w, metric: DecodingMetric,
                 resolution=config.EXPURGATION_RESOLUTION,
                 lambda_resolution=config.LAMBDA_RESOLUTION):
        self.q_x = q_x.probs
        self.x_size = q_x.alphabet_size
        self.r_w = float(r_w)
        self.metric = metric
        self.surface = LambdaSurface(p_y_given_x, metric, r_w, lambda_resolution)
        self.grid = SimplexProductGrid(self.x_size, self.x_size)
        self.resolution = self.grid.scaled_resolution(resolution)
        anchors = np.stack([np.full((self.x_size, self.x_size), 1.0 / self.x_size),
                            np.eye(self.x_size)])
        self.points = np.concatenate([anchors, self.grid.points(self.resolution)])
        self.lambdas = self._lambdas(self.points)
        self.entropies = self._entropies(self.points)
        self._constrained = None
        self._shared = None

    def _entropies(self, points):
        return entropy_array(points, axis=-1) @ self.q_x

    def _lambdas(self, points):
        return np.array([self.surface.evaluate(self.q_x[:, None] * p)[0] for p in points])

    def _refined_lambda(self, point):
        return self.surface.evaluate(self.q_x[:, None] * point, refine=True)

    def constrained(self) -> Tuple[float, Optional[np.ndarray], Optional[np.ndarray]]:
        """inf over H(X'|X) >= r_w of Lambda - H + r_w, with the minimising Q_{X'|X} and Q_{Y|XX'}"""
        if self._constrained is not None:
            return self._constrained
        if self.r_w > math.log(self.x_size) + config.CONSTRAINT_SLACK:
            self._constrained = (np.inf, None, None)
            return self._constrained

        def objective(lambdas, entropies):
            feasible = entropies >= self.r_w - config.CONSTRAINT_SLACK
            return np.where(feasible, ext_add(lambdas, self.r_w - entropies), np.inf)

        values = objective(self.lambdas, self.entropies)
        best = int(np.argmin(values))
        if not values[best] < np.inf:
            self._constrained = (np.inf, None, None)
            return self._constrained
        point = self.points[best]
        local = self.grid.local_points(point, self.resolution, budget=len(self.points))
        local_values = objective(self._lambdas(local), self._entropies(local))
        if len(local_values) and local_values.min() < values[best]:
            point = local[int(np.argmin(local_values))]
        lam, cond = self._refined_lambda(point)
        value = float(objective(np.array([lam]), self._entropies(point[None]))[0])
        self._constrained = (value, point, cond)
        return self._constrained

    def _shared_candidates(self):
        """Grid points plus refined incumbents, each with a fixed Lambda, for the rho family"""
        if self._shared is not None:
            return self._shared
        lambdas = [self.lambdas]
        entropies = [self.entropies]
        value, point, _ = self.constrained()
        extra = [] if point is None else [point]
        one = self.lambdas + self.r_w - self.entropies
        extra.append(self.points[int(np.argmin(one))])
        for p in extra:
            lambdas.append(np.array([self._refined_lambda(p)[0]]))
            entropies.append(self._entropies(p[None]))
        self._shared = (np.concatenate(lambdas), np.concatenate(entropies))
        return self._shared

    def rho_value(self, rho) -> float:
        """inf over Q_{X'|X} of Lambda - [H - r_w]_+ + rho [r_w - H]_+"""
        if rho < 1.0:
            raise ValueError(f"rho must be at least 1, got {rho}")
        lambdas, entropies = self._shared_candidates()
        gap = self.r_w - entropies
        values = ext_add(lambdas, -pos_part(-gap), rho * pos_part(gap))
        return max(float(np.min(values)), 0.0)

    def one_value(self) -> float:
        """inf over Q_{X'|X} of Lambda + r_w - H"""
        lambdas, entropies = self._shared_candidates()
        return max(float(np.min(ext_add(lambdas, self.r_w - entropies))), 0.0)


def _beta_family(m: DecodingMetric) -> List[DecodingMetric]:
    """Metrics whose expurgated exponents enter the sup: the beta grid plus the map limit"""
    is_min_entropy = m.kind is MetricKind.MIN_ENTROPY or (
        m.is_limit and m.base.kind is MetricKind.MIN_ENTROPY)
    if not is_min_entropy:
        return [m]
    betas = sorted(set(config.EXPURGATION_BETAS) | ({m.beta} if not m.is_limit else set()))
    return [min_entropy(b) for b in betas] + [map_limit(min_entropy(1.0))]


def fr_expurgated_exponent(q_x: Pmf, p_y_given_x: CondPmf, r_w, m: DecodingMetric,
                           resolution=config.EXPURGATION_RESOLUTION,
                           lambda_resolution=config.LAMBDA_RESOLUTION) -> ExponentResult:
    """E_ex(r_w, q_x); for -beta H metrics the best value over the beta grid and the map limit"""
    if r_w > math.log(q_x.alphabet_size) + config.CONSTRAINT_SLACK:
        return ExponentResult(np.inf, {}, resolution, False, kind='fr_expurgated')
    best = None
    for metric in _beta_family(m):
        analyzer = ExpurgationAnalyzer(q_x, p_y_given_x, r_w, metric, resolution, lambda_resolution)
        value, point, cond = analyzer.constrained()
        value = max(value, 0.0)
        LOGGER.debug("E_ex r_w=%.4g %s -> %.6g", r_w, metric.describe(), value)
        if best is None or value > best.value:
            argmin = {'beta': 'map_limit' if metric.is_limit else metric.beta}
            if point is not None:
                argmin['q_x2_given_x'] = point
                argmin['q_y_given_xx2'] = cond
            best = ExponentResult(value, argmin, analyzer.resolution, True, kind='fr_expurgated')
    return best


def fr_expurgated_rho(q_x: Pmf, p_y_given_x: CondPmf, r_w, m: DecodingMetric, rho,
                      resolution=config.EXPURGATION_RESOLUTION,
                      lambda_resolution=config.LAMBDA_RESOLUTION) -> float:
    analyzer = ExpurgationAnalyzer(q_x, p_y_given_x, r_w, m, resolution, lambda_resolution)
    return analyzer.rho_value(rho)


def fr_expurgated_one(q_x: Pmf, p_y_given_x: CondPmf, r_w, m: DecodingMetric,
                      resolution=config.EXPURGATION_RESOLUTION,
                      lambda_resolution=config.LAMBDA_RESOLUTION) -> float:
    analyzer = ExpurgationAnalyzer(q_x, p_y_given_x, r_w, m, resolution, lambda_resolution)
    return analyzer.one_value()


def fr_expurgated_rho_sweep(q_x: Pmf, p_y_given_x: CondPmf, r_w, m: DecodingMetric,
                            rhos=config.RHO_GRID, resolution=config.EXPURGATION_RESOLUTION,
                            lambda_resolution=config.LAMBDA_RESOLUTION) -> List[Tuple[float, float]]:
    """E_x(rho) for every rho on one shared Lambda surface"""
    analyzer = ExpurgationAnalyzer(q_x, p_y_given_x, r_w, m, resolution, lambda_resolution)
    return [(float(rho), analyzer.rho_value(rho)) for rho in rhos]

"""Random-coding false-reject exponents.

E(R_w, Q_X0Y) = min over Q_{X|Y} of [R_w - H_Q(X|Y) + [a(Q_X0Y) - a(Q_XY)]_+]_+
E_r(R_w)      = min over Q_X0Y of D(Q_X0Y || P_XY) + E(R_w, Q_X0Y)

The inner candidates are conditionals Q_{X|Y} of shape (Y, X); the outer
points sharing a Y-marginal are evaluated against them in one broadcast.
"""

import copy
import logging

import numpy as np

import config
from ..decoders.metric import DecodingMetric, MetricKind, map_limit, matched_metric
from ..measures.distributions import CondPmf, JointPmf, Pmf
from ..measures.extended import ext_add, pos_diff, pos_part
from ..measures.grid import SimplexProductGrid, chunk_size
from ..measures.information import cond_entropy_array, kl_array
from .optimize import ExponentResult

LOGGER = logging.getLogger(__name__)


def joints_from_conditionals(cond, q_y) -> np.ndarray:
    """Q_{X|Y} rows of shape (..., Y, X) times Q_Y, as joints (..., X, Y)"""
    return np.swapaxes(cond, -1, -2) * q_y[..., None, :]


def conditional_of(q_xy) -> np.ndarray:
    """Q_{X|Y} of a joint as (Y, X) rows; empty columns become uniform"""
    return CondPmf.from_joint(np.asarray(q_xy).T).probs


class InnerProblem:
    """The inner minimisation over Q_{X|Y} for fixed r_w and metric"""

    def __init__(self, r_w, metric: DecodingMetric, x_size, y_size,
                 resolution=config.GRID_RESOLUTION, budget=config.INNER_GRID_BUDGET):
        self.r_w = float(r_w)
        self.metric = metric
        self.grid = SimplexProductGrid(y_size, x_size)
        self.resolution = self.grid.scaled_resolution(resolution, budget)
        self.candidates = self.grid.points(self.resolution)
        # -beta H with beta >= 1: the anchor Q_{X|Y} = Q_{X0|Y} is optimal
        self.anchor_optimal = metric.kind is MetricKind.MIN_ENTROPY and metric.beta >= 1.0

    def with_candidates(self, extra) -> 'InnerProblem':
        widened = copy.copy(self)
        widened.candidates = np.concatenate([self.candidates, extra])
        return widened

    def objective(self, a0, h0, h, a) -> np.ndarray:
        """Objective of every (outer, candidate) pair, shapes (B, 1) x (G,) -> (B, G)"""
        if self.metric.is_limit:
            feasible = a[None, :] >= a0 - config.CONSTRAINT_SLACK
            return np.where(feasible, pos_part(self.r_w - h[None, :]), np.inf)
        return pos_part(self.r_w - h[None, :] + pos_diff(a0, a[None, :]))

    def values(self, joints):
        """Inner minima for joints (B, X, Y); choice -1 marks the anchor Q_{X0|Y}"""
        joints = np.asarray(joints, dtype=float)
        h0 = cond_entropy_array(joints)
        a0 = self.metric.evaluate(joints)
        best = pos_part(self.r_w - h0)
        choice = np.full(len(joints), -1, dtype=np.int64)
        if self.anchor_optimal or len(joints) == 0:
            return best, choice
        q_y = joints.sum(axis=1)
        _, first, inverse = np.unique(np.round(q_y, 12), axis=0, return_index=True, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        step = chunk_size(len(self.candidates))
        for group, leader in enumerate(first):
            members = np.flatnonzero(inverse == group)
            candidate_joints = joints_from_conditionals(self.candidates, q_y[leader])
            h = cond_entropy_array(candidate_joints)
            a = self.metric.evaluate(candidate_joints)
            for start in range(0, len(members), step):
                rows = members[start:start + step]
                table = self.objective(a0[rows, None], h0[rows, None], h, a)
                pick = np.argmin(table, axis=1)
                picked = table[np.arange(len(rows)), pick]
                better = picked < best[rows]
                best[rows] = np.where(better, picked, best[rows])
                choice[rows] = np.where(better, pick, choice[rows])
        return best, choice

    def conditional(self, joint, choice) -> np.ndarray:
        return conditional_of(joint) if choice < 0 else self.candidates[choice]

    def value_at(self, joint, cond) -> float:
        """Objective at one explicit (Q_X0Y, Q_{X|Y}) pair"""
        joint = np.asarray(joint, dtype=float)
        q_y = joint.sum(axis=0)
        candidate = joints_from_conditionals(np.asarray(cond)[None], q_y)
        h = cond_entropy_array(candidate)
        a = self.metric.evaluate(candidate)
        a0 = np.atleast_1d(self.metric.evaluate(joint))[:, None]
        h0 = np.atleast_1d(cond_entropy_array(joint))[:, None]
        return float(self.objective(a0, h0, h, a)[0, 0])

    def solve(self, joint):
        """Inner minimum at one joint, refined around its minimiser"""
        values, choice = self.values(np.asarray(joint)[None])
        value, cond = float(values[0]), self.conditional(joint, int(choice[0]))
        if self.anchor_optimal:
            return value, cond
        local = self.with_candidates(self.grid.local_points(cond, self.resolution))
        refined, refined_choice = local.values(np.asarray(joint)[None])
        if refined[0] < value:
            value, cond = float(refined[0]), local.conditional(joint, int(refined_choice[0]))
        return value, cond


def inner_fr_exponent(r_w, q_x0y: JointPmf, m: DecodingMetric,
                      resolution=config.GRID_RESOLUTION) -> float:
    """E(R_w, Q_X0Y) by grid search over Q_{X|Y} with one refinement pass"""
    problem = InnerProblem(r_w, m, q_x0y.rows, q_x0y.cols, resolution)
    value, _ = problem.solve(q_x0y.probs)
    return value


def _outer_resolution(grid, resolution, problem):
    budget = min(config.GRID_POINT_BUDGET,
                 max(1, config.NESTED_GRID_BUDGET // max(1, len(problem.candidates))))
    return grid.scaled_resolution(resolution, budget)


def _nested_search(grid, to_joint, divergence, problem: InnerProblem, resolution, anchors):
    """min over outer points of divergence + inner; returns value, joint, conditional, resolution"""

    def totals(points, inner_problem):
        joints = to_joint(points)
        div = divergence(joints)
        inner = np.full(len(points), np.inf)
        finite = np.isfinite(div)
        if np.any(finite):
            inner[finite] = inner_problem.values(joints[finite])[0]
        return ext_add(div, inner)

    outer_resolution = _outer_resolution(grid, resolution, problem)
    points = np.concatenate([np.asarray(anchors, dtype=float).reshape(-1, grid.blocks, grid.size),
                             grid.points(outer_resolution)])
    values = totals(points, problem)
    best = int(np.argmin(values))
    point = points[best]

    _, cond = problem.solve(to_joint(point[None])[0])
    widened = problem.with_candidates(problem.grid.local_points(cond, problem.resolution))
    local = grid.local_points(point, outer_resolution)
    local_values = totals(local, widened)
    if len(local_values) and local_values.min() < values[best]:
        point = local[int(np.argmin(local_values))]

    joint = to_joint(point[None])[0]
    inner, cond = widened.solve(joint)
    value = float(ext_add(divergence(joint[None])[0], inner))
    return value, joint, cond, outer_resolution


def fr_random_exponent(p_xy: JointPmf, r_w, m: DecodingMetric,
                       resolution=config.GRID_RESOLUTION) -> ExponentResult:
    """Exact random-coding FR exponent min_Q D(Q || P_XY) + E(R_w, Q)"""
    probs = p_xy.probs
    support = probs > 0.0
    grid = SimplexProductGrid(1, int(support.sum()))

    def to_joint(points):
        joints = np.zeros((len(points),) + probs.shape)
        joints[:, support] = points[:, 0, :]
        return joints

    def divergence(joints):
        return kl_array(joints.reshape(len(joints), -1), probs.ravel())

    problem = InnerProblem(r_w, m, p_xy.rows, p_xy.cols, resolution)
    value, joint, cond, used = _nested_search(grid, to_joint, divergence, problem,
                                              resolution, probs[support])
    LOGGER.debug("fr_random r_w=%.4g %s -> %.6g", r_w, m.describe(), value)
    return ExponentResult(
        value=max(value, 0.0),
        argmin={'q_x0y': joint, 'q_x_given_y': cond},
        grid_resolution=used, refined=True, kind='fr_random',
    )


def fr_map_exponent(p_xy: JointPmf, r_w, resolution=config.GRID_RESOLUTION) -> ExponentResult:
    """FR exponent of the MAP decoder, as the beta -> infinity limit of the matched metric"""
    result = fr_random_exponent(p_xy, r_w, map_limit(matched_metric(p_xy)), resolution)
    result.kind = 'fr_map'
    return result


def fr_random_exponent_given_type(q_x: Pmf, p_y_given_x: CondPmf, r_w, m: DecodingMetric,
                                  resolution=config.GRID_RESOLUTION) -> ExponentResult:
    """min over Q_{Y|X} of D(Q_{Y|X} || P_{Y|X} | Q_X) + E(R_w, Q_X x Q_{Y|X})"""
    weights = q_x.probs
    channel = p_y_given_x.probs
    grid = SimplexProductGrid(q_x.alphabet_size, p_y_given_x.out_size)

    def to_joint(points):
        return weights[None, :, None] * points

    def divergence(joints):
        with np.errstate(invalid='ignore', divide='ignore'):
            rows = np.where(weights[None, :, None] > 0.0, joints / weights[None, :, None], channel)
        per_row = kl_array(rows, channel[None], axis=-1)
        return np.sum(np.where(weights > 0.0, weights * per_row, 0.0), axis=-1)

    problem = InnerProblem(r_w, m, q_x.alphabet_size, p_y_given_x.out_size, resolution)
    value, joint, cond, used = _nested_search(grid, to_joint, divergence, problem,
                                              resolution, channel)
    return ExponentResult(
        value=max(value, 0.0),
        argmin={'q_xy': joint, 'q_x_given_y': cond},
        grid_resolution=used, refined=True, kind='fr_random_given_type',
    )


def fr_objective(p_xy: JointPmf, r_w, m: DecodingMetric, q_x0y, q_x_given_y) -> float:
    """D(Q_X0Y || P_XY) + inner objective at an explicit pair, for re-evaluating an argmin"""
    joint = np.asarray(q_x0y, dtype=float)
    problem = InnerProblem(r_w, m, p_xy.rows, p_xy.cols, resolution=1)
    div = kl_array(joint.ravel(), p_xy.probs.ravel())
    return float(ext_add(div, problem.value_at(joint, q_x_given_y)))

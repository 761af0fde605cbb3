"""Choosing control words that send the most power toward target directions.

The objective is the weighted gain of the aggregated beam set along each
target. Because power is split evenly over the elements, the objective is a
sum of independent per-element terms, so a per-element argmax is globally
optimal. The exhaustive search is kept as an oracle for small panels.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .codes import CodeGrid, DrisSpec
from .exceptions import DomainError, SizeCapError
from .panel import _stack_factor, aggregate_beams, pattern_sample

__all__ = [
    "SteeringProblem",
    "SearchResult",
    "objective",
    "greedy_steer",
    "exhaustive_search",
    "exhaustive_steer",
    "DEFAULT_CAP",
]

logger = logging.getLogger(__name__)

DEFAULT_CAP = 2**20


@dataclass(frozen=True)
class SteeringProblem:
    """Targets ``[(direction_rad, weight), ...]`` on a given panel."""

    targets: tuple
    spec: DrisSpec
    theta_i: float = 0.0
    lobe_order: float = 1.0
    p_in: float = 1.0

    def __post_init__(self):
        targets = tuple((float(d), float(w)) for d, w in self.targets)
        object.__setattr__(self, "targets", targets)
        if not targets:
            raise DomainError("at least one target is required")
        if any(w < 0 for _, w in targets):
            raise DomainError("target weights must be non-negative")
        if all(w == 0 for _, w in targets):
            raise DomainError("target weights must not all be zero")
        if self.lobe_order < 1:
            raise DomainError("lobe order must be >= 1")

    @property
    def directions(self):
        return np.array([d for d, _ in self.targets])

    @property
    def weights(self):
        return np.array([w for _, w in self.targets])


class SearchResult(NamedTuple):
    grid: CodeGrid
    objective: float
    evaluations: int


def objective(grid, prob):
    """Weighted delivered power (mW) toward the targets."""
    bs = aggregate_beams(grid, prob.spec, p_in=prob.p_in, theta_i=prob.theta_i)
    gains = pattern_sample(bs, prob.directions, prob.lobe_order)
    return float(prob.p_in * np.dot(prob.weights, gains))


def _type_scores(prob):
    # contribution of a single element of each type, up to the common 1/X factor
    spec = prob.spec
    factor = _stack_factor(spec, prob.theta_i)
    scores = []
    for t in spec.types:
        lobe = np.clip(np.cos(prob.directions - t.theta), 0.0, None) ** prob.lobe_order
        scores.append(t.beta * spec.rho_0 * factor * float(np.dot(prob.weights, lobe)))
    return scores


def greedy_steer(prob):
    """Per-element best word; ties go to the lowest type index."""
    spec = prob.spec
    scores = _type_scores(prob)
    rows = []
    for _ in range(spec.m):
        row = []
        for _ in range(spec.n):
            best = max(range(len(scores)), key=lambda u: (scores[u], -u))
            row.append(spec.types[best].word)
        rows.append(tuple(row))
    return CodeGrid(tuple(rows), spec)


def exhaustive_search(prob, cap=DEFAULT_CAP):
    """Evaluate every grid; ties resolve to the lexicographically smallest bit string."""
    spec = prob.spec
    total = spec.levels**spec.size
    if total > cap:
        raise SizeCapError(f"{spec.levels}**{spec.size} = {total} grids exceed the cap of {cap}")
    words = sorted(t.word for t in spec.types)
    best_grid, best_val, count = None, -math.inf, 0
    # product over sorted words enumerates bit strings in lexicographic order
    for cells in itertools.product(words, repeat=spec.size):
        grid = CodeGrid(tuple(cells[r * spec.n : (r + 1) * spec.n] for r in range(spec.m)), spec)
        val = objective(grid, prob)
        count += 1
        if val > best_val:
            best_grid, best_val = grid, val
    logger.debug("exhaustive search evaluated %d grids", count)
    return SearchResult(best_grid, best_val, count)


def exhaustive_steer(prob, cap=DEFAULT_CAP):
    return exhaustive_search(prob, cap).grid

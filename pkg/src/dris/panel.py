"""From a code grid to emerging beams.

Each element type present on the panel produces one beam along its
orientation. Incident power is split evenly over the ``X`` elements, so a type
occupying ``count`` cells carries the share ``count / X`` of the input, scaled
by its transition coefficient.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codes import CodeGrid, DrisSpec, ElementType, default_types
from .exceptions import DomainError, TotalInternalReflectionError
from .optics import stack_reflectance

__all__ = [
    "Beam",
    "BeamSet",
    "element_response",
    "power_dbm",
    "aggregate_beams",
    "pattern_sample",
    "reference_spec",
    "REFERENCE_BETAS",
]

# DRIS(X, 2, 0.9) built from A4907 cells
REFERENCE_RHO_0 = 0.9
REFERENCE_BETAS = (0.9, 0.7, 0.5, 0.3)


def reference_spec(m=2, n=2):
    """The 2-bit, rho_0 = 0.9 reference panel with betas 0.9/0.7/0.5/0.3."""
    return DrisSpec(m=m, n=n, k=2, rho_0=REFERENCE_RHO_0, types=default_types(2, REFERENCE_BETAS))


@dataclass(frozen=True)
class Beam:
    theta: float
    gamma: float
    share: float
    power_dbm: float
    element_count: int
    type_index: int = 0

    def to_dict(self):
        return {
            "theta_rad": self.theta,
            "gamma": self.gamma,
            "share": self.share,
            "power_dbm": self.power_dbm,
            "element_count": self.element_count,
        }


@dataclass(frozen=True)
class BeamSet:
    beams: tuple
    p_in: float = 1.0

    def __len__(self):
        return len(self.beams)

    def __iter__(self):
        return iter(self.beams)

    @property
    def delivered_fraction(self):
        """Sum of ``share * gamma`` over beams, at most ``rho_0``."""
        return math.fsum(b.share * b.gamma for b in self.beams)

    def to_dict(self):
        return {"p_in_mw": self.p_in, "beams": [b.to_dict() for b in self.beams]}


def _stack_factor(spec, theta_i):
    if spec.stack is None:
        return 1.0
    rho, tir = stack_reflectance(spec.stack, theta_i, spec.polarization, full_output=True)
    if tir:
        raise TotalInternalReflectionError(f"light is trapped in the element stack at theta_i = {theta_i:.6g} rad")
    return rho


def element_response(t: ElementType, spec: DrisSpec, theta_i=0.0):
    """``(theta_u, gamma_u)`` of one element type.

    ``gamma_u = beta_u * rho_0``, further scaled by the layer-stack
    reflectance when the spec carries a stack.
    """
    if t not in spec.types:
        raise DomainError(f"type {t.index} ({t.word!r}) does not belong to this spec")
    return t.theta, t.beta * spec.rho_0 * _stack_factor(spec, theta_i)


def power_dbm(gamma, p_in=1.0):
    """Optical power ``10 log10(gamma * p_in / 1 mW)``.

    ``gamma = 0`` returns ``-inf`` with a :class:`RuntimeWarning`.
    """
    if gamma < 0 or math.isnan(gamma):
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    if p_in <= 0:
        raise DomainError(f"input power must be positive, got {p_in}")
    if gamma == 0:
        warnings.warn("zero transition coefficient: power is -inf dBm", RuntimeWarning, stacklevel=2)
        return -math.inf
    return 10.0 * math.log10(gamma * p_in)


def aggregate_beams(grid: CodeGrid, spec: DrisSpec | None = None, p_in=1.0, theta_i=0.0):
    """Collapse a grid into one beam per distinct element type, sorted by orientation."""
    spec = grid.spec if spec is None else spec
    if grid.spec != spec:
        raise DomainError("grid was decoded against a different spec")
    if p_in <= 0:
        raise DomainError("input power must be positive")
    X = spec.size
    if X == 0:
        return BeamSet((), p_in)
    counts = Counter(grid.cells())
    factor = _stack_factor(spec, theta_i)
    beams = []
    for t in spec.types:
        c = counts.get(t.word, 0)
        if not c:
            continue
        gamma = t.beta * spec.rho_0 * factor
        share = c / X
        beams.append(Beam(t.theta, gamma, share, power_dbm(gamma, share * p_in), c, t.index))
    beams.sort(key=lambda b: (b.theta, b.type_index))
    return BeamSet(tuple(beams), p_in)


def pattern_sample(bs: BeamSet, directions: Sequence[float], lobe_order=1.0):
    """Linear gain of the beam set along each direction.

    Every beam contributes ``gamma * share * max(0, cos(theta - theta_u))**s``.
    """
    if lobe_order < 1:
        raise DomainError("lobe order must be >= 1")
    theta = np.asarray(directions, dtype=float)
    gain = np.zeros_like(theta)
    for b in bs.beams:
        lobe = np.clip(np.cos(theta - b.theta), 0.0, None) ** lobe_order
        gain = gain + b.gamma * b.share * lobe
    return gain

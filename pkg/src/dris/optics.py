"""Geometric-optics kernel.

Angles are measured from the surface normal in radians. Negative angles are
the "negative" reflection/refraction half-planes produced by a strong enough
interface phase gradient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .exceptions import DomainError, EvanescentError

__all__ = [
    "InterfaceConfig",
    "LayerStack",
    "GratingSpec",
    "Evanescent",
    "SnellResult",
    "StackReflectance",
    "generalized_snell",
    "blazed_reflection_angle",
    "grating_orders",
    "deflected_angle",
    "stack_matrix",
    "stack_reflectance",
    "POLARIZATIONS",
]

HALF_PI = 0.5 * math.pi
POLARIZATIONS = ("TE", "TM", "unpolarized")

# slack on |sin| <= 1 so boundary orders and grazing rays survive rounding
_SIN_SLACK = 1e-12


@dataclass(frozen=True)
class InterfaceConfig:
    """Two media plus an interface phase gradient.

    ``q`` is the phase gradient (rad/m) and ``chi`` the wavevector term
    (rad/m); only their ratio enters the ray law.
    """

    n1: float
    n2: float
    q: float = 0.0
    chi: float = 1.0

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise DomainError("refractive indices must be >= 1")
        if self.q != 0 and self.chi == 0:
            raise DomainError("chi must be non-zero when q is non-zero")

    @classmethod
    def from_ratio(cls, n1, n2, q_over_chi):
        return cls(n1=n1, n2=n2, q=q_over_chi, chi=1.0)

    @property
    def gradient_term(self):
        return 0.0 if self.q == 0 else self.q / self.chi


@dataclass(frozen=True)
class LayerStack:
    """Parallel plates ``[(n_j, d_j), ...]`` over a back mirror.

    Light enters from and returns to the ambient medium ``n_amb``.
    """

    layers: tuple
    n_amb: float = 1.0
    back_mirror_reflectance: float = 1.0

    def __post_init__(self):
        layers = tuple((float(n), float(d)) for n, d in self.layers)
        object.__setattr__(self, "layers", layers)
        if any(n < 1 or d <= 0 for n, d in layers):
            raise DomainError("layers need n_j >= 1 and d_j > 0")
        if self.n_amb < 1:
            raise DomainError("ambient index must be >= 1")
        if not (0.0 <= self.back_mirror_reflectance <= 1.0):
            raise DomainError("back mirror reflectance must lie in [0, 1]")

    def __add__(self, other):
        return LayerStack(self.layers + other.layers, self.n_amb, self.back_mirror_reflectance)

    def scaled(self, factor):
        """Copy with every layer index multiplied by ``factor``."""
        return LayerStack(tuple((n * factor, d) for n, d in self.layers), self.n_amb, self.back_mirror_reflectance)


@dataclass(frozen=True)
class GratingSpec:
    """Blazed grating: period ``a`` (m), blaze angle ``alpha`` (rad), index ``n``."""

    a: float
    alpha: float
    n: float = 1.0

    def __post_init__(self):
        if self.a <= 0:
            raise DomainError("grating period must be positive")
        if not (-0.25 * math.pi < self.alpha < 0.25 * math.pi):
            raise DomainError("blaze angle must lie in (-pi/4, pi/4)")
        if self.n < 1:
            raise DomainError("grating index must be >= 1")


class Evanescent(NamedTuple):
    """Marker for an output channel with no propagating ray."""

    channel: str
    sine: float

    def __bool__(self):
        return False


Angle = Union[float, Evanescent]


class SnellResult(NamedTuple):
    theta_re: Angle
    theta_ra: Angle


class StackReflectance(NamedTuple):
    rho: float
    tir: bool


def _asin_or_evanescent(s, channel):
    if abs(s) > 1.0 + _SIN_SLACK:
        return Evanescent(channel, s)
    return math.asin(max(-1.0, min(1.0, s)))


def generalized_snell(theta_i, cfg):
    """Reflection and refraction angles across a phase-gradient interface.

    Each channel is either an angle in [-pi/2, pi/2] or an :class:`Evanescent`
    marker; the two channels fail independently.
    """
    if not (0.0 <= theta_i < HALF_PI):
        raise DomainError("incidence angle must lie in [0, pi/2)")
    lhs = cfg.n1 * math.sin(theta_i) + cfg.gradient_term
    if cfg.gradient_term == 0:
        theta_re = theta_i
    else:
        theta_re = _asin_or_evanescent(lhs / cfg.n1, "reflection")
    theta_ra = _asin_or_evanescent(lhs / cfg.n2, "refraction")
    return SnellResult(theta_re, theta_ra)


def blazed_reflection_angle(theta_i, n, alpha):
    """Exit angle of a ray reflected by a single blaze facet tilted by ``alpha``.

    Raises :class:`EvanescentError` when the ray cannot leave the medium.
    """
    if not (0.0 <= theta_i < HALF_PI):
        raise DomainError("incidence angle must lie in [0, pi/2)")
    if n < 1:
        raise DomainError("index must be >= 1")
    inner = math.asin(math.sin(theta_i) / n)
    s = n * math.sin(2.0 * alpha + inner)
    out = _asin_or_evanescent(s, "blazed")
    if isinstance(out, Evanescent):
        raise EvanescentError("blazed", s)
    return out


def grating_orders(phi_i, grating, lam):
    """All propagating diffraction orders as ``[(m, phi_r), ...]`` sorted by ``m``."""
    if not (-HALF_PI < phi_i < HALF_PI):
        raise DomainError("incidence angle must lie in (-pi/2, pi/2)")
    if lam <= 0:
        raise DomainError("wavelength must be positive")
    step = lam / (grating.n * grating.a)
    s_i = math.sin(phi_i)
    lo = math.ceil((s_i - 1.0 - _SIN_SLACK) / step)
    hi = math.floor((s_i + 1.0 + _SIN_SLACK) / step)
    orders = []
    for m in range(lo, hi + 1):
        if m == 0:
            orders.append((0, -phi_i))
            continue
        s = m * step - s_i
        if abs(s) <= 1.0 + _SIN_SLACK:
            orders.append((m, math.asin(max(-1.0, min(1.0, s)))))
    return orders


def deflected_angle(phi_i, alpha, sign=1):
    """Facet-deflected angle ``sign*phi_i + 2*alpha``."""
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    return sign * phi_i + 2.0 * alpha


def stack_matrix(stack):
    """Ray-transfer matrix of the plate stack, ``[[1, sum d/n], [0, 1]]``."""
    if not stack.layers:
        raise DomainError("stack has no layers")
    b = math.fsum(d / n for n, d in stack.layers)
    return np.array([[1.0, b], [0.0, 1.0]])


def _interface_transmittance(n_a, cos_a, n_b, cos_b):
    # power transmittance = 1 - |r|^2, written via the admittance ratio
    ts = 4 * n_a * cos_a * n_b * cos_b / (n_a * cos_a + n_b * cos_b) ** 2
    tp = 4 * n_a * cos_b * n_b * cos_a / (n_a * cos_b + n_b * cos_a) ** 2
    return ts, tp


def stack_reflectance(stack, theta_i, polarization="TE", full_output=False):
    """Round-trip power returned by the stack and its back mirror.

    The light crosses ambient -> layer 1 -> ... -> layer N -> ambient gap ->
    mirror and back along the same path, so every interface, including the
    two ambient boundaries, is traversed twice. Fresnel power transmittances
    multiply incoherently; multiple reflections are ignored.

    Returns ``rho`` in [0, 1], or ``(rho, tir)`` with ``full_output=True``.
    Total internal reflection inside the stack gives ``rho = 0`` and
    ``tir = True``.
    """
    if polarization not in POLARIZATIONS:
        raise DomainError(f"polarization must be one of {POLARIZATIONS}")
    if not (0.0 <= theta_i < HALF_PI):
        raise DomainError("incidence angle must lie in [0, pi/2)")

    invariant = stack.n_amb * math.sin(theta_i)
    media = [stack.n_amb] + [n for n, _ in stack.layers] + [stack.n_amb]
    cosines = []
    for n in media:
        s = invariant / n
        if s >= 1.0:
            res = StackReflectance(0.0, True)
            return res if full_output else res.rho
        cosines.append(math.sqrt(1.0 - s * s))

    t_s = t_p = 1.0
    for j in range(len(media) - 1):
        ts, tp = _interface_transmittance(media[j], cosines[j], media[j + 1], cosines[j + 1])
        t_s *= ts
        t_p *= tp
    r = stack.back_mirror_reflectance
    rho_te = t_s * t_s * r
    rho_tm = t_p * t_p * r
    rho = {"TE": rho_te, "TM": rho_tm, "unpolarized": 0.5 * (rho_te + rho_tm)}[polarization]
    rho = min(1.0, max(0.0, rho))
    res = StackReflectance(rho, False)
    return res if full_output else res.rho

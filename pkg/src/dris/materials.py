"""Liquid-crystal optics: voltage to tilt, tilt to index, retardation.

A nematic cell is modelled by its two principal indices. An applied voltage
above the threshold tilts the director, which moves the effective index from
``n_e`` (no tilt) toward ``n_o`` (fully tilted) and changes the phase delay
accumulated across the cell.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple

from .exceptions import DomainError

__all__ = [
    "LcMaterial",
    "LcCell",
    "Retardation",
    "tilt_angle",
    "index_at_tilt",
    "retardation",
    "birefringence",
    "required_birefringence",
    "voltage_sweep",
    "load_materials",
    "default_registry",
]

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class LcMaterial:
    """Optical constants of a uniaxial liquid crystal.

    ``v_scale`` normalizes the voltage in the tilt model so the exponent is
    dimensionless; the default of 1 V reproduces the textbook form.
    """

    name: str
    n_o: float
    n_e: float
    v_c: float
    v_scale: float = 1.0

    def __post_init__(self):
        if not (self.n_o > 1 and self.n_e > 1):
            raise DomainError(f"{self.name}: refractive indices must exceed 1")
        if self.n_e == self.n_o:
            raise DomainError(f"{self.name}: n_e == n_o, material is not birefringent")
        if not (self.v_c > 0 and self.v_scale > 0):
            raise DomainError(f"{self.name}: v_c and v_scale must be positive")


@dataclass(frozen=True)
class LcCell:
    """A slab of ``material`` of thickness ``d`` probed at wavelength ``lam`` (meters)."""

    material: LcMaterial
    d: float
    lam: float

    def __post_init__(self):
        if not (self.d > 0 and self.lam > 0):
            raise DomainError("cell thickness and wavelength must be positive")


class Retardation(NamedTuple):
    phi: float
    phi_max: float
    phi_normalized: float


def tilt_angle(v, mat):
    """Director tilt (rad) produced by voltage ``v`` (V).

    Zero up to and including the threshold ``mat.v_c``; above it the tilt
    rises smoothly toward, but never reaches, pi/2.
    """
    if v < 0 or math.isnan(v):
        raise DomainError(f"voltage must be non-negative, got {v}")
    if v <= mat.v_c:
        return 0.0
    return HALF_PI - 2.0 * math.atan(math.exp((mat.v_c - v) / mat.v_scale))


def _check_tilt(psi):
    if not (0.0 <= psi <= HALF_PI):
        raise DomainError(f"tilt angle must lie in [0, pi/2], got {psi}")


def index_at_tilt(psi, mat):
    """Effective index seen at tilt ``psi`` from the index ellipsoid."""
    _check_tilt(psi)
    c2 = math.cos(psi) ** 2
    s2 = math.sin(psi) ** 2
    inv_n2 = c2 / mat.n_e**2 + s2 / mat.n_o**2
    return 1.0 / math.sqrt(inv_n2)


def birefringence(mat):
    """Magnitude of the index difference, ``|n_e - n_o|``."""
    return abs(mat.n_e - mat.n_o)


def retardation(psi, cell):
    """Phase delay across ``cell`` at tilt ``psi``.

    Returns ``(phi, phi_max, phi_normalized)``. ``phi`` is measured relative to
    the ordinary wave, so it equals ``phi_max`` at zero tilt and vanishes at
    pi/2; the normalized value therefore always lies in [0, 1].
    """
    mat = cell.material
    n = index_at_tilt(psi, mat)
    k_d = 2.0 * math.pi * cell.d / cell.lam
    phi_max = k_d * birefringence(mat)
    # endpoints are exact so the normalized value never leaves [0, 1]
    if psi == 0.0:
        frac = 1.0
    elif psi == HALF_PI:
        frac = 0.0
    else:
        frac = min(1.0, max(0.0, (n - mat.n_o) / (mat.n_e - mat.n_o)))
    return Retardation(phi=phi_max * frac, phi_max=phi_max, phi_normalized=frac)


def required_birefringence(d, lam, phase=2.0 * math.pi):
    """Index difference needed for a maximum retardation of ``phase``."""
    if not (d > 0 and lam > 0):
        raise DomainError("d and lam must be positive")
    return phase * lam / (2.0 * math.pi * d)


def voltage_sweep(cell, voltages: Iterable[float]):
    """Evaluate the full voltage -> tilt -> index -> retardation chain.

    Yields ``(v, psi, n, phi, phi_normalized)`` tuples in input order.
    """
    mat = cell.material
    for v in voltages:
        psi = tilt_angle(v, mat)
        r = retardation(psi, cell)
        yield v, psi, index_at_tilt(psi, mat), r.phi, r.phi_normalized


def _parse_registry(text):
    rows = (line for line in io.StringIO(text) if line.strip() and not line.lstrip().startswith("#"))
    out = {}
    for rec in csv.DictReader(rows):
        name = rec["name"].strip()
        if name in out:
            raise ValueError(f"duplicate material {name!r} in registry")
        v_scale = rec.get("v_scale") or "1.0"
        out[name] = LcMaterial(
            name=name,
            n_o=float(rec["n_o"]),
            n_e=float(rec["n_e"]),
            v_c=float(rec["v_c"]),
            v_scale=float(v_scale),
        )
    return out


def load_materials(path=None) -> dict[str, LcMaterial]:
    """Load a material registry.

    The file is CSV with header ``name,n_o,n_e,v_c,v_scale``; lines starting
    with ``#`` are comments. Without ``path`` the bundled registry is used.
    """
    if path is None:
        text = resources.files("dris.data").joinpath("materials.csv").read_text()
    else:
        text = Path(path).read_text()
    return _parse_registry(text)


_DEFAULT = None


def default_registry() -> dict[str, LcMaterial]:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_materials()
    return dict(_DEFAULT)

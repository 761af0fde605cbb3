"""Digital control plane of a coded surface.

A panel of ``m x n`` elements is driven by ``k``-bit control words. Each of
the ``L = 2**k`` words selects an element type with its own emergence
orientation and amplitude coefficient. Bitstreams are cut into words and laid
out row-major over the panel; a space-time stream is a sequence of such
panel-sized blocks, one per time slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DecodeError, DomainError, ScheduleError

__all__ = [
    "ElementType",
    "DrisSpec",
    "CodeGrid",
    "StcFrame",
    "gray_words",
    "default_types",
    "word_to_type",
    "decode_sequence",
    "encode_grid",
    "distinct_types",
    "stc_schedule",
    "encode_frame",
    "clean_bits",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ElementType:
    """One coded element behaviour.

    ``index`` is the 1-based type number, ``theta`` the emergence orientation
    in radians and ``beta`` the amplitude coefficient in (0, 1].
    """

    index: int
    word: str
    theta: float
    beta: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.beta <= 1.0):
            raise DomainError(f"type {self.index}: beta must lie in (0, 1], got {self.beta}")
        if not self.word or set(self.word) - {"0", "1"}:
            raise DomainError(f"type {self.index}: word {self.word!r} is not a bit string")


def gray_words(k):
    """The ``2**k`` reflected-Gray-code words of length ``k``, in Gray order."""
    return [format(i ^ (i >> 1), f"0{k}b") for i in range(2**k)]


def default_types(k, betas: Sequence[float] | None = None):
    """Default type table: Gray-ordered words on equally spaced orientations.

    For ``k = 2`` this is 00 -> 0, 01 -> pi/2, 11 -> pi, 10 -> 3pi/2.
    """
    L = 2**k
    if betas is None:
        betas = [1.0] * L
    if len(betas) != L:
        raise DomainError(f"expected {L} beta values, got {len(betas)}")
    return tuple(
        ElementType(index=u + 1, word=w, theta=u * TWO_PI / L, beta=float(b))
        for u, (w, b) in enumerate(zip(gray_words(k), betas))
    )


def _wrap(theta):
    t = math.fmod(theta, TWO_PI)
    return t + TWO_PI if t < 0 else t


@dataclass(frozen=True)
class DrisSpec:
    """Panel definition ``(X = m*n, k, rho_0)`` plus its type table.

    ``stack`` optionally attaches a :class:`dris.optics.LayerStack`; the panel
    then scales every transition coefficient by the stack reflectance at the
    incidence angle. ``strict=True`` additionally enforces ``2**k <= m*n``.
    """

    m: int
    n: int
    k: int
    rho_0: float
    types: tuple = None
    stack: object = None
    polarization: str = "TE"
    strict: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise DomainError("panel dimensions must be non-negative")
        if self.k < 1:
            raise DomainError("k must be at least 1")
        if not (0.0 < self.rho_0 <= 1.0):
            raise DomainError(f"rho_0 must lie in (0, 1], got {self.rho_0}")
        if self.strict and (self.size < 1 or self.levels > self.size):
            raise DomainError(f"2**k = {self.levels} types need at least that many elements, X = {self.size}")
        types = default_types(self.k) if self.types is None else tuple(self.types)
        object.__setattr__(self, "types", types)
        self._check_types()

    def _check_types(self):
        L = self.levels
        if len(self.types) != L:
            raise DomainError(f"type table needs {L} entries, got {len(self.types)}")
        words = [t.word for t in self.types]
        if any(len(w) != self.k for w in words):
            raise DomainError(f"every word must have length k = {self.k}")
        if len(set(words)) != L:
            raise DomainError("type words must be distinct")
        if [t.index for t in self.types] != list(range(1, L + 1)):
            raise DomainError("type indices must run 1..L in table order")
        step = TWO_PI / L
        slots = sorted(round(_wrap(t.theta) / step) % L for t in self.types)
        aligned = all(abs(_wrap(t.theta) / step - round(_wrap(t.theta) / step)) < 1e-9 for t in self.types)
        if not aligned or slots != list(range(L)):
            raise DomainError("orientations must be the L distinct multiples of 2*pi/L")

    @property
    def size(self):
        return self.m * self.n

    @property
    def levels(self):
        return 2**self.k

    @property
    def bits_per_frame(self):
        return self.k * self.size

    @property
    def gammas(self):
        """Transition coefficients ``beta_u * rho_0`` in type order."""
        return tuple(t.beta * self.rho_0 for t in self.types)

    def type_for(self, word):
        return word_to_type(word, self)


@dataclass(frozen=True)
class CodeGrid:
    """Control words assigned to the ``m x n`` panel, row-major."""

    words: tuple
    spec: DrisSpec = field(repr=False)

    def __post_init__(self):
        words = tuple(tuple(row) for row in self.words)
        object.__setattr__(self, "words", words)
        if len(words) != self.spec.m or any(len(r) != self.spec.n for r in words):
            raise DecodeError(f"grid shape does not match {self.spec.m}x{self.spec.n} panel")
        known = {t.word for t in self.spec.types}
        for row in words:
            for w in row:
                if w not in known:
                    raise DecodeError(f"word {w!r} is not in the type table")

    @classmethod
    def uniform(cls, word, spec):
        return cls(tuple((word,) * spec.n for _ in range(spec.m)), spec)

    @property
    def shape(self):
        return self.spec.m, self.spec.n

    def cells(self):
        """Words in row-major order."""
        return [w for row in self.words for w in row]

    def type_indices(self):
        """``(m, n)`` integer array of 1-based type indices."""
        lookup = {t.word: t.index for t in self.spec.types}
        arr = np.array([[lookup[w] for w in row] for row in self.words], dtype=int)
        return arr.reshape(self.spec.m, self.spec.n)

    def to_bits(self):
        return "".join(self.cells())


@dataclass(frozen=True)
class StcFrame:
    """A time sequence of grids sharing one panel spec."""

    slots: tuple

    def __post_init__(self):
        slots = tuple(self.slots)
        object.__setattr__(self, "slots", slots)
        if slots and any(g.spec != slots[0].spec for g in slots):
            raise ScheduleError("all slots must share the same panel spec")

    def __len__(self):
        return len(self.slots)

    def __iter__(self):
        return iter(self.slots)

    def to_bits(self):
        return encode_frame(self)


def clean_bits(text):
    """Strip whitespace from an ASCII 0/1 stream and reject anything else."""
    bits = "".join(text.split())
    bad = set(bits) - {"0", "1"}
    if bad:
        raise DecodeError(f"non-binary symbols in bit stream: {sorted(bad)}")
    return bits


def word_to_type(word, spec):
    """Element type selected by the ``k``-bit ``word``."""
    if len(word) != spec.k:
        raise DecodeError(f"word {word!r} has length {len(word)}, expected k = {spec.k}")
    if set(word) - {"0", "1"}:
        raise DecodeError(f"word {word!r} contains non-binary symbols")
    for t in spec.types:
        if t.word == word:
            return t
    # unreachable for a validated spec: the table is a bijection over k-bit words
    raise DecodeError(f"word {word!r} is not in the type table")


def decode_sequence(bits, spec):
    """Cut ``bits`` into ``k``-bit words and lay them out row-major."""
    if set(bits) - {"0", "1"}:
        raise DecodeError("bit sequence contains non-binary symbols")
    expected = spec.bits_per_frame
    if len(bits) != expected:
        raise DecodeError(
            f"bit sequence has length {len(bits)}, expected {expected} "
            f"(k={spec.k} x {spec.m}x{spec.n} elements)"
        )
    k, n = spec.k, spec.n
    words = [bits[i : i + k] for i in range(0, expected, k)]
    return CodeGrid(tuple(tuple(words[r * n : (r + 1) * n]) for r in range(spec.m)), spec)


def encode_grid(grid):
    """Inverse of :func:`decode_sequence`."""
    return grid.to_bits()


def distinct_types(grid):
    """Types present in ``grid``, sorted by type index."""
    present = set(grid.cells())
    return [t for t in grid.spec.types if t.word in present]


def stc_schedule(bitstream, spec, t):
    """Split ``bitstream`` into ``t`` consecutive panel-sized blocks.

    Slot ``i`` is decoded from bits ``[i*kX, (i+1)*kX)``.
    """
    if t < 0:
        raise ScheduleError("slot count must be non-negative")
    block = spec.bits_per_frame
    required = t * block
    if len(bitstream) != required:
        raise ScheduleError(
            f"bitstream has length {len(bitstream)}, {t} slots of {block} bits require {required}"
        )
    return StcFrame(tuple(decode_sequence(bitstream[i * block : (i + 1) * block], spec) for i in range(t)))


def encode_frame(frame: StcFrame | Iterable[CodeGrid]):
    return "".join(encode_grid(g) for g in frame)

"""Knot sequences, deterministic mesh generators and gap statistics."""

import hashlib
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import InputError
from .validation import check_count, check_interval, check_strictly_increasing

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """The splitmix64 generator, bit-exact across platforms.

    >>> hex(SplitMix64(0).next_u64())
    '0xe220a8397b1dcdaf'
    """

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN_GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / 9007199254740992.0


class MeshStats(NamedTuple):
    h_max: float
    h_min: float
    n: int


@dataclass(frozen=True, eq=False)
class Mesh:
    """Strictly increasing knots ``x_0 < ... < x_n``."""

    knots: np.ndarray

    def __post_init__(self):
        x = check_strictly_increasing(self.knots)
        x.setflags(write=False)
        object.__setattr__(self, "knots", x)

    def __len__(self):
        return self.knots.size

    def __eq__(self, other):
        return isinstance(other, Mesh) and np.array_equal(self.knots, other.knots)

    __hash__ = None

    @property
    def n(self) -> int:
        """Number of intervals."""
        return self.knots.size - 1

    @property
    def gaps(self) -> np.ndarray:
        return np.diff(self.knots)

    @property
    def a(self) -> float:
        return float(self.knots[0])

    @property
    def b(self) -> float:
        return float(self.knots[-1])

    def stats(self) -> MeshStats:
        return mesh_stats(self)

    def fingerprint(self) -> str:
        """Short hash of the exact knot bits."""
        return hashlib.sha256(np.ascontiguousarray(self.knots).tobytes()).hexdigest()[:16]

    def to_csv(self) -> str:
        return "".join(f"{v:.17g}\n" for v in self.knots)

    @classmethod
    def from_csv(cls, text: str) -> "Mesh":
        rows = [line.strip() for line in text.splitlines() if line.strip()]
        try:
            return cls(np.array([float(r.split(",")[0]) for r in rows]))
        except ValueError as exc:
            raise InputError(f"malformed mesh CSV: {exc}") from exc


def as_mesh(mesh_or_knots) -> Mesh:
    if isinstance(mesh_or_knots, Mesh):
        return mesh_or_knots
    return Mesh(mesh_or_knots)


def make_equidistant(a: float, b: float, n: int) -> Mesh:
    """``n + 1`` equally spaced knots on ``[a, b]`` with exact endpoints."""
    a, b = check_interval(a, b)
    n = check_count(n)
    x = a + np.arange(n + 1) * ((b - a) / n)
    x[-1] = b
    return Mesh(x)


def make_random_uniform(a: float, b: float, n: int, seed: int) -> Mesh:
    """Sorted uniform draws, affinely rescaled so the extremes land on a and b.

    Draws come from :class:`SplitMix64`; a draw that would duplicate an
    existing knot (before or after rescaling) is replaced by the next one.
    """
    a, b = check_interval(a, b)
    n = check_count(n)
    if n == 1:
        return Mesh(np.array([a, b]))
    rng = SplitMix64(seed)
    draws = []
    seen = set()
    while True:
        while len(draws) < n + 1:
            u = rng.uniform()
            if u not in seen:
                seen.add(u)
                draws.append(u)
        u = np.sort(np.array(draws))
        x = a + (u - u[0]) * ((b - a) / (u[-1] - u[0]))
        x[0] = a
        x[-1] = b
        bad = np.flatnonzero(np.diff(x) <= 0)
        if bad.size == 0:
            return Mesh(x)
        # drop one offender and draw again; keeps the sequence deterministic
        drop = u[bad[0] + 1] if bad[0] + 1 < n else u[bad[0]]
        draws.remove(drop)


def mesh_stats(mesh) -> MeshStats:
    h = as_mesh(mesh).gaps
    return MeshStats(float(h.max()), float(h.min()), int(h.size))

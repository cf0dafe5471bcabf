"""Equatorial qubit inputs, density operators and Bloch vectors."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from eqclone.errors import NormalizationError
from eqclone.linalg import as_matrix, is_hermitian

NORM_ATOL = 1e-12
TRACE_ATOL = 1e-10


class EquatorPlane(enum.Enum):
    """Great circle of the Bloch sphere that the inputs are drawn from."""

    XZ = "xz"
    XY = "xy"
    YZ = "yz"

    @property
    def period(self) -> float:
        """Angle range that sweeps the whole circle once."""
        return 2 * math.pi if self is EquatorPlane.XY else math.pi

    @property
    def normal_axis(self) -> int:
        """Index (0=x, 1=y, 2=z) of the Bloch component that must vanish."""
        return {EquatorPlane.XZ: 1, EquatorPlane.XY: 2, EquatorPlane.YZ: 0}[self]

    @classmethod
    def parse(cls, value: "str | EquatorPlane") -> "EquatorPlane":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class EquatorialInput:
    """A pure qubit on one equator, fixed by a single real angle.

    * ``XZ``: ``cos(angle)|0> + sin(angle)|1>``
    * ``XY``: ``(|0> + exp(i*angle)|1>) / sqrt(2)``
    * ``YZ``: ``cos(angle)|0> + i*sin(angle)|1>``
    """

    plane: EquatorPlane
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "plane", EquatorPlane.parse(self.plane))
        object.__setattr__(self, "angle", float(self.angle))

    @property
    def alpha_sq(self) -> float:
        """Weight of ``|0>`` in the XZ parametrization (cos^2 of the angle)."""
        return math.cos(self.angle) ** 2


class BlochVector(NamedTuple):
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.as_array()))


def state_vector(inp: EquatorialInput) -> np.ndarray:
    """Column 2-vector of the input state."""
    t = inp.angle
    if inp.plane is EquatorPlane.XZ:
        amps = [math.cos(t), math.sin(t)]
    elif inp.plane is EquatorPlane.XY:
        amps = [1 / math.sqrt(2), np.exp(1j * t) / math.sqrt(2)]
    else:
        amps = [math.cos(t), 1j * math.sin(t)]
    return np.array(amps, dtype=complex).reshape(2, 1)


def to_density(psi) -> np.ndarray:
    """Projector ``|psi><psi|`` of a normalized state vector."""
    psi = as_matrix(psi).reshape(-1, 1)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > NORM_ATOL:
        raise NormalizationError(f"state vector has norm {norm!r}, expected 1")
    return psi @ psi.conj().T


def bloch_of_density(rho) -> BlochVector:
    """Bloch vector of a single-qubit density operator.

    Sign convention: ``x = 2 Re rho01``, ``y = 2 Im rho10``, ``z = rho00 - rho11``,
    so the XY input at angle pi/2 sits at ``y = +1``.
    """
    rho = as_matrix(rho)
    if rho.shape != (2, 2) or not is_hermitian(rho):
        raise NormalizationError("expected a Hermitian 2x2 density operator")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_ATOL:
        raise NormalizationError(f"density operator has trace {tr!r}, expected 1")
    return BlochVector(
        float(2 * rho[0, 1].real),
        float(2 * rho[1, 0].imag),
        float((rho[0, 0] - rho[1, 1]).real),
    )


def angle_grid(plane: EquatorPlane, count: int = 32) -> np.ndarray:
    """``count`` uniformly spaced angles covering the plane's period, starting at 0.

    When ``count`` is a multiple of 4 the grid hits the quarter points, so the
    boundary cases ``|0>``, ``|1>`` (XZ, YZ) are included.
    """
    plane = EquatorPlane.parse(plane)
    return np.arange(count) * (plane.period / count)


def equatorial_inputs(plane: EquatorPlane, count: int = 32) -> list[EquatorialInput]:
    plane = EquatorPlane.parse(plane)
    return [EquatorialInput(plane, t) for t in angle_grid(plane, count)]

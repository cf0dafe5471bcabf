"""The lambda-family of 1 -> 2 cloning machines for equatorial qubits.

A machine maps the input qubit ``a`` into ``a (x) b (x) x`` where ``b`` is the
copy and ``x`` is a two-level machine with basis ``|up> = (1, 0)``,
``|down> = (0, 1)``. Only the restriction to the input space matters, so each
machine is stored as an 8x2 isometry whose columns are the images of ``|0>``
and ``|1>``.

For the x-z equator the images are::

    |0> -> q (|00> + lam |11>) |up>   + y (|10> + |01>) |down>
    |1> -> q (|11> + lam |00>) |down> + y (|10> + |01>) |up>

The y-z machine flips the sign of ``lam``; the x-y machine has no cross term
between ``|00>`` and ``|11>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from eqclone.errors import DomainError
from eqclone.linalg import partial_trace
from eqclone.states import EquatorialInput, EquatorPlane, state_vector, to_density

DIMS = (2, 2, 2)
UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)

OPTIMAL_LAMBDA = 3 - 2 * math.sqrt(2)


def check_lambda(lam: float) -> float:
    lam = float(lam)
    if not (-1.0 < lam < 1.0) or math.isnan(lam):
        raise DomainError(f"lambda must lie in the open interval (-1, 1), got {lam!r}")
    return lam


def basis_ket(a: int, b: int, x: int) -> np.ndarray:
    """Computational basis vector ``|a b x>`` of the 8-dimensional space."""
    v = np.zeros(8, dtype=complex)
    v[4 * a + 2 * b + x] = 1.0
    return v


@dataclass(frozen=True)
class MachineVectors:
    Q0: np.ndarray
    Q1: np.ndarray
    Y0: np.ndarray
    Y1: np.ndarray


@dataclass(frozen=True)
class ClonerParams:
    """Machine parameter ``lam`` with everything derived from it.

    ``xi`` is the norm squared of the Y vectors, ``eta`` twice the overlap
    ``<Y0|Q1>``, and ``q``, ``y`` are the amplitudes of the two-dimensional
    machine realization.
    """

    lam: float
    xi: float
    eta: float
    q: float
    y: float

    @property
    def shrink(self) -> float:
        """Factor by which the one-copy output shortens the input Bloch vector."""
        return self.eta * (1 + self.lam)

    def vectors(self) -> MachineVectors:
        return MachineVectors(Q0=self.q * UP, Q1=self.q * DOWN, Y0=self.y * DOWN, Y1=self.y * UP)


def derive_params(lam: float) -> ClonerParams:
    lam = check_lambda(lam)
    denom = 3 - 2 * lam + 3 * lam**2
    xi = (1 - lam) ** 2 / (2 * denom)
    eta = (1 - lam) * (1 - 2 * xi) / (1 + lam**2)
    q = math.sqrt(2 / denom)
    y = (1 - lam) / math.sqrt(2 * denom)
    return ClonerParams(lam=lam, xi=xi, eta=eta, q=q, y=y)


def machine_isometry(cross: float, q: float, y: float) -> np.ndarray:
    """x-z type isometry with arbitrary amplitudes.

    ``cross`` is the coefficient of the ``|11>`` (``|00>``) admixture in the
    image of ``|0>`` (``|1>``). Only ``(1 + cross**2) q**2 + 2 y**2 == 1`` gives
    normalized columns; the caller is responsible for that.
    """
    plus_up = basis_ket(1, 0, 0) + basis_ket(0, 1, 0)
    plus_down = basis_ket(1, 0, 1) + basis_ket(0, 1, 1)
    col0 = q * (basis_ket(0, 0, 0) + cross * basis_ket(1, 1, 0)) + y * plus_down
    col1 = q * (basis_ket(1, 1, 1) + cross * basis_ket(0, 0, 1)) + y * plus_up
    return np.stack([col0, col1], axis=1)


def build_isometry(plane: EquatorPlane, lam: float) -> np.ndarray:
    """8x2 cloning isometry for the given equator and machine parameter."""
    plane = EquatorPlane.parse(plane)
    p = derive_params(lam)
    if plane is EquatorPlane.XZ:
        return machine_isometry(p.lam, p.q, p.y)
    if plane is EquatorPlane.YZ:
        return machine_isometry(-p.lam, p.q, p.y)

    norm = math.sqrt(6 - 4 * p.lam + 6 * p.lam**2)
    diag = 2 * (1 - p.lam) / norm
    off = (1 + p.lam) / norm
    col0 = diag * basis_ket(0, 0, 0) + off * (basis_ket(0, 1, 1) + basis_ket(1, 0, 1))
    col1 = diag * basis_ket(1, 1, 1) + off * (basis_ket(0, 1, 0) + basis_ket(1, 0, 0))
    return np.stack([col0, col1], axis=1)


@dataclass(frozen=True)
class CloneOutput:
    input: EquatorialInput
    lam: float
    joint: np.ndarray
    rho_ab: np.ndarray
    rho_a: np.ndarray
    rho_b: np.ndarray
    rho_x: np.ndarray

    @property
    def rho_abx(self) -> np.ndarray:
        return self.joint @ self.joint.conj().T


def clone(inp: EquatorialInput, lam: float, isometry: np.ndarray | None = None) -> CloneOutput:
    """Run the machine for ``inp.plane`` on ``inp`` and reduce the output.

    ``isometry`` overrides the machine; it is used to probe deliberately
    broken machines.
    """
    lam = check_lambda(lam)
    if isometry is None:
        isometry = build_isometry(inp.plane, lam)
    joint = np.asarray(isometry, dtype=complex) @ state_vector(inp)
    full = to_density(joint)
    return CloneOutput(
        input=inp,
        lam=lam,
        joint=joint,
        rho_ab=partial_trace(full, DIMS, [0, 1]),
        rho_a=partial_trace(full, DIMS, [0]),
        rho_b=partial_trace(full, DIMS, [1]),
        rho_x=partial_trace(full, DIMS, [2]),
    )


def closed_form_rho_a(alpha_sq: float, params: ClonerParams, sign: int = 1) -> np.ndarray:
    """One-copy output for the x-z input with ``|0>`` weight ``alpha_sq``.

    ``sign`` fixes the sign of ``alpha*beta``; inputs with an angle in
    ``(pi/2, pi)`` have a negative product.
    """
    if not 0.0 <= alpha_sq <= 1.0:
        raise DomainError(f"alpha^2 must lie in [0, 1], got {alpha_sq!r}")
    beta_sq = 1.0 - alpha_sq
    ab = math.copysign(math.sqrt(alpha_sq * beta_sq), sign)
    lam, xi, eta = params.lam, params.xi, params.eta
    w = (1 - 2 * xi) / (1 + lam**2)
    off = ab * eta * (1 + lam)
    return np.array(
        [
            [xi + (alpha_sq + lam**2 * beta_sq) * w, off],
            [off, xi + (beta_sq + lam**2 * alpha_sq) * w],
        ],
        dtype=complex,
    )

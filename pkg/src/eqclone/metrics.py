"""Copy-quality measures, numeric and closed-form.

Two families are used: the Hilbert-Schmidt distance ``Tr[(rho1 - rho2)^2]``
and the Bures fidelity ``Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))``. Each is
applied to one copy (``rho_a`` against the input) and to both copies
(``rho_ab`` against two uncorrelated input copies).
"""

from __future__ import annotations

import enum
import math

import numpy as np

from eqclone.cloning import CloneOutput, check_lambda
from eqclone.errors import DimensionError, NotHermitianError
from eqclone.linalg import as_matrix, is_hermitian, psd_sqrt, tensor_product
from eqclone.states import state_vector, to_density


class MetricKind(enum.Enum):
    HS_ONE = "hs-one"
    HS_TWO = "hs-two"
    BURES_ONE = "bures-one"
    BURES_TWO = "bures-two"

    @property
    def is_fidelity(self) -> bool:
        return self in (MetricKind.BURES_ONE, MetricKind.BURES_TWO)

    @property
    def natural_direction(self) -> str:
        return "maximize" if self.is_fidelity else "minimize"

    @classmethod
    def parse(cls, value: "str | MetricKind") -> "MetricKind":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower().replace("_", "-"))


def _same_shape(rho1, rho2) -> tuple[np.ndarray, np.ndarray]:
    rho1, rho2 = as_matrix(rho1), as_matrix(rho2)
    if rho1.shape != rho2.shape or rho1.shape[0] != rho1.shape[1]:
        raise DimensionError(f"cannot compare operators of shapes {rho1.shape} and {rho2.shape}")
    return rho1, rho2


def hs_distance(rho1, rho2) -> float:
    rho1, rho2 = _same_shape(rho1, rho2)
    if not (is_hermitian(rho1) and is_hermitian(rho2)):
        raise NotHermitianError("Hilbert-Schmidt distance needs Hermitian operators")
    diff = rho1 - rho2
    # Tr[D^2] = sum |D_ij|^2 for Hermitian D
    return float(np.sum(np.abs(diff) ** 2))


def bures_fidelity(rho1, rho2) -> float:
    """Root fidelity ``Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))`` (not squared)."""
    rho1, rho2 = _same_shape(rho1, rho2)
    s = psd_sqrt(rho1)
    inner = s @ rho2 @ s
    inner = 0.5 * (inner + inner.conj().T)
    return float(np.trace(psd_sqrt(inner)).real)


def pure_fidelity(psi, rho) -> float:
    """Bures fidelity when the first state is pure: ``sqrt(<psi|rho|psi>)``."""
    psi = as_matrix(psi).reshape(-1, 1)
    rho = as_matrix(rho)
    if rho.shape != (psi.shape[0], psi.shape[0]):
        raise DimensionError(f"state of length {psi.shape[0]} does not match operator {rho.shape}")
    to_density(psi)  # normalization check
    overlap = (psi.conj().T @ rho @ psi)[0, 0].real
    return math.sqrt(max(overlap, 0.0))


def _denom(lam: float) -> float:
    return 3 - 2 * lam + 3 * lam**2


def d_a_closed(lam: float) -> float:
    lam = check_lambda(lam)
    return (1 - 2 * lam + 5 * lam**2) ** 2 / (2 * _denom(lam) ** 2)


def d_ab_closed(lam: float) -> float:
    lam = check_lambda(lam)
    quartic = 1 - 4 * lam + 12 * lam**2 - 8 * lam**3 + 7 * lam**4
    return 2 * quartic / _denom(lam) ** 2


def f1_closed(lam: float) -> float:
    lam = check_lambda(lam)
    return math.sqrt((5 - 2 * lam + lam**2) / (2 * _denom(lam)))


def f2_closed(lam: float) -> float:
    lam = check_lambda(lam)
    return math.sqrt(2 / _denom(lam))


CLOSED_FORMS = {
    MetricKind.HS_ONE: d_a_closed,
    MetricKind.HS_TWO: d_ab_closed,
    MetricKind.BURES_ONE: f1_closed,
    MetricKind.BURES_TWO: f2_closed,
}


def closed_form(kind: MetricKind, lam: float) -> float:
    return CLOSED_FORMS[MetricKind.parse(kind)](lam)


def input_densities(out: CloneOutput) -> tuple[np.ndarray, np.ndarray]:
    """Input operator for one copy and for two ideal copies."""
    rho_in = to_density(state_vector(out.input))
    return rho_in, tensor_product(rho_in, rho_in)


def numeric_metric(kind: MetricKind, out: CloneOutput) -> float:
    """Evaluate ``kind`` on a simulated clone using the general definitions."""
    kind = MetricKind.parse(kind)
    rho_in, rho_in2 = input_densities(out)
    if kind is MetricKind.HS_ONE:
        return hs_distance(out.rho_a, rho_in)
    if kind is MetricKind.HS_TWO:
        return hs_distance(out.rho_ab, rho_in2)
    if kind is MetricKind.BURES_ONE:
        return bures_fidelity(rho_in, out.rho_a)
    return bures_fidelity(rho_in2, out.rho_ab)


def all_numeric(out: CloneOutput) -> dict[MetricKind, float]:
    return {kind: numeric_metric(kind, out) for kind in MetricKind}

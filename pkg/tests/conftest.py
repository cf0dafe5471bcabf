import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20260416)


def random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_pure(rng, n):
    v = random_complex(rng, (n, 1))
    return v / np.linalg.norm(v)


def random_density(rng, n, rank=None):
    a = random_complex(rng, (n, rank or n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def eta_perturbed_isometry(lam, delta=0.01):
    """x-z machine still unitary and obeying every overlap relation, but with
    eta shifted by ``delta`` off its input-independence value.

    The Y amplitude is re-solved so that ``2 q y = eta + delta`` while
    ``(1 + lam^2) q^2 + 2 y^2 = 1`` keeps the columns normalized.
    """
    import math

    from scipy.optimize import brentq

    from eqclone.cloning import derive_params, machine_isometry

    target = derive_params(lam).eta + delta

    def q_of(y):
        return math.sqrt((1 - 2 * y * y) / (1 + lam * lam))

    # 2 q(y) y increases on (0, 1/2)
    y = brentq(lambda y: 2 * q_of(y) * y - target, 1e-12, 0.5)
    return machine_isometry(lam, q_of(y), y)


def u_matrix_distance(alpha, lam):
    """Two-copy Hilbert-Schmidt distance assembled from the matrix elements of
    the difference operator in the basis |00>, |+>, |11> (x-z input, real
    amplitudes, xi at its input-independence value)."""
    import math

    beta = math.sqrt(1 - alpha**2)
    xi = (1 - lam) ** 2 / (2 * (3 - 2 * lam + 3 * lam**2))
    w = (1 - 2 * xi) / (1 + lam**2)
    r = (1 - lam**2) / (1 + lam**2)
    a2, a4 = alpha**2, alpha**4
    u11 = a4 - w * (lam**2 + a2 * (1 - lam**2))
    u22 = 2 * xi - 2 * a2 + 2 * a4
    u33 = a4 - 2 * a2 + 1 - w * (a2 * (lam**2 - 1) + 1)
    u12 = math.sqrt(2) * alpha * beta * (a2 - r * (0.5 - xi))
    u13 = a2 * beta**2 - w * lam
    u23 = math.sqrt(2) * alpha * beta * (beta**2 - r * (0.5 - xi))
    return u11**2 + u22**2 + u33**2 + 2 * (u12**2 + u13**2 + u23**2)

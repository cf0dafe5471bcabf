"""Small dense complex linear algebra.

Matrices are plain ``numpy`` complex arrays. Everything here is meant for
dimensions of at most 8 (one input qubit, one copy qubit, one machine qubit),
so clarity wins over speed.

Tensor factors are ordered (input a, copy b, machine x) throughout the
package; the computational basis index of ``|a b x>`` is ``4*a + 2*b + x``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from eqclone.errors import DimensionError, NotHermitianError, NotPSDError

HERMITIAN_ATOL = 1e-12
PSD_CLAMP = 1e-10

# Eigenvalues this close to zero (relative to the spectral radius) are
# indistinguishable from roundoff and are treated as exact zeros by psd_sqrt.
_ZERO_RTOL = 64 * np.finfo(float).eps


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a 2-D complex128 array, rejecting NaN/Inf entries."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError("matrix has non-finite entries")
    return arr


def is_hermitian(m, atol: float = HERMITIAN_ATOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= atol)


def dagger(m) -> np.ndarray:
    return np.asarray(m).conj().T


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; entry (i*rows_b + k, j*cols_b + l) is a[i, j] * b[k, l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(factors: Iterable) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = tensor_product(out, f)
    return out


def partial_trace(m, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Reduce ``m`` to the tensor factors listed in ``keep``.

    Args:
        m: square operator on the space ``dims[0] x dims[1] x ...``.
        dims: local dimension of every tensor factor, in order.
        keep: indices of the factors to retain. Their relative order in the
            result follows ``dims``, not the iteration order of ``keep``.
            An empty ``keep`` traces out everything and yields ``[[Tr m]]``.
    """
    m = as_matrix(m)
    dims = tuple(int(d) for d in dims)
    keep = sorted(set(keep))
    n = int(np.prod(dims))
    if any(d < 1 for d in dims):
        raise DimensionError(f"subsystem dimensions must be positive, got {dims}")
    if m.shape != (n, n):
        raise DimensionError(f"matrix of shape {m.shape} does not match subsystem dims {dims}")
    if keep and (keep[0] < 0 or keep[-1] >= len(dims)):
        raise DimensionError(f"keep={keep} is not a subset of factors 0..{len(dims) - 1}")

    k = len(dims)
    t = m.reshape(dims + dims)
    # contract traced factors pairwise; row index i pairs with column index i + k
    row = list(range(k))
    col = [i + k for i in range(k)]
    for i in range(k):
        if i not in keep:
            col[i] = row[i]
    out_idx = [row[i] for i in keep] + [col[i] for i in keep]
    reduced = np.einsum(t, row + col, out_idx)
    d = int(np.prod([dims[i] for i in keep]))
    return reduced.reshape(d, d)


def hermitian_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    Returns real eigenvalues in descending order and the matching orthonormal
    eigenvectors as the columns of a unitary matrix, so that
    ``m == v @ diag(w) @ v.conj().T``.
    """
    m = as_matrix(m)
    if not is_hermitian(m):
        raise NotHermitianError("hermitian_eig requires a Hermitian matrix (atol 1e-12)")
    h = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(h)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def psd_sqrt(m) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero; anything more negative
    raises :class:`NotPSDError`.
    """
    w, v = hermitian_eig(m)
    if w.size and w[-1] < -PSD_CLAMP:
        raise NotPSDError(f"smallest eigenvalue {w[-1]:.3e} is below -{PSD_CLAMP:g}")
    scale = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    w = np.where(w < _ZERO_RTOL * scale, 0.0, w)
    root = (v * np.sqrt(w)) @ v.conj().T
    return 0.5 * (root + root.conj().T)

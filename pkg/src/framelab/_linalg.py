"""Small linear-algebra helpers shared by the frame and retrieval modules.

Conventions used throughout the package:

* inner products are linear in the first argument and conjugate-linear in
  the second, ``<u, v> = sum_k u_k * conj(v_k)``;
* numerical rank uses a relative cutoff ``tol * sigma_max``;
* basis vectors returned from eigen/null-space computations are normalized
  to a canonical phase so repeated runs give byte-identical results.
"""

from __future__ import annotations

import numpy as np

DEFAULT_RANK_TOL = 1e-10
DEFAULT_ORTHO_TOL = 1e-8
DEFAULT_MATCH_TOL = 1e-9
DEFAULT_ENUM_CAP = 24
FRAME_RATIO_TOL = 1e-10


def inner(u: np.ndarray, v: np.ndarray):
    """<u, v> = sum_k u_k * conj(v_k); linear in ``u``, conjugate-linear in ``v``."""
    return np.vdot(v, u)


def numerical_rank(rows: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> int:
    """Rank of ``rows`` with singular values below ``tol * sigma_max`` treated as zero."""
    if rows.size == 0:
        return 0
    s = np.linalg.svd(rows, compute_uv=False)
    if s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def canonical_phase(v: np.ndarray) -> np.ndarray:
    """Scale a vector by a unimodular factor so its largest-magnitude entry is real positive."""
    mags = np.abs(v)
    top = mags.max() if mags.size else 0.0
    if top == 0.0:
        return v
    pivot = v[int(np.argmax(mags))]
    # Adding 0.0 flushes IEEE negative zeros so serialized output is stable.
    return v * (np.conj(pivot) / abs(pivot)) + 0.0


def annihilator(rows: np.ndarray, dim: int, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Orthonormal basis, as columns, of ``{u : <u, r> = 0 for every row r}``.

    An empty row set annihilates nothing, so the result is the identity basis.
    The basis columns carry the canonical phase.
    """
    if rows.size == 0:
        return np.eye(dim, dtype=rows.dtype if rows.dtype.kind == "c" else float)
    # <u, r> = 0 reads conj(rows) @ u = 0 under the first-slot-linear convention.
    m = np.conj(rows)
    _, s, vh = np.linalg.svd(m)
    if s.size and s[0] > 0.0:
        rank = int(np.count_nonzero(s > tol * s[0]))
    else:
        rank = 0
    basis = vh[rank:].conj().T
    for j in range(basis.shape[1]):
        basis[:, j] = canonical_phase(basis[:, j])
    return basis


def eigmin_vector(mat: np.ndarray) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue of a Hermitian matrix and a canonical-phase unit eigenvector."""
    evals, evecs = np.linalg.eigh(mat)
    v = canonical_phase(evecs[:, 0])
    return float(evals[0]), v


def hermitize(mat: np.ndarray) -> np.ndarray:
    return (mat + mat.conj().T) / 2.0


def inv_sqrt_psd(mat: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Inverse square root of a Hermitian positive-definite matrix.

    Raises ValueError when the smallest eigenvalue falls at or below
    ``tol * largest``, i.e. when the matrix is numerically singular.
    """
    evals, evecs = np.linalg.eigh(hermitize(mat))
    if evals[-1] <= 0.0 or evals[0] <= tol * evals[-1]:
        raise ValueError("matrix is numerically singular; no inverse square root")
    w = evecs * (evals ** -0.5)
    return w @ evecs.conj().T


def random_unit(rng: np.random.Generator, dim: int, complex_: bool) -> np.ndarray:
    """Draw a unit vector; complex vectors get independent real and imaginary parts."""
    v = rng.standard_normal(dim)
    if complex_:
        v = v + 1j * rng.standard_normal(dim)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        v = np.zeros(dim, dtype=complex if complex_ else float)
        v[0] = 1.0
        return v
    return v / nrm

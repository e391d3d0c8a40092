"""Dense complex linear algebra with tolerance-controlled null spaces.

Inner-product convention used across the package: ``ip(a, b)`` is linear in
``a`` and antilinear in ``b`` (so a sesquilinear form evaluates as
``form(psi, phi) = phi^dagger @ G @ psi`` for its Gram matrix ``G``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_RANK_TOL = 1e-10
HERMITICITY_TOL = 1e-12


class NotPositiveSemiDefiniteError(ValueError):
    """A form expected to be PSD has a genuinely negative eigenvalue."""


def ip(a: np.ndarray, b: np.ndarray) -> complex:
    """Inner product, linear in the first argument."""
    return complex(np.vdot(b, a))


@dataclass(frozen=True)
class GramForm:
    """A sesquilinear form restricted to a finite basis, as a Gram matrix.

    The matrix must be Hermitian to ``HERMITICITY_TOL`` (relative to its
    largest entry); evaluation follows the package convention
    ``form(psi, phi) = phi^dagger G psi``.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"Gram matrix must be square, got shape {m.shape}")
        scale = max(float(np.max(np.abs(m))), 1.0)
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL * scale:
            raise ValueError("Gram matrix is not Hermitian to tolerance")
        m = 0.5 * (m + m.conj().T)  # symmetrize the residual rounding
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, psi: np.ndarray, phi: np.ndarray) -> complex:
        return complex(np.vdot(phi, self.matrix @ psi))


def nullspace_basis(
    form: GramForm, rank_tol: float = DEFAULT_RANK_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Split C^n into the null space of a PSD form and its complement.

    Returns ``(null, complement)``, each a matrix whose columns are
    orthonormal eigenvectors of the Gram matrix; ``null`` spans the
    eigenspaces with eigenvalue below ``rank_tol * lambda_max``.

    Raises :class:`NotPositiveSemiDefiniteError` if any eigenvalue lies
    below ``-rank_tol * lambda_max`` (the induction premise is violated).
    """
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    evals, evecs = np.linalg.eigh(form.matrix)
    top = float(evals[-1]) if evals.size else 0.0
    cut = rank_tol * max(top, 0.0)
    if evals.size and evals[0] < -max(cut, rank_tol):
        raise NotPositiveSemiDefiniteError(
            f"form has eigenvalue {evals[0]:.3e} below -{max(cut, rank_tol):.3e}"
        )
    small = evals < cut
    return evecs[:, small], evecs[:, ~small]


def orthonormal_span(vectors: np.ndarray, rel_tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (columns) of the span of the given columns."""
    v = np.asarray(vectors, dtype=complex)
    if v.size == 0:
        return np.zeros((v.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(v, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((v.shape[0], 0), dtype=complex)
    return u[:, s > rel_tol * s[0]]


def subspace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Mutual projection residual between two subspaces given by
    orthonormal-column matrices; 0 iff they coincide."""
    if a.shape[1] != b.shape[1]:
        return 1.0
    if a.shape[1] == 0:
        return 0.0
    pa = a @ a.conj().T
    pb = b @ b.conj().T
    return float(np.max(np.abs(pa - pb)))

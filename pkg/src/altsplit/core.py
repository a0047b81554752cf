"""Dense real matrix kernel: rank, spectra, group inverse, subspace tests.

Everything downstream treats matrices as immutable ``numpy.ndarray`` values
in float64.  All operations are pure; factorizations are cached only inside
:class:`CachedSolver` instances, which are created once and then read-only.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .errors import (
    DimensionMismatchError,
    IndexGreaterThanOneError,
    NotSquareError,
)

__all__ = [
    "ToleranceProfile",
    "DEFAULT_TOL",
    "as_matrix",
    "as_square",
    "as_vector",
    "rank",
    "spectral_radius",
    "gamma",
    "group_inverse",
    "index_at_most_one",
    "range_projector",
    "null_projector",
    "same_range",
    "same_null",
    "is_nonnegative",
    "CachedSolver",
    "gen_solve",
]


@dataclass(frozen=True)
class ToleranceProfile:
    """Numerical slacks used by rank, equality and sign decisions.

    Attributes
    ----------
    rank_tol : float
        Relative singular-value cutoff: values below ``rank_tol * s_max``
        count as zero.
    eq_tol : float
        Entrywise slack for matrix equality tests.
    one_tol : float
        Cutoff on ``|lambda - 1|`` below which an eigenvalue counts as 1.
    nonneg_tol : float
        Entries above ``-nonneg_tol`` count as nonnegative.
    """

    rank_tol: float = 1e-10
    eq_tol: float = 1e-9
    one_tol: float = 1e-8
    nonneg_tol: float = 1e-12

    def __post_init__(self):
        for name in ("rank_tol", "eq_tol", "one_tol", "nonneg_tol"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


DEFAULT_TOL = ToleranceProfile()


def as_matrix(a) -> np.ndarray:
    """Validate and return ``a`` as a finite 2-D float64 array."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return m


def as_square(a) -> np.ndarray:
    """Validate and return ``a`` as a square matrix."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {m.shape}")
    return m


def as_vector(b, n=None) -> np.ndarray:
    """Validate ``b`` as a finite 1-D float64 vector, optionally of length n."""
    v = np.asarray(b, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    if n is not None and v.size != n:
        raise DimensionMismatchError(f"expected a vector of length {n}, got {v.size}")
    return v


def _numerical_rank(s: np.ndarray, rank_tol: float) -> int:
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rank_tol * s[0]))


def rank(m, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    """Numerical rank: singular values above ``rank_tol * s_max``."""
    m = as_matrix(m)
    if min(m.shape) == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return _numerical_rank(s, tol.rank_tol)


def spectral_radius(m) -> float:
    """Largest eigenvalue modulus, from a full dense eigendecomposition.

    Eigensolver failures propagate as ``numpy.linalg.LinAlgError`` rather
    than being masked as zero.
    """
    m = as_square(m)
    if m.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(m))))


def gamma(m, tol: ToleranceProfile = DEFAULT_TOL) -> float:
    """Largest eigenvalue modulus after discarding the eigenvalue-1 cluster.

    Eigenvalues with ``|lambda - 1| <= one_tol`` are excluded; returns 0
    when every eigenvalue sits in that cluster.
    """
    m = as_square(m)
    if m.shape[0] == 0:
        return 0.0
    ev = np.linalg.eigvals(m)
    outside = np.abs(ev - 1.0) > tol.one_tol
    if not np.any(outside):
        return 0.0
    return float(np.max(np.abs(ev[outside])))


def _rank_factorization(m: np.ndarray, rank_tol: float):
    """Full-rank factorization m = F @ G from the SVD.

    F is n x r with full column rank, G is r x n with full row rank.
    """
    u, s, vt = np.linalg.svd(m)
    r = _numerical_rank(s, rank_tol)
    return u[:, :r] * s[:r], vt[:r, :]


def group_inverse(m, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Group inverse A# of an index-1 square matrix.

    Uses the rank factorization A = F G and the closed form
    ``A# = F (G F)^-2 G``; invertibility of G F is exactly the index-1
    condition, so existence detection and computation share one path.

    Raises
    ------
    IndexGreaterThanOneError
        If ``rank(A) != rank(A^2)``, i.e. G F is singular at ``rank_tol``.
    """
    m = as_square(m)
    f, g = _rank_factorization(m, tol.rank_tol)
    r = f.shape[1]
    if r == 0:
        return np.zeros_like(m)
    gf = g @ f
    s = np.linalg.svd(gf, compute_uv=False)
    if s[-1] <= tol.rank_tol * s[0]:
        raise IndexGreaterThanOneError(
            "group inverse does not exist: rank(A) != rank(A^2)"
        )
    return f @ np.linalg.solve(gf, np.linalg.solve(gf, g))


def index_at_most_one(m, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """True iff rank(M) == rank(M @ M) at ``rank_tol``."""
    m = as_square(m)
    return rank(m, tol) == rank(m @ m, tol)


def range_projector(m, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the column space of M."""
    m = as_matrix(m)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    r = _numerical_rank(s, tol.rank_tol)
    ur = u[:, :r]
    return ur @ ur.T


def null_projector(m, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the null space of M."""
    m = as_matrix(m)
    _, s, vt = np.linalg.svd(m, full_matrices=False)
    r = _numerical_rank(s, tol.rank_tol)
    vr = vt[:r, :]
    return np.eye(m.shape[1]) - vr.T @ vr


def same_range(m, n, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """True iff the column spaces of M and N agree (projector comparison)."""
    m, n = as_matrix(m), as_matrix(n)
    if m.shape[0] != n.shape[0]:
        raise DimensionMismatchError("matrices must have the same number of rows")
    diff = range_projector(m, tol) - range_projector(n, tol)
    return float(np.max(np.abs(diff))) < tol.eq_tol


def same_null(m, n, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """True iff the null spaces of M and N agree (projector comparison)."""
    m, n = as_matrix(m), as_matrix(n)
    if m.shape[1] != n.shape[1]:
        raise DimensionMismatchError("matrices must have the same number of columns")
    diff = null_projector(m, tol) - null_projector(n, tol)
    return float(np.max(np.abs(diff))) < tol.eq_tol


def is_nonnegative(m, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """True iff every entry is at least ``-nonneg_tol``."""
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return True
    return float(m.min()) >= -tol.nonneg_tol


class CachedSolver:
    """Uniform action of U^-1 (nonsingular U) or U# (index-1 singular U).

    The factorization is computed once at construction:

    * diagonal U: reciprocal diagonal (group inverse of a diagonal matrix),
    * nonsingular dense U: LU factorization,
    * singular dense U: explicit group inverse.

    Instances are immutable after construction and safe to share.
    """

    def __init__(self, u, tol: ToleranceProfile = DEFAULT_TOL):
        u = as_square(u)
        self._n = u.shape[0]
        self._tol = tol
        self._inverse_like = None
        d = np.diag(u)
        if np.count_nonzero(u - np.diag(d)) == 0:
            ad = np.abs(d)
            cutoff = tol.rank_tol * (ad.max() if ad.size else 0.0)
            nz = ad > cutoff
            recip = np.zeros_like(d)
            recip[nz] = 1.0 / d[nz]
            self._mode = "diag"
            self._diag = recip
            self.is_nonsingular = bool(np.all(nz))
            return
        s = np.linalg.svd(u, compute_uv=False)
        self.is_nonsingular = s.size > 0 and s[-1] > tol.rank_tol * s[0]
        if self.is_nonsingular:
            self._mode = "lu"
            self._lu = lu_factor(u)
        else:
            self._mode = "sharp"
            self._inverse_like = group_inverse(u, tol)

    @property
    def n(self) -> int:
        return self._n

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """U^-1 rhs, or U# rhs when U is singular."""
        if self._mode == "diag":
            if rhs.ndim == 1:
                return self._diag * rhs
            return self._diag[:, None] * rhs
        if self._mode == "lu":
            return lu_solve(self._lu, rhs)
        return self._inverse_like @ rhs

    def left_apply(self, b: np.ndarray) -> np.ndarray:
        """U^-1 B (or U# B)."""
        return self.solve(b)

    def right_apply(self, b: np.ndarray) -> np.ndarray:
        """B U^-1 (or B U#)."""
        if self._mode == "diag":
            return b * self._diag
        if self._mode == "lu":
            return lu_solve(self._lu, b.T, trans=1).T
        return b @ self._inverse_like

    def inverse_like(self) -> np.ndarray:
        """Explicit U^-1 or U# as a dense matrix (computed once, cached)."""
        if self._inverse_like is None:
            if self._mode == "diag":
                self._inverse_like = np.diag(self._diag)
            else:
                self._inverse_like = lu_solve(self._lu, np.eye(self._n))
        return self._inverse_like


def gen_solve(m, b, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Solve M x = b via M^-1 when M is nonsingular, else return M# b.

    One-shot convenience; iteration drivers reuse the solver cached on each
    :class:`~altsplit.splittings.Splitting` instead.
    """
    m = as_square(m)
    b = as_vector(b, m.shape[0])
    return CachedSolver(m, tol).solve(b)
